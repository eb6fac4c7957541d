use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Label, Labeled, TestPartition, TrainPartition};
use crate::error::{Error, Result};

const CLASSES: [Label; 2] = [Label::Background, Label::Signal];

fn class_indices<T: Labeled>(rows: &[T], label: Label) -> Vec<usize> {
    rows.iter().enumerate().filter(|(_, r)| r.label() == label).map(|(i, _)| i).collect()
}

/// Draws `per_class` rows of each label without replacement. Background rows
/// come first, then signal. Each class is drawn with its own generator seeded
/// by `seed`.
pub fn balanced_sample<T: Labeled + Clone>(rows: &[T], per_class: usize, seed: u64) -> Result<Vec<T>> {
    let mut out = Vec::with_capacity(2 * per_class);
    for label in CLASSES {
        let members = class_indices(rows, label);
        if members.len() < per_class {
            return Err(Error::Data(format!("need {per_class} {label:?} rows, only {} available", members.len())));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for pick in index::sample(&mut rng, members.len(), per_class) {
            out.push(rows[members[pick]].clone());
        }
    }
    Ok(out)
}

/// Splits per class, sending `round(class_size · test_fraction)` rows of each
/// label to the test partition. Both partitions keep input order.
pub fn stratified_split<T: Labeled>(
    rows: Vec<T>,
    test_fraction: f64,
    seed: u64,
) -> Result<(TrainPartition<T>, TestPartition<T>)> {
    if !(test_fraction > 0.0 && test_fraction < 1.0) {
        return Err(Error::Config(format!("test fraction {test_fraction} outside (0, 1)")));
    }
    let mut is_test = vec![false; rows.len()];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for label in CLASSES {
        let members = class_indices(&rows, label);
        let n_test = (members.len() as f64 * test_fraction).round() as usize;
        for pick in index::sample(&mut rng, members.len(), n_test) {
            is_test[members[pick]] = true;
        }
    }
    let (mut train, mut test) = (Vec::new(), Vec::new());
    for (row, held_out) in rows.into_iter().zip(is_test) {
        if held_out {
            test.push(row);
        } else {
            train.push(row);
        }
    }
    Ok((TrainPartition::new(train), TestPartition::new(test)))
}
