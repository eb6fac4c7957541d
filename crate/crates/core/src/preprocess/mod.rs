//! Classical preprocessing: sentinel imputation, min-max scaling, PCA,
//! balanced sampling and stratified splitting.
//!
//! Fitting goes through [`TrainPartition`] only; held-out rows are wrapped in
//! [`TestPartition`], which the fit functions do not accept.

mod eigen;
mod impute;
mod pca;
mod sampling;
mod scaler;

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use eigen::symmetric_eigen;
pub use impute::{impute_median, median, SENTINEL};
pub use pca::{covariance, PcaModel};
pub use sampling::{balanced_sample, stratified_split};
pub use scaler::ScalerModel;

/// Number of physics features per event.
pub const N_FEATURES: usize = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    Background = 0,
    Signal = 1,
}

impl Label {
    pub fn as_u8(self) -> u8 {
        self as u8
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self.as_u8())
    }

    pub fn from_bit(bit: u8) -> Self {
        if bit == 0 {
            Label::Background
        } else {
            Label::Signal
        }
    }
}

pub trait Labeled {
    fn label(&self) -> Label;
}

/// One collision event. `-999.0` marks an undefined feature until imputation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EventRecord {
    pub event_id: u64,
    pub features: [f64; N_FEATURES],
    pub label: Label,
    pub weight: f64,
}

impl Labeled for EventRecord {
    fn label(&self) -> Label {
        self.label
    }
}

/// Feature vector paired with its label.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub features: Vec<f64>,
    pub label: Label,
}

impl Labeled for Sample {
    fn label(&self) -> Label {
        self.label
    }
}

/// Rows that models may be fitted on.
#[derive(Clone, Debug, PartialEq)]
pub struct TrainPartition<T>(Vec<T>);

/// Held-out rows; transforms may be applied to them but nothing is fitted.
#[derive(Clone, Debug, PartialEq)]
pub struct TestPartition<T>(Vec<T>);

macro_rules! partition_impl {
    ($name:ident) => {
        impl<T> $name<T> {
            pub fn new(rows: Vec<T>) -> Self {
                Self(rows)
            }

            pub fn rows(&self) -> &[T] {
                &self.0
            }

            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0.is_empty()
            }

            pub fn into_inner(self) -> Vec<T> {
                self.0
            }

            pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> $name<U> {
                $name(self.0.iter().map(f).collect())
            }
        }
    };
}

partition_impl!(TrainPartition);
partition_impl!(TestPartition);

/// Writes latent vectors as CSV with header `pc1,...,pck,label`.
pub fn write_latent_csv(path: &Path, rows: &[Sample]) -> Result<()> {
    let k = rows.first().map_or(0, |r| r.features.len());
    let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut out = std::io::BufWriter::new(file);
    let mut header: Vec<String> = (1..=k).map(|i| format!("pc{i}")).collect();
    header.push("label".into());
    let write_err = |e| Error::io(path, e);
    writeln!(out, "{}", header.join(",")).map_err(write_err)?;
    for row in rows {
        if row.features.len() != k {
            return Err(Error::Dimension { expected: k, actual: row.features.len() });
        }
        let cells: Vec<String> = row.features.iter().map(|v| v.to_string()).collect();
        writeln!(out, "{},{}", cells.join(","), row.label.as_u8()).map_err(write_err)?;
    }
    out.flush().map_err(write_err)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn latent_csv_layout() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("latent.csv");
        let rows = vec![
            Sample { features: vec![0.5, -1.0], label: Label::Signal },
            Sample { features: vec![0.0, 2.0], label: Label::Background },
        ];
        write_latent_csv(&path, &rows).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text, "pc1,pc2,label\n0.5,-1,1\n0,2,0\n");
    }
}
