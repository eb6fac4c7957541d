use super::{EventRecord, N_FEATURES};
use crate::error::{Error, Result};

/// Marker for an undefined feature value in the ATLAS files.
pub const SENTINEL: f64 = -999.0;

/// Median of `values`; the mean of the two middle elements for even counts.
/// `None` when empty.
pub fn median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mid = sorted.len() / 2;
    Some(if sorted.len().is_multiple_of(2) { 0.5 * (sorted[mid - 1] + sorted[mid]) } else { sorted[mid] })
}

/// Replaces every sentinel with its feature's median over non-sentinel
/// values, or 0 when a feature has no defined values. Returns the medians.
pub fn impute_median(rows: &mut [EventRecord]) -> Result<[f64; N_FEATURES]> {
    if rows.is_empty() {
        return Err(Error::Data("cannot impute an empty dataset".into()));
    }
    let mut medians = [0.0; N_FEATURES];
    for (f, slot) in medians.iter_mut().enumerate() {
        let defined: Vec<f64> = rows.iter().map(|r| r.features[f]).filter(|&v| v != SENTINEL).collect();
        *slot = median(&defined).unwrap_or(0.0);
    }
    for row in rows.iter_mut() {
        for (value, &m) in row.features.iter_mut().zip(&medians) {
            if *value == SENTINEL {
                *value = m;
            }
        }
    }
    Ok(medians)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::preprocess::Label;

    fn rows_with_column(col: &[f64]) -> Vec<EventRecord> {
        col.iter()
            .enumerate()
            .map(|(i, &v)| {
                let mut features = [1.0; N_FEATURES];
                features[0] = v;
                EventRecord { event_id: i as u64, features, label: Label::Background, weight: 1.0 }
            })
            .collect()
    }

    fn column(rows: &[EventRecord]) -> Vec<f64> {
        rows.iter().map(|r| r.features[0]).collect()
    }

    #[test]
    fn two_point_median() {
        let mut rows = rows_with_column(&[1.0, SENTINEL, 3.0]);
        let medians = impute_median(&mut rows).unwrap();
        assert_eq!(column(&rows), vec![1.0, 2.0, 3.0]);
        assert_eq!(medians[0], 2.0);
    }

    #[test]
    fn column_without_sentinels_unchanged() {
        let mut rows = rows_with_column(&[4.0, -2.0, 9.5]);
        impute_median(&mut rows).unwrap();
        assert_eq!(column(&rows), vec![4.0, -2.0, 9.5]);
    }

    #[test]
    fn odd_median() {
        let mut rows = rows_with_column(&[SENTINEL, SENTINEL, 5.0, 7.0, 9.0]);
        impute_median(&mut rows).unwrap();
        assert_eq!(column(&rows), vec![7.0, 7.0, 5.0, 7.0, 9.0]);
    }

    #[test]
    fn all_sentinel_becomes_zero() {
        let mut rows = rows_with_column(&[SENTINEL, SENTINEL]);
        let medians = impute_median(&mut rows).unwrap();
        assert_eq!(column(&rows), vec![0.0, 0.0]);
        assert_eq!(medians[0], 0.0);
        assert_eq!(medians[1], 1.0);
    }

    #[test]
    fn empty_input_is_data_error() {
        assert!(matches!(impute_median(&mut []), Err(Error::Data(_))));
    }
}
