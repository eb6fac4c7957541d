use serde::{Deserialize, Serialize};

use super::TrainPartition;
use crate::error::{Error, Result};

/// Per-feature min-max scaler, `x' = (x − min) / (max − min)`.
///
/// Constant features map to 0. Values outside the fitted range are not
/// clipped.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalerModel {
    pub min: Vec<f64>,
    pub max: Vec<f64>,
}

impl ScalerModel {
    pub fn fit(train: &TrainPartition<Vec<f64>>) -> Result<Self> {
        let rows = train.rows();
        let width = rows.first().map(Vec::len).ok_or_else(|| Error::Data("cannot fit a scaler on zero rows".into()))?;
        let mut min = vec![f64::INFINITY; width];
        let mut max = vec![f64::NEG_INFINITY; width];
        for row in rows {
            check_width(width, row)?;
            for (f, &v) in row.iter().enumerate() {
                min[f] = min[f].min(v);
                max[f] = max[f].max(v);
            }
        }
        Ok(Self { min, max })
    }

    pub fn n_features(&self) -> usize {
        self.min.len()
    }

    pub fn transform_row(&self, row: &[f64]) -> Result<Vec<f64>> {
        check_width(self.n_features(), row)?;
        Ok(row
            .iter()
            .zip(self.min.iter().zip(&self.max))
            .map(|(&x, (&lo, &hi))| {
                let range = hi - lo;
                if range > 0.0 {
                    (x - lo) / range
                } else {
                    0.0
                }
            })
            .collect())
    }

    pub fn transform(&self, rows: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
        rows.iter().map(|r| self.transform_row(r)).collect()
    }
}

fn check_width(expected: usize, row: &[f64]) -> Result<()> {
    if row.len() == expected {
        Ok(())
    } else {
        Err(Error::Dimension { expected, actual: row.len() })
    }
}
