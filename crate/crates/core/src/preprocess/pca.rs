use serde::{Deserialize, Serialize};

use super::eigen::symmetric_eigen;
use super::TrainPartition;
use crate::error::{Error, Result};

/// Sample covariance (divisor `N − 1`) of the rows, plus the column means.
pub fn covariance(rows: &[Vec<f64>]) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    if rows.len() < 2 {
        return Err(Error::Data(format!("covariance needs >= 2 rows, got {}", rows.len())));
    }
    let d = rows[0].len();
    if let Some(bad) = rows.iter().find(|r| r.len() != d) {
        return Err(Error::Dimension { expected: d, actual: bad.len() });
    }
    let n = rows.len() as f64;
    let mut mean = vec![0.0; d];
    for row in rows {
        for (m, &v) in mean.iter_mut().zip(row) {
            *m += v;
        }
    }
    mean.iter_mut().for_each(|m| *m /= n);

    let mut cov = vec![vec![0.0; d]; d];
    for row in rows {
        let centered: Vec<f64> = row.iter().zip(&mean).map(|(v, m)| v - m).collect();
        for (i, cov_row) in cov.iter_mut().enumerate() {
            for (j, c) in cov_row.iter_mut().enumerate().skip(i) {
                *c += centered[i] * centered[j];
            }
        }
    }
    let cov = (0..d).map(|i| (0..d).map(|j| cov[i.min(j)][i.max(j)] / (n - 1.0)).collect()).collect();
    Ok((mean, cov))
}

/// Top-k principal axes of the training covariance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PcaModel {
    pub mean: Vec<f64>,
    /// `components[i]` is the i-th unit eigenvector (a column of `W_k`).
    pub components: Vec<Vec<f64>>,
    /// Descending, clamped at zero.
    pub eigenvalues: Vec<f64>,
}

impl PcaModel {
    pub fn fit(train: &TrainPartition<Vec<f64>>, k: usize) -> Result<Self> {
        let rows = train.rows();
        let d = rows.first().map_or(0, Vec::len);
        if k == 0 || k > d {
            return Err(Error::Config(format!("cannot keep {k} components of {d} features")));
        }
        let (mean, cov) = covariance(rows)?;
        let (values, vectors) = symmetric_eigen(&cov);
        let components = vectors
            .into_iter()
            .take(k)
            .map(|mut v| {
                // sign convention: largest-magnitude entry positive
                let pivot = v.iter().copied().reduce(|a, b| if b.abs() > a.abs() { b } else { a }).unwrap_or(0.0);
                if pivot < 0.0 {
                    v.iter_mut().for_each(|x| *x = -*x);
                }
                v
            })
            .collect();
        let eigenvalues = values.into_iter().take(k).map(|l| l.max(0.0)).collect();
        Ok(Self { mean, components, eigenvalues })
    }

    pub fn n_components(&self) -> usize {
        self.components.len()
    }

    pub fn n_features(&self) -> usize {
        self.mean.len()
    }

    /// `z = (x − mean) · W_k`.
    pub fn project_row(&self, row: &[f64]) -> Result<Vec<f64>> {
        if row.len() != self.n_features() {
            return Err(Error::Dimension { expected: self.n_features(), actual: row.len() });
        }
        let centered: Vec<f64> = row.iter().zip(&self.mean).map(|(x, m)| x - m).collect();
        Ok(self.components.iter().map(|w| w.iter().zip(&centered).map(|(a, b)| a * b).sum()).collect())
    }

    pub fn project(&self, rows: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
        rows.iter().map(|r| self.project_row(r)).collect()
    }

    /// `W_k · z + mean`.
    pub fn reconstruct_row(&self, z: &[f64]) -> Result<Vec<f64>> {
        if z.len() != self.n_components() {
            return Err(Error::Dimension { expected: self.n_components(), actual: z.len() });
        }
        let mut out = self.mean.clone();
        for (w, &zi) in self.components.iter().zip(z) {
            for (o, &wi) in out.iter_mut().zip(w) {
                *o += wi * zi;
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fit(rows: Vec<Vec<f64>>, k: usize) -> PcaModel {
        PcaModel::fit(&TrainPartition::new(rows), k).unwrap()
    }

    #[test]
    fn diagonal_data_has_rank_one_covariance() {
        let rows: Vec<Vec<f64>> = (0..6).map(|t| vec![t as f64, t as f64]).collect();
        let m = fit(rows, 2);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((m.components[0][0] - s).abs() < 1e-12);
        assert!((m.components[0][1] - s).abs() < 1e-12);
        assert!(m.eigenvalues[1].abs() < 1e-12);
        assert!(m.eigenvalues[0] > 0.0);
    }

    #[test]
    fn projecting_mean_gives_zero() {
        let rows = vec![vec![0.1, 0.9, 0.3], vec![0.4, 0.2, 0.8], vec![0.7, 0.5, 0.1], vec![0.2, 0.6, 0.6]];
        let m = fit(rows, 2);
        let z = m.project_row(&m.mean.clone()).unwrap();
        assert!(z.iter().all(|v| v.abs() < 1e-15));
    }

    #[test]
    fn full_rank_round_trip() {
        let rows = vec![
            vec![0.1, 0.9, 0.3],
            vec![0.4, 0.2, 0.8],
            vec![0.7, 0.5, 0.1],
            vec![0.2, 0.6, 0.6],
            vec![0.9, 0.1, 0.4],
        ];
        let m = fit(rows.clone(), 3);
        for r in &rows {
            let back = m.reconstruct_row(&m.project_row(r).unwrap()).unwrap();
            for (a, b) in back.iter().zip(r) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn rejects_bad_k_and_short_input() {
        let rows = vec![vec![1.0, 2.0], vec![2.0, 1.0]];
        assert!(matches!(PcaModel::fit(&TrainPartition::new(rows.clone()), 3), Err(Error::Config(_))));
        assert!(PcaModel::fit(&TrainPartition::new(rows), 0).is_err());
        assert!(matches!(PcaModel::fit(&TrainPartition::new(vec![vec![1.0, 2.0]]), 1), Err(Error::Data(_))));
        let m = fit(vec![vec![1.0, 2.0], vec![2.0, 1.0], vec![0.0, 0.5]], 1);
        assert!(matches!(m.project_row(&[1.0]), Err(Error::Dimension { .. })));
    }
}
