use std::f64::consts::TAU;
use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circuits::{build_ansatz, build_feature_map, AnsatzSpec, FeatureMapSpec};
use crate::error::{Error, Result};
use crate::optimize::parameter_shift_gradient;
use crate::qsim::{parity_expectation, StateVector};

pub const MIN_PLATEAU_SAMPLES: usize = 50;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlateauEntry {
    pub n_qubits: usize,
    pub variance: f64,
    pub mean_gradient: f64,
    pub samples: usize,
    /// Every sampled gradient was exactly zero; excluded from the fit.
    pub degenerate: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlateauReport {
    pub seed: u64,
    pub entries: Vec<PlateauEntry>,
    /// Least-squares slope of `log2(variance)` against qubit count.
    pub slope: f64,
}

impl PlateauReport {
    pub fn variance_at(&self, n: usize) -> Option<f64> {
        self.entries.iter().find(|e| e.n_qubits == n).map(|e| e.variance)
    }
}

/// Gradient variance of `⟨Z^⊗n⟩` with respect to the first ansatz angle
/// (depth 1), over uniformly drawn angles and one fixed input per width.
pub fn run_plateau_probe(qubits: RangeInclusive<usize>, samples: usize, seed: u64) -> Result<PlateauReport> {
    if samples < MIN_PLATEAU_SAMPLES {
        return Err(Error::Config(format!(
            "plateau probe needs at least {MIN_PLATEAU_SAMPLES} samples, got {samples}"
        )));
    }
    if qubits.is_empty() || *qubits.start() == 0 {
        return Err(Error::Config(format!("invalid qubit range {qubits:?}")));
    }
    let entries = qubits.map(|n| probe_width(n, samples, seed)).collect::<Result<Vec<_>>>()?;
    let points: Vec<(f64, f64)> =
        entries.iter().filter(|e| !e.degenerate).map(|e| (e.n_qubits as f64, e.variance.log2())).collect();
    let slope = least_squares_slope(&points).unwrap_or(f64::NAN);
    Ok(PlateauReport { seed, entries, slope })
}

fn probe_width(n: usize, samples: usize, seed: u64) -> Result<PlateauEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let z: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..1.0)).collect();
    let ansatz_spec = AnsatzSpec::new(n, 1);
    let n_params = ansatz_spec.parameter_count();
    let thetas: Vec<Vec<f64>> =
        (0..samples).map(|_| (0..n_params).map(|_| rng.random_range(0.0..TAU)).collect()).collect();

    let mut encoded = StateVector::zero(n)?;
    build_feature_map(&FeatureMapSpec::new(n), &z)?.apply_with(&mut encoded, &[])?;
    let ansatz = build_ansatz(&ansatz_spec)?;
    let expectation = |theta: &[f64]| -> Result<f64> {
        let mut state = encoded.clone();
        ansatz.apply_with(&mut state, theta)?;
        Ok(parity_expectation(&state))
    };

    let grads =
        thetas.par_iter().map(|theta| parameter_shift_gradient(expectation, theta, 0)).collect::<Result<Vec<f64>>>()?;
    let degenerate = grads.iter().all(|&g| g == 0.0);
    let mean = grads.iter().sum::<f64>() / samples as f64;
    let variance =
        if degenerate { 0.0 } else { grads.iter().map(|g| (g - mean).powi(2)).sum::<f64>() / (samples - 1) as f64 };
    Ok(PlateauEntry { n_qubits: n, variance, mean_gradient: mean, samples, degenerate })
}

fn least_squares_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let m = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / m;
    let my = points.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = points.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = points.iter().map(|(x, _)| (x - mx).powi(2)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}
