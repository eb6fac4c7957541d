use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::state::StateVector;
use crate::error::{Error, Result};

/// `⟨Z^{⊗n}⟩ = Σ_b |a_b|² (−1)^{popcount(b)}`, clamped to `[-1, 1]`.
pub fn parity_expectation(state: &StateVector) -> f64 {
    let value: f64 = state
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(b, a)| {
            let p = a.norm_sqr();
            if b.count_ones() % 2 == 0 {
                p
            } else {
                -p
            }
        })
        .sum();
    value.clamp(-1.0, 1.0)
}

/// Probability of the signal class, `½(1 + ⟨Z^{⊗n}⟩)`.
pub fn signal_probability(state: &StateVector) -> f64 {
    (0.5 * (1.0 + parity_expectation(state))).clamp(0.0, 1.0)
}

/// Measurement histogram keyed by basis index.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Counts {
    pub n_qubits: usize,
    pub shots: u64,
    pub counts: BTreeMap<usize, u64>,
}

impl Counts {
    pub fn get(&self, index: usize) -> u64 {
        self.counts.get(&index).copied().unwrap_or(0)
    }

    /// Bitstring with qubit `n-1` leftmost.
    pub fn bitstring(&self, index: usize) -> String {
        format!("{index:0width$b}", width = self.n_qubits)
    }

    pub fn by_bitstring(&self) -> BTreeMap<String, u64> {
        self.counts.iter().map(|(&i, &c)| (self.bitstring(i), c)).collect()
    }

    /// Parity estimated from the sampled frequencies.
    pub fn parity_estimate(&self) -> f64 {
        let signed: i64 =
            self.counts.iter().map(|(&b, &c)| if b.count_ones() % 2 == 0 { c as i64 } else { -(c as i64) }).sum();
        signed as f64 / self.shots as f64
    }
}

/// Draws `shots` independent computational-basis measurements.
pub fn sample_counts(state: &StateVector, shots: u64, rng_seed: u64) -> Result<Counts> {
    if shots == 0 {
        return Err(Error::Config("shots must be at least 1".into()));
    }
    let mut cumulative = Vec::with_capacity(state.dim());
    let mut acc = 0.0;
    for a in state.amplitudes() {
        acc += a.norm_sqr();
        cumulative.push(acc);
    }
    let total = acc;
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut counts = BTreeMap::new();
    for _ in 0..shots {
        let u: f64 = rng.random::<f64>() * total;
        // first index whose cumulative mass exceeds u; skips zero-probability outcomes
        let idx = cumulative.partition_point(|&c| c <= u).min(state.dim() - 1);
        *counts.entry(idx).or_insert(0) += 1;
    }
    Ok(Counts { n_qubits: state.n_qubits(), shots, counts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsim::GateOp;

    fn uniform(n: usize) -> StateVector {
        let mut s = StateVector::zero(n).unwrap();
        for q in 0..n {
            s.apply_gate(&GateOp::H { qubit: q }).unwrap();
        }
        s
    }

    fn bell() -> StateVector {
        let mut s = StateVector::zero(2).unwrap();
        s.apply_gate(&GateOp::H { qubit: 0 }).unwrap();
        s.apply_gate(&GateOp::Cnot { control: 0, target: 1 }).unwrap();
        s
    }

    #[test]
    fn parity_of_reference_states() {
        assert_eq!(parity_expectation(&StateVector::zero(5).unwrap()), 1.0);
        assert!(parity_expectation(&uniform(4)).abs() < 1e-12);
        assert_eq!(signal_probability(&StateVector::zero(3).unwrap()), 1.0);
        assert!((signal_probability(&uniform(3)) - 0.5).abs() < 1e-12);

        let mut one = StateVector::zero(1).unwrap();
        one.apply_gate(&GateOp::ry(0, std::f64::consts::PI)).unwrap();
        assert!(signal_probability(&one).abs() < 1e-12);
    }

    #[test]
    fn zero_state_samples_only_zero() {
        let c = sample_counts(&StateVector::zero(3).unwrap(), 1000, 7).unwrap();
        assert_eq!(c.get(0), 1000);
        assert_eq!(c.counts.len(), 1);
        assert_eq!(c.bitstring(0), "000");
    }

    #[test]
    fn zero_shots_is_config_error() {
        assert!(matches!(sample_counts(&bell(), 0, 1), Err(Error::Config(_))));
    }

    #[test]
    fn bell_counts_within_five_sigma() {
        let shots = 100_000u64;
        let c = sample_counts(&bell(), shots, 2024).unwrap();
        let sigma = (shots as f64 * 0.25).sqrt();
        for idx in [0b00, 0b11] {
            let dev = (c.get(idx) as f64 - shots as f64 / 2.0).abs();
            assert!(dev < 5.0 * sigma, "index {idx}: deviation {dev}");
        }
        assert_eq!(c.get(0b01), 0);
        assert_eq!(c.get(0b10), 0);
        assert_eq!(c.by_bitstring().keys().cloned().collect::<Vec<_>>(), ["00", "11"]);
    }

    #[test]
    fn sampling_is_deterministic_per_seed() {
        let s = uniform(3);
        assert_eq!(sample_counts(&s, 5000, 11).unwrap(), sample_counts(&s, 5000, 11).unwrap());
        assert_ne!(sample_counts(&s, 5000, 11).unwrap(), sample_counts(&s, 5000, 12).unwrap());
    }
}
