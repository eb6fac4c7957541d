use num_complex::Complex64;

use super::gate::{Angle, GateOp};
use crate::error::{Error, Result};

pub const MAX_QUBITS: usize = 20;

const NORM_TOLERANCE: f64 = 1e-10;

/// Dense n-qubit pure state.
///
/// Amplitude index `b` encodes the computational basis state with qubit 0 as
/// the least-significant bit, so `|q2 q1 q0⟩ = |011⟩` lives at index 3.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// `|0…0⟩` on `n_qubits` qubits.
    pub fn zero(n_qubits: usize) -> Result<Self> {
        check_qubit_count(n_qubits)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(Self { n_qubits, amps })
    }

    /// Wraps raw amplitudes. The length must be a power of two and the vector
    /// must be normalized to within 1e-10.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::Config(format!("amplitude count {len} is not a power of two >= 2")));
        }
        let n_qubits = len.trailing_zeros() as usize;
        check_qubit_count(n_qubits)?;
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::Config(format!("state is not normalized (‖ψ‖² = {norm})")));
        }
        Ok(Self { n_qubits, amps })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Applies a bound gate in place.
    pub fn apply_gate(&mut self, op: &GateOp) -> Result<()> {
        self.apply_gate_with(op, &[])
    }

    /// Applies a gate, resolving symbolic angles from `params`.
    pub(crate) fn apply_gate_with(&mut self, op: &GateOp, params: &[f64]) -> Result<()> {
        op.check_targets(self.n_qubits)?;
        match *op {
            GateOp::H { qubit } => self.apply_h(qubit),
            GateOp::Ry { qubit, theta } => self.apply_ry(qubit, resolve(theta, params)?),
            GateOp::Phase { qubit, lambda } => self.apply_phase(qubit, resolve(lambda, params)?),
            GateOp::Cnot { control, target } => self.apply_cnot(control, target),
        }
        Ok(())
    }

    fn apply_h(&mut self, qubit: usize) {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        self.for_each_pair(qubit, |a0, a1| {
            let (x, y) = (*a0, *a1);
            *a0 = (x + y) * s;
            *a1 = (x - y) * s;
        });
    }

    fn apply_ry(&mut self, qubit: usize, theta: f64) {
        let (sin, cos) = (theta / 2.0).sin_cos();
        self.for_each_pair(qubit, |a0, a1| {
            let (x, y) = (*a0, *a1);
            *a0 = x * cos - y * sin;
            *a1 = x * sin + y * cos;
        });
    }

    fn apply_phase(&mut self, qubit: usize, lambda: f64) {
        let phase = Complex64::from_polar(1.0, lambda);
        self.for_each_pair(qubit, |_, a1| *a1 *= phase);
    }

    fn apply_cnot(&mut self, control: usize, target: usize) {
        let cmask = 1usize << control;
        let tmask = 1usize << target;
        for i in 0..self.amps.len() {
            if i & cmask != 0 && i & tmask == 0 {
                self.amps.swap(i, i | tmask);
            }
        }
    }

    /// Visits every amplitude pair `(|…0_q…⟩, |…1_q…⟩)` exactly once.
    #[inline]
    fn for_each_pair(&mut self, qubit: usize, mut f: impl FnMut(&mut Complex64, &mut Complex64)) {
        let stride = 1usize << qubit;
        for block in self.amps.chunks_exact_mut(stride << 1) {
            let (lo, hi) = block.split_at_mut(stride);
            for (a0, a1) in lo.iter_mut().zip(hi.iter_mut()) {
                f(a0, a1);
            }
        }
    }
}

fn resolve(angle: Angle, params: &[f64]) -> Result<f64> {
    match angle {
        Angle::Bound(v) => Ok(v),
        Angle::Symbol(slot) => {
            params.get(slot).copied().ok_or_else(|| Error::Binding(format!("parameter slot {slot} is unbound")))
        }
    }
}

fn check_qubit_count(n_qubits: usize) -> Result<()> {
    if (1..=MAX_QUBITS).contains(&n_qubits) {
        Ok(())
    } else {
        Err(Error::Config(format!("qubit count {n_qubits} outside 1..={MAX_QUBITS}")))
    }
}
