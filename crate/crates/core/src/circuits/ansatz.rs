use std::f64::consts::TAU;
use std::ops::Deref;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::Entanglement;
use crate::error::{Error, Result};
use crate::qsim::{Circuit, GateOp, MAX_QUBITS};

/// RealAmplitudes-style ansatz: an RY layer followed by `reps` rounds of
/// (CNOT entangler, RY layer).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnsatzSpec {
    pub n_qubits: usize,
    pub reps: usize,
    pub entanglement: Entanglement,
}

impl AnsatzSpec {
    /// Linear entanglement.
    pub fn new(n_qubits: usize, reps: usize) -> Self {
        Self { n_qubits, reps, entanglement: Entanglement::Linear }
    }

    pub fn with_entanglement(mut self, entanglement: Entanglement) -> Self {
        self.entanglement = entanglement;
        self
    }

    pub fn parameter_count(&self) -> usize {
        self.n_qubits * (self.reps + 1)
    }

    pub fn validate(&self) -> Result<()> {
        if !(1..=MAX_QUBITS).contains(&self.n_qubits) {
            return Err(Error::Config(format!("ansatz qubit count {}", self.n_qubits)));
        }
        if self.reps == 0 {
            return Err(Error::Config("ansatz reps must be >= 1".into()));
        }
        Ok(())
    }
}

/// Symbolic ansatz circuit. Parameter slots are numbered layer-major, qubit
/// ascending within a layer.
pub fn build_ansatz(spec: &AnsatzSpec) -> Result<Circuit> {
    spec.validate()?;
    let pairs = spec.entanglement.pairs(spec.n_qubits);
    let mut circuit = Circuit::new(spec.n_qubits)?;
    for q in 0..spec.n_qubits {
        circuit.push_symbolic_ry(q)?;
    }
    for _ in 0..spec.reps {
        for &(control, target) in &pairs {
            circuit.push(GateOp::Cnot { control, target })?;
        }
        for q in 0..spec.n_qubits {
            circuit.push_symbolic_ry(q)?;
        }
    }
    debug_assert_eq!(circuit.n_symbolic_params(), spec.parameter_count());
    Ok(circuit)
}

/// Trainable angles for one ansatz, in slot order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ParamVector(Vec<f64>);

impl ParamVector {
    pub fn for_ansatz(spec: &AnsatzSpec, values: Vec<f64>) -> Result<Self> {
        if values.len() != spec.parameter_count() {
            return Err(Error::Binding(format!(
                "ansatz needs {} parameters, got {}",
                spec.parameter_count(),
                values.len()
            )));
        }
        Ok(Self(values))
    }

    pub fn zeros(spec: &AnsatzSpec) -> Self {
        Self(vec![0.0; spec.parameter_count()])
    }

    /// Angles drawn uniformly from `[0, 2π)`.
    pub fn random_uniform(spec: &AnsatzSpec, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self((0..spec.parameter_count()).map(|_| rng.random_range(0.0..TAU)).collect())
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for ParamVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsim::{signal_probability, Angle, GateKind, StateVector};
    use std::f64::consts::PI;

    #[test]
    fn stage_parameter_counts() {
        assert_eq!(build_ansatz(&AnsatzSpec::new(4, 1)).unwrap().n_symbolic_params(), 8);
        assert_eq!(build_ansatz(&AnsatzSpec::new(4, 2)).unwrap().n_symbolic_params(), 12);
        let c = build_ansatz(&AnsatzSpec::new(8, 1)).unwrap();
        assert_eq!(c.n_symbolic_params(), 16);
        assert_eq!(c.count(GateKind::Ry), 16);
    }

    #[test]
    fn parameter_count_law() {
        for n in 1..=8 {
            for d in 1..=4 {
                for ent in [Entanglement::Linear, Entanglement::Full] {
                    let spec = AnsatzSpec::new(n, d).with_entanglement(ent);
                    let c = build_ansatz(&spec).unwrap();
                    assert_eq!(c.n_symbolic_params(), n * (d + 1));
                    assert_eq!(c.count(GateKind::Ry), n * (d + 1));
                }
            }
        }
    }

    #[test]
    fn slots_are_layer_major() {
        let c = build_ansatz(&AnsatzSpec::new(3, 1)).unwrap();
        let slots: Vec<_> = c
            .ops()
            .iter()
            .filter_map(|op| match op {
                GateOp::Ry { qubit, theta: Angle::Symbol(s) } => Some((*s, *qubit)),
                _ => None,
            })
            .collect();
        assert_eq!(slots, vec![(0, 0), (1, 1), (2, 2), (3, 0), (4, 1), (5, 2)]);
        assert!(matches!(c.ops()[3], GateOp::Cnot { control: 0, target: 1 }));
        assert!(matches!(c.ops()[4], GateOp::Cnot { control: 1, target: 2 }));
    }

    #[test]
    fn zero_angles_leave_zero_state() {
        let spec = AnsatzSpec::new(4, 2);
        let bound = build_ansatz(&spec).unwrap().bind(&ParamVector::zeros(&spec)).unwrap();
        let out = bound.run(&StateVector::zero(4).unwrap()).unwrap();
        assert!((out.amplitudes()[0].re - 1.0).abs() < 1e-12);
        assert!((signal_probability(&out) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn binding_is_idempotent() {
        let spec = AnsatzSpec::new(3, 2);
        let c = build_ansatz(&spec).unwrap();
        let theta = ParamVector::random_uniform(&spec, 5);
        assert_eq!(c.bind(&theta).unwrap(), c.bind(&theta).unwrap());
    }

    #[test]
    fn first_slot_pi_gives_one_one() {
        let c = build_ansatz(&AnsatzSpec::new(2, 1)).unwrap();
        let out = c.bind(&[PI, 0.0, 0.0, 0.0]).unwrap().run(&StateVector::zero(2).unwrap()).unwrap();
        assert!((out.amplitudes()[3].norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn param_vector_length_checked() {
        let spec = AnsatzSpec::new(4, 1);
        assert!(ParamVector::for_ansatz(&spec, vec![0.0; 7]).is_err());
        assert_eq!(ParamVector::for_ansatz(&spec, vec![0.0; 8]).unwrap().len(), 8);
        let r = ParamVector::random_uniform(&spec, 3);
        assert!(r.iter().all(|&v| (0.0..TAU).contains(&v)));
        assert_eq!(r, ParamVector::random_uniform(&spec, 3));
    }
}
