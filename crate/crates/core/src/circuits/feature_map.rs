use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::Entanglement;
use crate::error::{Error, Result};
use crate::qsim::{Circuit, GateOp, MAX_QUBITS};

/// Phase functions used by the ZZ feature map.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PhaseEncoding {
    /// `φ(z_j) = z_j` and `φ(z_j, z_k) = (π − z_j)(π − z_k)`.
    #[default]
    Standard,
}

impl PhaseEncoding {
    pub fn single(self, z: f64) -> f64 {
        match self {
            PhaseEncoding::Standard => z,
        }
    }

    pub fn pair(self, zj: f64, zk: f64) -> f64 {
        match self {
            PhaseEncoding::Standard => (PI - zj) * (PI - zk),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeatureMapSpec {
    pub n_qubits: usize,
    pub reps: usize,
    pub entanglement: Entanglement,
    pub encoding: PhaseEncoding,
}

impl FeatureMapSpec {
    /// Full pairwise entanglement, one repetition.
    pub fn new(n_qubits: usize) -> Self {
        Self { n_qubits, reps: 1, entanglement: Entanglement::Full, encoding: PhaseEncoding::Standard }
    }

    pub fn with_reps(mut self, reps: usize) -> Self {
        self.reps = reps;
        self
    }

    pub fn with_entanglement(mut self, entanglement: Entanglement) -> Self {
        self.entanglement = entanglement;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(1..=MAX_QUBITS).contains(&self.n_qubits) {
            return Err(Error::Config(format!("feature map qubit count {}", self.n_qubits)));
        }
        if self.reps == 0 {
            return Err(Error::Config("feature map reps must be >= 1".into()));
        }
        Ok(())
    }

    /// `reps · (2n + 3·|pairs|)`.
    pub fn gate_count(&self) -> usize {
        let pairs = self.entanglement.pairs(self.n_qubits).len();
        self.reps * (2 * self.n_qubits + 3 * pairs)
    }
}

/// Encodes `z` as a bound circuit. Each repetition applies H on every qubit,
/// `P(2φ(z_j))` on each qubit, then `CNOT(j,k) · P(2φ(z_j,z_k))_k · CNOT(j,k)`
/// for every coupled pair, which equals the ZZ phase up to a global phase.
pub fn build_feature_map(spec: &FeatureMapSpec, z: &[f64]) -> Result<Circuit> {
    spec.validate()?;
    if z.len() != spec.n_qubits {
        return Err(Error::Dimension { expected: spec.n_qubits, actual: z.len() });
    }
    if let Some(bad) = z.iter().position(|v| !v.is_finite()) {
        return Err(Error::Data(format!("feature {bad} is not finite")));
    }
    let pairs = spec.entanglement.pairs(spec.n_qubits);
    let mut circuit = Circuit::new(spec.n_qubits)?;
    for _ in 0..spec.reps {
        for q in 0..spec.n_qubits {
            circuit.push(GateOp::H { qubit: q })?;
        }
        for (q, &zq) in z.iter().enumerate() {
            circuit.push(GateOp::phase(q, 2.0 * spec.encoding.single(zq)))?;
        }
        for &(j, k) in &pairs {
            circuit.push(GateOp::Cnot { control: j, target: k })?;
            circuit.push(GateOp::phase(k, 2.0 * spec.encoding.pair(z[j], z[k])))?;
            circuit.push(GateOp::Cnot { control: j, target: k })?;
        }
    }
    Ok(circuit)
}
