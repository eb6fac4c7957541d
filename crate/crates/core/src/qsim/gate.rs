use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Rotation angle in radians, either fixed or a slot awaiting binding.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Angle {
    Bound(f64),
    Symbol(usize),
}

impl Angle {
    pub fn is_symbolic(&self) -> bool {
        matches!(self, Angle::Symbol(_))
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Angle::Bound(v) => write!(f, "{v:.6}"),
            Angle::Symbol(slot) => write!(f, "θ[{slot}]"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GateKind {
    H,
    Ry,
    Phase,
    Cnot,
}

/// One gate of the four-gate set used by the feature map and ansatz.
///
/// `Phase` is `diag(1, e^{iλ})`. `Ry` is `exp(-iθY/2)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum GateOp {
    H { qubit: usize },
    Ry { qubit: usize, theta: Angle },
    Phase { qubit: usize, lambda: Angle },
    Cnot { control: usize, target: usize },
}

impl GateOp {
    pub fn ry(qubit: usize, theta: f64) -> Self {
        GateOp::Ry { qubit, theta: Angle::Bound(theta) }
    }

    pub fn phase(qubit: usize, lambda: f64) -> Self {
        GateOp::Phase { qubit, lambda: Angle::Bound(lambda) }
    }

    pub fn kind(&self) -> GateKind {
        match self {
            GateOp::H { .. } => GateKind::H,
            GateOp::Ry { .. } => GateKind::Ry,
            GateOp::Phase { .. } => GateKind::Phase,
            GateOp::Cnot { .. } => GateKind::Cnot,
        }
    }

    /// Qubits acted on; for CNOT the control comes first.
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            GateOp::H { qubit } | GateOp::Ry { qubit, .. } | GateOp::Phase { qubit, .. } => {
                vec![qubit]
            }
            GateOp::Cnot { control, target } => vec![control, target],
        }
    }

    pub fn angle(&self) -> Option<Angle> {
        match *self {
            GateOp::Ry { theta, .. } => Some(theta),
            GateOp::Phase { lambda, .. } => Some(lambda),
            _ => None,
        }
    }

    pub(crate) fn with_angle(self, angle: Angle) -> Self {
        match self {
            GateOp::Ry { qubit, .. } => GateOp::Ry { qubit, theta: angle },
            GateOp::Phase { qubit, .. } => GateOp::Phase { qubit, lambda: angle },
            other => other,
        }
    }

    pub(crate) fn check_targets(&self, n_qubits: usize) -> Result<()> {
        let qubits = self.qubits();
        if let Some(&q) = qubits.iter().find(|&&q| q >= n_qubits) {
            return Err(Error::Structural(format!(
                "{:?} targets qubit {q} on a {n_qubits}-qubit register",
                self.kind()
            )));
        }
        if qubits.len() == 2 && qubits[0] == qubits[1] {
            return Err(Error::Structural(format!("CNOT control and target are both qubit {}", qubits[0])));
        }
        Ok(())
    }

    /// Row-major unitary on the local subspace of [`GateOp::qubits`].
    ///
    /// For two-qubit gates the local basis index is `bit(qubits[0]) | bit(qubits[1]) << 1`.
    pub fn matrix(&self) -> Result<Vec<Complex64>> {
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let bound = |angle: Angle| match angle {
            Angle::Bound(v) => Ok(v),
            Angle::Symbol(slot) => Err(Error::Binding(format!("parameter slot {slot} is unbound"))),
        };
        Ok(match *self {
            GateOp::H { .. } => {
                let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
                vec![s, s, s, -s]
            }
            GateOp::Ry { theta, .. } => {
                let (sin, cos) = (bound(theta)? / 2.0).sin_cos();
                vec![
                    Complex64::new(cos, 0.0),
                    Complex64::new(-sin, 0.0),
                    Complex64::new(sin, 0.0),
                    Complex64::new(cos, 0.0),
                ]
            }
            GateOp::Phase { lambda, .. } => {
                vec![one, zero, zero, Complex64::from_polar(1.0, bound(lambda)?)]
            }
            GateOp::Cnot { .. } => {
                // control = local bit 0; flips local bit 1 when it is set
                let mut m = vec![zero; 16];
                for col in 0..4usize {
                    let row = if col & 1 == 1 { col ^ 2 } else { col };
                    m[row * 4 + col] = one;
                }
                m
            }
        })
    }
}

impl fmt::Display for GateOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GateOp::H { qubit } => write!(f, "H     q{qubit}"),
            GateOp::Ry { qubit, theta } => write!(f, "RY    q{qubit}  {theta}"),
            GateOp::Phase { qubit, lambda } => write!(f, "P     q{qubit}  {lambda}"),
            GateOp::Cnot { control, target } => write!(f, "CNOT  q{control} -> q{target}"),
        }
    }
}
