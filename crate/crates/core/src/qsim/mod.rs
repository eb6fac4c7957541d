//! Dense statevector simulation over the gate set {H, RY, PHASE, CNOT}.
//!
//! Gates are applied by strided in-place updates of amplitude pairs; the
//! full 2ⁿ×2ⁿ operator is never formed.

mod circuit;
mod gate;
mod readout;
mod state;

pub use circuit::Circuit;
pub use gate::{Angle, GateKind, GateOp};
pub use readout::{parity_expectation, sample_counts, signal_probability, Counts};
pub use state::{StateVector, MAX_QUBITS};
