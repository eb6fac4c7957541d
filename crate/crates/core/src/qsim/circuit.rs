use std::fmt;

use serde::{Deserialize, Serialize};

use super::gate::{Angle, GateKind, GateOp};
use super::state::{StateVector, MAX_QUBITS};
use crate::error::{Error, Result};

/// Ordered gate list over a fixed register.
///
/// Symbolic angles refer to slots `0..n_symbolic_params`; a fully bound
/// circuit has no slots left.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Circuit {
    n_qubits: usize,
    ops: Vec<GateOp>,
    n_symbolic_params: usize,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Result<Self> {
        if !(1..=MAX_QUBITS).contains(&n_qubits) {
            return Err(Error::Config(format!("qubit count {n_qubits} outside 1..={MAX_QUBITS}")));
        }
        Ok(Self { n_qubits, ops: Vec::new(), n_symbolic_params: 0 })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn ops(&self) -> &[GateOp] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn n_symbolic_params(&self) -> usize {
        self.n_symbolic_params
    }

    pub fn is_bound(&self) -> bool {
        self.n_symbolic_params == 0
    }

    pub fn count(&self, kind: GateKind) -> usize {
        self.ops.iter().filter(|op| op.kind() == kind).count()
    }

    /// Appends a gate after checking its targets against the register.
    pub fn push(&mut self, op: GateOp) -> Result<&mut Self> {
        op.check_targets(self.n_qubits)?;
        if let Some(Angle::Symbol(slot)) = op.angle() {
            self.n_symbolic_params = self.n_symbolic_params.max(slot + 1);
        }
        self.ops.push(op);
        Ok(self)
    }

    /// Appends an RY whose angle takes the next free parameter slot.
    pub fn push_symbolic_ry(&mut self, qubit: usize) -> Result<usize> {
        let slot = self.n_symbolic_params;
        self.push(GateOp::Ry { qubit, theta: Angle::Symbol(slot) })?;
        Ok(slot)
    }

    /// Appends every gate of `other`, which must share the register size.
    /// Symbol slots of `other` are shifted past the slots already present.
    pub fn extend(&mut self, other: &Circuit) -> Result<&mut Self> {
        if other.n_qubits != self.n_qubits {
            return Err(Error::Dimension { expected: self.n_qubits, actual: other.n_qubits });
        }
        let offset = self.n_symbolic_params;
        for op in &other.ops {
            let shifted = match op.angle() {
                Some(Angle::Symbol(slot)) => op.with_angle(Angle::Symbol(slot + offset)),
                _ => *op,
            };
            self.push(shifted)?;
        }
        Ok(self)
    }

    /// Replaces every symbolic slot `i` with `params[i]`.
    pub fn bind(&self, params: &[f64]) -> Result<Circuit> {
        self.check_param_len(params)?;
        let ops = self
            .ops
            .iter()
            .map(|op| match op.angle() {
                Some(Angle::Symbol(slot)) => op.with_angle(Angle::Bound(params[slot])),
                _ => *op,
            })
            .collect();
        Ok(Circuit { n_qubits: self.n_qubits, ops, n_symbolic_params: 0 })
    }

    /// Runs a fully bound circuit on a copy of `initial`.
    pub fn run(&self, initial: &StateVector) -> Result<StateVector> {
        if !self.is_bound() {
            return Err(Error::Binding(format!("circuit has {} unbound parameter slots", self.n_symbolic_params)));
        }
        let mut state = initial.clone();
        self.apply_with(&mut state, &[])?;
        Ok(state)
    }

    /// Applies the circuit in place, resolving symbolic slots from `params`
    /// without materializing a bound copy.
    pub fn apply_with(&self, state: &mut StateVector, params: &[f64]) -> Result<()> {
        if state.n_qubits() != self.n_qubits {
            return Err(Error::Dimension { expected: self.n_qubits, actual: state.n_qubits() });
        }
        self.check_param_len(params)?;
        for op in &self.ops {
            state.apply_gate_with(op, params)?;
        }
        Ok(())
    }

    fn check_param_len(&self, params: &[f64]) -> Result<()> {
        if params.len() != self.n_symbolic_params {
            return Err(Error::Binding(format!(
                "expected {} parameters, got {}",
                self.n_symbolic_params,
                params.len()
            )));
        }
        Ok(())
    }
}

/// One gate per line, numbered in application order.
impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "circuit: {} qubits, {} gates, {} free parameters",
            self.n_qubits,
            self.ops.len(),
            self.n_symbolic_params
        )?;
        for (i, op) in self.ops.iter().enumerate() {
            writeln!(f, "{i:4}  {op}")?;
        }
        Ok(())
    }
}
