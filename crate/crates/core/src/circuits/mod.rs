//! Feature-map and ansatz circuit builders.

mod ansatz;
mod feature_map;

use serde::{Deserialize, Serialize};

pub use ansatz::{build_ansatz, AnsatzSpec, ParamVector};
pub use feature_map::{build_feature_map, FeatureMapSpec, PhaseEncoding};

/// Which qubit pairs are coupled by two-qubit gates.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Entanglement {
    #[default]
    Linear,
    Full,
}

impl Entanglement {
    /// Ordered `(j, k)` pairs with `j < k`: nearest neighbours for `Linear`,
    /// all pairs in lexicographic order for `Full`.
    pub fn pairs(self, n_qubits: usize) -> Vec<(usize, usize)> {
        match self {
            Entanglement::Linear => (1..n_qubits).map(|k| (k - 1, k)).collect(),
            Entanglement::Full => (0..n_qubits).flat_map(|j| (j + 1..n_qubits).map(move |k| (j, k))).collect(),
        }
    }
}
