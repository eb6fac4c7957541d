//! Variational quantum classifier: ZZ feature map, RealAmplitudes ansatz and
//! parity readout, trained by a derivative-free optimizer on binary
//! cross-entropy.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circuits::{build_ansatz, build_feature_map, AnsatzSpec, FeatureMapSpec, ParamVector};
use crate::error::{Error, Result};
use crate::optimize::{minimize, Objective, OptResult, OptimizerConfig};
use crate::preprocess::{Label, Sample};
use crate::qsim::{sample_counts, signal_probability, Circuit, StateVector};

/// Probabilities are clamped to `[EPS, 1 − EPS]` inside the logarithms.
pub const PROB_CLAMP: f64 = 1e-12;

/// How the signal probability is read from the final state.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Readout {
    #[default]
    Exact,
    /// Even-parity frequency over `shots` seeded samples.
    Shots { shots: u64, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VqcModel {
    pub feature_map: FeatureMapSpec,
    pub ansatz: AnsatzSpec,
    pub params: ParamVector,
    pub threshold: f64,
    #[serde(default)]
    pub readout: Readout,
}

impl VqcModel {
    /// Model with all-zero angles and threshold 0.5.
    pub fn new(feature_map: FeatureMapSpec, ansatz: AnsatzSpec) -> Result<Self> {
        feature_map.validate()?;
        ansatz.validate()?;
        if feature_map.n_qubits != ansatz.n_qubits {
            return Err(Error::Dimension { expected: feature_map.n_qubits, actual: ansatz.n_qubits });
        }
        let params = ParamVector::zeros(&ansatz);
        Ok(Self { feature_map, ansatz, params, threshold: 0.5, readout: Readout::Exact })
    }

    pub fn with_params(mut self, params: ParamVector) -> Result<Self> {
        if params.len() != self.ansatz.parameter_count() {
            return Err(Error::Binding(format!(
                "model needs {} parameters, got {}",
                self.ansatz.parameter_count(),
                params.len()
            )));
        }
        self.params = params;
        Ok(self)
    }

    pub fn n_qubits(&self) -> usize {
        self.ansatz.n_qubits
    }

    pub fn n_params(&self) -> usize {
        self.ansatz.parameter_count()
    }

    /// `P(ŷ = 1 | z)`.
    pub fn forward(&self, z: &[f64]) -> Result<f64> {
        let ansatz = build_ansatz(&self.ansatz)?;
        let encoded = self.encode(z)?;
        self.readout(&ansatz, &encoded, &self.params)
    }

    pub fn predict(&self, z: &[f64]) -> Result<Label> {
        Ok(self.label_for(self.forward(z)?))
    }

    /// Applies the decision rule; ties go to the signal class.
    pub fn label_for(&self, probability: f64) -> Label {
        if probability >= self.threshold {
            Label::Signal
        } else {
            Label::Background
        }
    }

    /// Signal probability for every sample, in input order.
    pub fn probabilities(&self, data: &[Sample]) -> Result<Vec<f64>> {
        let ansatz = build_ansatz(&self.ansatz)?;
        data.par_iter()
            .map(|s| {
                let encoded = self.encode(&s.features)?;
                self.readout(&ansatz, &encoded, &self.params)
            })
            .collect()
    }

    pub fn predictions(&self, data: &[Sample]) -> Result<Vec<Label>> {
        Ok(self.probabilities(data)?.into_iter().map(|p| self.label_for(p)).collect())
    }

    pub fn loss(&self, data: &[Sample]) -> Result<f64> {
        if data.is_empty() {
            return Err(Error::Data("loss over an empty dataset".into()));
        }
        let probs = self.probabilities(data)?;
        Ok(mean_cross_entropy(probs.iter().zip(data).map(|(&p, s)| (p, s.label))))
    }

    pub fn evaluate(&self, data: &[Sample]) -> Result<Metrics> {
        let truth: Vec<Label> = data.iter().map(|s| s.label).collect();
        Ok(Metrics::from_labels(&truth, &self.predictions(data)?))
    }

    /// Trains the ansatz angles and returns the model at the best point seen.
    pub fn fit(&self, train: &[Sample], cfg: &OptimizerConfig) -> Result<(VqcModel, OptResult)> {
        if train.is_empty() {
            return Err(Error::Data("cannot fit on an empty training set".into()));
        }
        let ansatz = build_ansatz(&self.ansatz)?;
        let encoded: Vec<(StateVector, Label)> =
            train.iter().map(|s| Ok((self.encode(&s.features)?, s.label))).collect::<Result<_>>()?;
        let mut objective = Objective::new(self.n_params(), |theta: &[f64]| {
            let probs: Result<Vec<f64>> =
                encoded.par_iter().map(|(state, _)| self.readout(&ansatz, state, theta)).collect();
            match probs {
                Ok(p) => mean_cross_entropy(p.into_iter().zip(encoded.iter().map(|e| e.1))),
                Err(_) => f64::NAN,
            }
        });
        let result = minimize(&mut objective, cfg)?;
        let params = ParamVector::for_ansatz(&self.ansatz, result.best_params.clone())?;
        Ok((self.clone().with_params(params)?, result))
    }

    fn encode(&self, z: &[f64]) -> Result<StateVector> {
        let map = build_feature_map(&self.feature_map, z)?;
        map.run(&StateVector::zero(self.n_qubits())?)
    }

    fn readout(&self, ansatz: &Circuit, encoded: &StateVector, theta: &[f64]) -> Result<f64> {
        let mut state = encoded.clone();
        ansatz.apply_with(&mut state, theta)?;
        Ok(match self.readout {
            Readout::Exact => signal_probability(&state),
            Readout::Shots { shots, seed } => {
                let counts = sample_counts(&state, shots, seed)?;
                0.5 * (1.0 + counts.parity_estimate())
            }
        })
    }
}

/// `−[y ln p + (1 − y) ln(1 − p)]` with `p` clamped away from 0 and 1.
pub fn cross_entropy(p: f64, y: Label) -> f64 {
    let p = p.clamp(PROB_CLAMP, 1.0 - PROB_CLAMP);
    match y {
        Label::Signal => -p.ln(),
        Label::Background => -(1.0 - p).ln(),
    }
}

/// Mean cross-entropy, summed in iteration order.
pub fn mean_cross_entropy(pairs: impl IntoIterator<Item = (f64, Label)>) -> f64 {
    let (sum, n) = pairs.into_iter().fold((0.0, 0usize), |(s, n), (p, y)| (s + cross_entropy(p, y), n + 1));
    sum / n as f64
}

/// Binary classification summary; `confusion_matrix` is `[[TN, FP], [FN, TP]]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub accuracy: f64,
    pub confusion_matrix: [[u64; 2]; 2],
    pub n_events: u64,
}

impl Metrics {
    pub fn from_labels(truth: &[Label], predicted: &[Label]) -> Self {
        assert_eq!(truth.len(), predicted.len(), "label slices differ in length");
        let mut cm = [[0u64; 2]; 2];
        for (&t, &p) in truth.iter().zip(predicted) {
            cm[t.as_u8() as usize][p.as_u8() as usize] += 1;
        }
        let n_events = truth.len() as u64;
        let correct = cm[0][0] + cm[1][1];
        let accuracy = if n_events == 0 { 0.0 } else { correct as f64 / n_events as f64 };
        Self { accuracy, confusion_matrix: cm, n_events }
    }

    pub fn true_negatives(&self) -> u64 {
        self.confusion_matrix[0][0]
    }

    pub fn false_positives(&self) -> u64 {
        self.confusion_matrix[0][1]
    }

    pub fn false_negatives(&self) -> u64 {
        self.confusion_matrix[1][0]
    }

    pub fn true_positives(&self) -> u64 {
        self.confusion_matrix[1][1]
    }
}
