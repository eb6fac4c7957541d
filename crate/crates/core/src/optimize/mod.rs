//! Derivative-free minimizers (COBYLA, SPSA, Nelder-Mead) and the
//! parameter-shift gradient rule.

mod cobyla;
mod nelder_mead;
mod shift;
mod spsa;

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use cobyla::cobyla_minimize;
pub use nelder_mead::nelder_mead_minimize;
pub use shift::{parameter_shift_gradient, parameter_shift_gradients};
pub use spsa::spsa_minimize;

type LossFn<'a> = Box<dyn FnMut(&[f64]) -> f64 + Send + 'a>;

/// A scalar loss over a fixed number of parameters that records every
/// evaluation.
pub struct Objective<'a> {
    arity: usize,
    f: LossFn<'a>,
    evaluations: usize,
    history: Vec<(usize, f64)>,
    best: Option<(Vec<f64>, f64)>,
}

impl<'a> Objective<'a> {
    pub fn new(arity: usize, f: impl FnMut(&[f64]) -> f64 + Send + 'a) -> Self {
        Self { arity, f: Box::new(f), evaluations: 0, history: Vec::new(), best: None }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn evaluations(&self) -> usize {
        self.evaluations
    }

    /// `(evaluation index, loss)` for every finite evaluation so far.
    pub fn history(&self) -> &[(usize, f64)] {
        &self.history
    }

    pub fn best(&self) -> Option<(&[f64], f64)> {
        self.best.as_ref().map(|(x, f)| (x.as_slice(), *f))
    }

    /// Evaluates the loss at `x`. Non-finite values are returned but not
    /// recorded in the history.
    pub fn evaluate(&mut self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.arity);
        let value = (self.f)(x);
        let index = self.evaluations;
        self.evaluations += 1;
        if value.is_finite() {
            self.history.push((index, value));
            if self.best.as_ref().is_none_or(|(_, b)| value < *b) {
                self.best = Some((x.to_vec(), value));
            }
        }
        value
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CobylaParams {
    pub rho_begin: f64,
    pub rho_end: f64,
}

impl Default for CobylaParams {
    fn default() -> Self {
        Self { rho_begin: 1.0, rho_end: 1e-4 }
    }
}

/// Gains `a_k = a / (k + 1 + A)^α` and `c_k = c / (k + 1)^γ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpsaParams {
    pub a: f64,
    pub c: f64,
    pub stability: f64,
    pub alpha: f64,
    pub gamma: f64,
    pub seed: u64,
}

impl Default for SpsaParams {
    fn default() -> Self {
        Self { a: 0.2, c: 0.1, stability: 10.0, alpha: 0.602, gamma: 0.101, seed: 0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NelderMeadParams {
    /// Edge length of the initial simplex.
    pub initial_step: f64,
    /// Stop once the spread of simplex values falls below this.
    pub f_tol: f64,
}

impl Default for NelderMeadParams {
    fn default() -> Self {
        Self { initial_step: 0.5, f_tol: 1e-14 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum Method {
    Cobyla(CobylaParams),
    Spsa(SpsaParams),
    NelderMead(NelderMeadParams),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitialPoint {
    Given(Vec<f64>),
    /// Each coordinate uniform on `[0, 2π)`.
    UniformPeriod {
        seed: u64,
    },
}

impl InitialPoint {
    pub fn resolve(&self, arity: usize) -> Result<Vec<f64>> {
        match self {
            InitialPoint::Given(x) if x.len() == arity => Ok(x.clone()),
            InitialPoint::Given(x) => Err(Error::Dimension { expected: arity, actual: x.len() }),
            InitialPoint::UniformPeriod { seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                Ok((0..arity).map(|_| rng.random_range(0.0..TAU)).collect())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    pub method: Method,
    pub max_iterations: usize,
    pub initial_point: InitialPoint,
}

impl OptimizerConfig {
    pub fn cobyla(max_iterations: usize, initial_point: InitialPoint) -> Self {
        Self { method: Method::Cobyla(CobylaParams::default()), max_iterations, initial_point }
    }

    pub fn spsa(max_iterations: usize, initial_point: InitialPoint, params: SpsaParams) -> Self {
        Self { method: Method::Spsa(params), max_iterations, initial_point }
    }

    pub fn nelder_mead(max_iterations: usize, initial_point: InitialPoint) -> Self {
        Self { method: Method::NelderMead(NelderMeadParams::default()), max_iterations, initial_point }
    }

    /// Upper bound on objective evaluations for one run.
    pub fn evaluation_budget(&self) -> usize {
        match self.method {
            Method::Cobyla(_) | Method::NelderMead(_) => self.max_iterations,
            // initial point, two per iteration, final iterate
            Method::Spsa(_) => 2 * self.max_iterations + 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    /// Evaluation budget used up.
    Budget,
    /// Trust radius or simplex spread reached its lower limit.
    Converged,
    /// The objective produced a non-finite value.
    NonFinite { evaluation: usize, value: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptResult {
    pub best_params: Vec<f64>,
    pub best_loss: f64,
    pub loss_history: Vec<(usize, f64)>,
    pub evaluations_used: usize,
    pub stop: StopReason,
    /// Method constants echoed back, e.g. `alpha`, `gamma` for SPSA.
    pub metadata: BTreeMap<String, f64>,
}

/// Runs whichever method `cfg` names.
pub fn minimize(obj: &mut Objective<'_>, cfg: &OptimizerConfig) -> Result<OptResult> {
    match cfg.method {
        Method::Cobyla(_) => cobyla_minimize(obj, cfg),
        Method::Spsa(_) => spsa_minimize(obj, cfg),
        Method::NelderMead(_) => nelder_mead_minimize(obj, cfg),
    }
}

fn check_common(obj: &Objective<'_>, cfg: &OptimizerConfig) -> Result<Vec<f64>> {
    if obj.arity() == 0 {
        return Err(Error::Config("objective must have at least one parameter".into()));
    }
    if cfg.max_iterations == 0 {
        return Err(Error::Config("max_iterations must be >= 1".into()));
    }
    if obj.evaluations() != 0 {
        return Err(Error::Config("objective has already been evaluated".into()));
    }
    cfg.initial_point.resolve(obj.arity())
}

fn finish(obj: &Objective<'_>, stop: StopReason, metadata: BTreeMap<String, f64>) -> Result<OptResult> {
    let (best_params, best_loss) =
        obj.best().ok_or_else(|| Error::Data(format!("optimization aborted before any finite loss ({stop:?})")))?;
    Ok(OptResult {
        best_params: best_params.to_vec(),
        best_loss,
        loss_history: obj.history().to_vec(),
        evaluations_used: obj.evaluations(),
        stop,
        metadata,
    })
}

fn non_finite(obj: &Objective<'_>, value: f64) -> StopReason {
    StopReason::NonFinite { evaluation: obj.evaluations() - 1, value: value.to_string() }
}
