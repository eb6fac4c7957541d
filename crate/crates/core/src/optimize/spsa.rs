use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{check_common, finish, non_finite, Method, Objective, OptResult, OptimizerConfig, StopReason};
use crate::error::{Error, Result};

/// Simultaneous-perturbation stochastic approximation with Rademacher
/// perturbations. Evaluates the start point, two perturbed points per
/// iteration and the final iterate.
pub fn spsa_minimize(obj: &mut Objective<'_>, cfg: &OptimizerConfig) -> Result<OptResult> {
    let Method::Spsa(p) = cfg.method else {
        return Err(Error::Config("spsa_minimize called with a non-SPSA config".into()));
    };
    if !(p.a > 0.0 && p.c > 0.0 && p.stability >= 0.0) {
        return Err(Error::Config("SPSA gains need a > 0, c > 0, A >= 0".into()));
    }
    let mut theta = check_common(obj, cfg)?;
    let meta = BTreeMap::from([
        ("a".to_string(), p.a),
        ("c".to_string(), p.c),
        ("A".to_string(), p.stability),
        ("alpha".to_string(), p.alpha),
        ("gamma".to_string(), p.gamma),
    ]);
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);

    macro_rules! eval {
        ($x:expr) => {{
            let f = obj.evaluate($x);
            if !f.is_finite() {
                let reason = non_finite(obj, f);
                return finish(obj, reason, meta);
            }
            f
        }};
    }

    eval!(&theta);
    let n = theta.len();
    let mut plus = vec![0.0; n];
    let mut minus = vec![0.0; n];
    for k in 0..cfg.max_iterations {
        let kf = k as f64;
        let a_k = p.a / (kf + 1.0 + p.stability).powf(p.alpha);
        let c_k = p.c / (kf + 1.0).powf(p.gamma);
        let delta: Vec<f64> = (0..n).map(|_| if rng.random::<bool>() { 1.0 } else { -1.0 }).collect();
        for i in 0..n {
            plus[i] = theta[i] + c_k * delta[i];
            minus[i] = theta[i] - c_k * delta[i];
        }
        let f_plus = eval!(&plus);
        let f_minus = eval!(&minus);
        let scale = (f_plus - f_minus) / (2.0 * c_k);
        for i in 0..n {
            // Rademacher: 1/Δ_i = Δ_i
            theta[i] -= a_k * scale * delta[i];
        }
    }
    eval!(&theta);
    finish(obj, StopReason::Budget, meta)
}
