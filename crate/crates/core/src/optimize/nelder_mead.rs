use std::collections::BTreeMap;

use super::{check_common, finish, non_finite, Method, Objective, OptResult, OptimizerConfig, StopReason};
use crate::error::{Error, Result};

/// Classic Nelder-Mead (reflection 1, expansion 2, contraction ½, shrink ½).
/// Serves as a reference minimizer in tests; the benchmark trains with COBYLA.
pub fn nelder_mead_minimize(obj: &mut Objective<'_>, cfg: &OptimizerConfig) -> Result<OptResult> {
    let Method::NelderMead(p) = cfg.method else {
        return Err(Error::Config("nelder_mead_minimize called with a non-Nelder-Mead config".into()));
    };
    let x0 = check_common(obj, cfg)?;
    let budget = cfg.max_iterations;
    let n = x0.len();
    let meta = BTreeMap::from([("initial_step".to_string(), p.initial_step), ("f_tol".to_string(), p.f_tol)]);

    macro_rules! eval {
        ($x:expr) => {{
            if obj.evaluations() >= budget {
                return finish(obj, StopReason::Budget, meta);
            }
            let f = obj.evaluate($x);
            if !f.is_finite() {
                let reason = non_finite(obj, f);
                return finish(obj, reason, meta);
            }
            f
        }};
    }

    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    let f0 = eval!(&x0);
    simplex.push((x0.clone(), f0));
    for j in 0..n {
        let mut x = x0.clone();
        x[j] += p.initial_step;
        let f = eval!(&x);
        simplex.push((x, f));
    }

    loop {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        if simplex[n].1 - simplex[0].1 <= p.f_tol {
            return finish(obj, StopReason::Converged, meta);
        }
        let centroid: Vec<f64> =
            (0..n).map(|i| simplex[..n].iter().map(|(x, _)| x[i]).sum::<f64>() / n as f64).collect();
        let along =
            |t: f64, worst: &[f64]| -> Vec<f64> { centroid.iter().zip(worst).map(|(c, w)| c + t * (w - c)).collect() };
        let worst = simplex[n].0.clone();
        let (f_best, f_second, f_worst) = (simplex[0].1, simplex[n - 1].1, simplex[n].1);

        let xr = along(-1.0, &worst);
        let fr = eval!(&xr);
        if fr < f_best {
            let xe = along(-2.0, &worst);
            let fe = eval!(&xe);
            simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
            continue;
        }
        if fr < f_second {
            simplex[n] = (xr, fr);
            continue;
        }
        let (xc, fc) = if fr < f_worst {
            let xc = along(-0.5, &worst);
            let fc = eval!(&xc);
            (xc, fc)
        } else {
            let xc = along(0.5, &worst);
            let fc = eval!(&xc);
            (xc, fc)
        };
        if fc < f_worst.min(fr) {
            simplex[n] = (xc, fc);
            continue;
        }
        let best = simplex[0].0.clone();
        for vertex in simplex.iter_mut().skip(1) {
            let x: Vec<f64> = best.iter().zip(&vertex.0).map(|(b, v)| b + 0.5 * (v - b)).collect();
            let f = eval!(&x);
            *vertex = (x, f);
        }
    }
}
