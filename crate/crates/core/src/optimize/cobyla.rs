//! Powell's COBYLA restricted to unconstrained problems.
//!
//! The method keeps a simplex of `n + 1` evaluated points: a pole `x0` with
//! the lowest value and `n` vertices stored as offsets from it. The linear
//! interpolant through the simplex gives a model gradient `g`; each trial
//! step moves the full trust radius `ρ` along `−g`. Badly shaped simplices
//! are repaired by geometry steps, and `ρ` is halved whenever a trial step
//! fails to reduce the loss by at least a tenth of the predicted amount.

use std::collections::BTreeMap;

use super::{check_common, finish, non_finite, Method, Objective, OptResult, OptimizerConfig, StopReason};
use crate::error::{Error, Result};

// Powell's acceptability constants.
const ALPHA: f64 = 0.25;
const BETA: f64 = 2.1;
const GAMMA: f64 = 0.5;
const DELTA: f64 = 1.1;

struct Simplex {
    x0: Vec<f64>,
    f0: f64,
    /// Vertex `j` sits at `x0 + offsets[j]`.
    offsets: Vec<Vec<f64>>,
    values: Vec<f64>,
}

impl Simplex {
    fn point(&self, d: &[f64]) -> Vec<f64> {
        self.x0.iter().zip(d).map(|(a, b)| a + b).collect()
    }

    /// Moves the lowest vertex into the pole position.
    fn promote_best(&mut self) {
        let Some((j, &fj)) = self.values.iter().enumerate().min_by(|a, b| a.1.total_cmp(b.1)) else {
            return;
        };
        if fj >= self.f0 {
            return;
        }
        let shift = self.offsets[j].clone();
        for (i, d) in self.offsets.iter_mut().enumerate() {
            if i == j {
                d.iter_mut().for_each(|v| *v = -*v);
            } else {
                d.iter_mut().zip(&shift).for_each(|(v, s)| *v -= s);
            }
        }
        self.x0.iter_mut().zip(&shift).for_each(|(x, s)| *x += s);
        std::mem::swap(&mut self.f0, &mut self.values[j]);
    }

    /// Inverse of the matrix whose rows are the offsets; column `j` of the
    /// result is orthogonal to every offset except `j`.
    fn inverse(&self) -> Option<Vec<Vec<f64>>> {
        invert(&self.offsets)
    }
}

/// Gauss-Jordan inverse with partial pivoting. `None` if singular.
fn invert(a: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = a.len();
    let mut m: Vec<Vec<f64>> = a.to_vec();
    let mut inv: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
    let scale = a.iter().flatten().fold(0.0f64, |acc, v| acc.max(v.abs()));
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[pivot][col].abs() <= 1e-14 * scale {
            return None;
        }
        m.swap(col, pivot);
        inv.swap(col, pivot);
        let p = m[col][col];
        m[col].iter_mut().for_each(|v| *v /= p);
        inv[col].iter_mut().for_each(|v| *v /= p);
        for row in 0..n {
            if row != col {
                let factor = m[row][col];
                if factor != 0.0 {
                    for k in 0..n {
                        m[row][k] -= factor * m[col][k];
                        inv[row][k] -= factor * inv[col][k];
                    }
                }
            }
        }
    }
    Some(inv)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn column(m: &[Vec<f64>], j: usize) -> Vec<f64> {
    m.iter().map(|row| row[j]).collect()
}

enum Eval {
    Value(f64),
    Stop(StopReason),
}

fn eval(obj: &mut Objective<'_>, x: &[f64], budget: usize) -> Eval {
    if obj.evaluations() >= budget {
        return Eval::Stop(StopReason::Budget);
    }
    let f = obj.evaluate(x);
    if f.is_finite() {
        Eval::Value(f)
    } else {
        Eval::Stop(non_finite(obj, f))
    }
}

macro_rules! value_or_stop {
    ($e:expr, $meta:expr, $obj:expr) => {
        match $e {
            Eval::Value(v) => v,
            Eval::Stop(reason) => return finish($obj, reason, $meta),
        }
    };
}

/// Minimizes `obj` with at most `cfg.max_iterations` evaluations.
pub fn cobyla_minimize(obj: &mut Objective<'_>, cfg: &OptimizerConfig) -> Result<OptResult> {
    let Method::Cobyla(params) = cfg.method else {
        return Err(Error::Config("cobyla_minimize called with a non-COBYLA config".into()));
    };
    if !(params.rho_begin > 0.0 && params.rho_end > 0.0 && params.rho_end <= params.rho_begin) {
        return Err(Error::Config(format!(
            "need 0 < rho_end <= rho_begin, got {} and {}",
            params.rho_end, params.rho_begin
        )));
    }
    let x0 = check_common(obj, cfg)?;
    let budget = cfg.max_iterations;
    let n = x0.len();
    let meta = BTreeMap::from([("rho_begin".to_string(), params.rho_begin), ("rho_end".to_string(), params.rho_end)]);
    let mut rho = params.rho_begin;

    let f0 = value_or_stop!(eval(obj, &x0, budget), meta, obj);
    let mut simplex = Simplex { x0, f0, offsets: Vec::with_capacity(n), values: Vec::with_capacity(n) };
    for j in 0..n {
        let mut d = vec![0.0; n];
        d[j] = rho;
        let f = value_or_stop!(eval(obj, &simplex.point(&d), budget), meta, obj);
        simplex.offsets.push(d);
        simplex.values.push(f);
    }

    // true right after a trial step; the geometry check is skipped until a
    // trial step fails
    let mut after_trial = false;
    loop {
        simplex.promote_best();
        let Some(inv) = simplex.inverse() else {
            // degenerate simplex: rebuild it around the pole
            for j in 0..n {
                let mut d = vec![0.0; n];
                d[j] = rho;
                simplex.values[j] = value_or_stop!(eval(obj, &simplex.point(&d), budget), meta, obj);
                simplex.offsets[j] = d;
            }
            continue;
        };
        let normals: Vec<Vec<f64>> = (0..n).map(|j| column(&inv, j)).collect();
        let par_sig = ALPHA * rho;
        let par_eta = BETA * rho;
        let sig: Vec<f64> = normals.iter().map(|c| 1.0 / norm(c)).collect();
        let eta: Vec<f64> = simplex.offsets.iter().map(|d| norm(d)).collect();
        let acceptable = sig.iter().all(|&s| s >= par_sig) && eta.iter().all(|&e| e <= par_eta);

        if !after_trial && !acceptable {
            // geometry step: replace the worst-shaped vertex
            let drop = if eta.iter().any(|&e| e > par_eta) { argmax(&eta) } else { argmin(&sig) };
            let step: Vec<f64> = normals[drop].iter().map(|v| GAMMA * rho * sig[drop] * v).collect();
            let f = value_or_stop!(eval(obj, &simplex.point(&step), budget), meta, obj);
            simplex.offsets[drop] = step;
            simplex.values[drop] = f;
            continue;
        }

        let diffs: Vec<f64> = simplex.values.iter().map(|f| f - simplex.f0).collect();
        let grad: Vec<f64> = inv.iter().map(|row| dot(row, &diffs)).collect();
        let gnorm = norm(&grad);
        let mut improved = false;
        if gnorm > 0.0 {
            let step: Vec<f64> = grad.iter().map(|g| -rho * g / gnorm).collect();
            after_trial = true;
            let f_new = value_or_stop!(eval(obj, &simplex.point(&step), budget), meta, obj);
            let predicted = rho * gnorm;
            let actual = simplex.f0 - f_new;

            let mut drop = None;
            let mut ratio = if actual <= 0.0 { 1.0 } else { 0.0 };
            let mut sig_bar = vec![0.0; n];
            for j in 0..n {
                let weight = dot(&normals[j], &step).abs();
                if weight > ratio {
                    drop = Some(j);
                    ratio = weight;
                }
                sig_bar[j] = weight * sig[j];
            }
            let mut edge_max = DELTA * rho;
            let mut far = None;
            for j in 0..n {
                if sig_bar[j] >= par_sig || sig_bar[j] >= sig[j] {
                    let dist = if actual > 0.0 {
                        norm(&step.iter().zip(&simplex.offsets[j]).map(|(a, b)| a - b).collect::<Vec<_>>())
                    } else {
                        eta[j]
                    };
                    if dist > edge_max {
                        far = Some(j);
                        edge_max = dist;
                    }
                }
            }
            if far.is_some() {
                drop = far;
            }
            if let Some(j) = drop {
                simplex.offsets[j] = step;
                simplex.values[j] = f_new;
                improved = actual > 0.0 && actual >= 0.1 * predicted;
            }
        } else {
            after_trial = true;
        }
        if improved {
            continue;
        }

        if !acceptable {
            after_trial = false;
            continue;
        }
        if rho <= params.rho_end {
            return finish(obj, StopReason::Converged, meta);
        }
        rho *= 0.5;
        if rho <= 1.5 * params.rho_end {
            rho = params.rho_end;
        }
    }
}

fn argmax(v: &[f64]) -> usize {
    (0..v.len()).max_by(|&i, &j| v[i].total_cmp(&v[j])).unwrap_or(0)
}

fn argmin(v: &[f64]) -> usize {
    (0..v.len()).min_by(|&i, &j| v[i].total_cmp(&v[j])).unwrap_or(0)
}
