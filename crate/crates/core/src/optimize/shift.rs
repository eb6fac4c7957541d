use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

/// `∂E/∂θ_k = [E(θ + π/2·e_k) − E(θ − π/2·e_k)] / 2`.
///
/// Exact when `θ_k` enters the circuit only through RY rotations (generator
/// with eigenvalues ±½).
pub fn parameter_shift_gradient<F>(expectation: F, theta: &[f64], k: usize) -> Result<f64>
where
    F: Fn(&[f64]) -> Result<f64>,
{
    if k >= theta.len() {
        return Err(Error::Structural(format!("parameter index {k} out of range for {} parameters", theta.len())));
    }
    let mut shifted = theta.to_vec();
    shifted[k] = theta[k] + FRAC_PI_2;
    let plus = expectation(&shifted)?;
    shifted[k] = theta[k] - FRAC_PI_2;
    let minus = expectation(&shifted)?;
    Ok(0.5 * (plus - minus))
}

/// Full gradient by repeated shifts.
pub fn parameter_shift_gradients<F>(expectation: F, theta: &[f64]) -> Result<Vec<f64>>
where
    F: Fn(&[f64]) -> Result<f64>,
{
    (0..theta.len()).map(|k| parameter_shift_gradient(&expectation, theta, k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsim::{parity_expectation, GateOp, StateVector};

    fn cos_expectation(theta: &[f64]) -> Result<f64> {
        let mut s = StateVector::zero(1)?;
        s.apply_gate(&GateOp::ry(0, theta[0]))?;
        Ok(parity_expectation(&s))
    }

    #[test]
    fn single_qubit_cosine() {
        assert!(parameter_shift_gradient(cos_expectation, &[0.0], 0).unwrap().abs() < 1e-15);
        let g = parameter_shift_gradient(cos_expectation, &[FRAC_PI_2], 0).unwrap();
        assert!((g + 1.0).abs() < 1e-14);
    }

    #[test]
    fn index_out_of_range() {
        assert!(matches!(parameter_shift_gradient(cos_expectation, &[0.0], 1), Err(Error::Structural(_))));
    }

    #[test]
    fn full_gradient_length() {
        let f = |t: &[f64]| Ok(t[0].cos() * t[1].cos());
        let g = parameter_shift_gradients(f, &[0.3, 1.1]).unwrap();
        assert!((g[0] + 0.3f64.sin() * 1.1f64.cos()).abs() < 1e-14);
        assert!((g[1] + 0.3f64.cos() * 1.1f64.sin()).abs() < 1e-14);
    }
}
