//! Simultaneous polynomial root finding (Aberth–Ehrlich) with Newton polishing.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::{Float, Zero};

use crate::error::{Error, Result};

const MAX_ITERATIONS: usize = 500;
const POLISH_STEPS: usize = 3;

/// Value and derivative of the polynomial with ascending coefficients `coeffs` at `z`.
fn eval_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for &a in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// All complex roots of the real polynomial `Σ coeffs[i] x^i`.
pub(crate) fn polynomial_roots(coeffs: &[f64]) -> Result<Vec<Complex64>> {
    let mut coeffs = coeffs.to_vec();
    while coeffs.last().is_some_and(|c| *c == 0.0) {
        coeffs.pop();
    }
    let degree = coeffs.len().saturating_sub(1);
    if degree == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[degree];
    let monic: Vec<Complex64> = coeffs.iter().map(|&c| Complex64::new(c / lead, 0.0)).collect();

    // Start on a circle whose radius is the geometric mean of the root moduli.
    let radius = monic[0].norm().powf(1.0 / degree as f64).max(1e-3);
    let mut roots: Vec<Complex64> = (0..degree)
        .map(|i| {
            let angle = core::f64::consts::TAU * i as f64 / degree as f64 + 0.4;
            Complex64::from_polar(radius, angle)
        })
        .collect();

    let mut converged = false;
    for _ in 0..MAX_ITERATIONS {
        let mut max_step = 0.0f64;
        for i in 0..degree {
            let z = roots[i];
            let (p, dp) = eval_with_derivative(&monic, z);
            if p.is_zero() {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = roots
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, &w)| (z - w).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            roots[i] = z - step;
            max_step = max_step.max(step.norm() / (1.0 + z.norm()));
        }
        if !max_step.is_finite() {
            break;
        }
        if max_step < 1e-15 {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::RootFinding { degree, iterations: MAX_ITERATIONS });
    }

    for root in roots.iter_mut() {
        for _ in 0..POLISH_STEPS {
            let (p, dp) = eval_with_derivative(&monic, *root);
            if dp.is_zero() || p.is_zero() {
                break;
            }
            *root -= p / dp;
        }
    }
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_root() {
        let r = polynomial_roots(&[1.0, 2.0]).unwrap();
        assert_eq!(r.len(), 1);
        assert!((r[0] - Complex64::new(-0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn cubic_with_complex_pair() {
        // (x - 2)(x^2 + 1) = x^3 - 2x^2 + x - 2
        let mut r = polynomial_roots(&[-2.0, 1.0, -2.0, 1.0]).unwrap();
        r.sort_by(|a, b| a.im.partial_cmp(&b.im).unwrap());
        assert!((r[0] - Complex64::new(0.0, -1.0)).norm() < 1e-13);
        assert!((r[1] - Complex64::new(2.0, 0.0)).norm() < 1e-13);
        assert!((r[2] - Complex64::new(0.0, 1.0)).norm() < 1e-13);
    }

    #[test]
    fn constant_has_no_roots() {
        assert!(polynomial_roots(&[3.0]).unwrap().is_empty());
    }
}
