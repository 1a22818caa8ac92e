//! Daubechies filters `H_m(ω) = 2^{-1/2} Σ_ℓ h_m(ℓ) e^{iℓω}`.
//!
//! Two independent descriptions are provided: the closed trigonometric form of
//! `|H_m|²` (and its integral representation), which needs no taps at all, and
//! the tap form obtained by spectral factorization. The tap form is validated
//! against the closed form before it is handed out.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2, TAU};

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::{Float, Zero};

use crate::error::{Error, Result};
use crate::roots::polynomial_roots;
use crate::special::{binomial, cm_constant};

/// Largest order accepted by [`construct_filter`]. Beyond this the root finder
/// works on a polynomial too ill-conditioned for double precision.
pub const MAX_FILTER_ORDER: u32 = 16;

/// Largest order accepted by the tap-free closed forms.
pub const MAX_ORDER: u32 = 32;

/// Residual tolerance a constructed filter must meet on both checks.
pub const CONSTRUCTION_TOLERANCE: f64 = 1e-10;

const RESIDUAL_GRID: usize = 2048;

/// A Daubechies filter of order `m`: `2m` real taps, minimum phase.
#[derive(Debug, Clone, PartialEq)]
pub struct FilterSpec {
    m: u32,
    taps: Vec<f64>,
}

impl FilterSpec {
    pub fn order(&self) -> u32 {
        self.m
    }

    pub fn taps(&self) -> &[f64] {
        &self.taps
    }

    /// `H_m(ω)` evaluated from the taps.
    pub fn eval(&self, omega: f64) -> Complex64 {
        let z = Complex64::from_polar(1.0, omega);
        let mut acc = Complex64::zero();
        for &h in self.taps.iter().rev() {
            acc = acc * z + h;
        }
        acc * FRAC_1_SQRT_2
    }

    /// `max_ω | |H(ω)|² - magnitude_squared_h(m, ω) |` over an equispaced grid of `[0, 2π)`.
    pub fn reconstruction_residual(&self, points: usize) -> f64 {
        (0..points)
            .map(|i| {
                let omega = TAU * i as f64 / points as f64;
                (self.eval(omega).norm_sqr() - magnitude_squared_h(self.m, omega)).abs()
            })
            .fold(0.0, f64::max)
    }

    /// `max_n |Σ_ℓ h(ℓ) h(ℓ + 2n) - δ_{n0}|`.
    pub fn orthonormality_residual(&self) -> f64 {
        let len = self.taps.len();
        (0..len.div_ceil(2))
            .map(|n| {
                let shift = 2 * n;
                let dot: f64 = self.taps[..len - shift]
                    .iter()
                    .zip(&self.taps[shift..])
                    .map(|(a, b)| a * b)
                    .sum();
                let target = if n == 0 { 1.0 } else { 0.0 };
                (dot - target).abs()
            })
            .fold(0.0, f64::max)
    }
}

/// `P_{m-1}(x) = Σ_{k<m} C(m-1+k, k) x^k` by Horner's rule.
pub fn eval_p(m: u32, x: f64) -> f64 {
    (0..m).rev().fold(0.0, |acc, k| {
        let c = binomial(m - 1 + k, k).map(|c| c as f64).unwrap_or(f64::INFINITY);
        acc * x + c
    })
}

/// `|H_m(ω)|² = cos^{2m}(ω/2) · P_{m-1}(sin²(ω/2))`.
pub fn magnitude_squared_h(m: u32, omega: f64) -> f64 {
    let (s, c) = (0.5 * omega).sin_cos();
    (c * c).powi(m as i32) * eval_p(m, s * s)
}

/// `|H_m(ω + π)|² = sin^{2m}(ω/2) · P_{m-1}(cos²(ω/2))`.
///
/// Same quantity as `magnitude_squared_h(m, ω + π)` without the cancellation
/// of evaluating `cos` near `π/2`, so it keeps full relative accuracy near
/// `ω = 0` where the zero of order `2m` sits.
pub fn magnitude_squared_h_shifted(m: u32, omega: f64) -> f64 {
    let (s, c) = (0.5 * omega).sin_cos();
    (s * s).powi(m as i32) * eval_p(m, c * c)
}

/// Reduce `ω` to `[0, π]` using evenness and `2π`-periodicity.
pub(crate) fn fold_to_half_period(omega: f64) -> f64 {
    let r = omega.abs() % TAU;
    if r > PI {
        TAU - r
    } else {
        r
    }
}

/// `∫₀^ω sin^n t dt` for odd `n` through the reduction formula.
fn odd_sine_power_integral(n: u32, omega: f64) -> f64 {
    let (s, c) = omega.sin_cos();
    let half = (0.5 * omega).sin();
    let mut acc = 2.0 * half * half; // 1 - cos ω
    let mut power = 1;
    while power < n {
        power += 2;
        let p = f64::from(power);
        acc = -s.powi(power as i32 - 1) * c / p + (p - 1.0) / p * acc;
    }
    acc
}

/// `|H_m(ω)|² = 1 - c_m ∫₀^ω sin^{2m-1} t dt`, the integral representation.
pub fn magnitude_squared_h_integral(m: u32, omega: f64) -> f64 {
    if m == 0 {
        return 1.0;
    }
    let w = fold_to_half_period(omega);
    1.0 - cm_constant(m) * odd_sine_power_integral(2 * m - 1, w)
}

/// Spectral factorization of `|H_m|²` into minimum-phase real taps.
///
/// With `y = sin²(ω/2)` and `z = e^{iω}` one has `y = (2 - z - 1/z) / 4`, so
/// every root `y_j` of `P_{m-1}` yields the reciprocal pair solving
/// `z + 1/z = 2 - 4 y_j`. The member inside the unit circle is kept, giving the
/// tap polynomial `(1 + z)^m Π_j (1 - z_j z)` up to normalization. The zeros
/// of `Σ_ℓ h(ℓ) z^{-ℓ}` are then `-1` (order `m`) and the `z_j`, all inside or
/// on the unit circle.
pub fn construct_filter(m: u32) -> Result<FilterSpec> {
    if m == 0 || m > MAX_FILTER_ORDER {
        return Err(Error::Domain("filter order must lie in 1..=16"));
    }
    let p_coeffs: Vec<f64> = (0..m)
        .map(|k| binomial(m - 1 + k, k).map(|c| c as f64))
        .collect::<Result<_>>()?;
    let y_roots = polynomial_roots(&p_coeffs)?;

    let mut poly = vec![Complex64::new(1.0, 0.0)];
    for y in y_roots {
        let b = Complex64::new(2.0, 0.0) - y * 4.0;
        let disc = (b * b - 4.0).sqrt();
        let z1 = (b + disc) * 0.5;
        let z2 = (b - disc) * 0.5;
        let inner = if z1.norm() < z2.norm() { z1 } else { z2 };
        poly = multiply_linear(&poly, Complex64::new(1.0, 0.0), -inner);
    }
    for _ in 0..m {
        poly = multiply_linear(&poly, Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0));
    }

    let scale = poly.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let imag = poly.iter().map(|c| c.im.abs()).fold(0.0, f64::max) / scale;
    if imag > CONSTRUCTION_TOLERANCE {
        return Err(Error::FilterConstruction { m, residual: imag, tolerance: CONSTRUCTION_TOLERANCE });
    }
    let sum: f64 = poly.iter().map(|c| c.re).sum();
    let taps = poly.iter().map(|c| c.re * SQRT_2 / sum).collect();
    let filter = FilterSpec { m, taps };

    let residual = filter
        .reconstruction_residual(RESIDUAL_GRID)
        .max(filter.orthonormality_residual());
    if !(residual <= CONSTRUCTION_TOLERANCE) {
        return Err(Error::FilterConstruction { m, residual, tolerance: CONSTRUCTION_TOLERANCE });
    }
    Ok(filter)
}

/// `poly(z) · (c0 + c1 z)` for ascending coefficients.
fn multiply_linear(poly: &[Complex64], c0: Complex64, c1: Complex64) -> Vec<Complex64> {
    let mut out = vec![Complex64::zero(); poly.len() + 1];
    for (i, &a) in poly.iter().enumerate() {
        out[i] += a * c0;
        out[i + 1] += a * c1;
    }
    out
}

/// `H_m(ω)` for a freshly constructed filter.
pub fn eval_h(filter: &FilterSpec, omega: f64) -> Complex64 {
    filter.eval(omega)
}
