//! Weighted Fourier-side norms `‖(iω)^{-k} ψ̂‖_p` and the best constant
//! `C_{k,p} = ‖(iω)^{-k} ψ̂‖_p / ‖ψ̂‖_p`.
//!
//! The integral `∫ |ω|^{-pk} |ψ̂(ω)|^p dω` is split into three parts:
//!
//! * `[0, δ]`: `ψ̂` has a zero of order `m` at the origin, so the integrand
//!   behaves like `ω^{p(m-k)}` and the piece is `g(δ) δ / (p(m-k) + 1)`; the
//!   whole piece is charged to the error estimate;
//! * `[δ, Ω]`: adaptive Gauss–Kronrod on dyadic bands, each band cut into
//!   panels no wider than `π`;
//! * `[Ω, ∞)`: bounded analytically through the decay envelope
//!   `|ψ̂(ω)| ≤ C̃ ω^{-e}`, which gives `∫_Ω^∞ ≤ C̃^p Ω^{1-p(k+e)} / (p(k+e) - 1)`.
//!   The value uses the geometric continuation of the last two octaves,
//!   clamped into `[0, bound]`; the error estimate covers the whole bound.
//!
//! Evenness of `|ψ̂|` doubles the half-line integral.

use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::quad::{integrate_panels, uniform_breaks, QuadConfig, QuadResult};
use crate::spectral::{estimate_decay, DecayFit, EvalConfig, WaveletSpectrum};

/// `Ω = 2^{12} π`.
pub const DEFAULT_CUTOFF: f64 = 4096.0 * PI;

/// Samples used when fitting the default decay envelope on `[4π, Ω]`.
pub const DEFAULT_DECAY_SAMPLES: usize = 256;

const ORIGIN_CUT: f64 = 1e-6;
const MAX_PANEL_WIDTH: f64 = PI;

/// Envelope `|ψ̂(ω)| ≤ c_tilde · |ω|^{-exponent}` assumed beyond the cutoff.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayModel {
    pub c_tilde: f64,
    pub exponent: f64,
}

impl DecayModel {
    pub fn from_fit(fit: &DecayFit) -> Self {
        Self { c_tilde: fit.c_tilde, exponent: fit.exponent }
    }

    /// Explicit `(C̃, c)` with exponent `c · ln m`.
    pub fn explicit(c_tilde: f64, c: f64, m: u32) -> Self {
        Self { c_tilde, exponent: c * f64::from(m).ln() }
    }

    /// `|ψ̂_1(ω)| = (2π)^{-1/2} sin²(ω/4) / |ω/4| ≤ 4 (2π)^{-1/2} / |ω|`.
    pub fn haar() -> Self {
        Self { c_tilde: 4.0 / (2.0 * PI).sqrt(), exponent: 1.0 }
    }

    /// The Haar envelope for `m = 1`, otherwise a fit of the computed
    /// spectrum over `[4π, cutoff]`.
    pub fn for_spectrum(spectrum: &WaveletSpectrum, cutoff: f64) -> Result<Self> {
        if spectrum.order() == 1 {
            return Ok(Self::haar());
        }
        let fit = estimate_decay(spectrum, 4.0 * PI, cutoff, DEFAULT_DECAY_SAMPLES)?;
        Ok(Self::from_fit(&fit))
    }

    /// `∫_Ω^∞ ω^{-pk} (C̃ ω^{-e})^p dω` for one half-line.
    fn tail_bound(&self, k: u32, p: f64, cutoff: f64) -> Result<f64> {
        let rate = p * (f64::from(k) + self.exponent);
        if !(rate > 1.0) {
            return Err(Error::NotIntegrable("tail needs p (k + c log m) > 1"));
        }
        Ok(self.c_tilde.powf(p) * cutoff.powf(1.0 - rate) / (rate - 1.0))
    }
}

/// Parameters of one weighted norm `‖(iω)^{-k} ψ̂_m‖_p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormRequest {
    pub m: u32,
    pub k: u32,
    pub p: f64,
    pub cutoff: f64,
    /// `None` selects [`DecayModel::for_spectrum`].
    pub decay: Option<DecayModel>,
}

impl NormRequest {
    pub fn new(m: u32, k: u32, p: f64) -> Self {
        Self { m, k, p, cutoff: DEFAULT_CUTOFF, decay: None }
    }

    pub fn with_cutoff(self, cutoff: f64) -> Self {
        Self { cutoff, ..self }
    }

    pub fn with_decay(self, decay: DecayModel) -> Self {
        Self { decay: Some(decay), ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.p > 1.0 && self.p.is_finite()) {
            return Err(Error::Domain("p must lie in (1, ∞)"));
        }
        if self.k > self.m {
            return Err(Error::NotIntegrable("k > m leaves a non-integrable singularity at the origin"));
        }
        if !(self.cutoff > 2.0 * PI && self.cutoff.is_finite()) {
            return Err(Error::Domain("cutoff must exceed 2π"));
        }
        Ok(())
    }
}

/// `‖(iω)^{-k} ψ̂_m‖_p`, building the spectrum from `cfg`.
pub fn weighted_lp_norm(req: &NormRequest, cfg: &EvalConfig, quad: &QuadConfig) -> Result<QuadResult> {
    let spectrum = WaveletSpectrum::new(req.m, *cfg)?;
    weighted_lp_norm_with(&spectrum, req, quad)
}

/// `‖(iω)^{-k} ψ̂‖_p` for an existing spectrum (whose order overrides `req.m`).
pub fn weighted_lp_norm_with(spectrum: &WaveletSpectrum, req: &NormRequest, quad: &QuadConfig) -> Result<QuadResult> {
    let req = NormRequest { m: spectrum.order(), ..*req };
    req.validate()?;
    let decay = match req.decay {
        Some(d) => d,
        None => DecayModel::for_spectrum(spectrum, req.cutoff)?,
    };
    let tail_bound = decay.tail_bound(req.k, req.p, req.cutoff)?;
    let pk = req.p * f64::from(req.k);
    let half_p = 0.5 * req.p;
    let integrand = |w: f64| -> Result<f64> {
        let a2 = spectrum.wavelet_abs2(w)?;
        let v = a2.powf(half_p);
        Ok(if pk == 0.0 { v } else { v * w.powf(-pk) })
    };

    let origin_exponent = req.p * f64::from(req.m - req.k);
    let origin_piece = integrand(ORIGIN_CUT)? * ORIGIN_CUT / (origin_exponent + 1.0);

    let omega = req.cutoff;
    let breaks = band_breaks(omega);
    let mut f = integrand;
    let (body, panels) = integrate_panels(&mut f, &breaks, quad)?;

    let octave = |lo: f64, hi: f64| -> f64 {
        let slack = 1e-12 * omega;
        panels
            .iter()
            .filter(|(a, b, _)| *a >= lo - slack && *b <= hi + slack)
            .map(|(_, _, v)| *v)
            .sum()
    };
    let upper = octave(0.5 * omega, omega);
    let lower = octave(0.25 * omega, 0.5 * omega);
    let tail_estimate = if lower > 0.0 && upper > 0.0 && upper < lower {
        let ratio = upper / lower;
        (upper * ratio / (1.0 - ratio)).min(tail_bound)
    } else {
        0.5 * tail_bound
    };

    let sum = 2.0 * (origin_piece + body.value + tail_estimate);
    let sum_error = 2.0 * (origin_piece + body.abs_error + tail_estimate.max(tail_bound - tail_estimate));
    let inv_p = 1.0 / req.p;
    let value = sum.powf(inv_p);
    let up = (sum + sum_error).powf(inv_p) - value;
    let down = value - (sum - sum_error).max(0.0).powf(inv_p);
    Ok(QuadResult { value, abs_error: up.max(down), evaluations: body.evaluations + 1 })
}

/// Breakpoints from the origin cut to `Ω`: dyadic below `π`, the lattice
/// `π 2^j` above, the two top octaves `[Ω/4, Ω/2, Ω]`, and panels of width at
/// most `π` in between.
fn band_breaks(omega: f64) -> Vec<f64> {
    let mut marks = Vec::new();
    let mut x = PI;
    while x > ORIGIN_CUT {
        marks.push(x);
        x *= 0.5;
    }
    marks.push(ORIGIN_CUT);
    marks.reverse();
    let mut lattice = Vec::new();
    let mut x = 2.0 * PI;
    while x < omega * (1.0 - 1e-12) {
        lattice.push(x);
        x *= 2.0;
    }
    for extra in [0.25 * omega, 0.5 * omega, omega] {
        if extra > PI * (1.0 + 1e-12) {
            lattice.push(extra);
        }
    }
    lattice.sort_by(f64::total_cmp);
    lattice.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * omega);

    let mut breaks = Vec::with_capacity(marks.len() + (omega / MAX_PANEL_WIDTH) as usize + 2);
    breaks.extend_from_slice(&marks[..marks.len() - 1]);
    let mut start = PI;
    for &end in &lattice {
        uniform_breaks(start, end, MAX_PANEL_WIDTH, &mut breaks);
        start = end;
    }
    breaks.push(start);
    breaks
}

/// `C_{k,p} = ‖(iω)^{-k} ψ̂‖_p / ‖ψ̂‖_p`, with both norms at the same `p`,
/// cutoff and decay envelope. The error estimate propagates both relative
/// errors.
pub fn best_constant_ckp(req: &NormRequest, cfg: &EvalConfig, quad: &QuadConfig) -> Result<QuadResult> {
    let spectrum = WaveletSpectrum::new(req.m, *cfg)?;
    best_constant_with(&spectrum, req, quad)
}

pub fn best_constant_with(spectrum: &WaveletSpectrum, req: &NormRequest, quad: &QuadConfig) -> Result<QuadResult> {
    let decay = match req.decay {
        Some(d) => d,
        None => DecayModel::for_spectrum(spectrum, req.cutoff)?,
    };
    let req = req.with_decay(decay);
    let numerator = weighted_lp_norm_with(spectrum, &req, quad)?;
    let denominator = weighted_lp_norm_with(spectrum, &NormRequest { k: 0, ..req }, quad)?;
    Ok(ratio(&numerator, &denominator))
}

pub(crate) fn ratio(numerator: &QuadResult, denominator: &QuadResult) -> QuadResult {
    let value = numerator.value / denominator.value;
    let rel = numerator.abs_error / numerator.value + denominator.abs_error / denominator.value;
    QuadResult {
        value,
        abs_error: value * rel,
        evaluations: numerator.evaluations + denominator.evaluations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn request_validation() {
        assert!(NormRequest::new(2, 1, 1.0).validate().is_err());
        assert!(NormRequest::new(2, 3, 2.0).validate().is_err());
        assert!(NormRequest::new(2, 2, 2.0).validate().is_ok());
        assert!(NormRequest::new(2, 1, 2.0).with_cutoff(5.0).validate().is_err());
    }

    #[test]
    fn tail_must_be_integrable() {
        let d = DecayModel { c_tilde: 1.0, exponent: 0.3 };
        let req = NormRequest::new(2, 0, 2.0).with_decay(d);
        let r = weighted_lp_norm(&req, &EvalConfig::default(), &QuadConfig::default());
        assert!(matches!(r, Err(Error::NotIntegrable(_))));
    }

    #[test]
    fn breaks_are_increasing_and_end_at_cutoff() {
        let b = band_breaks(DEFAULT_CUTOFF);
        assert!(b.windows(2).all(|w| w[1] > w[0]));
        assert_eq!(*b.last().unwrap(), DEFAULT_CUTOFF);
        assert_eq!(b[0], ORIGIN_CUT);
        assert!(b.windows(2).all(|w| w[1] - w[0] <= MAX_PANEL_WIDTH * (1.0 + 1e-12)));
        let odd = band_breaks(1000.0);
        assert!(odd.windows(2).all(|w| w[1] > w[0]));
        assert!(odd.iter().any(|&x| (x - 250.0).abs() < 1e-9));
    }

    #[test]
    fn haar_envelope_dominates() {
        let s = WaveletSpectrum::new(1, EvalConfig::default()).unwrap();
        let d = DecayModel::haar();
        for i in 1..200 {
            let w = 7.0 + 13.1 * i as f64;
            assert!(s.wavelet_abs2(w).unwrap().sqrt() <= d.c_tilde * w.powf(-d.exponent));
        }
    }
}
