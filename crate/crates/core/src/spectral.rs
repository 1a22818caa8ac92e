//! Fourier transforms of the Daubechies scaling function and wavelet.
//!
//! `φ̂(ω) = (2π)^{-1/2} Π_{ℓ≥1} H(ω 2^{-ℓ})` and
//! `ψ̂(ω) = e^{-iω/2} conj(H(ω/2 + π)) φ̂(ω/2)`.
//!
//! The product is cut at a depth `L` chosen per `ω` so that the omitted tail
//! changes the result by at most `product_tol` in relative terms:
//!
//! * modulus path: beyond `L` every factor obeys
//!   `1 ≥ |H(x)|² ≥ 1 - c_m x^{2m} / (2m)`, so with `x_L ≤ θ` and
//!   `c_m θ^{2m} / (2m) = product_tol / 2` the tail lies in
//!   `[1 - product_tol / 3, 1]`;
//! * complex path: writing `H(x) = e^{iμx} G(x)` with `μ = -i H'(0)`, the
//!   linear phase of the whole tail is summed exactly (`μ ω 2^{-L}`) and
//!   `|G(x) - 1| ≤ γ x²` with `γ` computed from the taps, which bounds what is
//!   left.

use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::filters::{construct_filter, magnitude_squared_h, magnitude_squared_h_shifted, FilterSpec};
use crate::special::cm_constant;

const INV_SQRT_TAU: f64 = 0.398_942_280_401_432_677_939_946_059_934_381_868;

/// Truncation control for the infinite products.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalConfig {
    pub product_tol: f64,
    pub min_depth: u32,
    pub max_depth: u32,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self { product_tol: 1e-12, min_depth: 16, max_depth: 64 }
    }
}

impl EvalConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.product_tol > 0.0 && self.product_tol < 1e-3) {
            return Err(Error::InvalidConfig("product_tol must lie in (0, 1e-3)"));
        }
        if self.min_depth < 8 {
            return Err(Error::InvalidConfig("min_depth must be at least 8"));
        }
        if self.max_depth < self.min_depth {
            return Err(Error::InvalidConfig("max_depth must be at least min_depth"));
        }
        Ok(())
    }
}

fn truncation_depth(omega: f64, theta: f64, cfg: &EvalConfig) -> Result<u32> {
    let w = omega.abs();
    if !w.is_finite() {
        return Err(Error::Domain("frequency must be finite"));
    }
    let needed = if w <= theta { 0.0 } else { (w / theta).log2().ceil() };
    let depth = (needed as u32).max(cfg.min_depth);
    if depth > cfg.max_depth {
        return Err(Error::Truncation { omega, needed: depth, max_depth: cfg.max_depth });
    }
    Ok(depth)
}

/// `|φ̂|²` and `|ψ̂|²` from the closed form of `|H_m|²` alone; no taps needed,
/// so this works for every order up to 32.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveletSpectrum {
    m: u32,
    cfg: EvalConfig,
    theta: f64,
}

impl WaveletSpectrum {
    pub fn new(m: u32, cfg: EvalConfig) -> Result<Self> {
        cfg.validate()?;
        if m == 0 || m > crate::filters::MAX_ORDER {
            return Err(Error::Domain("wavelet order must lie in 1..=32"));
        }
        let two_m = f64::from(2 * m);
        let theta = (cfg.product_tol * f64::from(m) / cm_constant(m)).powf(1.0 / two_m).min(1.0);
        Ok(Self { m, cfg, theta })
    }

    pub fn order(&self) -> u32 {
        self.m
    }

    pub fn config(&self) -> &EvalConfig {
        &self.cfg
    }

    /// `|φ̂(ω)|²`.
    pub fn scaling_abs2(&self, omega: f64) -> Result<f64> {
        let depth = truncation_depth(omega, self.theta, &self.cfg)?;
        let mut x = omega;
        let mut prod = 1.0;
        for _ in 0..depth {
            x *= 0.5;
            prod *= magnitude_squared_h(self.m, x);
            if prod == 0.0 {
                break;
            }
        }
        Ok(prod / TAU)
    }

    /// `|ψ̂(ω)|² = |H(ω/2 + π)|² |φ̂(ω/2)|²`.
    pub fn wavelet_abs2(&self, omega: f64) -> Result<f64> {
        let half = 0.5 * omega;
        let modulation = magnitude_squared_h_shifted(self.m, half);
        if modulation == 0.0 {
            return Ok(0.0);
        }
        Ok(modulation * self.scaling_abs2(half)?)
    }
}

/// A Daubechies wavelet of order `m` with its filter taps, for the complex
/// transforms.
#[derive(Debug, Clone)]
pub struct Wavelet {
    spectrum: WaveletSpectrum,
    filter: FilterSpec,
    /// `-i H'(0)`, the slope of the phase of `H` at the origin.
    phase_slope: f64,
    theta: f64,
}

impl Wavelet {
    pub fn new(m: u32, cfg: EvalConfig) -> Result<Self> {
        let spectrum = WaveletSpectrum::new(m, cfg)?;
        let filter = construct_filter(m)?;
        let taps = filter.taps();
        let scale = core::f64::consts::FRAC_1_SQRT_2;
        let phase_slope = scale * taps.iter().enumerate().map(|(l, h)| l as f64 * h).sum::<f64>();
        let curvature = 0.5 * scale * taps.iter().enumerate().map(|(l, h)| (l * l) as f64 * h.abs()).sum::<f64>();
        let gamma = curvature + 0.5 * phase_slope * phase_slope;
        let theta = (1.5 * cfg.product_tol / gamma).sqrt();
        Ok(Self { spectrum, filter, phase_slope, theta })
    }

    pub fn order(&self) -> u32 {
        self.spectrum.m
    }

    pub fn filter(&self) -> &FilterSpec {
        &self.filter
    }

    pub fn spectrum(&self) -> &WaveletSpectrum {
        &self.spectrum
    }

    pub fn config(&self) -> &EvalConfig {
        &self.spectrum.cfg
    }

    /// `φ̂(ω)`.
    pub fn scaling_hat(&self, omega: f64) -> Result<Complex64> {
        let depth = truncation_depth(omega, self.theta, &self.spectrum.cfg)?;
        let mut x = omega;
        let mut prod = Complex64::new(1.0, 0.0);
        for _ in 0..depth {
            x *= 0.5;
            prod *= self.filter.eval(x);
        }
        // Linear phase of every factor beyond the cut, summed in closed form.
        let tail_phase = Complex64::from_polar(1.0, self.phase_slope * x);
        Ok(prod * tail_phase * INV_SQRT_TAU)
    }

    /// `ψ̂(ω)`.
    pub fn wavelet_hat(&self, omega: f64) -> Result<Complex64> {
        let half = 0.5 * omega;
        let modulation = self.filter.eval(half + PI).conj();
        Ok(Complex64::from_polar(1.0, -half) * modulation * self.scaling_hat(half)?)
    }

    /// `|ψ̂(ω)|²` through the tap-free product.
    pub fn wavelet_hat_abs2(&self, omega: f64) -> Result<f64> {
        self.spectrum.wavelet_abs2(omega)
    }
}

/// `φ̂_m(ω)` for a one-off evaluation; build a [`Wavelet`] to evaluate many points.
pub fn scaling_hat(m: u32, omega: f64, cfg: &EvalConfig) -> Result<Complex64> {
    Wavelet::new(m, *cfg)?.scaling_hat(omega)
}

/// `ψ̂_m(ω)` for a one-off evaluation.
pub fn wavelet_hat(m: u32, omega: f64, cfg: &EvalConfig) -> Result<Complex64> {
    Wavelet::new(m, *cfg)?.wavelet_hat(omega)
}

/// `|ψ̂_m(ω)|²` for a one-off evaluation.
pub fn wavelet_hat_abs2(m: u32, omega: f64, cfg: &EvalConfig) -> Result<f64> {
    WaveletSpectrum::new(m, *cfg)?.wavelet_abs2(omega)
}

/// `(2π)^{-1/2}` on `[-2π, -π] ∪ [π, 2π]` (closed), zero elsewhere.
pub fn ideal_band_indicator(omega: f64) -> f64 {
    let w = omega.abs();
    if (PI..=TAU).contains(&w) {
        INV_SQRT_TAU
    } else {
        0.0
    }
}

/// Power-law envelope `|ψ̂(ω)| ≤ C̃ ω^{-c log m}` fitted over `fit_range`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayFit {
    pub c_tilde: f64,
    /// Exponent per unit of `ln m`.
    pub c: f64,
    /// Total exponent `c · ln m`.
    pub exponent: f64,
    pub fit_range: (f64, f64),
    /// RMS residual of the log-log fit to the block maxima.
    pub residual: f64,
}

impl DecayFit {
    /// `c` re-expressed for a different logarithm base, keeping the exponent.
    pub fn c_for_base(&self, base: crate::special::LogBase, m: u32) -> f64 {
        self.exponent / base.log(f64::from(m))
    }
}

const DECAY_BLOCKS: usize = 8;
const GOLDEN_STEPS: usize = 40;
const ORBIT_WINDOW_POINTS: usize = 128;

/// Largest value of `f` seen while golden-section searching `[a, b]`.
fn golden_max<F: FnMut(f64) -> Result<f64>>(mut f: F, mut a: f64, mut b: f64) -> Result<f64> {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = b - r * (b - a);
    let mut x2 = a + r * (b - a);
    let (mut f1, mut f2) = (f(x1)?, f(x2)?);
    let mut best = f1.max(f2);
    for _ in 0..GOLDEN_STEPS {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = f(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = f(x2)?;
        }
        best = best.max(f1).max(f2);
    }
    Ok(best)
}

/// Fit `C̃` and `c` in `|ψ̂(ω)| ≤ C̃ |ω|^{-c ln m}` on `[lo, hi]`.
///
/// `samples` log-spaced points, together with windows of half-width `2π`
/// around the doubling orbits of `2π/3` and `4π/3`, are split into eight blocks of equal log-width; the maximum of
/// each block is fitted by least squares in log-log coordinates. `C̃` is then
/// raised until the envelope dominates every sample and every refined local
/// peak.
pub fn estimate_decay(spectrum: &WaveletSpectrum, lo: f64, hi: f64, samples: usize) -> Result<DecayFit> {
    let m = spectrum.order();
    if m == 1 {
        return Err(Error::DecayFit("order 1 has log m = 0, so c is undefined"));
    }
    if !(lo > TAU && hi > lo) {
        return Err(Error::DecayFit("fit range must satisfy 2π < lo < hi"));
    }
    if samples < 16 {
        return Err(Error::DecayFit("at least 16 samples are required"));
    }
    let log_lo = lo.ln();
    let log_hi = hi.ln();
    let step = (log_hi - log_lo) / (samples - 1) as f64;
    let mut abscissae: Vec<f64> = (0..samples).map(|i| log_lo + step * i as f64).collect();
    // The slowest decay sits on the orbits of 2π/3 and 4π/3 under doubling.
    for base in [TAU / 3.0, 2.0 * TAU / 3.0] {
        let mut w = base;
        while w <= hi {
            // Peaks sit a fixed distance from the orbit, so the window is absolute.
            for i in 0..=ORBIT_WINDOW_POINTS {
                let v = w + TAU * (2.0 * i as f64 / ORBIT_WINDOW_POINTS as f64 - 1.0);
                if (lo..=hi).contains(&v) {
                    abscissae.push(v.ln());
                }
            }
            w *= 2.0;
        }
    }
    abscissae.sort_by(f64::total_cmp);
    let log_abs = |log_w: f64| spectrum.wavelet_abs2(log_w.exp()).map(|a2| 0.5 * a2.ln());
    let points: Vec<(f64, f64)> = abscissae
        .iter()
        .map(|&x| log_abs(x).map(|y| (x, y)))
        .collect::<Result<_>>()?;

    let maxima: Vec<(f64, f64)> = (0..DECAY_BLOCKS)
        .filter_map(|b| {
            let start = log_lo + (log_hi - log_lo) * b as f64 / DECAY_BLOCKS as f64;
            let end = log_lo + (log_hi - log_lo) * (b + 1) as f64 / DECAY_BLOCKS as f64;
            points
                .iter()
                .copied()
                .filter(|&(x, y)| x >= start && (x < end || b + 1 == DECAY_BLOCKS) && y.is_finite())
                .max_by(|a, b| a.1.total_cmp(&b.1))
        })
        .collect();
    if maxima.len() < 2 {
        return Err(Error::DecayFit("too few nonzero samples"));
    }

    let n = maxima.len() as f64;
    let mean_x = maxima.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = maxima.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = maxima.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = maxima.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let exponent = -slope;
    if !(exponent > 0.0) {
        return Err(Error::DecayFit("fitted envelope does not decay"));
    }
    let residual = (maxima
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .sum::<f64>()
        / n)
        .sqrt();

    // Every local maximum of the weighted samples is refined by golden-section
    // search before the envelope constant is raised over it.
    let weighted: Vec<f64> = points.iter().map(|&(x, y)| y + exponent * x).collect();
    let mut log_c_tilde = weighted.iter().copied().filter(|v| v.is_finite()).fold(intercept, f64::max);
    for i in 0..points.len() {
        let left = if i > 0 { weighted[i - 1] } else { f64::NEG_INFINITY };
        let right = weighted.get(i + 1).copied().unwrap_or(f64::NEG_INFINITY);
        if !(weighted[i].is_finite() && weighted[i] >= left && weighted[i] >= right) {
            continue;
        }
        let a = if i > 0 { points[i - 1].0 } else { points[i].0 };
        let b = points.get(i + 1).map_or(points[i].0, |p| p.0);
        let peak = golden_max(|x| log_abs(x).map(|y| y + exponent * x), a, b)?;
        log_c_tilde = log_c_tilde.max(peak);
    }

    Ok(DecayFit {
        c_tilde: log_c_tilde.exp(),
        c: exponent / f64::from(m).ln(),
        exponent,
        fit_range: (lo, hi),
        residual,
    })
}
