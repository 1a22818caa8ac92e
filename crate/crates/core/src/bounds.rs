//! Closed-form bounds on the weighted norms and on `C_{k,p}`.
//!
//! * `B ≤ ‖(iω)^{-k} ψ̂_m‖_p ≤ A`, with
//!   `A = T₀ + [T₁(π) + T₂ + T₃]^{1/p}` and `B = T₀ - [T₁(ε) + T₂ + T₃]^{1/p}`;
//! * `E ≤ ‖ψ̂_m‖_p ≤ D`;
//! * `G ≤ ‖(iω)^{-m} ψ̂_m‖_p ≤ F` when `mp` is an even integer;
//! * `B/D ≤ C_{k,p} ≤ A/E` and `G/D ≤ C_{m,p} ≤ F/E`.
//!
//! Here
//! `T₀ = (2π)^{1/p-1/2} π^{-k} ((1 - 2^{1-pk}) / (pk - 1))^{1/p}`,
//! `T₁(x) = 2^{1-p(2m+1/2)} x^{p(m-k-1/2)+1} ((2m)! / (m! (m-1)!))^{p/2}`,
//! `T₂ = (2π)^{2 - c p log m}` and `T₃ = 2^{1-p/2} π^{1-p(k+1/2)}`.

use core::f64::consts::{LN_2, PI, TAU};

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::special::{central_factorial_ratio, sinc_power_integral, LogBase};

/// Inputs shared by all bound formulas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundParams {
    pub m: u32,
    pub k: u32,
    pub p: f64,
    pub eps: f64,
    /// Decay exponent per unit of `log m`.
    pub c: f64,
    /// Carried with the bounds for the record; no displayed formula uses it.
    pub c_tilde: f64,
    pub log_base: LogBase,
}

impl BoundParams {
    pub fn new(m: u32, k: u32, p: f64) -> Self {
        Self { m, k, p, eps: 0.5 * PI, c: 1.0, c_tilde: 1.0, log_base: LogBase::Natural }
    }

    fn check_p(&self) -> Result<()> {
        if !(self.p > 1.0 && self.p.is_finite()) {
            return Err(Error::Domain("p must lie in (1, ∞)"));
        }
        if self.m == 0 {
            return Err(Error::Domain("order m must be positive"));
        }
        if !(self.c > 0.0) {
            return Err(Error::Domain("decay parameter c must be positive"));
        }
        Ok(())
    }

    fn check_theorem1(&self) -> Result<()> {
        self.check_p()?;
        if self.k >= self.m {
            return Err(Error::Domain("A and B need m > k"));
        }
        if !(self.eps > 0.0 && self.eps <= PI) {
            return Err(Error::Domain("ε must lie in (0, π]"));
        }
        Ok(())
    }

    /// `mp` as an even integer, if it is one.
    pub fn even_mp(&self) -> Option<u32> {
        let mp = f64::from(self.m) * self.p;
        let n = mp.round();
        ((mp - n).abs() <= 1e-9 * mp && n >= 2.0 && (n as u64).is_multiple_of(2)).then_some(n as u32)
    }

    fn check_theorem2(&self) -> Result<u32> {
        self.check_p()?;
        if self.k != self.m {
            return Err(Error::Domain("F and G need k = m"));
        }
        self.even_mp().ok_or(Error::Domain("F and G need mp to be an even integer"))
    }

    /// `log m` in the configured base.
    fn log_m(&self) -> f64 {
        self.log_base.log(f64::from(self.m))
    }

    fn decay_term(&self) -> f64 {
        TAU.powf(2.0 - self.c * self.p * self.log_m())
    }
}

/// `(1 - 2^{1-s}) / (s - 1) = ∫₁² u^{-s} du`, with the limit `ln 2` at `s = 1`.
fn band_integral(s: f64) -> f64 {
    let t = s - 1.0;
    if t == 0.0 {
        LN_2
    } else {
        -(-t * LN_2).exp_m1() / t
    }
}

fn leading_term(params: &BoundParams) -> f64 {
    let p = params.p;
    let pk = p * f64::from(params.k);
    TAU.powf(1.0 / p - 0.5) * PI.powf(-f64::from(params.k)) * band_integral(pk).powf(1.0 / p)
}

fn near_origin_term(params: &BoundParams, x: f64) -> f64 {
    let p = params.p;
    let m = f64::from(params.m);
    let k = f64::from(params.k);
    2.0f64.powf(1.0 - p * (2.0 * m + 0.5))
        * x.powf(p * (m - k - 0.5) + 1.0)
        * central_factorial_ratio(params.m).powf(0.5 * p)
}

fn band_term(params: &BoundParams) -> f64 {
    let p = params.p;
    2.0f64.powf(1.0 - 0.5 * p) * PI.powf(1.0 - p * (f64::from(params.k) + 0.5))
}

/// The bracket `T₁(x) + T₂ + T₃` shared by `A` (with `x = π`) and `B` (with `x = ε`).
fn theorem1_bracket(params: &BoundParams, x: f64) -> f64 {
    near_origin_term(params, x) + params.decay_term() + band_term(params)
}

pub fn bound_a(params: &BoundParams) -> Result<f64> {
    params.check_theorem1()?;
    Ok(leading_term(params) + theorem1_bracket(params, PI).powf(1.0 / params.p))
}

pub fn bound_b(params: &BoundParams) -> Result<f64> {
    params.check_theorem1()?;
    Ok(leading_term(params) - theorem1_bracket(params, params.eps).powf(1.0 / params.p))
}

/// `D = 2(2π)^{1/p-1/2} + 2^{1/2-2m} π^{m+1/2} ((2m)!/(m!(m-1)!))^{1/2} + (2π)^{2 - c log m}`.
pub fn bound_d(params: &BoundParams) -> Result<f64> {
    params.check_p()?;
    let p = params.p;
    let m = f64::from(params.m);
    Ok(2.0 * TAU.powf(1.0 / p - 0.5)
        + 2.0f64.powf(0.5 - 2.0 * m) * PI.powf(m + 0.5) * central_factorial_ratio(params.m).sqrt()
        + TAU.powf(2.0 - params.c * params.log_m()))
}

/// `E = (2π)^{1/p-1/2} - [2^{1-p(1/2+2m)} π^{p(m-1/2)+1} (...)^{p/2} + (2π)^{2-cp log m} + (2π)^{1-p/2}]^{1/p}`.
pub fn bound_e(params: &BoundParams) -> Result<f64> {
    params.check_p()?;
    let p = params.p;
    let m = f64::from(params.m);
    let bracket = 2.0f64.powf(1.0 - p * (0.5 + 2.0 * m))
        * PI.powf(p * (m - 0.5) + 1.0)
        * central_factorial_ratio(params.m).powf(0.5 * p)
        + params.decay_term()
        + TAU.powf(1.0 - 0.5 * p);
    Ok(TAU.powf(1.0 / p - 0.5) - bracket.powf(1.0 / p))
}

/// `F` from
/// `F^p = 2^{1-p/2} / (π^{p(m+1/2)-1} (mp-1)) + 2^{1-p(2m-1)} / (π^{p/2-1} (mp-1)!) Σ_i (-1)^i C(mp,i) (mp-2i)^{mp-1}`,
/// where the alternating sum over `(mp-1)!` is `2^{mp} / π · ∫₀^∞ (sin t / t)^{mp} dt`.
pub fn bound_f(params: &BoundParams) -> Result<f64> {
    let n = params.check_theorem2()?;
    let p = params.p;
    let m = f64::from(params.m);
    let mp = f64::from(n);
    let first = 2.0f64.powf(1.0 - 0.5 * p) / (PI.powf(p * (m + 0.5) - 1.0) * (mp - 1.0));
    let sinc = sinc_power_integral(n)?;
    let second = 2.0f64.powf(1.0 - p * (2.0 * m - 1.0) + mp) * sinc / PI.powf(0.5 * p);
    Ok((first + second).powf(1.0 / p))
}

/// `G` from `G^p = 2^{1-2pm} (2m)! / (π^{p/2-1} m^{p/2} 3^{mp} m! (m-1)!)` with the
/// `(1 - o(1))` factor taken as 1; the result is an asymptotic lower bound.
pub fn bound_g(params: &BoundParams) -> Result<f64> {
    let n = params.check_theorem2()?;
    let p = params.p;
    let m = f64::from(params.m);
    let log_gp = (1.0 - 2.0 * p * m) * LN_2 + central_factorial_ratio(params.m).ln()
        - (0.5 * p - 1.0) * PI.ln()
        - 0.5 * p * m.ln()
        - f64::from(n) * 3.0f64.ln();
    Ok((log_gp / p).exp())
}

/// All six bounds for one parameter set; a bound whose preconditions fail
/// is `None`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundSet {
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub d: Option<f64>,
    pub e: Option<f64>,
    pub f: Option<f64>,
    pub g: Option<f64>,
    pub params: BoundParams,
}

impl BoundSet {
    pub fn compute(params: BoundParams) -> Self {
        Self {
            a: bound_a(&params).ok(),
            b: bound_b(&params).ok(),
            d: bound_d(&params).ok(),
            e: bound_e(&params).ok(),
            f: bound_f(&params).ok(),
            g: bound_g(&params).ok(),
            params,
        }
    }

    /// `B < 0`: the lower bound of the first sandwich says nothing.
    pub fn lower_vacuous(&self) -> bool {
        self.b.is_some_and(|b| b < 0.0)
    }

    /// `E ≤ 0`: the lower bound on `‖ψ̂‖_p`, and every ratio dividing by it, says nothing.
    pub fn e_vacuous(&self) -> bool {
        self.e.is_some_and(|e| e <= 0.0)
    }

    /// `m = 1` turns the decay term into `(2π)²`.
    pub fn decay_term_vacuous(&self) -> bool {
        self.params.m == 1
    }

    /// `G` is asymptotic: its `(1 - o(1))` factor was set to 1.
    pub fn g_asymptotic(&self) -> bool {
        self.g.is_some()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Corollary {
    /// `B/D ≤ C_{k,p} ≤ A/E`.
    Two,
    /// `G/D ≤ C_{m,p} ≤ F/E` for even `mp`.
    Three,
}

/// Interval for `C_{k,p}`. `lo` is clamped to 0 when its numerator is
/// negative; `hi` is `None` when `E ≤ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioBounds {
    pub lo: f64,
    pub hi: Option<f64>,
    pub lo_vacuous: bool,
    pub hi_vacuous: bool,
}

pub fn ratio_bounds(params: &BoundParams, which: Corollary) -> Result<RatioBounds> {
    let d = bound_d(params)?;
    let e = bound_e(params)?;
    let (num_lo, num_hi) = match which {
        Corollary::Two => (bound_b(params)?, bound_a(params)?),
        Corollary::Three => (bound_g(params)?, bound_f(params)?),
    };
    let lo_vacuous = num_lo <= 0.0;
    let lo = if lo_vacuous { 0.0 } else { num_lo / d };
    let hi_vacuous = e <= 0.0;
    let hi = (!hi_vacuous).then(|| num_hi / e);
    Ok(RatioBounds { lo, hi, lo_vacuous, hi_vacuous })
}
