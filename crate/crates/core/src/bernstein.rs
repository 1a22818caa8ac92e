//! The Bernstein-type coefficient inequality
//! `|⟨f, ψ_{j,ν}⟩| ≤ C_{k,p} 2^{-j(k+1/p-1/2)} ‖ψ̂‖_p ‖(iω)^k f̂‖_{p'}`
//! checked on Gaussian test functions, and the sweep driver that turns every
//! sandwich inequality into rows of a verification report.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::bounds::{self, BoundParams, BoundSet};
use crate::error::{Error, Result};
use crate::norms::{self, DecayModel, NormRequest, DEFAULT_CUTOFF};
use crate::quad::{integrate, uniform_breaks, QuadConfig, QuadResult};
use crate::special::LogBase;
use crate::spectral::{EvalConfig, Wavelet, WaveletSpectrum};

/// `e^{-46} ≈ 1e-20`: the Gaussian transform is cut where it drops below this.
const GAUSSIAN_CUT_EXPONENT: f64 = 46.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TestFamily {
    Gaussian,
}

/// `f(x) = amplitude · exp(-(x - center)² / (2σ²))`, with
/// `f̂(ω) = amplitude · σ · exp(-σ²ω²/2) · e^{-iω·center}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestFunction {
    pub family: TestFamily,
    pub sigma: f64,
    pub center: f64,
    pub amplitude: f64,
}

impl TestFunction {
    pub fn gaussian(sigma: f64, center: f64) -> Result<Self> {
        if !(sigma > 0.0 && sigma.is_finite() && center.is_finite()) {
            return Err(Error::Domain("Gaussian needs a positive width and a finite center"));
        }
        Ok(Self { family: TestFamily::Gaussian, sigma, center, amplitude: 1.0 })
    }

    /// Rescaled so that `‖(iω)^k f̂‖_{p'} = 1`, i.e. `f` sits on the unit
    /// sphere of the class the inequality is stated for.
    pub fn normalized(self, k: u32, p: f64, quad: &QuadConfig) -> Result<Self> {
        let unit = Self { amplitude: 1.0, ..self };
        let norm = unit.weighted_dual_norm(k, p, quad)?;
        Ok(Self { amplitude: 1.0 / norm.value, ..self })
    }

    pub fn fourier(&self, omega: f64) -> Complex64 {
        let s = self.sigma * omega;
        Complex64::from_polar(self.amplitude * self.sigma * (-0.5 * s * s).exp(), -omega * self.center)
    }

    /// Frequency beyond which `|f̂|` is below `e^{-46}` of its peak.
    pub fn bandwidth(&self) -> f64 {
        (2.0 * GAUSSIAN_CUT_EXPONENT).sqrt() / self.sigma
    }

    /// `‖(iω)^k f̂‖_{p'}` with `1/p + 1/p' = 1`.
    pub fn weighted_dual_norm(&self, k: u32, p: f64, quad: &QuadConfig) -> Result<QuadResult> {
        if !(p > 1.0 && p.is_finite()) {
            return Err(Error::Domain("p must lie in (1, ∞)"));
        }
        let q = p / (p - 1.0);
        let kq = f64::from(k) * q;
        let amp = self.amplitude * self.sigma;
        let half_q_sigma2 = 0.5 * q * self.sigma * self.sigma;
        let mut breaks = Vec::new();
        uniform_breaks(0.0, self.bandwidth(), 0.5 / self.sigma, &mut breaks);
        breaks.push(self.bandwidth());
        let r = integrate(
            |w: f64| Ok(amp.powf(q) * w.powf(kq) * (-half_q_sigma2 * w * w).exp()),
            &breaks,
            quad,
        )?;
        let value = (2.0 * r.value).powf(1.0 / q);
        let abs_error = value * (2.0 * r.abs_error) / (2.0 * r.value * q);
        Ok(QuadResult { value, abs_error, evaluations: r.evaluations })
    }
}

/// Smallest and largest scale `j` accepted by [`wavelet_coefficient`].
pub const SCALE_RANGE: (i32, i32) = (-6, 10);
/// Largest `|ν|` accepted by [`wavelet_coefficient`].
pub const MAX_SHIFT: i32 = 64;

/// `⟨f, ψ_{j,ν}⟩ = ∫ f̂(ω) conj(2^{-j/2} e^{-iω2^{-j}ν} ψ̂(2^{-j}ω)) dω`.
pub fn wavelet_coefficient(
    f: &TestFunction,
    wavelet: &Wavelet,
    j: i32,
    nu: i32,
    quad: &QuadConfig,
) -> Result<QuadResult<Complex64>> {
    coefficient_with_resolution(f, wavelet, j, nu, quad, 1.0)
}

/// Same integral with panels `refine` times narrower than the default
/// layout; used to cross-check the coefficient at two resolutions.
pub fn coefficient_with_resolution(
    f: &TestFunction,
    wavelet: &Wavelet,
    j: i32,
    nu: i32,
    quad: &QuadConfig,
    refine: f64,
) -> Result<QuadResult<Complex64>> {
    if !(SCALE_RANGE.0..=SCALE_RANGE.1).contains(&j) {
        return Err(Error::Domain("scale j must lie in -6..=10"));
    }
    if nu.abs() > MAX_SHIFT {
        return Err(Error::Domain("shift |ν| must not exceed 64"));
    }
    let dilation = 2f64.powi(-j);
    let shift = dilation * f64::from(nu);
    let amplitude = dilation.sqrt();
    // Fastest phase rotation of the integrand, in radians per unit ω.
    let support = f64::from(2 * wavelet.order() - 1);
    let rate = f.center.abs() + shift.abs() + dilation * support + 1.0;
    let width = (0.5 * PI / rate).min(0.25 * PI / dilation) / refine;
    let w = f.bandwidth();
    let mut breaks = Vec::new();
    uniform_breaks(-w, w, width, &mut breaks);
    breaks.push(w);
    // `∫|f̂| · 2^{-j/2} sup|ψ̂|` is at most `|amplitude| 2^{-j/2}`.
    let scale = f.amplitude.abs() * amplitude;
    let quad = QuadConfig { abs_tol: quad.abs_tol.max(quad.rel_tol * scale), ..*quad };
    integrate(
        |omega: f64| {
            let psi = wavelet.wavelet_hat(dilation * omega)?;
            let basis = Complex64::from_polar(amplitude, -omega * shift) * psi;
            Ok(f.fourier(omega) * basis.conj())
        },
        &breaks,
        &quad,
    )
}

/// The scale-free part of the right-hand side, `C_{k,p} ‖ψ̂‖_p ‖(iω)^k f̂‖_{p'}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BernsteinScale {
    pub k: u32,
    pub p: f64,
    pub best_constant: QuadResult,
    pub wavelet_norm: QuadResult,
    pub test_norm: QuadResult,
}

impl BernsteinScale {
    pub fn new(
        spectrum: &WaveletSpectrum,
        f: &TestFunction,
        k: u32,
        p: f64,
        decay: Option<DecayModel>,
        quad: &QuadConfig,
    ) -> Result<Self> {
        if k >= spectrum.order() {
            return Err(Error::Domain("the coefficient inequality needs k < m"));
        }
        let decay = match decay {
            Some(d) => d,
            None => DecayModel::for_spectrum(spectrum, DEFAULT_CUTOFF)?,
        };
        let req = NormRequest::new(spectrum.order(), k, p).with_decay(decay);
        let best_constant = norms::best_constant_with(spectrum, &req, quad)?;
        let wavelet_norm = norms::weighted_lp_norm_with(spectrum, &NormRequest { k: 0, ..req }, quad)?;
        let test_norm = f.weighted_dual_norm(k, p, quad)?;
        Ok(Self { k, p, best_constant, wavelet_norm, test_norm })
    }

    /// `2^{-j(k+1/p-1/2)}`.
    pub fn dyadic_factor(&self, j: i32) -> f64 {
        2f64.powf(-f64::from(j) * (f64::from(self.k) + 1.0 / self.p - 0.5))
    }

    pub fn rhs(&self, j: i32) -> QuadResult {
        let base = self.best_constant.value * self.wavelet_norm.value * self.test_norm.value;
        let rel = self.best_constant.abs_error / self.best_constant.value
            + self.wavelet_norm.abs_error / self.wavelet_norm.value
            + self.test_norm.abs_error / self.test_norm.value;
        let value = base * self.dyadic_factor(j);
        QuadResult {
            value,
            abs_error: value * rel,
            evaluations: self.best_constant.evaluations + self.wavelet_norm.evaluations + self.test_norm.evaluations,
        }
    }
}

/// `C_{k,p} 2^{-j(k+1/p-1/2)} ‖ψ̂_m‖_p ‖(iω)^k f̂‖_{p'}`.
pub fn bernstein_rhs(
    m: u32,
    k: u32,
    p: f64,
    j: i32,
    f: &TestFunction,
    cfg: &EvalConfig,
    quad: &QuadConfig,
) -> Result<QuadResult> {
    let spectrum = WaveletSpectrum::new(m, *cfg)?;
    Ok(BernsteinScale::new(&spectrum, f, k, p, None, quad)?.rhs(j))
}

/// Which inequality a row checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Check {
    /// `B ≤ ‖(iω)^{-k} ψ̂‖_p ≤ A`.
    Theorem1,
    /// `slack · G ≤ ‖(iω)^{-m} ψ̂‖_p ≤ F`.
    Theorem2,
    /// `E ≤ ‖ψ̂‖_p ≤ D`.
    Corollary1,
    /// `max(B/D, 0) ≤ C_{k,p} ≤ A/E`.
    Corollary2,
    /// `slack · G/D ≤ C_{m,p} ≤ F/E`.
    Corollary3,
    /// `|⟨f, ψ_{j,ν}⟩| ≤ RHS`.
    Bernstein,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::Theorem1 => "theorem1",
            Check::Theorem2 => "theorem2",
            Check::Corollary1 => "corollary1",
            Check::Corollary2 => "corollary2",
            Check::Corollary3 => "corollary3",
            Check::Bernstein => "bernstein",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Fail,
    /// No side of the interval constrains the value.
    Vacuous,
    Error,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Vacuous => "vacuous",
            Status::Error => "error",
        }
    }
}

/// Why a bound in a row carries no information.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct VacuityFlags {
    /// Lower bound is not positive.
    pub lower: bool,
    /// Upper bound is undefined because its denominator `E` is not positive.
    pub upper: bool,
    /// `m = 1` reduces the decay term to `(2π)²`.
    pub decay_term: bool,
    /// The bound uses `G` with its `(1 - o(1))` factor set to 1.
    pub asymptotic_lower: bool,
}

impl VacuityFlags {
    pub fn labels(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.lower {
            out.push("lower");
        }
        if self.upper {
            out.push("upper");
        }
        if self.decay_term {
            out.push("decay-term");
        }
        if self.asymptotic_lower {
            out.push("asymptotic-lower");
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationRow {
    pub check: Check,
    pub m: u32,
    pub k: u32,
    pub p: f64,
    pub j: Option<i32>,
    pub nu: Option<i32>,
    pub numeric_value: f64,
    pub abs_error: f64,
    pub lower_bound: Option<f64>,
    pub upper_bound: Option<f64>,
    /// `min(upper - value, value - lower)` over the bounds present; negative on failure.
    pub margin: f64,
    pub status: Status,
    pub vacuous: VacuityFlags,
    pub c_tilde: f64,
    pub c: f64,
    /// Multiplier applied to `G` in lower bounds.
    pub slack: Option<f64>,
    pub error: Option<Error>,
}

/// Parameter grid of one sweep. Which fields matter depends on `check`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    pub check: Check,
    pub orders: Vec<u32>,
    /// Weight exponents; empty means every `k` in `1..m`.
    pub ks: Vec<u32>,
    pub ps: Vec<f64>,
    pub scales: Vec<i32>,
    pub shifts: Vec<i32>,
    pub sigma: f64,
    pub center: f64,
}

impl SweepGrid {
    pub fn empty(check: Check) -> Self {
        Self {
            check,
            orders: Vec::new(),
            ks: Vec::new(),
            ps: Vec::new(),
            scales: Vec::new(),
            shifts: Vec::new(),
            sigma: 1.0,
            center: 0.0,
        }
    }

    /// The default grid for each check.
    pub fn standard(check: Check) -> Self {
        let base = Self::empty(check);
        match check {
            Check::Theorem1 | Check::Corollary2 => {
                Self { orders: (2..=6).collect(), ps: alloc::vec![1.5, 2.0, 3.0], ..base }
            }
            Check::Corollary1 => Self { orders: (2..=6).collect(), ps: alloc::vec![1.5, 2.0, 3.0], ..base },
            Check::Theorem2 | Check::Corollary3 => {
                Self { orders: (1..=5).collect(), ps: alloc::vec![2.0, 4.0], ..base }
            }
            Check::Bernstein => Self {
                orders: alloc::vec![2],
                ks: alloc::vec![1],
                ps: alloc::vec![2.0],
                scales: (-3..=6).collect(),
                shifts: (-8..=8).collect(),
                ..base
            },
        }
    }

    /// The `(m, k, p)` triples this grid expands to, in output order.
    pub fn cases(&self) -> Vec<(u32, u32, f64)> {
        let mut out = Vec::new();
        for &m in &self.orders {
            match self.check {
                Check::Theorem1 | Check::Corollary2 | Check::Bernstein => {
                    let ks: Vec<u32> = if self.ks.is_empty() {
                        (1..m).collect()
                    } else {
                        self.ks.iter().copied().filter(|&k| k < m).collect()
                    };
                    for k in ks {
                        for &p in &self.ps {
                            if self.check == Check::Bernstein || p * f64::from(k) > 1.0 {
                                out.push((m, k, p));
                            }
                        }
                    }
                }
                Check::Corollary1 => out.extend(self.ps.iter().map(|&p| (m, 0, p))),
                Check::Theorem2 | Check::Corollary3 => {
                    for &p in &self.ps {
                        if BoundParams::new(m, m, p).even_mp().is_some() {
                            out.push((m, m, p));
                        }
                    }
                }
            }
        }
        out
    }
}

/// Tolerances and knobs shared by every row of a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepConfig {
    pub eval: EvalConfig,
    pub quad: QuadConfig,
    /// Added to each row's numeric error estimate when judging it.
    pub tol: f64,
    pub eps: f64,
    /// Multiplier on `G` in the lower bounds of the `theorem2` and `corollary3` checks.
    pub g_slack: f64,
    pub cutoff: f64,
    pub log_base: LogBase,
    /// Explicit `(C̃, c)`; `None` fits them per order.
    pub decay: Option<(f64, f64)>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            eval: EvalConfig::default(),
            quad: QuadConfig::default(),
            tol: 1e-9,
            eps: 0.5 * PI,
            g_slack: 0.5,
            cutoff: DEFAULT_CUTOFF,
            log_base: LogBase::Natural,
            decay: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct StatusCounts {
    pub pass: usize,
    pub fail: usize,
    pub vacuous: usize,
    pub error: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub check: Check,
    pub rows: Vec<VerificationRow>,
    pub counts: StatusCounts,
}

impl SweepReport {
    /// True when no row failed or errored.
    pub fn all_ok(&self) -> bool {
        self.counts.fail == 0 && self.counts.error == 0
    }
}

/// One side of an interval.
#[derive(Debug, Clone, Copy)]
struct Side {
    value: Option<f64>,
    vacuous: bool,
}

impl Side {
    fn checked(value: f64) -> Self {
        Self { value: Some(value), vacuous: false }
    }
    fn absent() -> Self {
        Self { value: None, vacuous: false }
    }
}

fn judge(value: f64, tol: f64, lower: Side, upper: Side) -> (Status, f64) {
    let mut margin = f64::INFINITY;
    let mut constrained = false;
    let mut failed = false;
    if let Some(lo) = lower.value {
        margin = margin.min(value - lo);
        if !lower.vacuous {
            constrained = true;
            failed |= value < lo - tol;
        }
    }
    if let Some(hi) = upper.value {
        margin = margin.min(hi - value);
        if !upper.vacuous {
            constrained = true;
            failed |= value > hi + tol;
        }
    }
    let status = if failed {
        Status::Fail
    } else if constrained {
        Status::Pass
    } else {
        Status::Vacuous
    };
    (status, margin)
}

struct OrderContext {
    spectrum: WaveletSpectrum,
    decay: DecayModel,
    c_tilde: f64,
    c: f64,
}

fn order_context(m: u32, cfg: &SweepConfig) -> Result<OrderContext> {
    let spectrum = WaveletSpectrum::new(m, cfg.eval)?;
    let (decay, c_tilde, c) = match cfg.decay {
        Some((c_tilde, c)) => {
            let exponent = c * cfg.log_base.log(f64::from(m));
            let decay = if m == 1 { DecayModel::haar() } else { DecayModel { c_tilde, exponent } };
            (decay, c_tilde, c)
        }
        None => {
            let decay = DecayModel::for_spectrum(&spectrum, cfg.cutoff)?;
            // log 1 = 0, so c is undefined for the Haar wavelet; the bounds then
            // reduce the decay term to (2π)² whatever c is.
            let c = if m == 1 { 1.0 } else { decay.exponent / cfg.log_base.log(f64::from(m)) };
            (decay, decay.c_tilde, c)
        }
    };
    Ok(OrderContext { spectrum, decay, c_tilde, c })
}

fn error_row(check: Check, m: u32, k: u32, p: f64, j: Option<i32>, nu: Option<i32>, err: Error) -> VerificationRow {
    VerificationRow {
        check,
        m,
        k,
        p,
        j,
        nu,
        numeric_value: f64::NAN,
        abs_error: f64::NAN,
        lower_bound: None,
        upper_bound: None,
        margin: f64::NAN,
        status: Status::Error,
        vacuous: VacuityFlags::default(),
        c_tilde: f64::NAN,
        c: f64::NAN,
        slack: None,
        error: Some(err),
    }
}

fn norm_case_row(check: Check, m: u32, k: u32, p: f64, ctx: &OrderContext, cfg: &SweepConfig) -> Result<VerificationRow> {
    let params = BoundParams {
        m,
        k,
        p,
        eps: cfg.eps,
        c: ctx.c,
        c_tilde: ctx.c_tilde,
        log_base: cfg.log_base,
    };
    let set = BoundSet::compute(params);
    let req = NormRequest::new(m, k, p).with_cutoff(cfg.cutoff).with_decay(ctx.decay);
    let mut flags = VacuityFlags { decay_term: set.decay_term_vacuous(), ..Default::default() };
    let mut slack = None;

    let (numeric, lower, upper) = match check {
        Check::Theorem1 => {
            let n = norms::weighted_lp_norm_with(&ctx.spectrum, &req, &cfg.quad)?;
            let a = bounds::bound_a(&params)?;
            let b = bounds::bound_b(&params)?;
            flags.lower = b <= 0.0;
            (n, Side { value: Some(b), vacuous: flags.lower }, Side::checked(a))
        }
        Check::Corollary1 => {
            let n = norms::weighted_lp_norm_with(&ctx.spectrum, &req, &cfg.quad)?;
            let d = bounds::bound_d(&params)?;
            let e = bounds::bound_e(&params)?;
            flags.lower = e <= 0.0;
            (n, Side { value: Some(e), vacuous: flags.lower }, Side::checked(d))
        }
        Check::Theorem2 => {
            let n = norms::weighted_lp_norm_with(&ctx.spectrum, &req, &cfg.quad)?;
            let f = bounds::bound_f(&params)?;
            let g = bounds::bound_g(&params)?;
            flags.asymptotic_lower = true;
            slack = Some(cfg.g_slack);
            (n, Side::checked(cfg.g_slack * g), Side::checked(f))
        }
        Check::Corollary2 | Check::Corollary3 => {
            let which = if check == Check::Corollary2 { bounds::Corollary::Two } else { bounds::Corollary::Three };
            let r = bounds::ratio_bounds(&params, which)?;
            let n = norms::best_constant_with(&ctx.spectrum, &req, &cfg.quad)?;
            let lo = if check == Check::Corollary3 {
                slack = Some(cfg.g_slack);
                flags.asymptotic_lower = true;
                cfg.g_slack * r.lo
            } else {
                r.lo
            };
            flags.lower = r.lo_vacuous;
            flags.upper = r.hi_vacuous;
            let upper = match r.hi {
                Some(hi) => Side::checked(hi),
                None => Side { value: None, vacuous: true },
            };
            (n, Side { value: Some(lo), vacuous: r.lo_vacuous }, upper)
        }
        Check::Bernstein => return Err(Error::Domain("Bernstein rows are built separately")),
    };

    let (status, margin) = judge(numeric.value, numeric.abs_error + cfg.tol, lower, upper);
    Ok(VerificationRow {
        check,
        m,
        k,
        p,
        j: None,
        nu: None,
        numeric_value: numeric.value,
        abs_error: numeric.abs_error,
        lower_bound: lower.value,
        upper_bound: upper.value,
        margin,
        status,
        vacuous: flags,
        c_tilde: ctx.c_tilde,
        c: ctx.c,
        slack,
        error: None,
    })
}

fn bernstein_rows(grid: &SweepGrid, m: u32, k: u32, p: f64, ctx: &OrderContext, cfg: &SweepConfig, out: &mut Vec<VerificationRow>) {
    let setup = (|| -> Result<(Wavelet, TestFunction, BernsteinScale)> {
        let wavelet = Wavelet::new(m, cfg.eval)?;
        let f = TestFunction::gaussian(grid.sigma, grid.center)?.normalized(k, p, &cfg.quad)?;
        let scale = BernsteinScale::new(&ctx.spectrum, &f, k, p, Some(ctx.decay), &cfg.quad)?;
        Ok((wavelet, f, scale))
    })();
    let (wavelet, f, scale) = match setup {
        Ok(s) => s,
        Err(e) => {
            for &j in &grid.scales {
                for &nu in &grid.shifts {
                    out.push(error_row(Check::Bernstein, m, k, p, Some(j), Some(nu), e.clone()));
                }
            }
            return;
        }
    };
    for &j in &grid.scales {
        let rhs = scale.rhs(j);
        for &nu in &grid.shifts {
            match wavelet_coefficient(&f, &wavelet, j, nu, &cfg.quad) {
                Ok(coef) => {
                    let value = coef.value.norm();
                    let (status, margin) =
                        judge(value, coef.abs_error + rhs.abs_error + cfg.tol, Side::absent(), Side::checked(rhs.value));
                    out.push(VerificationRow {
                        check: Check::Bernstein,
                        m,
                        k,
                        p,
                        j: Some(j),
                        nu: Some(nu),
                        numeric_value: value,
                        abs_error: coef.abs_error,
                        lower_bound: None,
                        upper_bound: Some(rhs.value),
                        margin,
                        status,
                        vacuous: VacuityFlags::default(),
                        c_tilde: ctx.c_tilde,
                        c: ctx.c,
                        slack: None,
                        error: None,
                    });
                }
                Err(e) => out.push(error_row(Check::Bernstein, m, k, p, Some(j), Some(nu), e)),
            }
        }
    }
}

/// Evaluate every case of `grid`. Failures and errors become rows; nothing
/// aborts the sweep. Rows come out in grid order.
pub fn verify_sweep(grid: &SweepGrid, cfg: &SweepConfig) -> SweepReport {
    let mut rows = Vec::new();
    let mut context: Option<(u32, Result<OrderContext>)> = None;
    for (m, k, p) in grid.cases() {
        if context.as_ref().is_none_or(|(cm, _)| *cm != m) {
            context = Some((m, order_context(m, cfg)));
        }
        let ctx = match &context {
            Some((_, Ok(ctx))) => ctx,
            Some((_, Err(e))) => {
                if grid.check == Check::Bernstein {
                    for &j in &grid.scales {
                        for &nu in &grid.shifts {
                            rows.push(error_row(grid.check, m, k, p, Some(j), Some(nu), e.clone()));
                        }
                    }
                } else {
                    rows.push(error_row(grid.check, m, k, p, None, None, e.clone()));
                }
                continue;
            }
            None => unreachable!(),
        };
        if grid.check == Check::Bernstein {
            bernstein_rows(grid, m, k, p, ctx, cfg, &mut rows);
        } else {
            match norm_case_row(grid.check, m, k, p, ctx, cfg) {
                Ok(row) => rows.push(row),
                Err(e) => rows.push(error_row(grid.check, m, k, p, None, None, e)),
            }
        }
    }
    let mut counts = StatusCounts::default();
    for row in &rows {
        match row.status {
            Status::Pass => counts.pass += 1,
            Status::Fail => counts.fail += 1,
            Status::Vacuous => counts.vacuous += 1,
            Status::Error => counts.error += 1,
        }
    }
    SweepReport { check: grid.check, rows, counts }
}
