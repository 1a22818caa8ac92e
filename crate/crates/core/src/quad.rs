//! Globally adaptive Gauss–Kronrod (7, 15) quadrature over a set of panels.
//!
//! The caller supplies breakpoints; every panel between consecutive
//! breakpoints is integrated with the 15-point Kronrod rule, and the panel
//! with the largest error estimate is bisected until the summed estimate
//! meets the tolerance or the subdivision budget runs out. Panel results are
//! summed in breakpoint order, so the output does not depend on the order in
//! which panels were refined.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::{Add, Mul, Sub};

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Values the engine can integrate: reals and complex numbers.
pub trait QuadValue:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self>
{
    fn zero() -> Self;
    fn magnitude(self) -> f64;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self { rel_tol: 1e-11, abs_tol: 1e-15, max_subdivisions: 200_000 }
    }
}

impl QuadConfig {
    pub fn with_rel_tol(self, rel_tol: f64) -> Self {
        Self { rel_tol, ..self }
    }
}

/// An integral estimate with its absolute error estimate and the number of
/// integrand evaluations spent on it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult<T = f64> {
    pub value: T,
    pub abs_error: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel<T> {
    a: f64,
    b: f64,
    value: T,
    error: f64,
}

/// One Gauss–Kronrod 7/15 panel with the QUADPACK error scaling.
fn gk15<T, F>(f: &mut F, a: f64, b: f64) -> Result<Panel<T>>
where
    T: QuadValue,
    F: FnMut(f64) -> Result<T>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center)?;
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut values = [(T::zero(), T::zero()); 7];
    for (j, slot) in values.iter_mut().enumerate() {
        let x = half * XGK[j];
        let f1 = f(center - x)?;
        let f2 = f(center + x)?;
        if !(f1.magnitude().is_finite() && f2.magnitude().is_finite()) {
            return Err(Error::NonFinite { at: center - x });
        }
        *slot = (f1, f2);
        kronrod = kronrod + (f1 + f2) * WGK[j];
        if j % 2 == 1 {
            gauss = gauss + (f1 + f2) * WG[j / 2];
        }
    }
    if !fc.magnitude().is_finite() {
        return Err(Error::NonFinite { at: center });
    }

    let mean = kronrod * 0.5;
    let mut asc = WGK[7] * (fc - mean).magnitude();
    for (j, (f1, f2)) in values.iter().enumerate() {
        asc += WGK[j] * ((*f1 - mean).magnitude() + (*f2 - mean).magnitude());
    }
    let mut abs_sum = WGK[7] * fc.magnitude();
    for (j, (f1, f2)) in values.iter().enumerate() {
        abs_sum += WGK[j] * (f1.magnitude() + f2.magnitude());
    }
    let hl = half.abs();
    let res_asc = asc * hl;
    let res_abs = abs_sum * hl;

    let mut err = ((kronrod - gauss) * half).magnitude();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    Ok(Panel { a, b, value: kronrod * half, error: err })
}

struct Ranked {
    error: f64,
    index: usize,
}

impl PartialEq for Ranked {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Ranked {}
impl PartialOrd for Ranked {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Ranked {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.index.cmp(&self.index))
    }
}

/// Integrate `f` over `[breaks[0], breaks[last]]` with `breaks` as initial
/// panel boundaries (must be strictly increasing).
pub fn integrate<T, F>(mut f: F, breaks: &[f64], cfg: &QuadConfig) -> Result<QuadResult<T>>
where
    T: QuadValue,
    F: FnMut(f64) -> Result<T>,
{
    Ok(integrate_panels(&mut f, breaks, cfg)?.0)
}

/// A panel `[a, b]` with its integral.
pub type PanelValue<T> = (f64, f64, T);

/// Like [`integrate`] but also returns the final panel partition as
/// `(a, b, value)` triples in ascending order.
pub fn integrate_panels<T, F>(
    f: &mut F,
    breaks: &[f64],
    cfg: &QuadConfig,
) -> Result<(QuadResult<T>, Vec<PanelValue<T>>)>
where
    T: QuadValue,
    F: FnMut(f64) -> Result<T>,
{
    if breaks.len() < 2 {
        return Ok((QuadResult { value: T::zero(), abs_error: 0.0, evaluations: 0 }, Vec::new()));
    }
    if breaks.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidConfig("quadrature breakpoints must be strictly increasing"));
    }
    // Panels live in a slab; a bisected panel is replaced by its left half and
    // the right half is appended. `next` links panels left to right.
    let mut panels: Vec<Panel<T>> = Vec::with_capacity(breaks.len() * 2);
    let mut next: Vec<Option<usize>> = Vec::with_capacity(breaks.len() * 2);
    let mut heap = BinaryHeap::new();
    let mut evaluations = 0usize;
    for w in breaks.windows(2) {
        let panel = gk15(f, w[0], w[1])?;
        evaluations += 15;
        let idx = panels.len();
        heap.push(Ranked { error: panel.error, index: idx });
        panels.push(panel);
        next.push(Some(idx + 1));
    }
    if let Some(last) = next.last_mut() {
        *last = None;
    }

    let mut total_err: f64 = panels.iter().map(|p| p.error).sum();
    let mut total_val = sum_values(&panels);
    let mut subdivisions = 0usize;
    while total_err > cfg.abs_tol.max(cfg.rel_tol * total_val.magnitude())
        && subdivisions < cfg.max_subdivisions
    {
        let Some(Ranked { index, .. }) = heap.pop() else { break };
        let parent = panels[index];
        let mid = 0.5 * (parent.a + parent.b);
        if !(mid > parent.a && mid < parent.b) {
            // Panel cannot be split further in floating point.
            continue;
        }
        let left = gk15(f, parent.a, mid)?;
        let right = gk15(f, mid, parent.b)?;
        evaluations += 30;
        subdivisions += 1;
        total_err += left.error + right.error - parent.error;
        total_val = total_val + left.value + right.value - parent.value;

        let right_idx = panels.len();
        panels[index] = left;
        panels.push(right);
        next.push(next[index]);
        next[index] = Some(right_idx);
        heap.push(Ranked { error: left.error, index });
        heap.push(Ranked { error: right.error, index: right_idx });
    }

    // Re-sum in spatial order so the result is independent of refinement order.
    let mut ordered = Vec::with_capacity(panels.len());
    let mut cursor = Some(0usize);
    let mut value = T::zero();
    let mut abs_error = 0.0;
    while let Some(i) = cursor {
        let p = panels[i];
        value = value + p.value;
        abs_error += p.error;
        ordered.push((p.a, p.b, p.value));
        cursor = next[i];
    }
    Ok((QuadResult { value, abs_error, evaluations }, ordered))
}

fn sum_values<T: QuadValue>(panels: &[Panel<T>]) -> T {
    panels.iter().fold(T::zero(), |acc, p| acc + p.value)
}

/// Push the breakpoints splitting `[a, b]` into equal panels no wider than
/// `max_width`, every one except `b` itself.
pub fn uniform_breaks(a: f64, b: f64, max_width: f64, out: &mut Vec<f64>) {
    let n = (((b - a) / max_width).ceil() as usize).max(1);
    for i in 0..n {
        out.push(a + (b - a) * i as f64 / n as f64);
    }
}
