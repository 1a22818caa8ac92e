use daubound_core::bounds::{bound_a, bound_b, bound_d, bound_e, bound_f, bound_g, ratio_bounds};
use daubound_core::special::sinc_power_integral;
use daubound_core::{best_constant_ckp, BoundParams, BoundSet, Corollary, EvalConfig, LogBase, NormRequest, QuadConfig};
use proptest::prelude::*;
use statrs::function::gamma::ln_gamma;
use std::f64::consts::{LN_2, PI};

/// ln((2m)! / (m! (m-1)!)).
fn ln_ratio(m: f64) -> f64 {
    ln_gamma(2.0 * m + 1.0) - ln_gamma(m + 1.0) - ln_gamma(m)
}

/// Each displayed term evaluated in log space, independently of the library.
struct Oracle {
    m: f64,
    k: f64,
    p: f64,
    eps: f64,
    c: f64,
}

impl Oracle {
    fn new(m: u32, k: u32, p: f64, eps: f64, c: f64) -> Self {
        Self { m: f64::from(m), k: f64::from(k), p, eps, c }
    }

    fn lead(&self) -> f64 {
        let (p, k) = (self.p, self.k);
        let ln_band = if p * k == 1.0 { LN_2.ln() } else { ((1.0 - 2f64.powf(1.0 - p * k)) / (p * k - 1.0)).ln() };
        ((1.0 / p - 0.5) * (2.0 * PI).ln() - k * PI.ln() + ln_band / p).exp()
    }

    fn bracket(&self, x: f64) -> f64 {
        let (m, k, p) = (self.m, self.k, self.p);
        let t1 = ((1.0 - p * (2.0 * m + 0.5)) * LN_2 + (p * (m - k - 0.5) + 1.0) * x.ln() + 0.5 * p * ln_ratio(m)).exp();
        let t2 = 1.0 / (2.0 * PI).powf(self.c * p * m.ln() - 2.0);
        let t3 = 1.0 / (2f64.powf(0.5 * p - 1.0) * PI.powf(p * (k + 0.5) - 1.0));
        t1 + t2 + t3
    }

    fn a(&self) -> f64 {
        self.lead() + self.bracket(PI).powf(1.0 / self.p)
    }

    fn b(&self) -> f64 {
        self.lead() - self.bracket(self.eps).powf(1.0 / self.p)
    }

    fn d(&self) -> f64 {
        let (m, p) = (self.m, self.p);
        2.0 * (2.0 * PI).powf(1.0 / p - 0.5)
            + ((0.5 - 2.0 * m) * LN_2 + (m + 0.5) * PI.ln() + 0.5 * ln_ratio(m)).exp()
            + (2.0 * PI).powf(2.0 - self.c * m.ln())
    }

    fn e(&self) -> f64 {
        let (m, p) = (self.m, self.p);
        let t1 = ((1.0 - p * (0.5 + 2.0 * m)) * LN_2 + (p * (m - 0.5) + 1.0) * PI.ln() + 0.5 * p * ln_ratio(m)).exp();
        let bracket = t1 + (2.0 * PI).powf(2.0 - self.c * p * m.ln()) + (2.0 * PI).powf(1.0 - 0.5 * p);
        (2.0 * PI).powf(1.0 / p - 0.5) - bracket.powf(1.0 / p)
    }

    /// The alternating sum done exactly in `i128`, valid for `mp ≤ 24`.
    fn f(&self) -> f64 {
        let (m, p) = (self.m, self.p);
        let n = (m * p).round() as i128;
        let mut sum: i128 = 0;
        let mut binom: i128 = 1;
        for i in 0..=n / 2 {
            let term = binom * (n - 2 * i).pow((n - 1) as u32);
            sum += if i % 2 == 0 { term } else { -term };
            binom = binom * (n - i) / (i + 1);
        }
        let ln_fact = ln_gamma(n as f64);
        let first = 2f64.powf(1.0 - 0.5 * p) / (PI.powf(p * (m + 0.5) - 1.0) * (m * p - 1.0));
        let second = ((1.0 - p * (2.0 * m - 1.0)) * LN_2 - (0.5 * p - 1.0) * PI.ln() + (sum as f64).ln() - ln_fact).exp();
        (first + second).powf(1.0 / p)
    }

    fn g(&self) -> f64 {
        let (m, p) = (self.m, self.p);
        let ln_gp = (1.0 - 2.0 * p * m) * LN_2 + ln_gamma(2.0 * m + 1.0)
            - (0.5 * p - 1.0) * PI.ln()
            - 0.5 * p * m.ln()
            - m * p * 3f64.ln()
            - ln_gamma(m + 1.0)
            - ln_gamma(m);
        (ln_gp / p).exp()
    }
}

fn params(m: u32, k: u32, p: f64, eps: f64, c: f64) -> BoundParams {
    BoundParams { eps, c, ..BoundParams::new(m, k, p) }
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1e-300)
}

#[test]
fn a_b_match_dual_evaluation() {
    for m in 2..=8u32 {
        for k in 1..m {
            for &p in &[1.25, 1.5, 2.0, 3.0, 5.0] {
                for &eps in &[0.1, PI / 2.0, 3.0] {
                    let o = Oracle::new(m, k, p, eps, 1.3);
                    let bp = params(m, k, p, eps, 1.3);
                    assert!(close(bound_a(&bp).unwrap(), o.a(), 1e-12), "A m={m} k={k} p={p}");
                    assert!((bound_b(&bp).unwrap() - o.b()).abs() <= 1e-12 * o.a(), "B m={m} k={k} p={p}");
                }
            }
        }
    }
}

#[test]
fn d_e_match_dual_evaluation() {
    for m in 1..=10u32 {
        for &p in &[1.25, 2.0, 4.0] {
            for &c in &[0.5, 1.0, 2.0] {
                let o = Oracle::new(m, 0, p, PI / 2.0, c);
                let bp = params(m, 0, p, PI / 2.0, c);
                assert!(close(bound_d(&bp).unwrap(), o.d(), 1e-12), "D m={m} p={p}");
                assert!((bound_e(&bp).unwrap() - o.e()).abs() <= 1e-12 * o.d(), "E m={m} p={p}");
            }
        }
    }
}

#[test]
fn f_g_match_dual_evaluation() {
    for (m, p) in [(1u32, 2.0), (1, 4.0), (2, 2.0), (2, 4.0), (3, 2.0), (4, 2.0), (4, 1.5), (5, 4.0), (6, 4.0), (3, 8.0)] {
        let o = Oracle::new(m, m, p, PI / 2.0, 1.0);
        let bp = params(m, m, p, PI / 2.0, 1.0);
        assert!(close(bound_f(&bp).unwrap(), o.f(), 1e-11), "F m={m} p={p}");
        assert!(close(bound_g(&bp).unwrap(), o.g(), 1e-12), "G m={m} p={p}");
    }
}

#[test]
fn f_alternating_sum_agrees_with_sinc_integral() {
    // Σ_i (-1)^i C(n,i) (n-2i)^{n-1} / (n-1)! = 2^n/π ∫₀^∞ (sin t/t)^n dt.
    for n in [2i128, 4, 6, 8, 10, 12, 16, 20] {
        let mut sum: i128 = 0;
        let mut binom: i128 = 1;
        for i in 0..=n / 2 {
            let term = binom * (n - 2 * i).pow((n - 1) as u32);
            sum += if i % 2 == 0 { term } else { -term };
            binom = binom * (n - i) / (i + 1);
        }
        let lhs = ((sum as f64).ln() - ln_gamma(n as f64)).exp();
        let rhs = 2f64.powi(n as i32) / PI * sinc_power_integral(n as u32).unwrap();
        assert!(close(lhs, rhs, 1e-13), "n={n}: {lhs} vs {rhs}");
    }
}

#[test]
fn shared_bracket_identity_at_eps_pi() {
    for (m, k, p) in [(2u32, 1u32, 2.0), (5, 3, 1.5), (8, 1, 3.0)] {
        let bp = params(m, k, p, PI, 1.0);
        let a = bound_a(&bp).unwrap();
        let b = bound_b(&bp).unwrap();
        let lead = Oracle::new(m, k, p, PI, 1.0).lead();
        assert!(((a - lead) - (lead - b)).abs() <= 1e-14 * a.abs(), "m={m} k={k} p={p}");
    }
}

#[test]
fn b_increases_as_eps_shrinks() {
    let bp = |eps| params(4, 2, 2.0, eps, 1.0);
    let mut prev = f64::INFINITY;
    for i in 1..=100 {
        let eps = PI * f64::from(i) / 100.0;
        let b = bound_b(&bp(eps)).unwrap();
        assert!(b < prev, "ε={eps}");
        prev = b;
    }
    let o = Oracle::new(4, 2, 2.0, 1e-12, 1.0);
    let limit = o.lead() - o.bracket(1e-300).sqrt();
    assert!(bound_b(&bp(1e-12)).unwrap() <= limit + 1e-15);
}

#[test]
fn continuous_as_pk_approaches_one() {
    assert!(bound_a(&params(3, 1, 1.0 + 1e-12, PI / 2.0, 1.0)).unwrap().is_finite());
    let a1 = bound_a(&params(3, 1, 1.0 + 1e-9, PI / 2.0, 1.0)).unwrap();
    let a2 = bound_a(&params(3, 1, 1.0 + 2e-9, PI / 2.0, 1.0)).unwrap();
    assert!((a1 - a2).abs() < 1e-7);
}

#[test]
fn a_dominates_b_and_d_dominates_e() {
    for m in 1..=12u32 {
        for &p in &[1.1, 1.5, 2.0, 3.0, 6.0] {
            for &c in &[0.25, 1.0, 3.0] {
                let set = BoundSet::compute(params(m, if m > 1 { 1 } else { 0 }, p, PI / 2.0, c));
                if let (Some(a), Some(b)) = (set.a, set.b) {
                    assert!(a >= b);
                }
                assert!(set.d.unwrap() > set.e.unwrap());
            }
        }
    }
}

#[test]
fn e_is_never_positive() {
    // The bracket in E always exceeds (2π)^{1-p/2}, whose p-th root is the leading term.
    for m in 1..=16u32 {
        for i in 1..=60 {
            let p = 1.0 + 0.1 * f64::from(i);
            for &c in &[0.1, 1.0, 10.0] {
                assert!(bound_e(&params(m, 0, p, PI / 2.0, c)).unwrap() < 0.0, "m={m} p={p} c={c}");
            }
        }
    }
}

#[test]
fn b_is_never_positive() {
    for m in 2..=12u32 {
        for k in 1..m {
            for i in 0..40 {
                let p = 1.05 + 0.15 * f64::from(i);
                if p * f64::from(k) <= 1.0 {
                    continue;
                }
                let b = bound_b(&params(m, k, p, 1e-6, 100.0)).unwrap();
                assert!(b < 0.0, "m={m} k={k} p={p}: {b}");
            }
        }
    }
}

#[test]
fn g_stays_below_f() {
    for (m, p) in [(1u32, 2.0), (2, 2.0), (2, 4.0), (3, 2.0), (4, 2.0), (5, 2.0), (5, 4.0), (8, 2.0)] {
        let bp = params(m, m, p, PI / 2.0, 1.0);
        assert!(bound_g(&bp).unwrap() < bound_f(&bp).unwrap(), "m={m} p={p}");
    }
}

#[test]
fn log_base_changes_only_the_decay_term() {
    let nat = params(4, 1, 2.0, PI / 2.0, 1.0);
    let two = BoundParams { log_base: LogBase::Two, ..nat };
    let ten = BoundParams { log_base: LogBase::Ten, ..nat };
    assert!(bound_a(&two).unwrap() < bound_a(&nat).unwrap());
    assert!(bound_a(&nat).unwrap() < bound_a(&ten).unwrap());
    let c_equiv = BoundParams { c: 1.0 / 2f64.ln(), ..nat };
    assert!(close(bound_a(&two).unwrap(), bound_a(&c_equiv).unwrap(), 1e-14));
}

#[test]
fn corollary_two_interval_contains_the_computed_constant() {
    let bp = params(2, 1, 2.0, PI / 2.0, 2.0);
    let r = ratio_bounds(&bp, Corollary::Two).unwrap();
    let c = best_constant_ckp(&NormRequest::new(2, 1, 2.0), &EvalConfig::default(), &QuadConfig::default()).unwrap();
    assert!(r.lo <= c.value);
    assert!(r.lo_vacuous && r.hi_vacuous && r.hi.is_none());
}

#[test]
fn corollary_three_lower_is_positive() {
    let r = ratio_bounds(&params(2, 2, 2.0, PI / 2.0, 1.0), Corollary::Three).unwrap();
    assert!(r.lo > 0.0 && !r.lo_vacuous);
    assert!(ratio_bounds(&params(3, 3, 1.5, PI / 2.0, 1.0), Corollary::Three).is_err());
}

proptest! {
    #[test]
    fn all_bounds_finite(m in 1u32..=16, p in 1.01f64..8.0, c in 0.05f64..5.0, eps in 0.01f64..PI) {
        let k = m / 2;
        let set = BoundSet::compute(params(m, k, p, eps, c));
        for v in [set.a, set.b, set.d, set.e].into_iter().flatten() {
            prop_assert!(v.is_finite());
        }
    }
}
