//! Exact combinatorics and the few special values shared by the other modules.

use num_bigint::{BigInt, BigUint, Sign};
#[allow(unused_imports)]
use num_traits::{Float, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest `n` accepted by [`sinc_power_integral`].
pub const MAX_SINC_POWER: u32 = 128;

/// Base of the logarithm in decay exponents of the form `c · log m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LogBase {
    #[default]
    Natural,
    Two,
    Ten,
}

impl LogBase {
    pub fn log(self, x: f64) -> f64 {
        match self {
            LogBase::Natural => x.ln(),
            LogBase::Two => x.log2(),
            LogBase::Ten => x.log10(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LogBase::Natural => "e",
            LogBase::Two => "2",
            LogBase::Ten => "10",
        }
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Exact binomial coefficient `C(n, k)`.
///
/// Each step divides out the common factor before multiplying, so an
/// intermediate never exceeds the final coefficient and overflow is reported
/// only when the result itself does not fit in a `u128`.
pub fn binomial(n: u32, k: u32) -> Result<u128> {
    if k > n {
        return Err(Error::Domain("binomial requires k <= n"));
    }
    let k_small = k.min(n - k);
    let mut c: u128 = 1;
    for i in 0..k_small {
        let num = u128::from(n - i);
        let den = u128::from(i + 1);
        let g = gcd(c, den);
        let den_rest = den / g;
        // den_rest divides num because gcd(c / g, den_rest) = 1.
        c = (c / g)
            .checked_mul(num / den_rest)
            .ok_or(Error::Overflow { n, k })?;
    }
    Ok(c)
}

/// `C(n, k)` as a big integer, used where the product exceeds 128 bits.
pub fn binomial_big(n: u32, k: u32) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut c = BigUint::one();
    for i in 0..k.min(n - k) {
        c = c * (n - i) / (i + 1);
    }
    c
}

/// `c_m = Γ(m + 1/2) / (√π Γ(m))`.
///
/// Evaluated through the ratio `c_{i+1} / c_i = (2i + 1) / (2i)` summed in
/// log space, which equals `(2m)! / (2^{2m} m! (m-1)!)`. `m = 0` returns 0,
/// the value of `1/Γ(0)`.
pub fn cm_constant(m: u32) -> f64 {
    if m == 0 {
        return 0.0;
    }
    let mut log_c = -core::f64::consts::LN_2;
    for i in 1..m {
        let two_i = 2.0 * f64::from(i);
        log_c += ((two_i + 1.0) / two_i).ln();
    }
    log_c.exp()
}

/// `(2m)! / (m! (m-1)!) = m · C(2m, m)` as a float.
pub fn central_factorial_ratio(m: u32) -> f64 {
    if m == 0 {
        return 0.0;
    }
    match binomial(2 * m, m) {
        Ok(c) => f64::from(m) * c as f64,
        Err(_) => f64::from(m) * biguint_to_f64(&binomial_big(2 * m, m)),
    }
}

/// Exact alternating sum `Σ_{i=0}^{⌊n/2⌋} (-1)^i C(n, i) (n - 2i)^{n-1}`.
pub fn sinc_alternating_sum(n: u32) -> BigInt {
    let mut sum = BigInt::zero();
    for i in 0..=n / 2 {
        let base = n - 2 * i;
        if base == 0 {
            continue;
        }
        let term = BigInt::from(binomial_big(n, i)) * BigInt::from(base).pow(n - 1);
        if i % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum
}

/// `∫₀^∞ (sin t / t)^n dt` for even `n` from the closed form
/// `π / (2^n (n-1)!) · Σ_i (-1)^i C(n, i) (n - 2i)^{n-1}`.
///
/// The signed sum and the denominator are exact integers; only their ratio is
/// rounded, once.
pub fn sinc_power_integral(n: u32) -> Result<f64> {
    if n == 0 || n % 2 == 1 {
        return Err(Error::Domain("sinc power integral needs a positive even power"));
    }
    if n > MAX_SINC_POWER {
        return Err(Error::Domain("sinc power exceeds the supported maximum of 128"));
    }
    let sum = sinc_alternating_sum(n);
    let mut denom = BigUint::one() << n as usize;
    for i in 2..n {
        denom *= i;
    }
    let (sign, magnitude) = (sum.sign(), sum.abs().to_biguint().unwrap_or_default());
    let ratio = ratio_to_f64(&magnitude, &denom);
    let signed = if sign == Sign::Minus { -ratio } else { ratio };
    Ok(core::f64::consts::PI * signed)
}

/// Correctly scaled quotient of two big integers, rounded to `f64`.
pub fn ratio_to_f64(num: &BigUint, den: &BigUint) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    let shift = 64 + den.bits() as i64 - num.bits() as i64;
    let q = if shift >= 0 {
        (num << shift as usize) / den
    } else {
        num / (den << (-shift) as usize)
    };
    libm::scalbn(biguint_to_f64(&q), -shift as i32)
}

fn biguint_to_f64(x: &BigUint) -> f64 {
    x.to_f64().unwrap_or(f64::INFINITY)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_small_entries() {
        assert_eq!(binomial(4, 2).unwrap(), 6);
        assert_eq!(binomial(17, 0).unwrap(), 1);
        assert_eq!(binomial(17, 17).unwrap(), 1);
        assert_eq!(binomial(10, 3).unwrap(), 120);
    }

    #[test]
    fn binomial_agrees_with_pascal_rule_up_to_128() {
        for n in 1..=128u32 {
            for k in 1..n {
                let lhs = binomial(n, k).unwrap();
                let rhs = binomial(n - 1, k - 1).unwrap() + binomial(n - 1, k).unwrap();
                assert_eq!(lhs, rhs, "C({n},{k})");
            }
        }
    }

    #[test]
    fn binomial_rejects_k_above_n() {
        assert!(matches!(binomial(3, 4), Err(Error::Domain(_))));
    }

    #[test]
    fn binomial_reports_overflow() {
        assert_eq!(binomial(140, 70), Err(Error::Overflow { n: 140, k: 70 }));
    }

    #[test]
    fn cm_small_orders() {
        assert_eq!(cm_constant(1), 0.5);
        assert!((cm_constant(2) - 0.75).abs() < 1e-15);
        assert!((cm_constant(3) - 0.9375).abs() < 1e-15);
    }

    #[test]
    fn sinc_rejects_odd_and_zero() {
        assert!(sinc_power_integral(0).is_err());
        assert!(sinc_power_integral(3).is_err());
        assert!(sinc_power_integral(130).is_err());
    }

    #[test]
    fn sinc_exact_small_powers() {
        let pi = core::f64::consts::PI;
        assert!((sinc_power_integral(2).unwrap() - pi / 2.0).abs() < 1e-15);
        assert!((sinc_power_integral(4).unwrap() - pi / 3.0).abs() < 1e-15);
        assert_eq!(sinc_alternating_sum(4), BigInt::from(32));
    }

    #[test]
    fn ratio_handles_both_shift_directions() {
        let a = BigUint::from(1u32) << 300usize;
        let b = BigUint::from(3u32);
        let r = ratio_to_f64(&a, &b);
        assert!((r / libm::scalbn(1.0 / 3.0, 300) - 1.0).abs() < 1e-15);
        let r = ratio_to_f64(&b, &a);
        assert!((r / libm::scalbn(3.0, -300) - 1.0).abs() < 1e-15);
    }
}
