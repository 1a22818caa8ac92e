use daubound_core::spectral::{ideal_band_indicator, wavelet_hat_abs2};
use daubound_core::{estimate_decay, EvalConfig, Wavelet, WaveletSpectrum};
use num_complex::Complex64;
use proptest::prelude::*;
use std::f64::consts::{PI, TAU};

fn inv_sqrt_tau() -> f64 {
    1.0 / TAU.sqrt()
}

#[test]
fn haar_moduli_match_closed_forms() {
    let w = Wavelet::new(1, EvalConfig::default()).unwrap();
    for i in 1..=2000 {
        let omega = -100.0 + 0.1 * i as f64 + 1e-3;
        let phi = ((omega / 2.0).sin() / (omega / 2.0)).abs() * inv_sqrt_tau();
        let q = omega / 4.0;
        let psi = q.sin().powi(2) / q.abs() * inv_sqrt_tau();
        assert!((w.scaling_hat(omega).unwrap().norm() - phi).abs() < 1e-10, "ω={omega}");
        assert!((w.wavelet_hat(omega).unwrap().norm() - psi).abs() < 1e-10, "ω={omega}");
        assert!((w.wavelet_hat_abs2(omega).unwrap().sqrt() - psi).abs() < 1e-10, "ω={omega}");
    }
}

#[test]
fn haar_wavelet_is_the_unit_step_pair() {
    // ψ = 1 on [0, 1/2), -1 on [1/2, 1) has ψ̂(ω) = (1 - e^{-iω/2})² / (iω √(2π)).
    let w = Wavelet::new(1, EvalConfig::default()).unwrap();
    for i in 1..=400 {
        let omega = -40.0 + 0.2 * i as f64 + 1e-3;
        let one = Complex64::new(1.0, 0.0);
        let d = one - Complex64::from_polar(1.0, -0.5 * omega);
        let want = d * d / Complex64::new(0.0, omega) * inv_sqrt_tau();
        assert!((w.wavelet_hat(omega).unwrap() - want).norm() < 1e-10, "ω={omega}");
    }
}

#[test]
fn dyadic_partition_of_unity() {
    // Σ_j |ψ̂(2^j ω)|² = 1/(2π) for ω ≠ 0.
    for m in 1..=10u32 {
        let s = WaveletSpectrum::new(m, EvalConfig::default()).unwrap();
        for &omega in &[0.3, 1.0, 2.5, PI, 5.0] {
            let total: f64 = (-60..=40).map(|j| s.wavelet_abs2(omega * 2f64.powi(j)).unwrap()).sum();
            assert!((total * TAU - 1.0).abs() < 1e-10, "m={m} ω={omega}: {}", total * TAU);
        }
    }
}

#[test]
fn integer_translates_are_orthonormal() {
    // Σ_k |φ̂(ω + 2πk)|² = 1/(2π); truncated at |k| ≤ K the tail is below the tolerance.
    for m in 4..=8u32 {
        let s = WaveletSpectrum::new(m, EvalConfig::default()).unwrap();
        for &omega in &[0.0, 0.7, 2.0, PI] {
            let total: f64 = (-4000..=4000).map(|k| s.scaling_abs2(omega + TAU * f64::from(k)).unwrap()).sum();
            assert!((total * TAU - 1.0).abs() < 1e-6, "m={m} ω={omega}: {}", total * TAU);
        }
    }
}

#[test]
fn complex_and_modulus_paths_agree() {
    for m in 1..=10u32 {
        let w = Wavelet::new(m, EvalConfig::default()).unwrap();
        for i in 0..=3000 {
            let omega = -150.0 + 0.1 * i as f64;
            let a = w.wavelet_hat(omega).unwrap().norm_sqr();
            let b = w.wavelet_hat_abs2(omega).unwrap();
            assert!((a - b).abs() < 1e-12 + 1e-9 * b, "m={m} ω={omega}: {a} vs {b}");
            let pa = w.scaling_hat(omega).unwrap().norm_sqr();
            let pb = w.spectrum().scaling_abs2(omega).unwrap();
            assert!((pa - pb).abs() < 1e-12 + 1e-9 * pb, "m={m} ω={omega}");
        }
    }
}

#[test]
fn tighter_truncation_changes_little() {
    let loose = EvalConfig::default();
    let tight = EvalConfig { product_tol: 1e-15, min_depth: 30, max_depth: 80 };
    for m in [1u32, 2, 5, 10] {
        let a = Wavelet::new(m, loose).unwrap();
        let b = Wavelet::new(m, tight).unwrap();
        for i in 0..200 {
            let omega = 0.37 * i as f64;
            let d = (a.wavelet_hat(omega).unwrap() - b.wavelet_hat(omega).unwrap()).norm();
            assert!(d < 1e-11, "m={m} ω={omega}: {d:e}");
            let d2 = (a.wavelet_hat_abs2(omega).unwrap() - b.wavelet_hat_abs2(omega).unwrap()).abs();
            assert!(d2 < 1e-12, "m={m} ω={omega}: {d2:e}");
        }
    }
}

#[test]
fn zero_of_order_m_at_origin() {
    for m in 1..=8u32 {
        let s = WaveletSpectrum::new(m, EvalConfig::default()).unwrap();
        let (w1, w2) = (1e-3, 2e-3);
        let slope = (s.wavelet_abs2(w2).unwrap() / s.wavelet_abs2(w1).unwrap()).ln() / (2.0 * 2f64.ln());
        assert!((slope - f64::from(m)).abs() < 1e-3, "m={m}: {slope}");
    }
}

#[test]
fn high_orders_without_taps() {
    for m in [20u32, 32] {
        let v = wavelet_hat_abs2(m, 1.5 * PI, &EvalConfig::default()).unwrap();
        assert!(v > 0.0 && v * TAU <= 1.0 + 1e-12);
    }
    assert!(WaveletSpectrum::new(33, EvalConfig::default()).is_err());
}

#[test]
fn beyond_depth_budget_is_an_error() {
    let cfg = EvalConfig { max_depth: 20, ..Default::default() };
    let s = WaveletSpectrum::new(4, cfg).unwrap();
    assert!(s.wavelet_abs2(1e3).is_ok());
    assert!(s.wavelet_abs2(1e12).is_err());
    assert!(s.wavelet_abs2(f64::NAN).is_err());
}

#[test]
fn large_order_approaches_ideal_band() {
    // |ψ̂_m| tends to the band indicator away from the band edges.
    let s = WaveletSpectrum::new(32, EvalConfig::default()).unwrap();
    for &omega in &[0.5 * PI, 1.5 * PI, 3.0 * PI] {
        let got = s.wavelet_abs2(omega).unwrap().sqrt();
        assert!((got - ideal_band_indicator(omega)).abs() < 1e-3, "ω={omega}: {got}");
    }
}

#[test]
fn decay_fit_is_positive_and_ordered() {
    let mut prev = 0.0;
    for m in [2u32, 4, 8] {
        let s = WaveletSpectrum::new(m, EvalConfig::default()).unwrap();
        let fit = estimate_decay(&s, 4.0 * PI, 4096.0 * PI, 256).unwrap();
        assert!(fit.c > 0.0, "m={m}");
        assert!(fit.exponent > prev, "m={m}: {} after {prev}", fit.exponent);
        prev = fit.exponent;
    }
}

#[test]
fn decay_envelope_dominates_inside_its_range() {
    for m in [2u32, 3, 6, 10] {
        let s = WaveletSpectrum::new(m, EvalConfig::default()).unwrap();
        let fit = estimate_decay(&s, 4.0 * PI, 4096.0 * PI, 256).unwrap();
        for i in 0..20_000 {
            let omega = 4.0 * PI * (1024f64).powf(i as f64 / 19_999.0);
            let v = s.wavelet_abs2(omega).unwrap().sqrt();
            assert!(v <= (1.0 + 1e-9) * fit.c_tilde * omega.powf(-fit.exponent), "m={m} ω={omega}");
        }
    }
}

#[test]
fn decay_fit_rejects_bad_input() {
    let s1 = WaveletSpectrum::new(1, EvalConfig::default()).unwrap();
    assert!(estimate_decay(&s1, 4.0 * PI, 100.0, 64).is_err());
    let s2 = WaveletSpectrum::new(2, EvalConfig::default()).unwrap();
    assert!(estimate_decay(&s2, 1.0, 100.0, 64).is_err());
    assert!(estimate_decay(&s2, 4.0 * PI, 100.0, 4).is_err());
}

proptest! {
    #[test]
    fn conjugate_symmetry(m in 1u32..=8, omega in 0.0f64..200.0) {
        let w = Wavelet::new(m, EvalConfig::default()).unwrap();
        let a = w.wavelet_hat(omega).unwrap();
        let b = w.wavelet_hat(-omega).unwrap();
        prop_assert!((a - b.conj()).norm() < 1e-12);
    }

    #[test]
    fn modulus_bounded_by_band_energy(m in 1u32..=16, omega in -500.0f64..500.0) {
        let s = WaveletSpectrum::new(m, EvalConfig::default()).unwrap();
        let v = s.wavelet_abs2(omega).unwrap();
        prop_assert!(v >= 0.0 && v * TAU <= 1.0 + 1e-12);
    }
}
