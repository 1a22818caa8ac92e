//! Daubechies orthonormal wavelets on the Fourier side.
//!
//! The crate builds the Daubechies filters `H_m`, evaluates the scaling
//! function and wavelet transforms as truncated infinite products with a
//! certified truncation rule, integrates the weighted norms
//! `‖(iω)^{-k} ψ̂‖_p` with an adaptive Gauss–Kronrod engine, and evaluates
//! the closed-form bounds `A, B, D, E, F, G` on those norms together with the
//! Bernstein-type coefficient inequality that they control.
//!
//! Everything here is `no_std` and only needs `alloc`; report formats and the
//! command-line front end live in the companion `daubound` crate.
#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

extern crate alloc;

pub mod bernstein;
pub mod bounds;
pub mod error;
pub mod filters;
pub mod norms;
pub mod quad;
mod roots;
pub mod special;
pub mod spectral;

pub use bernstein::{
    bernstein_rhs, verify_sweep, wavelet_coefficient, Check, Status, SweepConfig, SweepGrid,
    SweepReport, TestFunction, VerificationRow,
};
pub use bounds::{BoundParams, BoundSet, Corollary, RatioBounds};
pub use error::{Error, Result};
pub use filters::{construct_filter, FilterSpec};
pub use norms::{best_constant_ckp, weighted_lp_norm, DecayModel, NormRequest};
pub use quad::{QuadConfig, QuadResult};
pub use special::LogBase;
pub use spectral::{estimate_decay, DecayFit, EvalConfig, Wavelet, WaveletSpectrum};
