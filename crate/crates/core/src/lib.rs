//! Quaternion and spacetime-algebra Fourier transforms.
//!
//! The crate covers the two-sided quaternion Fourier transform (QFT) and the
//! right-sided variant (QFTr) on 2D quaternion grids, the volume-time (VtFT)
//! and spacetime (SFT) transforms on 4D grids of `Cl(3,1)` multivectors, the
//! linear-automorphism machinery behind their transformation laws, and a
//! quadrature evaluator for checking continuous-domain statements.
//!
//! Every fast transform has a direct-summation counterpart that serves as its
//! oracle. The crate is `no_std` (with `alloc`) when the default `std`
//! feature is disabled.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]
#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod autom;
pub mod clifford;
pub mod contin;
mod error;
pub mod fft;
mod math;
mod par;
pub mod qft2d;
pub mod quat;
pub mod spacetime;
pub mod verify;

pub use error::{Error, Result};
pub use quat::Quaternion;

/// Selects which implementation a transform runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TransformPath {
    /// Fast path when the grid allows it, direct summation otherwise.
    #[default]
    Auto,
    /// Direct summation over every sample; works for any grid size.
    Direct,
    /// FFT-based path; requires power-of-two dimensions.
    Fast,
}
