//! Spectral tooling for the flame-front equation with Couette shear,
//!
//! ```text
//! ∂t φ + A y ∂x φ + Δφ + 4Δ²φ + κ φ = −½ |∇φ|²
//! ```
//!
//! on a periodic (shearing) box standing in for ℝ³.
//!
//! The crate is organised in layers:
//!
//! * [`spectral`] grids, transforms, shear-frame remapping and dealiasing;
//! * [`kernel`] the exact Fourier multiplier of the linearised operator and
//!   its physical-space kernels and norms;
//! * [`estimates`] numerical checks of the kernel inequalities and decay rates;
//! * [`solver`] exponential time differencing for the nonlinear equation;
//! * [`io`] configuration, norm CSV and binary snapshot formats.

pub mod error;
pub mod estimates;
pub mod io;
pub mod kernel;
mod par;
pub mod rng;
pub mod solver;
pub mod spectral;

pub use error::{Error, Result};
pub use kernel::Params;
pub use spectral::{Field, Grid, SpectralField};
