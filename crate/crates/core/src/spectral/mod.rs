//! Periodic grids, Fourier transforms and shearing-frame bookkeeping.
//!
//! # Conventions
//!
//! Samples sit at centred coordinates `x_j = (j − n/2)·Δx`, so the box is
//! `[−l/2, l/2)` along each axis and index `n/2` is the origin. Arrays are
//! stored with `x` fastest: `idx = i + n_x (j + n_y k)`.
//!
//! Spectral coefficients use the continuum normalisation
//!
//! ```text
//! ĉ(k) = Σ_j f(x_j) e^{−i k·x_j} ΔV        f(x_j) = (1/V) Σ_k ĉ(k) e^{i k·x_j}
//! ```
//!
//! so `ĉ(0) = mean(f)·V` and `(1/V)Σ_k` approximates `(2π)^{−3}∫dk`.
//! Coefficients are stored in FFT order: lattice index `j` carries the mode
//! `m = j` for `j < n/2` and `m = j − n` otherwise.
//!
//! # Shearing frame
//!
//! A field carries a `frame_tilt` `S`. Its coefficient labelled `(ξ, η, ζ)`
//! multiplies the plane wave `exp(i(ξx + (η − Sξ)y + ζz))`, i.e. the samples
//! live at the sheared points `(x_i + S y_j, y_j, z_k)`. Couette transport
//! `A y ∂x` only changes `S` at rate `A`; [`shear_remap`] re-labels modes so
//! that `S` returns to zero.

mod dealias;
mod fft;
mod field;
mod grid;
mod remap;

pub use dealias::{dealias, dealias_in_place, is_dealiased, kept_mode};
pub use fft::{forward_transform, inverse_transform, Fft3};
pub use field::{Field, SpectralField};
pub use grid::{Axis, Grid};
pub use remap::{shear_remap, shear_shift};
pub(crate) use remap::shear_shift_dropping;
pub(crate) use field::lp_norm;
