//! The linearised propagator.
//!
//! In Fourier variables the linear equation is solved by a shift of `η`
//! along the characteristics `η + Aξs` times the multiplier
//!
//! ```text
//! Ĝ₂(t; ξ, η, ζ) = exp E,   E = ∫₀ᵗ [v(s) − κ − 4 v(s)²] ds,
//! v(s) = ξ² + (η + Aξs)² + ζ².
//! ```
//!
//! Physical-space kernels are `(2π)^{−3} ∫ w Ĝ₂ e^{i k·x} dk` with `w` a
//! derivative weight, approximated on a periodic box. Two sentinels guard
//! the truncation: the multiplier near the lattice edge and the kernel in
//! the outer shell of the box must both be small against their peaks.

mod green;
mod norms;
mod params;
mod spec;
mod symbol;

pub use green::{
    g2_kernel, g2_kernel_with, kernel_grid, kernel_grid_covering, kernel_grid_with, primed_derivative_kernel,
    primed_derivative_kernel_with, sampling_tilt, shell_ratio, spectral_cutoff, transfer_terms,
    zero_nyquist, KernelOptions, KernelSample, default_cutoff_level, DEFAULT_SENTINEL,
};
pub use norms::{
    g2hat_l1_lq_norms, kernel_field, kernel_lp_norm, kernel_lp_norms, kernel_two_reading_norm,
    source_side_kernel, TwoReadingNorm,
};
pub use params::Params;
pub use spec::{KernelSpec, Side};
pub use symbol::{exponent, multiplier_g2, symbol_exponent, v_moments, SymbolPoint};
