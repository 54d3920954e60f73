use rand::Rng;
use rustfft::num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kernel::green::{
    g2_kernel_with, primed_derivative_kernel_with, sampling_tilt, spectral_cutoff, zero_nyquist,
    KernelOptions,
};
use crate::kernel::symbol::exponent;
use crate::kernel::{KernelSpec, Params, Side};
use crate::spectral::{Axis, Fft3, Field, Grid, SpectralField};

fn check_p(pp: f64) -> Result<()> {
    if pp >= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!("norm exponent must be ≥ 1, got {pp}")))
    }
}

/// The kernel behind [`kernel_lp_norm`]: direct for unprimed specs,
/// assembled from unprimed kernels for primed ones.
pub fn kernel_field(
    t: f64,
    grid: &Grid,
    p: &Params,
    spec: &KernelSpec,
    opts: &KernelOptions,
) -> Result<Field> {
    match spec.side {
        Side::Unprimed => g2_kernel_with(t, grid, p, spec, opts).map(|s| s.field),
        Side::Primed => primed_derivative_kernel_with(t, grid, p, spec.deriv, opts),
    }
}

/// Discrete `L^p` norm (cell-volume weighted) of a kernel; `pp = ∞` allowed.
pub fn kernel_lp_norm(t: f64, pp: f64, grid: &Grid, p: &Params, spec: &KernelSpec) -> Result<f64> {
    Ok(kernel_lp_norms(t, &[pp], grid, p, spec, &KernelOptions::default())?[0])
}

/// Several norms of one kernel, sharing the transform.
pub fn kernel_lp_norms(
    t: f64,
    pps: &[f64],
    grid: &Grid,
    p: &Params,
    spec: &KernelSpec,
    opts: &KernelOptions,
) -> Result<Vec<f64>> {
    pps.iter().try_for_each(|&pp| check_p(pp))?;
    let f = kernel_field(t, grid, p, spec, opts)?;
    Ok(pps.iter().map(|&pp| f.lp_norm(pp)).collect())
}

/// Both readings of the kernel norm: over `(x, y, z)` at a fixed source
/// point, and over the source `(x′, y′, z′)` at a fixed target point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoReadingNorm {
    pub target_reading: f64,
    pub source_reading: f64,
}

impl TwoReadingNorm {
    pub fn value(&self) -> f64 {
        self.target_reading.max(self.source_reading)
    }

    /// `|a − b| / max(a, b)`.
    pub fn discrepancy(&self) -> f64 {
        let m = self.value();
        if m == 0.0 {
            0.0
        } else {
            (self.target_reading - self.source_reading).abs() / m
        }
    }
}

/// The kernel as a function of the source point `(x′, y′, z′)` for the
/// target point `(x, y, z)`.
///
/// `G(t; x, y, z; x′, y′, z′) = H(x − x′ − Aty′, y − y′, z − z′)` where `H`
/// has multiplier `Ĝ₂·w`. In the source variables its Fourier transform is
/// `w Ĝ₂ e^{i(xξ + yη + zζ)}` at `ξ = −μ, η = −ν + Atμ, ζ = −ρ`. Samples are
/// taken in a frame with tilt `tilt`.
pub fn source_side_kernel(
    t: f64,
    grid: &Grid,
    p: &Params,
    spec: &KernelSpec,
    target: [f64; 3],
    tilt: f64,
) -> Result<Field> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::NonPositiveTime(t));
    }
    let at = p.a * t;
    let spec = *spec;
    let coeffs = crate::par::map_range(grid.len(), |idx| {
        let [mu, nu, rho] = grid.physical_wavevector(idx, tilt);
        let (xi, eta, zeta) = (-mu, -nu + at * mu, -rho);
        let g = exponent(p.a, p.kappa, xi, eta, zeta, t).exp();
        let phase = target[0] * xi + target[1] * eta + target[2] * zeta;
        spec.weight(xi, eta, zeta, at) * g * Complex64::from_polar(1.0, phase)
    });
    let mut s = SpectralField { grid: grid.clone(), coeffs, frame_tilt: tilt };
    zero_nyquist(&mut s);
    Fft3::new(grid).inverse(&s)
}

/// Both readings of the `L^p` norm, with the target point drawn from
/// `seed`.
///
/// The target is taken on the lattice, `y = Y_a`, `z = Z_b`,
/// `x = X_c + S y` with `S` the first reading's tilt, and the second reading
/// is sampled with tilt `S − At`. The two sample sets are then the same set
/// of points of `H`, so the readings agree up to rounding whatever the
/// offset.
pub fn kernel_two_reading_norm(
    t: f64,
    pp: f64,
    grid: &Grid,
    p: &Params,
    spec: &KernelSpec,
    seed: u64,
    opts: &KernelOptions,
) -> Result<TwoReadingNorm> {
    check_p(pp)?;
    let first = kernel_field(t, grid, p, spec, opts)?;
    let s = first.frame_tilt;
    let mut rng = crate::rng::block_rng(seed, 0);
    let [nx, ny, nz] = grid.n();
    let y = grid.coord(Axis::Y, rng.gen_range(0..ny));
    let z = grid.coord(Axis::Z, rng.gen_range(0..nz));
    let x = grid.coord(Axis::X, rng.gen_range(0..nx)) + s * y;
    let second = source_side_kernel(t, grid, p, spec, [x, y, z], s - p.a * t)?;
    Ok(TwoReadingNorm { target_reading: first.lp_norm(pp), source_reading: second.lp_norm(pp) })
}

/// `‖Ĝ₂(t, ·)‖_{L^q(ℝ³)}` by the trapezoid rule on a lattice sheared by
/// [`sampling_tilt`], doubling the resolution until successive values
/// agree to a relative `1e-8`.
pub fn g2hat_l1_lq_norms(t: f64, p: &Params, q: f64) -> Result<f64> {
    if !(q >= 1.0 && q.is_finite()) {
        return Err(Error::InvalidParams(format!("q must be a finite value ≥ 1, got {q}")));
    }
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::NonPositiveTime(t));
    }
    const TOL: f64 = 1e-8;
    const MAX_REFINEMENTS: usize = 5;
    // tail of |Ĝ₂|^q below 1e-14 of the peak
    let level = 1e-14f64.powf(1.0 / q);
    let kc = spectral_cutoff(t, p, &[KernelSpec::value()], level)?;
    let tilt = sampling_tilt(t, p);
    let mut n = 24usize;
    let mut prev: Option<f64> = None;
    let mut change = f64::INFINITY;
    for _ in 0..=MAX_REFINEMENTS {
        let h = kc.map(|k| 2.0 * k / n as f64);
        let total = crate::par::sum_range(n * n * n, |idx| {
            let (i, j, k) = (idx % n, (idx / n) % n, idx / (n * n));
            let xi = -kc[0] + h[0] * i as f64;
            let eta = -kc[1] + h[1] * j as f64 - tilt * xi;
            let zeta = -kc[2] + h[2] * k as f64;
            (q * exponent(p.a, p.kappa, xi, eta, zeta, t)).exp()
        });
        let value = (total * h[0] * h[1] * h[2]).powf(1.0 / q);
        if let Some(old) = prev {
            change = (value - old).abs() / value;
            if change <= TOL {
                return Ok(value);
            }
        }
        prev = Some(value);
        n *= 2;
    }
    Err(Error::NoConvergence { refinements: MAX_REFINEMENTS, change })
}
