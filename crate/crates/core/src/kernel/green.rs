use std::f64::consts::PI;

use rustfft::num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kernel::symbol::exponent;
use crate::kernel::{KernelSpec, Params, Side};
use crate::spectral::{Axis, Fft3, Field, Grid, SpectralField};

/// Default bound on both truncation sentinels, relative to the peak.
pub const DEFAULT_SENTINEL: f64 = 1e-8;

/// Relative level at which the automatic box places its spectral cutoff.
///
/// A fixed cutoff fixes the spacing, so the box grows with `n` and the
/// shell sentinel improves; coarse grids trade spectral margin for box
/// size to keep the two sentinels comparable.
pub fn default_cutoff_level(n: [usize; 3]) -> f64 {
    match n.iter().copied().min().unwrap_or(0) {
        0..=55 => 1e-6,
        56..=63 => 1e-8,
        64..=95 => 1e-9,
        _ => 1e-10,
    }
}

/// Sampling options for physical-space kernels.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KernelOptions {
    /// Largest admissible shell and spectral-edge ratio.
    pub sentinel: f64,
    /// Frame tilt of the samples; `None` picks [`sampling_tilt`].
    pub tilt: Option<f64>,
}

impl Default for KernelOptions {
    fn default() -> Self {
        Self { sentinel: DEFAULT_SENTINEL, tilt: None }
    }
}

impl KernelOptions {
    pub fn with_sentinel(sentinel: f64) -> Self {
        Self { sentinel, ..Self::default() }
    }
}

/// A sampled kernel with its truncation diagnostics.
#[derive(Clone, Debug)]
pub struct KernelSample {
    pub field: Field,
    /// Largest `|G|` in the outer 10% of the box (any axis) over the peak.
    pub shell_ratio: f64,
    /// Largest `|M|` at lattice modes with `|m_i| ≥ 0.4 n_i` over the largest `|M|`.
    pub edge_ratio: f64,
}

/// Tilt `At/2` at which the multiplier's support is centred on `η = 0`.
///
/// The multiplier is largest where `η + Aξs` stays small over `[0, t]`,
/// i.e. along `η ≈ −Aξt/2`; sampling in a frame with this tilt turns that
/// slanted ridge into an axis-aligned one so a modest box holds it.
pub fn sampling_tilt(t: f64, p: &Params) -> f64 {
    0.5 * p.a * t
}

#[inline]
fn in_edge(m: i64, n: usize) -> bool {
    5 * m.unsigned_abs() >= 2 * n as u64
}

#[inline]
fn in_shell(j: usize, n: usize) -> bool {
    5 * (j as i64 - (n / 2) as i64).unsigned_abs() >= n as u64 * 2
}

/// Multiplier `Ĝ₂·w` on the lattice of a frame with tilt `tilt`. Nyquist
/// modes are zeroed; the returned ratio is measured before zeroing.
pub(crate) fn multiplier_lattice<W>(
    t: f64,
    grid: &Grid,
    p: &Params,
    tilt: f64,
    weight: W,
) -> (SpectralField, f64)
where
    W: Fn(f64, f64, f64) -> Complex64 + Sync + Send,
{
    let n = grid.n();
    let coeffs = crate::par::map_range(grid.len(), |idx| {
        let [xi, eta, zeta] = grid.physical_wavevector(idx, tilt);
        weight(xi, eta, zeta) * exponent(p.a, p.kappa, xi, eta, zeta, t).exp()
    });
    let peak = crate::par::max_range(grid.len(), |idx| coeffs[idx].norm());
    let edge = crate::par::max_range(grid.len(), |idx| {
        let (i, j, k) = grid.unravel(idx);
        let on_edge = in_edge(grid.mode(Axis::X, i), n[0])
            || in_edge(grid.mode(Axis::Y, j), n[1])
            || in_edge(grid.mode(Axis::Z, k), n[2]);
        if on_edge {
            coeffs[idx].norm()
        } else {
            0.0
        }
    });
    let mut s = SpectralField { grid: grid.clone(), coeffs, frame_tilt: tilt };
    zero_nyquist(&mut s);
    let ratio = if peak > 0.0 { edge / peak } else { 0.0 };
    (s, ratio)
}

/// Zeroes every mode with a Nyquist index on any axis. Those modes have no
/// conjugate partner, so removing them keeps symmetry and parity exact.
pub fn zero_nyquist(s: &mut SpectralField) {
    let g = s.grid.clone();
    crate::par::for_each_mut(&mut s.coeffs, |idx, c| {
        let (i, j, k) = g.unravel(idx);
        if g.is_nyquist(Axis::X, i) || g.is_nyquist(Axis::Y, j) || g.is_nyquist(Axis::Z, k) {
            *c = Complex64::new(0.0, 0.0);
        }
    });
}

/// Largest `|f|` in the outer shell over the largest `|f|`.
pub fn shell_ratio(f: &Field) -> f64 {
    let g = &f.grid;
    let n = g.n();
    let peak = f.max_abs();
    if peak == 0.0 {
        return 0.0;
    }
    let outer = crate::par::max_range(g.len(), |idx| {
        let (i, j, k) = g.unravel(idx);
        if in_shell(i, n[0]) || in_shell(j, n[1]) || in_shell(k, n[2]) {
            f.values[idx].abs()
        } else {
            0.0
        }
    });
    outer / peak
}

pub(crate) fn sample_kernel<W>(
    t: f64,
    grid: &Grid,
    p: &Params,
    tilt: f64,
    sentinel: f64,
    weight: W,
) -> Result<KernelSample>
where
    W: Fn(f64, f64, f64) -> Complex64 + Sync + Send,
{
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::NonPositiveTime(t));
    }
    let (s, edge_ratio) = multiplier_lattice(t, grid, p, tilt, weight);
    if !(edge_ratio <= sentinel) {
        return Err(Error::Truncation { what: "spectral edge", ratio: edge_ratio, tolerance: sentinel });
    }
    let field = Fft3::new(grid).inverse(&s)?;
    let shell = shell_ratio(&field);
    if !(shell <= sentinel) {
        return Err(Error::Truncation { what: "outer shell", ratio: shell, tolerance: sentinel });
    }
    Ok(KernelSample { field, shell_ratio: shell, edge_ratio })
}

/// Physical-space kernel `∂^k G₂(t, ·)` on `grid`.
///
/// Samples are taken in a frame with tilt [`sampling_tilt`]; the returned
/// field carries that tilt, so sample `idx` sits at
/// [`Grid::lab_position`]`(idx, tilt)`. For a primed `spec` the derivative
/// weights are applied directly in Fourier space.
pub fn g2_kernel(t: f64, grid: &Grid, p: &Params, spec: &KernelSpec) -> Result<Field> {
    g2_kernel_with(t, grid, p, spec, &KernelOptions::default()).map(|s| s.field)
}

pub fn g2_kernel_with(
    t: f64,
    grid: &Grid,
    p: &Params,
    spec: &KernelSpec,
    opts: &KernelOptions,
) -> Result<KernelSample> {
    let tilt = opts.tilt.unwrap_or_else(|| sampling_tilt(t, p));
    let at = p.a * t;
    let spec = *spec;
    sample_kernel(t, grid, p, tilt, opts.sentinel, move |xi, eta, zeta| {
        spec.weight(xi, eta, zeta, at)
    })
}

/// Terms `(coefficient, unprimed multi-index)` expressing a primed
/// derivative through unprimed ones:
///
/// ```text
/// ∂_{x′} = −∂_x,  ∂_{y′} = −∂_y − At ∂_x,  ∂_{z′} = −∂_z
/// ∂_{x′}^{k1} ∂_{y′}^{k2} ∂_{z′}^{k3}
///     = (−1)^k Σ_j C(k2, j) (At)^j ∂_x^{k1+j} ∂_y^{k2−j} ∂_z^{k3}
/// ```
pub fn transfer_terms(deriv: [u32; 3], at: f64) -> Vec<(f64, [u32; 3])> {
    let [k1, k2, k3] = deriv;
    let sign = if (k1 + k2 + k3) % 2 == 0 { 1.0 } else { -1.0 };
    let mut binom = 1.0;
    let mut out = Vec::with_capacity(k2 as usize + 1);
    for j in 0..=k2 {
        if j > 0 {
            binom = binom * (k2 - j + 1) as f64 / j as f64;
        }
        out.push((sign * binom * at.powi(j as i32), [k1 + j, k2 - j, k3]));
    }
    out
}

/// Primed derivative kernel assembled from unprimed derivative kernels.
pub fn primed_derivative_kernel(t: f64, grid: &Grid, p: &Params, deriv: [u32; 3]) -> Result<Field> {
    primed_derivative_kernel_with(t, grid, p, deriv, &KernelOptions::default())
}

pub fn primed_derivative_kernel_with(
    t: f64,
    grid: &Grid,
    p: &Params,
    deriv: [u32; 3],
    opts: &KernelOptions,
) -> Result<Field> {
    KernelSpec::primed(deriv)?;
    let mut acc = Field::zeros(grid);
    acc.frame_tilt = opts.tilt.unwrap_or_else(|| sampling_tilt(t, p));
    for (coef, d) in transfer_terms(deriv, p.a * t) {
        if coef == 0.0 {
            continue;
        }
        let term = g2_kernel_with(t, grid, p, &KernelSpec::unprimed(d)?, opts)?.field;
        for (a, b) in acc.values.iter_mut().zip(&term.values) {
            *a += coef * b;
        }
    }
    Ok(acc)
}

/// Per-axis wavenumber beyond which `|Ĝ₂·w|` stays below `level` times its
/// peak, for every spec in `specs` (labels in the frame with tilt `At/2`).
///
/// The multiplier is scanned on an `81³` lattice whose extent grows until
/// the profile on its faces drops below the level.
pub fn spectral_cutoff(t: f64, p: &Params, specs: &[KernelSpec], level: f64) -> Result<[f64; 3]> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::NonPositiveTime(t));
    }
    const M: usize = 81;
    let at = p.a * t;
    let tilt = 0.5 * at;
    let mut ext = [
        2.0 * (t * (1.0 + at.powi(4))).powf(-0.25),
        2.0 * t.powf(-0.25),
        2.0 * t.powf(-0.25),
    ];
    for _ in 0..80 {
        let step = ext.map(|e| 2.0 * e / (M - 1) as f64);
        let coord = |axis: usize, i: usize| -ext[axis] + step[axis] * i as f64;
        let vals = crate::par::map_range(M * M * M, |idx| {
            let (i, j, k) = (idx % M, (idx / M) % M, idx / (M * M));
            let (xi, eta_l, zeta) = (coord(0, i), coord(1, j), coord(2, k));
            let eta = eta_l - tilt * xi;
            let g = exponent(p.a, p.kappa, xi, eta, zeta, t).exp();
            specs.iter().fold(0.0f64, |m, s| m.max(s.weight(xi, eta, zeta, at).norm() * g))
        });
        let peak = vals.iter().fold(0.0f64, |m, &v| m.max(v));
        if !(peak > 0.0) {
            return Err(Error::NoConvergence { refinements: 0, change: f64::NAN });
        }
        let thresh = level * peak;
        let mut face = [0.0f64; 3];
        let mut reach = [0.0f64; 3];
        for (idx, &v) in vals.iter().enumerate() {
            if v < thresh {
                continue;
            }
            let ijk = [idx % M, (idx / M) % M, idx / (M * M)];
            for a in 0..3 {
                if ijk[a] == 0 || ijk[a] == M - 1 {
                    face[a] = face[a].max(v);
                }
                reach[a] = reach[a].max(coord(a, ijk[a]).abs());
            }
        }
        let mut grown = false;
        for a in 0..3 {
            if face[a] >= thresh {
                ext[a] *= 1.5;
                grown = true;
            }
        }
        if !grown {
            return Ok([0, 1, 2].map(|a| (reach[a] + step[a]).max(step[a])));
        }
    }
    Err(Error::NoConvergence { refinements: 80, change: f64::NAN })
}

/// The specs whose multipliers a kernel computation touches.
fn specs_touched(t: f64, p: &Params, spec: &KernelSpec) -> Result<Vec<KernelSpec>> {
    let mut v = vec![*spec];
    if spec.side == Side::Primed {
        for (c, d) in transfer_terms(spec.deriv, p.a * t) {
            if c != 0.0 {
                v.push(KernelSpec::unprimed(d)?);
            }
        }
    }
    Ok(v)
}

/// Box sized so that `n` points resolve the kernel: the cutoff of
/// [`spectral_cutoff`] lands at 80% of the Nyquist wavenumber, which puts
/// the spectral-edge sentinel at about `level`. The shell sentinel then
/// depends on `n` alone.
pub fn kernel_grid_with(
    t: f64,
    n: [usize; 3],
    p: &Params,
    spec: &KernelSpec,
    level: f64,
) -> Result<Grid> {
    let kc = spectral_cutoff(t, p, &specs_touched(t, p, spec)?, level)?;
    let l = [0, 1, 2].map(|a| 0.8 * PI * n[a] as f64 / kc[a]);
    Grid::new(n, l)
}

pub fn kernel_grid(t: f64, n: [usize; 3], p: &Params, spec: &KernelSpec) -> Result<Grid> {
    kernel_grid_with(t, n, p, spec, default_cutoff_level(n))
}

/// One box for several kernels, e.g. all the terms of an identity.
pub fn kernel_grid_covering(t: f64, n: [usize; 3], p: &Params, specs: &[KernelSpec]) -> Result<Grid> {
    let mut all = Vec::new();
    for s in specs {
        all.extend(specs_touched(t, p, s)?);
    }
    let kc = spectral_cutoff(t, p, &all, default_cutoff_level(n))?;
    Grid::new(n, [0, 1, 2].map(|a| 0.8 * PI * n[a] as f64 / kc[a]))
}
