use crate::error::{Error, Result};
use crate::estimates::InequalityCertificate;
use crate::kernel::{g2_kernel_with, KernelOptions, KernelSpec, Params};
use crate::spectral::Grid;

/// The pointwise profile
///
/// ```text
/// e^{−εt} t^{−3/4−k/4} (1+(At)⁴)^{−1/4−k₁/4}
///   · (1 + x²/(t^{1/2}(1+(At)⁴)^{1/2}) + (y²+z²)/t^{1/2})^{−N}
/// ```
pub fn pointwise_profile(t: f64, p: &Params, n_order: u32, deriv: [u32; 3], x: [f64; 3]) -> f64 {
    let k = (deriv[0] + deriv[1] + deriv[2]) as f64;
    let s = 1.0 + (p.a * t).powi(4);
    let amp = (-p.epsilon * t).exp() * t.powf(-0.75 - 0.25 * k) * s.powf(-0.25 - 0.25 * deriv[0] as f64);
    let rt = t.sqrt();
    let w = 1.0 + x[0] * x[0] / (rt * s.sqrt()) + (x[1] * x[1] + x[2] * x[2]) / rt;
    amp * w.powi(-(n_order as i32))
}

/// Supremum of `|∂^k G₂| / profile` over one grid.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PointwiseRatio {
    pub sup: f64,
    pub at_origin: f64,
    /// Lab position of the supremum.
    pub argmax: [f64; 3],
    pub shell_ratio: f64,
}

pub fn pointwise_sup_ratio(
    t: f64,
    grid: &Grid,
    p: &Params,
    n_order: u32,
    deriv: [u32; 3],
    opts: &KernelOptions,
) -> Result<PointwiseRatio> {
    if n_order < 1 {
        return Err(Error::InvalidParams("pointwise order N must be ≥ 1".into()));
    }
    let sample = g2_kernel_with(t, grid, p, &KernelSpec::unprimed(deriv)?, opts)?;
    let f = &sample.field;
    let ratios = crate::par::map_range(grid.len(), |idx| {
        let x = grid.lab_position(idx, f.frame_tilt);
        f.values[idx].abs() / pointwise_profile(t, p, n_order, deriv, x)
    });
    let (imax, sup) = ratios
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |(bi, bv), (i, &v)| if v > bv || v.is_nan() { (i, v) } else { (bi, bv) });
    let [nx, ny, nz] = grid.n();
    let origin = grid.idx(nx / 2, ny / 2, nz / 2);
    Ok(PointwiseRatio {
        sup,
        at_origin: ratios[origin],
        argmax: grid.lab_position(imax, f.frame_tilt),
        shell_ratio: sample.shell_ratio,
    })
}

/// Supremum ratio on `grid` and on the grid with twice the points in the
/// same box. Passes iff both are finite and the finer one is at most twice
/// the coarser (`worst_margin = 2·sup − sup_fine`).
pub fn pointwise_bound_ratio(
    t: f64,
    grid: &Grid,
    p: &Params,
    n_order: u32,
    deriv: [u32; 3],
) -> Result<InequalityCertificate> {
    pointwise_bound_ratio_with(t, grid, p, n_order, deriv, &KernelOptions::default())
}

pub fn pointwise_bound_ratio_with(
    t: f64,
    grid: &Grid,
    p: &Params,
    n_order: u32,
    deriv: [u32; 3],
    opts: &KernelOptions,
) -> Result<InequalityCertificate> {
    let coarse = pointwise_sup_ratio(t, grid, p, n_order, deriv, opts)?;
    let fine_grid = Grid::new(grid.n().map(|n| 2 * n), grid.lengths())?;
    let fine = pointwise_sup_ratio(t, &fine_grid, p, n_order, deriv, opts)?;
    let mut c = InequalityCertificate::new("pointwise bound")
        .with_param("t", t)
        .with_param("a", p.a)
        .with_param("n_order", n_order)
        .with_param("deriv", format!("{}{}{}", deriv[0], deriv[1], deriv[2]))
        .with_param("sup", coarse.sup)
        .with_param("sup_refined", fine.sup)
        .with_param("at_origin", coarse.at_origin)
        .with_param("growth", fine.sup / coarse.sup);
    c.sampled_points = (grid.len() + fine_grid.len()) as u64;
    c.worst_margin = if coarse.sup.is_finite() && fine.sup.is_finite() {
        2.0 * coarse.sup - fine.sup
    } else {
        f64::NEG_INFINITY
    };
    if c.worst_margin < 0.0 {
        c.violations = 1;
    }
    Ok(c)
}
