use crate::error::Result;
use crate::estimates::InequalityCertificate;
use crate::kernel::{g2_kernel_with, KernelOptions, KernelSpec, Params};
use crate::spectral::{Field, Grid};

fn kernel(t: f64, grid: &Grid, p: &Params, spec: KernelSpec, opts: &KernelOptions) -> Result<Field> {
    g2_kernel_with(t, grid, p, &spec, opts).map(|s| s.field)
}

/// Residuals of the relations between derivatives in the two sets of
/// variables,
///
/// ```text
/// ∂_x G + ∂_{x′} G = 0,   ∂_y G + ∂_{y′} G − At ∂_{x′} G = 0,   ∂_z G + ∂_{z′} G = 0,
/// ```
///
/// with every kernel built separately from its own Fourier weight. Passes
/// iff the largest residual is at most `1e-10` times the largest kernel
/// peak. Also fits the coefficient of `∂_{x′} G` in the second relation by
/// least squares (`at_fitted`).
pub fn transfer_identity_residual(t: f64, grid: &Grid, params: &Params) -> Result<InequalityCertificate> {
    transfer_identity_residual_with(t, grid, params, &KernelOptions::default())
}

pub fn transfer_identity_residual_with(
    t: f64,
    grid: &Grid,
    params: &Params,
    opts: &KernelOptions,
) -> Result<InequalityCertificate> {
    let un = |d| kernel(t, grid, params, KernelSpec::unprimed(d)?, opts);
    let pr = |d| kernel(t, grid, params, KernelSpec::primed(d)?, opts);
    let (gx, gy, gz) = (un([1, 0, 0])?, un([0, 1, 0])?, un([0, 0, 1])?);
    let (px, py, pz) = (pr([1, 0, 0])?, pr([0, 1, 0])?, pr([0, 0, 1])?);
    let at = params.a * t;
    let peak = [&gx, &gy, &gz, &px, &py, &pz].iter().map(|f| f.max_abs()).fold(0.0, f64::max);
    let res = |f: &dyn Fn(usize) -> f64| (0..grid.len()).map(f).fold(0.0f64, |m, v| m.max(v.abs()));
    let r1 = res(&|i| gx.values[i] + px.values[i]);
    let r2 = res(&|i| gy.values[i] + py.values[i] - at * px.values[i]);
    let r3 = res(&|i| gz.values[i] + pz.values[i]);
    let (mut num, mut den) = (0.0, 0.0);
    for i in 0..grid.len() {
        num += (gy.values[i] + py.values[i]) * px.values[i];
        den += px.values[i] * px.values[i];
    }
    let at_fit = if den > 0.0 { num / den } else { 0.0 };
    let worst = r1.max(r2).max(r3);
    let mut c = InequalityCertificate::new("transfer relations")
        .with_param("t", t)
        .with_param("a", params.a)
        .with_param("peak", peak)
        .with_param("residual_x", r1)
        .with_param("residual_y", r2)
        .with_param("residual_z", r3)
        .with_param("at", at)
        .with_param("at_fitted", at_fit);
    c.sampled_points = grid.len() as u64;
    c.tolerance = 0.0;
    c.worst_margin = 1e-10 * peak - worst;
    if c.worst_margin < 0.0 {
        c.violations = 1;
    }
    Ok(c)
}
