use crate::error::{Error, Result};
use crate::estimates::InequalityCertificate;
use crate::kernel::Params;

/// Largest `C₀` with `(C₀ − 4)v² + v − (κ − ε) ≤ 0` for all `v ≥ 0`:
/// `4 − 1/(4(κ − ε))`.
///
/// The quadratic peaks at `v = 1/(2(4 − C₀))` with value
/// `1/(4(4 − C₀)) − (κ − ε)`; setting that to zero gives the formula.
pub fn c0_max(kappa: f64, epsilon: f64) -> Result<f64> {
    let gap = kappa - epsilon;
    if !(gap > Params::KAPPA_THRESHOLD) {
        return Err(Error::Infeasible { gap });
    }
    Ok(4.0 - 1.0 / (4.0 * gap))
}

fn quadratic(c0: f64, gap: f64, v: f64) -> f64 {
    (c0 - 4.0) * v * v + v - gap
}

/// Scans `(C₀ − 4)v² + v − (κ − ε)` over `v ∈ [0, 10³]` (a linear grid on
/// `[0, 10]`, a logarithmic one up to `10³`, and the vertex when `C₀ < 4`).
/// Passes iff the quadratic never exceeds `1e-12`.
pub fn verify_quadratic_negativity(c0: f64, kappa: f64, epsilon: f64) -> InequalityCertificate {
    const LINEAR: usize = 100_000;
    const LOG: usize = 20_000;
    let gap = kappa - epsilon;
    let mut points: Vec<f64> = (0..=LINEAR).map(|i| 10.0 * i as f64 / LINEAR as f64).collect();
    points.extend((0..=LOG).map(|i| 10f64.powf(-8.0 + 11.0 * i as f64 / LOG as f64)));
    if c0 < 4.0 {
        points.push(1.0 / (2.0 * (4.0 - c0)));
    }
    let mut cert = InequalityCertificate::new("quadratic negativity")
        .with_param("c0", c0)
        .with_param("kappa", kappa)
        .with_param("epsilon", epsilon);
    cert.tolerance = 1e-12;
    let mut worst_v = 0.0;
    for &v in &points {
        let margin = -quadratic(c0, gap, v);
        if margin < cert.worst_margin {
            cert.worst_margin = margin;
            worst_v = v;
        }
        if margin < -cert.tolerance {
            cert.violations += 1;
        }
    }
    cert.sampled_points = points.len() as u64;
    cert.set("worst_v", worst_v);
    cert
}
