use std::f64::consts::PI;

use rand::Rng;

use crate::error::{Error, Result};

/// Gauss–Legendre nodes and weights on `[−1, 1]`, 10 points.
const GL_X: [f64; 5] = [
    0.148_874_338_981_631_2,
    0.433_395_394_129_247_2,
    0.679_409_568_299_024_4,
    0.865_063_366_688_984_5,
    0.973_906_528_517_171_7,
];
const GL_W: [f64; 5] = [
    0.295_524_224_714_752_9,
    0.269_266_719_309_996_4,
    0.219_086_362_515_982_0,
    0.149_451_349_150_580_6,
    0.066_671_344_308_688_1,
];

/// `∫_a^b f` by 10-point Gauss–Legendre.
pub(crate) fn gauss_legendre(a: f64, b: f64, f: impl Fn(f64) -> f64) -> f64 {
    let (m, h) = (0.5 * (a + b), 0.5 * (b - a));
    GL_X.iter()
        .zip(GL_W)
        .map(|(&x, w)| w * (f(m - h * x) + f(m + h * x)))
        .sum::<f64>()
        * h
}

/// `∫₀¹ |c + us|^α du` in closed form, through `G(w) = sign(w)|w|^{α+1}/(α+1)`.
fn line_moment(c: f64, s: f64, alpha: f64) -> f64 {
    if s.abs() < 1e-4 {
        // no sign change for |c| ≈ 1; avoids the cancellation in (G(c+s) − G(c))/s
        return gauss_legendre(0.0, 1.0, |u| (c + u * s).abs().powf(alpha));
    }
    let g = |w: f64| w.signum() * w.abs().powf(alpha + 1.0) / (alpha + 1.0);
    (g(c + s) - g(c)) / s
}

/// The ratio `∫₀ᵗ|η + Asξ|^α ds / [t(|η|^α + (At)^α|ξ|^α)]` on the unit
/// circle `η = cos θ`, `Atξ = sin θ`. The ratio is homogeneous of degree
/// zero in `(η, Atξ)`, so this one-parameter family is all there is.
pub fn coercivity_ratio(theta: f64, alpha: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    line_moment(c, s, alpha) / (c.abs().powf(alpha) + s.abs().powf(alpha))
}

/// Minimiser of [`coercivity_ratio`] over `θ ∈ [0, π)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoercivityMinimum {
    pub value: f64,
    pub theta: f64,
}

impl CoercivityMinimum {
    /// `η / (Atξ)` at the minimiser.
    pub fn eta_over_atxi(&self) -> f64 {
        self.theta.cos() / self.theta.sin()
    }
}

/// Scans `sample_budget` angles and refines the best one by golden section.
pub fn coercivity_minimum(alpha: f64, sample_budget: usize) -> Result<CoercivityMinimum> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::InvalidParams(format!("alpha must be positive, got {alpha}")));
    }
    let m = sample_budget.max(16);
    let h = PI / m as f64;
    let (mut best, mut best_theta) = (f64::INFINITY, 0.0);
    for i in 0..m {
        let th = i as f64 * h;
        let r = coercivity_ratio(th, alpha);
        if r < best {
            best = r;
            best_theta = th;
        }
    }
    let (mut a, mut b) = (best_theta - h, best_theta + h);
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (coercivity_ratio(c, alpha), coercivity_ratio(d, alpha));
    while b - a > 1e-12 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = coercivity_ratio(c, alpha);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = coercivity_ratio(d, alpha);
        }
    }
    let theta = 0.5 * (a + b);
    let value = coercivity_ratio(theta, alpha).min(best);
    if !(value > 0.0) {
        return Err(Error::InvalidParams(format!("non-positive coercivity constant {value}")));
    }
    Ok(CoercivityMinimum { value, theta: theta.rem_euclid(PI) })
}

/// Empirical `C_α`: the infimum of the coercivity ratio.
pub fn lemma_coercivity_constant(alpha: f64, sample_budget: usize) -> Result<f64> {
    coercivity_minimum(alpha, sample_budget).map(|m| m.value)
}

/// The ratio at raw `(η, ξ, A, t)`, by quadrature split at the zero of
/// `η + Asξ`. Independent of the reduction behind [`coercivity_ratio`].
pub fn coercivity_ratio_raw(eta: f64, xi: f64, a: f64, t: f64, alpha: f64) -> f64 {
    let f = |s: f64| (eta + a * s * xi).abs().powf(alpha);
    let axi = a * xi;
    let num = if axi != 0.0 && (0.0..t).contains(&(-eta / axi)) && -eta / axi > 0.0 {
        let s0 = -eta / axi;
        gauss_legendre(0.0, s0, f) + gauss_legendre(s0, t, f)
    } else {
        gauss_legendre(0.0, t, f)
    };
    num / (t * (eta.abs().powf(alpha) + (a * t).powf(alpha) * xi.abs().powf(alpha)))
}

/// Infimum of [`coercivity_ratio_raw`] over `samples` random points with
/// log-uniform magnitudes, as a cross-check of [`lemma_coercivity_constant`].
pub fn coercivity_sampled(alpha: f64, samples: usize, seed: u64) -> f64 {
    const BLOCK: usize = 4096;
    let blocks = samples.div_ceil(BLOCK);
    let mins = crate::par::map_range(blocks, |b| {
        let mut rng = crate::rng::block_rng(seed, b as u64);
        let count = BLOCK.min(samples - b * BLOCK);
        let mut best = f64::INFINITY;
        for _ in 0..count {
            let mut mag = |lo: f64, hi: f64| 10f64.powf(rng.gen_range(lo..hi));
            let (eta, xi, a, t) = (mag(-3.0, 3.0), mag(-3.0, 3.0), mag(-2.0, 2.0), mag(-2.0, 2.0));
            let sgn = if rng.gen::<bool>() { 1.0 } else { -1.0 };
            best = best.min(coercivity_ratio_raw(sgn * eta, xi, a, t, alpha));
        }
        best
    });
    mins.into_iter().fold(f64::INFINITY, f64::min)
}
