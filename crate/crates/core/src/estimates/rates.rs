use std::fmt;

use crate::error::{Error, Result};
use crate::estimates::{fit_decay_exponent, InequalityCertificate};
use crate::kernel::{kernel_field, kernel_grid, KernelOptions, KernelSpec, Params};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// The fit was too noisy to judge (standard error above [`MAX_STDERR`]).
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

/// Fits with a larger standard error are inconclusive.
pub const MAX_STDERR: f64 = 0.05;

/// Which variable the norm is fitted against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// Time, at `A = 0`.
    Time,
    /// Shear amplitude `A`, at a fixed time.
    Amplitude,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::Time => "t",
            Branch::Amplitude => "A",
        }
    }
}

/// A measured power law against its prediction.
#[derive(Clone, Debug, PartialEq)]
pub struct RateReport {
    pub label: String,
    pub branch: Branch,
    /// `(abscissa, compensated value)` pairs, all of them, including any
    /// point left out of the fit.
    pub series: Vec<(f64, f64)>,
    /// Leading points left out of the fit.
    pub skipped: usize,
    pub predicted_exponent: f64,
    pub fitted_exponent: f64,
    pub fit_stderr: f64,
    /// Extremes of `value · x^{−predicted}` over the fitted points,
    /// normalised by the first of them.
    pub ratio_max: f64,
    pub ratio_min: f64,
    pub tolerance: f64,
    pub verdict: Verdict,
}

impl RateReport {
    /// Fits `series` after dropping `skip` leading points. `min_decades`
    /// is the smallest admissible span of the fitted abscissae.
    pub fn from_series(
        label: impl Into<String>,
        branch: Branch,
        series: Vec<(f64, f64)>,
        predicted: f64,
        tolerance: f64,
        skip: usize,
        min_decades: f64,
    ) -> Result<Self> {
        if series.len() < 8 {
            return Err(Error::BadSeries { needed: 8, got: series.len() });
        }
        if let Some(row) = series.windows(2).position(|w| !(w[1].0 > w[0].0)) {
            return Err(Error::Unordered { row: row + 1 });
        }
        let used = &series[skip.min(series.len())..];
        let decades = (used[used.len() - 1].0 / used[0].0).log10();
        if !(decades >= min_decades * (1.0 - 1e-12)) {
            return Err(Error::ShortSpan { decades, required: min_decades });
        }
        let (slope, stderr) = fit_decay_exponent(used)?;
        let norm: Vec<f64> = used.iter().map(|&(x, v)| v * x.powf(-predicted)).collect();
        let (r_max, r_min) = norm
            .iter()
            .fold((f64::NEG_INFINITY, f64::INFINITY), |(a, b), &r| (a.max(r / norm[0]), b.min(r / norm[0])));
        let verdict = if !(stderr <= MAX_STDERR) {
            Verdict::Inconclusive
        } else if (slope - predicted).abs() <= tolerance {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        Ok(Self {
            label: label.into(),
            branch,
            series,
            skipped: skip,
            predicted_exponent: predicted,
            fitted_exponent: slope,
            fit_stderr: stderr,
            ratio_max: r_max,
            ratio_min: r_min,
            tolerance,
            verdict,
        })
    }
}

impl fmt::Display for RateReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} ({}-branch): fitted {:.4} ± {:.4}, predicted {:.4}, tolerance {}, ratio range [{:.3}, {:.3}]",
            self.verdict.as_str().to_uppercase(),
            self.label,
            self.branch.as_str(),
            self.fitted_exponent,
            self.fit_stderr,
            self.predicted_exponent,
            self.tolerance,
            self.ratio_min,
            self.ratio_max
        )
    }
}

/// `1 − 1/p`, with `p = ∞` giving 1.
fn conj_frac(p: f64) -> f64 {
    if p.is_infinite() {
        1.0
    } else {
        1.0 - 1.0 / p
    }
}

/// Predicted exponent in `t` at `A = 0`: `−¾(1 − 1/p) − k/4`.
pub fn predicted_time_exponent(p: f64, spec: &KernelSpec) -> f64 {
    -0.75 * conj_frac(p) - 0.25 * spec.order() as f64
}

/// Predicted large-`A` exponent at fixed `t`: `−(1 − 1/p) − k₁`.
pub fn predicted_amplitude_exponent(p: f64, spec: &KernelSpec) -> f64 {
    -conj_frac(p) - spec.deriv[0] as f64
}

/// Exponent tolerance: 0.1, or 0.15 for derivative kernels.
pub fn rate_tolerance(spec: &KernelSpec) -> f64 {
    if spec.order() == 0 {
        0.1
    } else {
        0.15
    }
}

/// Settings for [`lp_rate_report`].
#[derive(Clone, Debug, PartialEq)]
pub struct RateOptions {
    pub n: [usize; 3],
    /// `A` values of the amplitude branch; empty skips it.
    pub a_grid: Vec<f64>,
    /// Time at which the amplitude branch is taken.
    pub a_branch_t: f64,
    pub kernel: KernelOptions,
}

pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo * (hi / lo).powf(i as f64 / (n - 1).max(1) as f64)).collect()
}

impl Default for RateOptions {
    fn default() -> Self {
        Self { n: [64; 3], a_grid: log_grid(4.0, 32.0, 8), a_branch_t: 2.0, kernel: KernelOptions::default() }
    }
}

/// Kernel norm rates for every `p` in `p_grid`.
///
/// Time branch (`A = 0`): `log(e^{εt}‖∂^k G₂(t)‖_p)` against `log t`, with
/// `e^{κt}` in place of `e^{εt}` for the `L¹` norm of the undifferentiated
/// kernel, whose mass is exactly `e^{−κt}`. The first time is left out and
/// the rest must span a decade.
///
/// Amplitude branch: `log ‖∂^k G₂(t_A)‖_p` against `log A` over
/// `opts.a_grid`, first point left out.
pub fn lp_rate_report(
    p_grid: &[f64],
    t_grid: &[f64],
    params: &Params,
    spec: &KernelSpec,
    opts: &RateOptions,
) -> Result<Vec<RateReport>> {
    let p0 = params.with_a(0.0);
    let mut time_rows = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        let g = kernel_grid(t, opts.n, &p0, spec)?;
        let f = kernel_field(t, &g, &p0, spec, &opts.kernel)?;
        time_rows.push(p_grid.iter().map(|&pp| f.lp_norm(pp)).collect::<Vec<_>>());
    }
    let mut amp_rows = Vec::with_capacity(opts.a_grid.len());
    for &a in &opts.a_grid {
        let pa = params.with_a(a);
        let t = opts.a_branch_t;
        let g = kernel_grid(t, opts.n, &pa, spec)?;
        let f = kernel_field(t, &g, &pa, spec, &opts.kernel)?;
        amp_rows.push(p_grid.iter().map(|&pp| f.lp_norm(pp)).collect::<Vec<_>>());
    }
    let tag = |pp: f64| {
        format!(
            "p={} k=({},{},{}) {}",
            if pp.is_infinite() { "inf".to_string() } else { pp.to_string() },
            spec.deriv[0],
            spec.deriv[1],
            spec.deriv[2],
            spec.side.as_str()
        )
    };
    let mut out = Vec::new();
    for (j, &pp) in p_grid.iter().enumerate() {
        let rate = if pp == 1.0 && spec.order() == 0 { params.kappa } else { params.epsilon };
        let series = t_grid.iter().zip(&time_rows).map(|(&t, r)| (t, (rate * t).exp() * r[j])).collect();
        out.push(RateReport::from_series(
            tag(pp),
            Branch::Time,
            series,
            predicted_time_exponent(pp, spec),
            rate_tolerance(spec),
            1,
            1.0,
        )?);
        if !opts.a_grid.is_empty() {
            let series = opts.a_grid.iter().zip(&amp_rows).map(|(&a, r)| (a, r[j])).collect();
            out.push(RateReport::from_series(
                tag(pp),
                Branch::Amplitude,
                series,
                predicted_amplitude_exponent(pp, spec),
                rate_tolerance(spec),
                1,
                0.0,
            )?);
        }
    }
    Ok(out)
}

/// Checks that kernel norms do not increase along `a_values` (taken in
/// increasing order) at time `t`, for every `p`. The margin is the smallest
/// relative drop between consecutive amplitudes.
pub fn enhanced_dissipation_ordering(
    t: f64,
    a_values: &[f64],
    p_grid: &[f64],
    params: &Params,
    spec: &KernelSpec,
    n: [usize; 3],
    opts: &KernelOptions,
) -> Result<InequalityCertificate> {
    let mut norms = Vec::with_capacity(a_values.len());
    for &a in a_values {
        let pa = params.with_a(a);
        let g = kernel_grid(t, n, &pa, spec)?;
        let f = kernel_field(t, &g, &pa, spec, opts)?;
        norms.push(p_grid.iter().map(|&pp| f.lp_norm(pp)).collect::<Vec<_>>());
    }
    let mut c = InequalityCertificate::new("enhanced dissipation ordering").with_param("t", t);
    c.tolerance = 0.0;
    for (j, &pp) in p_grid.iter().enumerate() {
        let col: Vec<String> = norms.iter().map(|r| format!("{:.6e}", r[j])).collect();
        c.set(&format!("norms_p{pp}"), col.join(" "));
        for w in norms.windows(2) {
            let drop = (w[0][j] - w[1][j]) / w[0][j];
            c.sampled_points += 1;
            c.worst_margin = c.worst_margin.min(drop);
            if drop < 0.0 {
                c.violations += 1;
            }
        }
    }
    Ok(c)
}
