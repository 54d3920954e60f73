use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, ValueEnum};

use cflm_core::estimates::{predicted_amplitude_exponent, predicted_time_exponent, rate_tolerance, Branch, RateReport, Verdict};
use cflm_core::io::{atomic_write, format_p, format_real, parse_norm_csv, NORM_CSV_HEADER};
use cflm_core::kernel::{KernelSpec, Side};

use crate::{lists, Common};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BranchArg {
    /// Fit against t.
    T,
    /// Fit against A (kernel-norms tables only).
    A,
}

#[derive(Args, Debug)]
pub struct FitArgs {
    /// A norm CSV from `simulate` or a table from `kernel-norms`.
    csv: PathBuf,
    #[arg(long, value_enum, default_value = "t")]
    branch: BranchArg,
    /// Norm exponent to select.
    #[arg(long, default_value = "inf")]
    p: String,
    /// Derivative multi-index to select.
    #[arg(long, default_value = "0,0,0")]
    k: String,
    /// Kernel side to select (kernel-norms tables).
    #[arg(long, default_value = "unprimed")]
    side: String,
    /// Shear amplitude to select for a t-fit on a kernel-norms table.
    #[arg(long = "a")]
    a: Option<f64>,
    /// Time to select for an A-fit.
    #[arg(long = "at-t")]
    at_t: Option<f64>,
    /// Predicted exponent; defaults to the kernel rate for the branch.
    #[arg(long, allow_hyphen_values = true)]
    predicted: Option<f64>,
    /// Multiply values by exp(rate · t) before fitting.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    compensate: f64,
    /// Exponent tolerance; defaults to 0.1 (0.15 for derivatives).
    #[arg(long)]
    tol: Option<f64>,
    /// Leading points left out of the fit.
    #[arg(long, default_value_t = 0)]
    skip: usize,
    /// Smallest admissible span of the fitted abscissae, in decades.
    #[arg(long, default_value_t = 0.0)]
    min_decades: f64,
}

struct Row {
    t: f64,
    a: Option<f64>,
    p: f64,
    k: [u32; 3],
    side: Option<Side>,
    value: f64,
}

fn read_rows(path: &Path) -> Result<Vec<Row>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let header = text.lines().next().unwrap_or("");
    if header == NORM_CSV_HEADER || text.is_empty() {
        return Ok(parse_norm_csv(&text, path)?
            .into_iter()
            .map(|r| Row { t: r.t, a: None, p: r.p, k: r.k, side: None, value: r.value })
            .collect());
    }
    if header != "t,A,p,k1,k2,k3,side,value" {
        bail!("{}: unrecognised header {header:?}", path.display());
    }
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let rec = rec?;
        let ctx = || format!("{}: row {}", path.display(), i + 1);
        let f = |j: usize| rec.get(j).unwrap_or("").parse::<f64>().map_err(|_| anyhow!("bad number {:?}", rec.get(j)));
        let u = |j: usize| rec.get(j).unwrap_or("").parse::<u32>().map_err(|_| anyhow!("bad order {:?}", rec.get(j)));
        rows.push(Row {
            t: f(0).with_context(ctx)?,
            a: Some(f(1).with_context(ctx)?),
            p: f(2).with_context(ctx)?,
            k: [u(3).with_context(ctx)?, u(4).with_context(ctx)?, u(5).with_context(ctx)?],
            side: Some(rec.get(6).unwrap_or("").parse().map_err(|e| anyhow!("{e}")).with_context(ctx)?),
            value: f(7).with_context(ctx)?,
        });
    }
    Ok(rows)
}

fn distinct(values: impl Iterator<Item = f64>) -> Vec<f64> {
    let mut v: Vec<f64> = Vec::new();
    for x in values {
        if !v.contains(&x) {
            v.push(x);
        }
    }
    v
}

pub fn run(common: &Common, args: &FitArgs) -> Result<bool> {
    let rows = read_rows(&args.csv)?;
    let p = lists::reals(&args.p)?.first().copied().ok_or_else(|| anyhow!("--p is empty"))?;
    let k = *lists::derivs(&args.k)?.first().ok_or_else(|| anyhow!("--k is empty"))?;
    let side: Side = args.side.parse().map_err(|e| anyhow!("--side: {e}"))?;
    let spec = KernelSpec::new(k, side)?;
    let mut sel: Vec<&Row> = rows
        .iter()
        .filter(|r| r.p == p && r.k == k && r.side.is_none_or(|s| s == side))
        .collect();

    let (branch, series) = match args.branch {
        BranchArg::T => {
            let amps = distinct(sel.iter().filter_map(|r| r.a));
            if let Some(a) = args.a {
                sel.retain(|r| r.a.is_none_or(|x| x == a));
            } else if amps.len() > 1 {
                bail!("the table holds several A values {amps:?}; pick one with --a");
            }
            let s: Vec<(f64, f64)> = sel
                .iter()
                .filter(|r| r.t > 0.0)
                .map(|r| (r.t, r.value * (args.compensate * r.t).exp()))
                .collect();
            (Branch::Time, s)
        }
        BranchArg::A => {
            if sel.iter().any(|r| r.a.is_none()) {
                bail!("an A-fit needs a kernel-norms table");
            }
            let times = distinct(sel.iter().map(|r| r.t));
            let t = match (args.at_t, times.as_slice()) {
                (Some(t), _) => t,
                (None, [t]) => *t,
                _ => bail!("the table holds several times {times:?}; pick one with --at-t"),
            };
            let s: Vec<(f64, f64)> = sel
                .iter()
                .filter(|r| r.t == t && r.a.unwrap_or(0.0) > 0.0)
                .map(|r| (r.a.unwrap_or(0.0), r.value))
                .collect();
            (Branch::Amplitude, s)
        }
    };
    let mut series = series;
    series.sort_by(|a, b| a.0.total_cmp(&b.0));
    let predicted = args.predicted.unwrap_or(match branch {
        Branch::Time => predicted_time_exponent(p, &spec),
        Branch::Amplitude => predicted_amplitude_exponent(p, &spec),
    });
    let tol = args.tol.unwrap_or(rate_tolerance(&spec));
    let label = format!("p={} k={}{}{}", format_p(p), k[0], k[1], k[2]);
    let report = RateReport::from_series(label, branch, series, predicted, tol, args.skip, args.min_decades)?;
    println!("{report}");

    let mut out = String::from("label,branch,points,skipped,predicted,fitted,stderr,ratio_min,ratio_max,tolerance,verdict\n");
    let _ = writeln!(
        out,
        "{},{},{},{},{},{},{},{},{},{},{}",
        report.label,
        report.branch.as_str(),
        report.series.len(),
        report.skipped,
        format_real(report.predicted_exponent),
        format_real(report.fitted_exponent),
        format_real(report.fit_stderr),
        format_real(report.ratio_min),
        format_real(report.ratio_max),
        report.tolerance,
        report.verdict.as_str()
    );
    let dir = common.out_dir(None);
    std::fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    atomic_write(&dir.join("rate_report.csv"), out.as_bytes())?;
    Ok(report.verdict == Verdict::Pass)
}
