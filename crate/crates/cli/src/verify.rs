use anyhow::{Context, Result};
use clap::Args;

use cflm_core::estimates::{
    c0_max, lemma_coercivity_constant, pointwise_bound_ratio_with, symbol_bound_suite,
    transfer_identity_residual_with, verify_quadratic_negativity, InequalityCertificate, SymbolSuite,
};
use cflm_core::io::atomic_write;
use cflm_core::kernel::{kernel_grid, kernel_grid_covering, KernelOptions, KernelSpec};

use crate::Common;

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Random samples for the symbol bound.
    #[arg(long, default_value_t = 100_000)]
    samples: usize,
    /// Truncation sentinel for the kernel samples.
    #[arg(long, default_value_t = 1e-7)]
    sentinel: f64,
    /// Angle samples for the coercivity constants.
    #[arg(long, default_value_t = 4096)]
    budget: usize,
}

/// Interval the sampled `C₄` must fall in; the analytic worst case is near 1/85.
const C4_RANGE: (f64, f64) = (0.010, 0.013);

fn coercivity_certificate(budget: usize) -> Result<InequalityCertificate> {
    let c1 = lemma_coercivity_constant(1.0, budget)?;
    let c2 = lemma_coercivity_constant(2.0, budget)?;
    let c4 = lemma_coercivity_constant(4.0, budget)?;
    let mut c = InequalityCertificate::new("coercivity constants")
        .with_param("c1", c1)
        .with_param("c2", c2)
        .with_param("c4", c4);
    c.sampled_points = 3 * budget as u64;
    c.worst_margin = [c1, c2, c4 - C4_RANGE.0, C4_RANGE.1 - c4, 0.2 - c4]
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    c.violations = u64::from(c.worst_margin < 0.0);
    Ok(c)
}

/// A check that could not run counts as a failed certificate.
fn or_failed(name: &str, r: cflm_core::Result<InequalityCertificate>) -> InequalityCertificate {
    r.unwrap_or_else(|e| {
        let mut c = InequalityCertificate::new(name).with_param("error", e);
        c.worst_margin = f64::NEG_INFINITY;
        c.violations = 1;
        c
    })
}

fn certificates(common: &Common, args: &VerifyArgs) -> Result<Vec<InequalityCertificate>> {
    let cfg = common.load_config()?;
    let p = cfg.params;
    let mut out = Vec::new();

    let c0 = c0_max(p.kappa, p.epsilon)?;
    out.push(verify_quadratic_negativity(c0, p.kappa, p.epsilon));
    out.push(coercivity_certificate(args.budget)?);
    let suite = SymbolSuite { samples: args.samples, seed: cfg.seed, ..SymbolSuite::default() };
    out.push(symbol_bound_suite(p.kappa, p.epsilon, &suite)?);

    let opts = KernelOptions::with_sentinel(args.sentinel);
    let n = cfg.grid.n();
    let amplitudes = if p.a > 0.0 { vec![0.0, p.a] } else { vec![0.0] };
    for &a in &amplitudes {
        let pa = p.with_a(a);
        for t in [1.0, 2.0] {
            for deriv in [[0, 0, 0], [1, 0, 0]] {
                let c = kernel_grid(t, n, &pa, &KernelSpec::unprimed(deriv)?)
                    .and_then(|grid| pointwise_bound_ratio_with(t, &grid, &pa, 2, deriv, &opts));
                out.push(or_failed("pointwise bound", c).with_param("t", t).with_param("a", a));
            }
        }
        for t in [0.5, 1.0] {
            let specs: Vec<KernelSpec> = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
                .into_iter()
                .flat_map(|d| [KernelSpec::unprimed(d), KernelSpec::primed(d)])
                .collect::<cflm_core::Result<_>>()?;
            let c = kernel_grid_covering(t, n, &pa, &specs)
                .and_then(|grid| transfer_identity_residual_with(t, &grid, &pa, &opts));
            out.push(or_failed("transfer identities", c).with_param("t", t).with_param("a", a));
        }
    }
    Ok(out)
}

/// Prints one line per certificate and writes `certificates.csv`.
pub fn run(common: &Common, args: &VerifyArgs) -> Result<bool> {
    let certs = certificates(common, args)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["name", "passed", "sampled_points", "worst_margin", "violations", "tolerance", "parameters"])?;
    for c in &certs {
        println!("{c}");
        let params: Vec<String> = c.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
        w.write_record([
            c.name.clone(),
            c.passed().to_string(),
            c.sampled_points.to_string(),
            format!("{:.16e}", c.worst_margin),
            c.violations.to_string(),
            format!("{:e}", c.tolerance),
            params.join(";"),
        ])?;
    }
    let bytes = w.into_inner().context("flushing the certificate table")?;
    let dir = common.out_dir(None);
    std::fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    atomic_write(&dir.join("certificates.csv"), &bytes)?;
    let passed = certs.iter().filter(|c| c.passed()).count();
    println!("{passed}/{} certificates passed", certs.len());
    Ok(passed == certs.len())
}
