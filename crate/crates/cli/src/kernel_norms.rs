use std::fmt::Write as _;

use anyhow::{bail, Context, Result};
use clap::Args;

use cflm_core::io::{atomic_write, format_p, format_real};
use cflm_core::kernel::{kernel_grid, kernel_lp_norms, KernelOptions, KernelSpec, Side};

use crate::{lists, Common};

#[derive(Args, Debug)]
pub struct KernelNormsArgs {
    /// Times, comma separated.
    #[arg(long = "t", default_value = "0.5,1,2,4")]
    times: String,
    /// Norm exponents, comma separated (`inf` allowed).
    #[arg(long = "p", default_value = "1,2,inf")]
    p: String,
    /// Derivative multi-indices, e.g. `0,0,0; 1,0,0` or `000,100`.
    #[arg(long = "deriv", default_value = "0,0,0; 1,0,0")]
    deriv: String,
    /// `unprimed`, `primed` or `both`.
    #[arg(long, default_value = "unprimed")]
    side: String,
    /// Shear amplitudes, comma separated; defaults to params.a.
    #[arg(long = "a")]
    a: Option<String>,
    /// Truncation sentinel for the kernel samples.
    #[arg(long, default_value_t = 1e-7)]
    sentinel: f64,
}

/// Norms on the configured point counts with the box sized per kernel;
/// writes `kernel_norms.csv` with columns `t,A,p,k1,k2,k3,side,value`.
pub fn run(common: &Common, args: &KernelNormsArgs) -> Result<bool> {
    let cfg = common.load_config()?;
    let times = lists::reals(&args.times)?;
    let ps = lists::reals(&args.p)?;
    let derivs = lists::derivs(&args.deriv)?;
    let sides: Vec<Side> = match args.side.as_str() {
        "both" => vec![Side::Unprimed, Side::Primed],
        s => vec![s.parse().map_err(|e| anyhow::anyhow!("--side: {e}"))?],
    };
    let amplitudes = match &args.a {
        Some(s) => lists::reals(s)?,
        None => vec![cfg.params.a],
    };
    if let Some(t) = times.iter().find(|t| !(**t > 0.0)) {
        bail!("kernel times must be positive, got {t}");
    }
    let opts = KernelOptions::with_sentinel(args.sentinel);
    let n = cfg.grid.n();
    let mut csv = String::from("t,A,p,k1,k2,k3,side,value\n");
    let mut ok = true;
    for &a in &amplitudes {
        let params = cfg.params.with_a(a);
        for &t in &times {
            for &d in &derivs {
                for &side in &sides {
                    let spec = KernelSpec::new(d, side)?;
                    let norms = kernel_grid(t, n, &params, &spec)
                        .and_then(|g| kernel_lp_norms(t, &ps, &g, &params, &spec, &opts));
                    match norms {
                        Ok(v) => {
                            for (p, value) in ps.iter().zip(v) {
                                let _ = writeln!(
                                    csv,
                                    "{},{},{},{},{},{},{},{}",
                                    format_real(t),
                                    format_real(a),
                                    format_p(*p),
                                    d[0],
                                    d[1],
                                    d[2],
                                    side.as_str(),
                                    format_real(value)
                                );
                            }
                        }
                        Err(e) => {
                            eprintln!("t={t} A={a} deriv={d:?} {}: {e}", side.as_str());
                            ok = false;
                        }
                    }
                }
            }
        }
    }
    let dir = common.out_dir(Some(&cfg));
    std::fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    let path = dir.join("kernel_norms.csv");
    atomic_write(&path, csv.as_bytes())?;
    println!("wrote {}", path.display());
    Ok(ok)
}
