use std::fmt::Write as _;

use anyhow::{Context, Result};

use cflm_core::io::{atomic_write, format_p, format_real, write_norm_csv, write_snapshot, SnapshotMeta};
use cflm_core::solver::{envelope_summary, simulate_with, EnvelopeCheck, RunStatus};

use crate::Common;

/// Writes `norms.csv`, `envelope.csv`, `snap_<step>.cflm` snapshots,
/// `final.cflm`, `config.used` and `summary.txt`. Fails (exit 1) on a
/// sentinel trip; the files then hold everything up to it.
pub fn run(common: &Common) -> Result<bool> {
    let cfg = common.load_config()?;
    let dir = cfg.out_dir.clone();
    std::fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    atomic_write(&dir.join("config.used"), cfg.serialize().as_bytes())?;

    let params = cfg.params;
    let meta = |t| SnapshotMeta { a: params.a, kappa: params.kappa, t };
    let artifact = simulate_with(&cfg.run_config(), &cfg.grid, &params, |snap| {
        write_snapshot(&snap.field, &meta(snap.t), &dir.join(format!("snap_{:06}.cflm", snap.step)))
    })?;

    write_norm_csv(&artifact.records, &dir.join("norms.csv"))?;
    let mut env = String::from("t,k,p,norm,ratio\n");
    for r in &artifact.envelope {
        let _ = writeln!(env, "{},{},{},{},{}", format_real(r.t), r.order, format_p(r.p), format_real(r.norm), format_real(r.ratio));
    }
    atomic_write(&dir.join("envelope.csv"), env.as_bytes())?;
    write_snapshot(&artifact.final_field, &meta(artifact.t_final), &dir.join("final.cflm"))?;

    let mut s = String::new();
    let status = match &artifact.status {
        RunStatus::Completed => "completed".to_string(),
        RunStatus::BlowUp { t, reason } => format!("BLOW-UP sentinel at t = {t}: {reason} (outputs are partial)"),
    };
    let _ = writeln!(s, "status: {status}");
    let _ = writeln!(
        s,
        "steps: {} ({} substeps), t_final = {}",
        artifact.steps, artifact.substeps, artifact.t_final
    );
    let _ = writeln!(s, "remaps: {}, dropped L2 mass (squared): {:.3e}", artifact.remaps, artifact.remap_loss);
    let _ = writeln!(s, "params: A = {}, kappa = {}, epsilon = {}", params.a, params.kappa, params.epsilon);
    let check = EnvelopeCheck::default();
    let _ = writeln!(s, "envelope ratios R_k,p over t >= {} (bound: {} x value at t = {}):", check.t_ref, check.factor, check.t_ref);
    for e in envelope_summary(&artifact.envelope, check.t_ref) {
        let _ = writeln!(
            s,
            "  k={} p={:<4} R(ref)={:.4e} max={:.4e} at t={:.4} growth={:.3} {}",
            e.order,
            format_p(e.p),
            e.ratio_ref,
            e.ratio_max,
            e.t_max,
            e.growth(),
            if e.bounded_by(check.factor) { "bounded" } else { "EXCEEDS" }
        );
    }
    atomic_write(&dir.join("summary.txt"), s.as_bytes())?;
    print!("{s}");
    Ok(artifact.status.is_completed())
}
