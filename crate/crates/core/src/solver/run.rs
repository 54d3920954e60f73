use crate::error::{Error, Result};
use crate::kernel::Params;
use crate::spectral::{Field, Grid};

use super::init::init_field;
use super::norms::{envelope_ratios, record_norms, EnvelopeRow, NormRecord};
use super::state::{step_etdrk2, substeps_for, RunConfig, SolverState, CFL_INTERVAL};

#[derive(Clone, Debug, PartialEq)]
pub enum RunStatus {
    Completed,
    /// Outputs up to `t` are valid; the step after it tripped the sentinel.
    BlowUp { t: f64, reason: String },
}

impl RunStatus {
    pub fn is_completed(&self) -> bool {
        matches!(self, RunStatus::Completed)
    }
}

#[derive(Clone, Debug)]
pub struct Snapshot {
    pub step: usize,
    pub t: f64,
    pub field: Field,
}

#[derive(Clone, Debug)]
pub struct RunArtifact {
    pub records: Vec<NormRecord>,
    pub envelope: Vec<EnvelopeRow>,
    pub snapshots: Vec<Snapshot>,
    pub status: RunStatus,
    /// Steps of size `config.dt` completed.
    pub steps: usize,
    /// Total substeps taken.
    pub substeps: usize,
    pub remaps: usize,
    pub remap_loss: f64,
    pub final_field: Field,
    pub t_final: f64,
}

/// Runs from the configured initial data; see [`simulate_with`].
pub fn simulate(config: &RunConfig, grid: &Grid, params: &Params) -> Result<RunArtifact> {
    simulate_with(config, grid, params, |_| Ok(()))
}

/// Integrates to `t_end`, recording norms every `output_every` steps (and at
/// `t = 0` and the end). Each snapshot is handed to `on_snapshot` as well as
/// kept in the artifact.
///
/// A sentinel trip ends the run early with [`RunStatus::BlowUp`]; everything
/// recorded before it is returned.
pub fn simulate_with(
    config: &RunConfig,
    grid: &Grid,
    params: &Params,
    mut on_snapshot: impl FnMut(&Snapshot) -> Result<()>,
) -> Result<RunArtifact> {
    config.validate()?;
    let phi0 = init_field(grid, &config.init, config.seed)?;
    let mut state = SolverState::new(&phi0, *params, config.nonlinear, config.dealias)?;
    let total = config.steps();
    let mut records = record_norms(&state, &config.record_p, &config.record_derivs);
    let mut snapshots = Vec::new();
    let mut status = RunStatus::Completed;
    let mut substeps = 0;
    let mut m = 1;
    let mut done = 0;
    while done < total {
        if config.nonlinear && done % CFL_INTERVAL == 0 {
            // the gradient bound comes from the previous evaluation; measure
            // it directly at the start
            let g = if done == 0 { initial_gradient(&state) } else { state.grad_max };
            m = substeps_for(grid, config.dt, g);
        }
        let h = config.dt / m as f64;
        let mut failed = None;
        for _ in 0..m {
            match step_etdrk2(state.clone(), h) {
                Ok(s) => state = s,
                Err(Error::BlowUp { t, reason }) => {
                    failed = Some(RunStatus::BlowUp { t, reason });
                    break;
                }
                Err(e) => return Err(e),
            }
            substeps += 1;
        }
        if let Some(s) = failed {
            status = s;
            break;
        }
        done += 1;
        // keep the time on the step lattice
        state.t = done as f64 * config.dt;
        if done % config.output_every == 0 || done == total {
            records.extend(record_norms(&state, &config.record_p, &config.record_derivs));
        }
        if config.snapshot_every > 0 && done % config.snapshot_every == 0 {
            let snap = Snapshot { step: done, t: state.t, field: state.field() };
            on_snapshot(&snap)?;
            snapshots.push(snap);
        }
    }
    let envelope = envelope_ratios(&records, params);
    Ok(RunArtifact {
        records,
        envelope,
        snapshots,
        status,
        steps: done,
        substeps,
        remaps: state.remaps,
        remap_loss: state.remap_loss,
        final_field: state.field(),
        t_final: state.t,
    })
}

fn initial_gradient(state: &SolverState) -> f64 {
    let (_, g) = super::nonlinear::nonlinear_spectral(&state.spec, state.fft());
    g
}
