use crate::error::Result;
use crate::kernel::Params;
use crate::spectral::Grid;

use super::norms::{envelope_summary, EnvelopeSummary};
use super::run::{simulate, RunArtifact};
use super::state::RunConfig;

/// Envelope test: the run completes and `R_{k,p}` on `[t_ref, t_end]` stays
/// within `factor` of its value at `t_ref` for every listed `(k, p)`.
#[derive(Clone, Debug, PartialEq)]
pub struct EnvelopeCheck {
    pub t_ref: f64,
    pub factor: f64,
    pub keys: Vec<(u32, f64)>,
}

impl Default for EnvelopeCheck {
    fn default() -> Self {
        Self {
            t_ref: 1.0,
            factor: 10.0,
            keys: vec![(0, 2.0), (0, f64::INFINITY), (1, 2.0), (1, f64::INFINITY)],
        }
    }
}

impl EnvelopeCheck {
    /// Summaries for the listed keys, or `None` if the run did not complete
    /// or a key is missing.
    pub fn evaluate(&self, run: &RunArtifact) -> Option<Vec<EnvelopeSummary>> {
        if !run.status.is_completed() {
            return None;
        }
        let all = envelope_summary(&run.envelope, self.t_ref);
        self.keys
            .iter()
            .map(|&(k, p)| all.iter().find(|s| s.order == k && s.p == p).cloned())
            .collect()
    }

    pub fn passes(&self, run: &RunArtifact) -> bool {
        self.evaluate(run)
            .is_some_and(|s| s.iter().all(|s| s.bounded_by(self.factor)))
    }
}

#[derive(Clone, Debug)]
pub struct ProbeResult {
    /// The first amplitude that passed, if any.
    pub a: Option<f64>,
    /// `(A, passed)` for every run tried.
    pub attempts: Vec<(f64, bool)>,
    /// The passing run, or the last one tried.
    pub run: RunArtifact,
}

/// Doubles `A` from `a_start` until the envelope check passes, at most
/// `max_doublings` times.
pub fn probe_amplitude(
    config: &RunConfig,
    grid: &Grid,
    params: &Params,
    a_start: f64,
    max_doublings: usize,
    check: &EnvelopeCheck,
) -> Result<ProbeResult> {
    let mut a = a_start;
    let mut attempts = Vec::new();
    loop {
        let p = params.with_a(a);
        let run = simulate(config, grid, &p)?;
        let ok = check.passes(&run);
        attempts.push((a, ok));
        if ok || attempts.len() > max_doublings {
            return Ok(ProbeResult { a: ok.then_some(a), attempts, run });
        }
        a *= 2.0;
    }
}
