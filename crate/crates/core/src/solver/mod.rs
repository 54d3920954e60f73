//! Time integration of the nonlinear equation.
//!
//! The state is kept in Fourier space in a frame that moves with the shear.
//! The linear part is applied exactly through the step exponent, the
//! nonlinearity by second-order exponential time differencing. Once the
//! frame tilt passes half the remap tilt the modes are relabelled; labels
//! that would wrap around the lattice are dropped and their mass is
//! accumulated in `remap_loss`.

mod init;
mod nonlinear;
mod norms;
mod probe;
mod run;
mod state;

pub use init::{gaussian_amplitude_for_unit_gradient, init_field, InitSpec};
pub use nonlinear::nonlinear_term;
pub use norms::{
    envelope_profile, envelope_ratios, envelope_summary, record_norms, EnvelopeRow,
    EnvelopeSummary, NormRecord,
};
pub use probe::{probe_amplitude, EnvelopeCheck, ProbeResult};
pub use run::{simulate, simulate_with, RunArtifact, RunStatus, Snapshot};
pub use state::{
    linear_step, step_etdrk2, substeps_for, RunConfig, SolverState, BLOW_UP_THRESHOLD,
    CFL_FRACTION, CFL_INTERVAL,
};
