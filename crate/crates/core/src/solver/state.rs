use crate::error::{Error, Result};
use crate::kernel::{exponent, zero_nyquist, Params};
use crate::par;
use crate::spectral::{dealias_in_place, Fft3, Field, Grid, SpectralField};

use super::init::InitSpec;
use super::nonlinear::nonlinear_spectral;

/// Norms above this (or non-finite values) abort a run.
pub const BLOW_UP_THRESHOLD: f64 = 1e12;

/// Fraction of a cell the front may move per step.
pub const CFL_FRACTION: f64 = 0.5;

/// The substep count is re-evaluated this often.
pub const CFL_INTERVAL: usize = 10;

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub dt: f64,
    pub t_end: f64,
    pub nonlinear: bool,
    pub dealias: bool,
    pub init: InitSpec,
    /// Norms are recorded every this many steps (and at the end).
    pub output_every: usize,
    /// Snapshots every this many steps; 0 for none.
    pub snapshot_every: usize,
    pub seed: u64,
    pub record_p: Vec<f64>,
    pub record_derivs: Vec<[u32; 3]>,
}

impl RunConfig {
    pub fn new(init: InitSpec, dt: f64, t_end: f64) -> Self {
        Self {
            dt,
            t_end,
            nonlinear: true,
            dealias: true,
            init,
            output_every: 1,
            snapshot_every: 0,
            seed: 0,
            record_p: vec![1.0, 2.0, f64::INFINITY],
            record_derivs: vec![[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]],
        }
    }

    pub fn steps(&self) -> usize {
        (self.t_end / self.dt).round() as usize
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidRun(m));
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return bad(format!("dt = {} must be positive", self.dt));
        }
        if !(self.t_end >= 0.0 && self.t_end.is_finite()) {
            return bad(format!("t_end = {} must be non-negative", self.t_end));
        }
        let steps = self.t_end / self.dt;
        if (steps - steps.round()).abs() > 1e-9 * steps.max(1.0) {
            return bad(format!("t_end = {} is not a whole number of steps of {}", self.t_end, self.dt));
        }
        if self.output_every == 0 {
            return bad("output_every must be at least 1".into());
        }
        if let Some(p) = self.record_p.iter().find(|p| !(**p >= 1.0)) {
            return bad(format!("norm exponent {p} is below 1"));
        }
        Ok(())
    }
}

/// Spectral state in the co-moving frame.
///
/// The frame tilt grows at rate `A` and is pulled back into
/// `|S| ≤ S*/2` by relabelling after each step.
#[derive(Clone)]
pub struct SolverState {
    pub spec: SpectralField,
    pub t: f64,
    pub params: Params,
    pub nonlinear: bool,
    pub dealias: bool,
    pub steps: usize,
    pub remaps: usize,
    /// Accumulated squared `L²` mass of modes dropped at remaps.
    pub remap_loss: f64,
    /// Largest `|∇φ|` seen at the last nonlinear evaluation.
    pub grad_max: f64,
    fft: Fft3,
}

impl SolverState {
    pub fn new(field: &Field, params: Params, nonlinear: bool, dealias: bool) -> Result<Self> {
        if !field.is_finite() {
            return Err(Error::InvalidInit("initial field is not finite".into()));
        }
        let fft = Fft3::new(&field.grid);
        let mut spec = fft.forward(field);
        zero_nyquist(&mut spec);
        if dealias {
            dealias_in_place(&mut spec);
        }
        Ok(Self {
            spec,
            t: 0.0,
            params,
            nonlinear,
            dealias,
            steps: 0,
            remaps: 0,
            remap_loss: 0.0,
            grad_max: 0.0,
            fft,
        })
    }

    pub fn grid(&self) -> &Grid {
        &self.spec.grid
    }

    pub fn fft(&self) -> &Fft3 {
        &self.fft
    }

    pub fn field(&self) -> Field {
        self.fft.inverse_unchecked(&self.spec)
    }

    /// Mean of `φ` over the box, from the zero mode.
    pub fn mean(&self) -> f64 {
        self.spec.coeffs[0].re / self.grid().volume()
    }

    /// Upper bound for `‖φ‖_∞`: the absolute coefficient sum over `V`.
    pub fn sup_bound(&self) -> f64 {
        self.spec.coeffs.iter().map(|c| c.norm()).sum::<f64>() / self.grid().volume()
    }
}

/// Per-mode linear exponent over `[t, t + h]` for labels in a frame with
/// tilt `S` at the start of the step.
fn step_exponents(state: &SolverState, h: f64) -> Vec<f64> {
    let g = state.grid();
    let p = state.params;
    let s_end = state.spec.frame_tilt + p.a * h;
    par::map_range(g.len(), |idx| {
        let [xi, eta, zeta] = g.physical_wavevector(idx, s_end);
        // η_end + Aξs runs back to the starting wavenumber as s goes to h
        exponent(p.a, p.kappa, xi, eta, zeta, h)
    })
}

/// Exact linear evolution over `h` followed by the remap check.
pub fn linear_step(mut state: SolverState, h: f64) -> SolverState {
    let z = step_exponents(&state, h);
    par::for_each_mut(&mut state.spec.coeffs, |i, c| *c *= z[i].exp());
    advance_frame(&mut state, h);
    state
}

fn advance_frame(state: &mut SolverState, h: f64) {
    state.spec.frame_tilt += state.params.a * h;
    state.t += h;
    state.steps += 1;
    maybe_remap(state);
}

/// Relabels once the tilt leaves `[−S*/2, S*/2]`, dropping modes that would
/// wrap around the lattice.
fn maybe_remap(state: &mut SolverState) {
    let period = state.grid().remap_tilt();
    let s = state.spec.frame_tilt;
    if s.abs() <= 0.5 * period {
        return;
    }
    let j = (s / period).round() as i64;
    let (out, lost) = crate::spectral::shear_shift_dropping(&state.spec, j);
    state.spec = out;
    state.remaps += 1;
    state.remap_loss += lost;
}

pub(crate) fn phi1(z: f64) -> f64 {
    if z.abs() < 1e-2 {
        1.0 + z * (1.0 / 2.0 + z * (1.0 / 6.0 + z * (1.0 / 24.0 + z * (1.0 / 120.0 + z / 720.0))))
    } else {
        z.exp_m1() / z
    }
}

pub(crate) fn phi2(z: f64) -> f64 {
    if z.abs() < 1e-2 {
        1.0 / 2.0 + z * (1.0 / 6.0 + z * (1.0 / 24.0 + z * (1.0 / 120.0 + z * (1.0 / 720.0 + z / 5040.0))))
    } else {
        (z.exp_m1() - z) / (z * z)
    }
}

fn check_finite(state: &SolverState) -> Result<()> {
    let bound = state.sup_bound();
    if !bound.is_finite() || !state.grad_max.is_finite() {
        return Err(Error::BlowUp { t: state.t, reason: "non-finite values".into() });
    }
    if bound > BLOW_UP_THRESHOLD || state.grad_max > BLOW_UP_THRESHOLD {
        return Err(Error::BlowUp {
            t: state.t,
            reason: format!(
                "norm bound {:.3e} (gradient {:.3e}) above {BLOW_UP_THRESHOLD:.0e}",
                bound, state.grad_max
            ),
        });
    }
    Ok(())
}

/// One second-order exponential time differencing step of size `h`.
///
/// The linear rate is the exact step exponent `z`, the nonlinear term is
/// handled by the two-stage Cox–Matthews scheme. With the nonlinearity off
/// this is [`linear_step`] exactly.
pub fn step_etdrk2(state: SolverState, h: f64) -> Result<SolverState> {
    if !state.nonlinear {
        let out = linear_step(state, h);
        check_finite(&out)?;
        return Ok(out);
    }
    let mut state = state;
    let z = step_exponents(&state, h);
    let (n0, gmax) = nonlinear_spectral(&state.spec, &state.fft);
    state.grad_max = gmax;
    let mut a = state.spec.clone();
    a.frame_tilt += state.params.a * h;
    par::for_each_mut(&mut a.coeffs, |i, c| {
        *c = *c * z[i].exp() + n0.coeffs[i] * (h * phi1(z[i]));
    });
    let (n1, _) = nonlinear_spectral(&a, &state.fft);
    par::for_each_mut(&mut a.coeffs, |i, c| {
        *c += (n1.coeffs[i] - n0.coeffs[i]) * (h * phi2(z[i]));
    });
    if state.dealias {
        // remaps can carry labels out of the window
        dealias_in_place(&mut a);
    }
    a.frame_tilt = state.spec.frame_tilt;
    state.spec = a;
    advance_frame(&mut state, h);
    check_finite(&state)?;
    Ok(state)
}

/// Number of equal substeps needed to keep `h` under the advective ceiling
/// `CFL_FRACTION · min cell / max |∇φ|`.
pub fn substeps_for(grid: &Grid, h: f64, grad_max: f64) -> usize {
    if !(grad_max > 0.0) {
        return 1;
    }
    let ceiling = CFL_FRACTION * grid.min_spacing() / grad_max;
    ((h / ceiling).ceil() as usize).max(1)
}
