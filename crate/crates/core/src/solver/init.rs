use std::f64::consts::TAU;

use rand::Rng;
use rustfft::num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kernel::zero_nyquist;
use crate::spectral::{Axis, Fft3, Field, Grid, SpectralField};

/// Initial data.
#[derive(Clone, Debug, PartialEq)]
pub enum InitSpec {
    /// `amplitude · exp(−|x|²/width²)`, centred in the box.
    Gaussian { amplitude: f64, width: f64 },
    /// `amplitude · cos(k·x)` with `k = 2π m / l`.
    SingleMode { amplitude: f64, mode: [i64; 3] },
    /// Random smooth field with spectrum in `k_min ≤ |k| ≤ k_max`, scaled to
    /// `max |φ| = amplitude`.
    RandomBand { amplitude: f64, k_min: f64, k_max: f64 },
}

impl InitSpec {
    /// Gaussian of width `l_x/8` with `‖∇φ₀‖_∞ = 1`.
    ///
    /// `A e^{−r²/w²}` has steepest slope `A √2 e^{−1/2} / w` at `r = w/√2`.
    pub fn default_gaussian(grid: &Grid) -> Self {
        let width = grid.lengths()[0] / 8.0;
        Self::Gaussian { amplitude: gaussian_amplitude_for_unit_gradient(width), width }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            InitSpec::Gaussian { .. } => "gaussian",
            InitSpec::SingleMode { .. } => "single_mode",
            InitSpec::RandomBand { .. } => "random_band",
        }
    }

    pub fn amplitude(&self) -> f64 {
        match *self {
            InitSpec::Gaussian { amplitude, .. }
            | InitSpec::SingleMode { amplitude, .. }
            | InitSpec::RandomBand { amplitude, .. } => amplitude,
        }
    }
}

pub fn gaussian_amplitude_for_unit_gradient(width: f64) -> f64 {
    width * 0.5f64.exp() / 2f64.sqrt()
}

/// Samples the initial data; deterministic in `seed`.
pub fn init_field(grid: &Grid, init: &InitSpec, seed: u64) -> Result<Field> {
    if !init.amplitude().is_finite() {
        return Err(Error::InvalidInit(format!("amplitude {} is not finite", init.amplitude())));
    }
    match *init {
        InitSpec::Gaussian { amplitude, width } => {
            let cells = width / [Axis::X, Axis::Y, Axis::Z].map(|a| grid.spacing(a)).into_iter().fold(0.0, f64::max);
            if !(cells >= 3.0) {
                return Err(Error::InvalidInit(format!(
                    "gaussian width {width} spans {cells:.2} cells, at least 3 needed"
                )));
            }
            let w2 = width * width;
            Ok(Field::from_fn(grid, |x, y, z| amplitude * (-(x * x + y * y + z * z) / w2).exp()))
        }
        InitSpec::SingleMode { amplitude, mode } => {
            let n = grid.n();
            for a in 0..3 {
                if 2 * mode[a].unsigned_abs() >= n[a] as u64 {
                    return Err(Error::InvalidInit(format!(
                        "mode {} on axis {a} is not below the Nyquist index {}",
                        mode[a],
                        n[a] / 2
                    )));
                }
            }
            let k = [Axis::X, Axis::Y, Axis::Z].map(|a| mode[a as usize] as f64 * grid.dk(a));
            Ok(Field::from_fn(grid, |x, y, z| amplitude * (k[0] * x + k[1] * y + k[2] * z).cos()))
        }
        InitSpec::RandomBand { amplitude, k_min, k_max } => {
            if !(k_min >= 0.0 && k_max > k_min) {
                return Err(Error::InvalidInit(format!("band [{k_min}, {k_max}] is empty")));
            }
            let mut rng = crate::rng::block_rng(seed, 0);
            let mut s = SpectralField::zeros(grid);
            let mut any = false;
            for (idx, c) in s.coeffs.iter_mut().enumerate() {
                // Box–Muller; drawn for every mode so the stream is layout-stable
                let (u1, u2): (f64, f64) = (1.0 - rng.gen::<f64>(), rng.gen());
                let r = (-2.0 * u1.ln()).sqrt();
                let [xi, eta, zeta] = grid.label_wavevector(idx);
                let k = (xi * xi + eta * eta + zeta * zeta).sqrt();
                if k >= k_min && k <= k_max {
                    *c = Complex64::from_polar(r, TAU * u2);
                    any = true;
                }
            }
            if !any {
                return Err(Error::InvalidInit(format!("no lattice mode in band [{k_min}, {k_max}]")));
            }
            zero_nyquist(&mut s);
            s.symmetrize();
            let mut f = Fft3::new(grid).inverse(&s)?;
            let m = f.max_abs();
            if m == 0.0 {
                return Err(Error::InvalidInit("band draw vanished".into()));
            }
            f.values.iter_mut().for_each(|v| *v *= amplitude / m);
            Ok(f)
        }
    }
}
