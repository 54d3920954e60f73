use rustfft::num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectral::Grid;

/// Real samples on a (possibly sheared) periodic grid.
///
/// With `frame_tilt = S`, `values[idx]` is the value at the lab point
/// [`Grid::lab_position`]`(idx, S)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Field {
    pub grid: Grid,
    pub values: Vec<f64>,
    pub frame_tilt: f64,
}

/// Fourier coefficients over the wavenumber lattice, FFT ordered.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralField {
    pub grid: Grid,
    pub coeffs: Vec<Complex64>,
    pub frame_tilt: f64,
}

impl Field {
    pub fn zeros(grid: &Grid) -> Self {
        Self { grid: grid.clone(), values: vec![0.0; grid.len()], frame_tilt: 0.0 }
    }

    pub fn from_values(grid: &Grid, values: Vec<f64>, frame_tilt: f64) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidGrid(format!(
                "expected {} samples, got {}",
                grid.len(),
                values.len()
            )));
        }
        Ok(Self { grid: grid.clone(), values, frame_tilt })
    }

    /// Samples `f` at the lab positions of an untilted grid.
    pub fn from_fn(grid: &Grid, f: impl Fn(f64, f64, f64) -> f64 + Sync) -> Self {
        let values = crate::par::map_range(grid.len(), |idx| {
            let [x, y, z] = grid.lab_position(idx, 0.0);
            f(x, y, z)
        });
        Self { grid: grid.clone(), values, frame_tilt: 0.0 }
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m: f64, v| {
            if m.is_nan() || v.is_nan() {
                f64::NAN
            } else {
                m.max(v.abs())
            }
        })
    }

    /// Cell-volume weighted `L^p` norm; `p = ∞` gives the max norm.
    pub fn lp_norm(&self, p: f64) -> f64 {
        lp_norm(&self.values, self.grid.cell_volume(), p)
    }

    /// `Σ f ΔV`.
    pub fn integral(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.grid.cell_volume()
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }
}

/// Cell-volume weighted discrete `L^p` norm of a sample array.
pub(crate) fn lp_norm(values: &[f64], cell: f64, p: f64) -> f64 {
    if p.is_infinite() {
        return values.iter().fold(0.0, |m: f64, v| m.max(v.abs()));
    }
    // scale by the max to keep high powers in range
    let m = values.iter().fold(0.0, |m: f64, v| m.max(v.abs()));
    if m == 0.0 || !m.is_finite() {
        return m;
    }
    let s: f64 = values.iter().map(|v| (v.abs() / m).powf(p)).sum();
    m * (s * cell).powf(1.0 / p)
}

impl SpectralField {
    pub fn zeros(grid: &Grid) -> Self {
        Self {
            grid: grid.clone(),
            coeffs: vec![Complex64::new(0.0, 0.0); grid.len()],
            frame_tilt: 0.0,
        }
    }

    pub fn from_coeffs(grid: &Grid, coeffs: Vec<Complex64>, frame_tilt: f64) -> Result<Self> {
        if coeffs.len() != grid.len() {
            return Err(Error::InvalidGrid(format!(
                "expected {} coefficients, got {}",
                grid.len(),
                coeffs.len()
            )));
        }
        Ok(Self { grid: grid.clone(), coeffs, frame_tilt })
    }

    /// Largest `|c(k) − conj(c(−k))|` relative to the largest coefficient.
    pub fn hermitian_defect(&self) -> f64 {
        let scale = self.coeffs.iter().fold(0.0, |m: f64, c| m.max(c.norm()));
        if scale == 0.0 {
            return 0.0;
        }
        let g = &self.grid;
        let worst = crate::par::max_range(g.len(), |idx| {
            (self.coeffs[idx] - self.coeffs[g.mirror(idx)].conj()).norm()
        });
        worst / scale
    }

    /// Overwrites every coefficient by the average of itself and the
    /// conjugate of its mirror, removing round-off asymmetry.
    pub fn symmetrize(&mut self) {
        let g = self.grid.clone();
        let old = self.coeffs.clone();
        crate::par::for_each_mut(&mut self.coeffs, |idx, c| {
            *c = 0.5 * (old[idx] + old[g.mirror(idx)].conj());
        });
    }

    /// `‖f‖²_{L²}` through Parseval: `(1/V) Σ |c|²`.
    pub fn l2_norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>() / self.grid.volume()
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m: f64, c| m.max(c.norm()))
    }

    /// Evaluates the represented function at a lab point by direct summation.
    ///
    /// `O(N)` per point; meant for checks on small grids.
    pub fn eval_at(&self, x: f64, y: f64, z: f64) -> f64 {
        let g = &self.grid;
        let mut acc = 0.0;
        for (idx, c) in self.coeffs.iter().enumerate() {
            if *c == Complex64::new(0.0, 0.0) {
                continue;
            }
            let [xi, eta, zeta] = g.physical_wavevector(idx, self.frame_tilt);
            let phase = xi * x + eta * y + zeta * z;
            acc += c.re * phase.cos() - c.im * phase.sin();
        }
        acc / g.volume()
    }
}
