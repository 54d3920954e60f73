use std::sync::Arc;

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};

use crate::error::{Error, Result};
use crate::spectral::{Field, Grid, SpectralField};

/// Relative Hermitian defect tolerated by [`Fft3::inverse`].
pub const HERMITIAN_TOLERANCE: f64 = 1e-10;

/// Reusable 3D transform plan for one grid shape.
///
/// The x and y passes run plane by plane, the z pass over x–z slabs; each
/// unit of work is independent, so the passes parallelise without locks.
#[derive(Clone)]
pub struct Fft3 {
    grid: Grid,
    fwd: [Arc<dyn Fft<f64>>; 3],
    inv: [Arc<dyn Fft<f64>>; 3],
}

impl std::fmt::Debug for Fft3 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Fft3").field("n", &self.grid.n()).finish()
    }
}

#[inline]
fn sign(m: usize) -> f64 {
    if m % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

impl Fft3 {
    pub fn new(grid: &Grid) -> Self {
        let mut planner = FftPlanner::new();
        let n = grid.n();
        let plan = |p: &mut FftPlanner<f64>, d| {
            [p.plan_fft(n[0], d), p.plan_fft(n[1], d), p.plan_fft(n[2], d)]
        };
        let fwd = plan(&mut planner, FftDirection::Forward);
        let inv = plan(&mut planner, FftDirection::Inverse);
        Self { grid: grid.clone(), fwd, inv }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    /// Unnormalised in-place 3D DFT.
    pub fn transform_raw(&self, data: &mut [Complex64], dir: FftDirection) {
        assert_eq!(data.len(), self.grid.len());
        let plans = match dir {
            FftDirection::Forward => &self.fwd,
            FftDirection::Inverse => &self.inv,
        };
        let [nx, ny, nz] = self.grid.n();
        let plane = nx * ny;

        crate::par::for_each_chunk_mut(data, plane, |_, p| {
            let mut scratch = vec![Complex64::default(); plans[0].get_inplace_scratch_len()];
            plans[0].process_with_scratch(p, &mut scratch);

            let mut line = vec![Complex64::default(); ny];
            let mut scratch = vec![Complex64::default(); plans[1].get_inplace_scratch_len()];
            for i in 0..nx {
                for j in 0..ny {
                    line[j] = p[i + nx * j];
                }
                plans[1].process_with_scratch(&mut line, &mut scratch);
                for j in 0..ny {
                    p[i + nx * j] = line[j];
                }
            }
        });

        // z pass: transform each x–z slab (fixed j) into a side buffer
        let src: &[Complex64] = data;
        let slabs = crate::par::map_range(ny, |j| {
            let mut slab = vec![Complex64::default(); nx * nz];
            for k in 0..nz {
                slab[k * nx..(k + 1) * nx]
                    .copy_from_slice(&src[nx * (j + ny * k)..nx * (j + ny * k) + nx]);
            }
            let mut line = vec![Complex64::default(); nz];
            let mut scratch = vec![Complex64::default(); plans[2].get_inplace_scratch_len()];
            for i in 0..nx {
                for k in 0..nz {
                    line[k] = slab[i + nx * k];
                }
                plans[2].process_with_scratch(&mut line, &mut scratch);
                for k in 0..nz {
                    slab[i + nx * k] = line[k];
                }
            }
            slab
        });
        for (j, slab) in slabs.into_iter().enumerate() {
            for k in 0..nz {
                data[nx * (j + ny * k)..nx * (j + ny * k) + nx]
                    .copy_from_slice(&slab[k * nx..(k + 1) * nx]);
            }
        }
    }

    /// Multiplies entry `(i,j,k)` by `(−1)^{i+j+k}`: the phase that moves
    /// the origin to the box centre.
    fn centre_phase(&self, data: &mut [Complex64], scale: f64) {
        let g = &self.grid;
        let [nx, ny, _] = g.n();
        crate::par::for_each_chunk_mut(data, nx * ny, |k, p| {
            for (r, c) in p.iter_mut().enumerate() {
                *c *= scale * sign(r % nx + r / nx + k);
            }
        });
    }

    pub fn forward(&self, f: &Field) -> SpectralField {
        let mut data: Vec<Complex64> = f.values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        self.transform_raw(&mut data, FftDirection::Forward);
        self.centre_phase(&mut data, self.grid.cell_volume());
        SpectralField { grid: self.grid.clone(), coeffs: data, frame_tilt: f.frame_tilt }
    }

    /// Inverse transform; rejects coefficients that cannot come from a real
    /// field.
    pub fn inverse(&self, s: &SpectralField) -> Result<Field> {
        let defect = s.hermitian_defect();
        if !(defect <= HERMITIAN_TOLERANCE) {
            return Err(Error::NotHermitian { defect });
        }
        Ok(self.inverse_unchecked(s))
    }

    /// Inverse transform keeping only the real part, with no symmetry check.
    pub fn inverse_unchecked(&self, s: &SpectralField) -> Field {
        let mut data = s.coeffs.clone();
        self.centre_phase(&mut data, 1.0 / self.grid.volume());
        self.transform_raw(&mut data, FftDirection::Inverse);
        Field {
            grid: self.grid.clone(),
            values: data.into_iter().map(|c| c.re).collect(),
            frame_tilt: s.frame_tilt,
        }
    }
}

/// One-shot forward transform. Prefer a cached [`Fft3`] in loops.
pub fn forward_transform(f: &Field) -> SpectralField {
    Fft3::new(&f.grid).forward(f)
}

/// One-shot inverse transform. Prefer a cached [`Fft3`] in loops.
pub fn inverse_transform(s: &SpectralField) -> Result<Field> {
    Fft3::new(&s.grid).inverse(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn idx_of(g: &Grid, m: [i64; 3]) -> usize {
        use crate::spectral::Axis::*;
        g.idx(g.index_of_mode(X, m[0]), g.index_of_mode(Y, m[1]), g.index_of_mode(Z, m[2]))
    }

    #[test]
    fn constant_field_lands_on_zero_mode() {
        let g = Grid::cube(8, 2.0 * PI).unwrap();
        let s = forward_transform(&Field::from_fn(&g, |_, _, _| 1.5));
        let v = (2.0 * PI).powi(3);
        assert!((s.coeffs[0].re - 1.5 * v).abs() < 1e-10 * v);
        assert!(s.coeffs[1..].iter().all(|c| c.norm() < 1e-10 * v));
    }

    #[test]
    fn cosine_splits_between_plus_minus() {
        let g = Grid::cube(8, 2.0 * PI).unwrap();
        let s = forward_transform(&Field::from_fn(&g, |x, _, _| x.cos()));
        let half = 0.5 * g.volume();
        let p = s.coeffs[idx_of(&g, [1, 0, 0])];
        let m = s.coeffs[idx_of(&g, [-1, 0, 0])];
        assert!((p.re - half).abs() < 1e-10 && p.im.abs() < 1e-10);
        assert!((m.re - half).abs() < 1e-10 && m.im.abs() < 1e-10);
    }

    #[test]
    fn shifted_sine_phase() {
        // sin(x) has coefficient −iV/2 at +1 under e^{−ikx}
        let g = Grid::new([8, 10, 12], [2.0 * PI, 3.0, 5.0]).unwrap();
        let s = forward_transform(&Field::from_fn(&g, |x, _, _| x.sin()));
        let c = s.coeffs[idx_of(&g, [1, 0, 0])];
        assert!(c.re.abs() < 1e-10 && (c.im + 0.5 * g.volume()).abs() < 1e-10);
    }

    #[test]
    fn round_trip_anisotropic() {
        let g = Grid::new([8, 10, 12], [1.0, 2.0, 3.0]).unwrap();
        let f = Field::from_fn(&g, |x, y, z| (x * 3.0 + y).sin() + z * z + 0.1 * x * y);
        let back = inverse_transform(&forward_transform(&f)).unwrap();
        for (a, b) in f.values.iter().zip(&back.values) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn non_hermitian_rejected() {
        let g = Grid::cube(8, 1.0).unwrap();
        let mut s = SpectralField::zeros(&g);
        s.coeffs[1] = Complex64::new(1.0, 0.0);
        assert!(matches!(inverse_transform(&s), Err(Error::NotHermitian { .. })));
    }
}
