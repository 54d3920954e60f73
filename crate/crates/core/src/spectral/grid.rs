use std::f64::consts::PI;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    X = 0,
    Y = 1,
    Z = 2,
}

/// Truncated periodic box standing in for ℝ³.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid {
    n: [usize; 3],
    l: [f64; 3],
}

impl Grid {
    pub const MIN_POINTS: usize = 8;

    pub fn new(n: [usize; 3], l: [f64; 3]) -> Result<Self> {
        for (axis, (&ni, &li)) in ["x", "y", "z"].iter().zip(n.iter().zip(&l)) {
            if ni % 2 != 0 {
                return Err(Error::InvalidGrid(format!("n_{axis} must be even, got {ni}")));
            }
            if ni < Self::MIN_POINTS {
                return Err(Error::InvalidGrid(format!(
                    "n_{axis} must be at least {}, got {ni}",
                    Self::MIN_POINTS
                )));
            }
            if !(li.is_finite() && li > 0.0) {
                return Err(Error::InvalidGrid(format!("l_{axis} must be positive, got {li}")));
            }
        }
        Ok(Self { n, l })
    }

    pub fn cube(n: usize, l: f64) -> Result<Self> {
        Self::new([n; 3], [l; 3])
    }

    pub fn n(&self) -> [usize; 3] {
        self.n
    }

    pub fn lengths(&self) -> [f64; 3] {
        self.l
    }

    pub fn len(&self) -> usize {
        self.n[0] * self.n[1] * self.n[2]
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn volume(&self) -> f64 {
        self.l[0] * self.l[1] * self.l[2]
    }

    pub fn cell_volume(&self) -> f64 {
        self.volume() / self.len() as f64
    }

    pub fn spacing(&self, axis: Axis) -> f64 {
        self.l[axis as usize] / self.n[axis as usize] as f64
    }

    pub fn min_spacing(&self) -> f64 {
        [Axis::X, Axis::Y, Axis::Z]
            .iter()
            .map(|&a| self.spacing(a))
            .fold(f64::INFINITY, f64::min)
    }

    /// Lattice spacing `2π / l` of the wavenumbers along `axis`.
    pub fn dk(&self, axis: Axis) -> f64 {
        2.0 * PI / self.l[axis as usize]
    }

    /// Signed mode number of FFT-ordered index `j`, in `−n/2 … n/2 − 1`.
    #[inline]
    pub fn mode(&self, axis: Axis, j: usize) -> i64 {
        let n = self.n[axis as usize];
        if j < n / 2 {
            j as i64
        } else {
            j as i64 - n as i64
        }
    }

    /// FFT-ordered index of signed mode `m` (taken modulo `n`).
    #[inline]
    pub fn index_of_mode(&self, axis: Axis, m: i64) -> usize {
        let n = self.n[axis as usize] as i64;
        m.rem_euclid(n) as usize
    }

    #[inline]
    pub fn wavenumber(&self, axis: Axis, j: usize) -> f64 {
        self.mode(axis, j) as f64 * self.dk(axis)
    }

    /// True for the unpaired Nyquist index `n/2`.
    #[inline]
    pub fn is_nyquist(&self, axis: Axis, j: usize) -> bool {
        j == self.n[axis as usize] / 2
    }

    /// Centred coordinate of sample `j`.
    #[inline]
    pub fn coord(&self, axis: Axis, j: usize) -> f64 {
        let n = self.n[axis as usize];
        (j as f64 - (n / 2) as f64) * self.spacing(axis)
    }

    #[inline]
    pub fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        i + self.n[0] * (j + self.n[1] * k)
    }

    #[inline]
    pub fn unravel(&self, idx: usize) -> (usize, usize, usize) {
        let i = idx % self.n[0];
        let rest = idx / self.n[0];
        (i, rest % self.n[1], rest / self.n[1])
    }

    /// Index of the lattice point `−k` (also of the sample at `−x`).
    #[inline]
    pub fn mirror(&self, idx: usize) -> usize {
        let (i, j, k) = self.unravel(idx);
        let neg = |j: usize, n: usize| (n - j) % n;
        self.idx(neg(i, self.n[0]), neg(j, self.n[1]), neg(k, self.n[2]))
    }

    /// Smallest frame tilt at which a shear remap is exact: `l_x / l_y`.
    ///
    /// Shifting the `η` label of every mode by `m_x` lattice steps changes
    /// the physical wavenumber by exactly this tilt times `ξ`, whatever the
    /// aspect ratio.
    pub fn remap_tilt(&self) -> f64 {
        self.l[0] / self.l[1]
    }

    /// Wavenumber triple `(ξ, η_label, ζ)` at flat index `idx`.
    #[inline]
    pub fn label_wavevector(&self, idx: usize) -> [f64; 3] {
        let (i, j, k) = self.unravel(idx);
        [
            self.wavenumber(Axis::X, i),
            self.wavenumber(Axis::Y, j),
            self.wavenumber(Axis::Z, k),
        ]
    }

    /// Wavevector seen by the dynamics for a mode in a frame with tilt `tilt`.
    #[inline]
    pub fn physical_wavevector(&self, idx: usize, tilt: f64) -> [f64; 3] {
        let [xi, eta, zeta] = self.label_wavevector(idx);
        [xi, eta - tilt * xi, zeta]
    }

    /// Lab-frame position of sample `idx` in a frame with tilt `tilt`.
    #[inline]
    pub fn lab_position(&self, idx: usize, tilt: f64) -> [f64; 3] {
        let (i, j, k) = self.unravel(idx);
        let y = self.coord(Axis::Y, j);
        [self.coord(Axis::X, i) + tilt * y, y, self.coord(Axis::Z, k)]
    }
}
