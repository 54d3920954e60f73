use rustfft::num_complex::Complex64;

use crate::spectral::{Axis, Grid, SpectralField};

/// Whether signed mode `m` survives truncation on an axis of `n` points.
///
/// Keeps `3|m| < n`. Two kept modes then sum to at most `2(n−1)/3`, which
/// can only alias onto modes of magnitude above `(n+1)/3`, all discarded.
#[inline]
pub fn kept_mode(m: i64, n: usize) -> bool {
    3 * m.unsigned_abs() < n as u64
}

fn kept(g: &Grid, idx: usize) -> bool {
    let (i, j, k) = g.unravel(idx);
    let n = g.n();
    kept_mode(g.mode(Axis::X, i), n[0])
        && kept_mode(g.mode(Axis::Y, j), n[1])
        && kept_mode(g.mode(Axis::Z, k), n[2])
}

pub fn dealias_in_place(s: &mut SpectralField) {
    let g = s.grid.clone();
    crate::par::for_each_mut(&mut s.coeffs, |idx, c| {
        if !kept(&g, idx) {
            *c = Complex64::new(0.0, 0.0);
        }
    });
}

pub fn dealias(s: &SpectralField) -> SpectralField {
    let mut out = s.clone();
    dealias_in_place(&mut out);
    out
}

pub fn is_dealiased(s: &SpectralField) -> bool {
    s.coeffs
        .iter()
        .enumerate()
        .all(|(idx, c)| kept(&s.grid, idx) || c.norm() == 0.0)
}
