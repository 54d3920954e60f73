use rustfft::num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectral::{Axis, SpectralField};

/// Re-labels a field whose tilt is an integer multiple `j·S*` of the remap
/// tilt `S* = l_x/l_y`, returning the same function with tilt zero.
///
/// Mode `(m_x, m_y, m_z)` moves to `(m_x, m_y − j m_x, m_z)` with `m_y`
/// taken modulo `n_y`. The wrap leaves values at every grid `y` untouched.
pub fn shear_remap(s: &SpectralField) -> Result<SpectralField> {
    let period = s.grid.remap_tilt();
    let ratio = s.frame_tilt / period;
    let j = ratio.round();
    if (ratio - j).abs() > 1e-9 * ratio.abs().max(1.0) {
        return Err(Error::NonCommensurateTilt { tilt: s.frame_tilt, period });
    }
    let mut out = shear_shift(s, j as i64);
    out.frame_tilt = 0.0;
    Ok(out)
}

/// Shifts the tilt by `−j·S*` through the matching relabelling, for any
/// starting tilt.
pub fn shear_shift(s: &SpectralField, j: i64) -> SpectralField {
    shift_impl(s, j, false).0
}

/// Like [`shear_shift`] but zeroes modes whose new label leaves the
/// principal window instead of wrapping them. Returns the field and the
/// `L²` mass (squared) that was removed.
pub(crate) fn shear_shift_dropping(s: &SpectralField, j: i64) -> (SpectralField, f64) {
    shift_impl(s, j, true)
}

fn shift_impl(s: &SpectralField, j: i64, drop_wrapped: bool) -> (SpectralField, f64) {
    let g = &s.grid;
    let [nx, ny, nz] = g.n();
    let half = (ny / 2) as i64;
    let mut out = vec![Complex64::new(0.0, 0.0); g.len()];
    let mut dropped = 0.0;
    for k in 0..nz {
        for jy in 0..ny {
            let my = g.mode(Axis::Y, jy);
            for i in 0..nx {
                let mx = g.mode(Axis::X, i);
                let c = s.coeffs[g.idx(i, jy, k)];
                let target = my - j * mx;
                if drop_wrapped && !(-half..half).contains(&target) {
                    dropped += c.norm_sqr();
                    continue;
                }
                out[g.idx(i, g.index_of_mode(Axis::Y, target), k)] = c;
            }
        }
    }
    let tilt = s.frame_tilt - j as f64 * g.remap_tilt();
    (
        SpectralField { grid: g.clone(), coeffs: out, frame_tilt: tilt },
        dropped / g.volume(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::Grid;
    use std::f64::consts::PI;

    fn unit() -> Grid {
        Grid::cube(8, 2.0 * PI).unwrap()
    }

    #[test]
    fn zero_tilt_is_identity() {
        let g = unit();
        let mut s = SpectralField::zeros(&g);
        s.coeffs[g.idx(1, 2, 3)] = Complex64::new(1.0, 2.0);
        assert_eq!(shear_remap(&s).unwrap(), s);
    }

    #[test]
    fn single_mode_relabelled() {
        let g = unit();
        let mut s = SpectralField::zeros(&g);
        s.coeffs[g.idx(1, 0, 0)] = Complex64::new(1.0, 0.0);
        s.frame_tilt = 1.0;
        let r = shear_remap(&s).unwrap();
        assert_eq!(r.frame_tilt, 0.0);
        assert_eq!(r.coeffs[g.idx(1, 7, 0)], Complex64::new(1.0, 0.0));
        assert_eq!(r.coeffs.iter().filter(|c| c.norm() > 0.0).count(), 1);
        for (x, y) in [(0.3, -1.0), (2.0, 0.7), (-3.0, 2.5)] {
            assert!((s.eval_at(x, y, 0.1) - r.eval_at(x, y, 0.1)).abs() < 1e-13);
        }
    }

    #[test]
    fn rejects_fractional_tilt() {
        let g = unit();
        let mut s = SpectralField::zeros(&g);
        s.frame_tilt = 0.5;
        assert!(matches!(shear_remap(&s), Err(Error::NonCommensurateTilt { .. })));
    }

    #[test]
    fn dropping_variant_reports_loss() {
        let g = unit();
        let mut s = SpectralField::zeros(&g);
        // (3, -3) shifted by one step lands on -6, outside the window
        s.coeffs[g.idx(3, 5, 0)] = Complex64::new(2.0, 0.0);
        s.frame_tilt = 1.0;
        let (r, lost) = shear_shift_dropping(&s, 1);
        assert!(r.coeffs.iter().all(|c| c.norm() == 0.0));
        assert!((lost - 4.0 / g.volume()).abs() < 1e-15);
    }
}
