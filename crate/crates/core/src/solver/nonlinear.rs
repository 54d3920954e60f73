use rustfft::num_complex::Complex64;
use rustfft::FftDirection;

use crate::error::Result;
use crate::kernel::zero_nyquist;
use crate::par;
use crate::spectral::{dealias_in_place, kept_mode, Axis, Fft3, Field, SpectralField};

/// `−½ |∇φ|²` of a field, dealiased by the two-thirds rule.
///
/// Gradients use the physical wavevectors of the field's frame, so the
/// result is correct on sheared samples as well.
pub fn nonlinear_term(field: &Field) -> Result<Field> {
    let fft = Fft3::new(&field.grid);
    let s = fft.forward(field);
    let (n, _) = nonlinear_spectral(&s, &fft);
    fft.inverse(&n)
}

/// Spectral form of [`nonlinear_term`]. Also returns `max |∇φ|` over the
/// samples of the dealiased input.
pub(crate) fn nonlinear_spectral(s: &SpectralField, fft: &Fft3) -> (SpectralField, f64) {
    let g = &s.grid;
    let len = g.len();
    let [nx, ny, nz] = g.n();
    let tilt = s.frame_tilt;
    let inv_v = 1.0 / g.volume();
    let mut square = vec![0.0f64; len];
    for axis in 0..3 {
        let mut buf = vec![Complex64::new(0.0, 0.0); len];
        par::for_each_chunk_mut(&mut buf, nx * ny, |k, plane| {
            for (off, out) in plane.iter_mut().enumerate() {
                let idx = k * nx * ny + off;
                let (i, j, kk) = g.unravel(idx);
                if !(kept_mode(g.mode(Axis::X, i), nx)
                    && kept_mode(g.mode(Axis::Y, j), ny)
                    && kept_mode(g.mode(Axis::Z, kk), nz))
                {
                    continue;
                }
                let kv = g.physical_wavevector(idx, tilt)[axis];
                let sign = if (i + j + kk) % 2 == 0 { 1.0 } else { -1.0 };
                *out = Complex64::new(0.0, kv) * s.coeffs[idx] * (sign * inv_v);
            }
        });
        fft.transform_raw(&mut buf, FftDirection::Inverse);
        for (q, b) in square.iter_mut().zip(&buf) {
            *q += b.re * b.re;
        }
    }
    let grad_max = square.iter().fold(0.0f64, |m, &q| if q.is_nan() { f64::NAN } else { m.max(q) }).sqrt();
    let prod = Field { grid: g.clone(), values: square.iter().map(|q| -0.5 * q).collect(), frame_tilt: tilt };
    let mut out = fft.forward(&prod);
    dealias_in_place(&mut out);
    zero_nyquist(&mut out);
    (out, grad_max)
}
