//! Browser bindings for three views of the linearised propagator: a slice
//! of the physical kernel, a map of the Fourier multiplier, and the
//! coercivity ratio behind the quartic lower bound.
//!
//! The plain functions are what the bindings call; they are usable (and
//! tested) off the browser too.

use std::f64::consts::{LN_10, PI};

use wasm_bindgen::prelude::*;

use cflm_core::estimates::{coercivity_minimum, coercivity_ratio};
use cflm_core::kernel::{g2_kernel_with, kernel_grid, symbol_exponent, KernelOptions, KernelSpec, Params, SymbolPoint};

/// The demo shows kernels on small grids, so the truncation sentinel is
/// loose; the ratios are reported alongside.
const DEMO_SENTINEL: f64 = 1e-2;

/// Largest grid the page may ask for.
const MAX_N: usize = 64;

/// A `z = 0` slice of a kernel, row-major with x fastest.
#[derive(Clone, Debug, PartialEq)]
pub struct Slice {
    pub n: usize,
    pub lengths: [f64; 2],
    /// The samples sit at `(x + tilt·y, y)`.
    pub tilt: f64,
    pub shell_ratio: f64,
    pub values: Vec<f64>,
}

fn params(a: f64, kappa: f64) -> Result<Params, String> {
    Params::new(a, kappa, None).map_err(|e| e.to_string())
}

fn check_n(n: usize) -> Result<(), String> {
    if n < 8 || n > MAX_N || n % 2 != 0 {
        return Err(format!("n must be even and in 8..={MAX_N}, got {n}"));
    }
    Ok(())
}

pub fn kernel_slice_values(t: f64, a: f64, kappa: f64, n: usize, deriv_x: u32) -> Result<Slice, String> {
    check_n(n)?;
    let p = params(a, kappa)?;
    let spec = KernelSpec::unprimed([deriv_x, 0, 0]).map_err(|e| e.to_string())?;
    let grid = kernel_grid(t, [n; 3], &p, &spec).map_err(|e| e.to_string())?;
    let s = g2_kernel_with(t, &grid, &p, &spec, &KernelOptions::with_sentinel(DEMO_SENTINEL))
        .map_err(|e| e.to_string())?;
    let k = n / 2;
    let values = s.field.values[k * n * n..(k + 1) * n * n].to_vec();
    let l = grid.lengths();
    Ok(Slice { n, lengths: [l[0], l[1]], tilt: s.field.frame_tilt, shell_ratio: s.shell_ratio, values })
}

/// `log₁₀ Ĝ₂(t; ξ, η, 0)` on an `n × n` grid over `[−extent, extent]²`,
/// ξ fastest.
pub fn multiplier_map_values(t: f64, a: f64, kappa: f64, n: usize, extent: f64) -> Result<Vec<f64>, String> {
    if !(n >= 2 && n <= 512) {
        return Err(format!("n must be in 2..=512, got {n}"));
    }
    if !(extent > 0.0) {
        return Err("extent must be positive".into());
    }
    let p = params(a, kappa)?;
    let h = 2.0 * extent / (n - 1) as f64;
    let mut out = Vec::with_capacity(n * n);
    for j in 0..n {
        for i in 0..n {
            let (xi, eta) = (-extent + h * i as f64, -extent + h * j as f64);
            // from the exponent, so deep underflow still maps to a finite level
            out.push(symbol_exponent(&SymbolPoint { xi, eta, zeta: 0.0, t }, &p) / LN_10);
        }
    }
    Ok(out)
}

/// The coercivity ratio at `samples` angles in `[0, π)`, followed by the
/// minimising angle and value.
pub fn coercivity_curve_values(alpha: f64, samples: usize) -> Result<Vec<f64>, String> {
    if !(alpha > 0.0) || samples < 2 {
        return Err("need alpha > 0 and at least two samples".into());
    }
    let mut out: Vec<f64> = (0..samples)
        .map(|i| coercivity_ratio(PI * i as f64 / samples as f64, alpha))
        .collect();
    let m = coercivity_minimum(alpha, 1024).map_err(|e| e.to_string())?;
    out.push(m.theta);
    out.push(m.value);
    Ok(out)
}

/// `[l_x, l_y, tilt, shell_ratio, values…]`.
#[wasm_bindgen]
pub fn kernel_slice(t: f64, a: f64, kappa: f64, n: usize, deriv_x: u32) -> Result<Vec<f64>, JsError> {
    let s = kernel_slice_values(t, a, kappa, n, deriv_x).map_err(|e| JsError::new(&e))?;
    let mut out = vec![s.lengths[0], s.lengths[1], s.tilt, s.shell_ratio];
    out.extend(s.values);
    Ok(out)
}

#[wasm_bindgen]
pub fn multiplier_map(t: f64, a: f64, kappa: f64, n: usize, extent: f64) -> Result<Vec<f64>, JsError> {
    multiplier_map_values(t, a, kappa, n, extent).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn coercivity_curve(alpha: f64, samples: usize) -> Result<Vec<f64>, JsError> {
    coercivity_curve_values(alpha, samples).map_err(|e| JsError::new(&e))
}
