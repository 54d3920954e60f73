use crate::kernel::Params;

/// A wavevector `(ξ, η, ζ)` and a time `t ≥ 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SymbolPoint {
    pub xi: f64,
    pub eta: f64,
    pub zeta: f64,
    pub t: f64,
}

impl SymbolPoint {
    pub fn new(xi: f64, eta: f64, zeta: f64, t: f64) -> Self {
        Self { xi, eta, zeta, t }
    }
}

/// `∫₀ᵗ v ds` and `∫₀ᵗ v² ds` for `v(s) = ξ² + (η + Aξs)² + ζ²`.
///
/// Expanding `v` about the midpoint `s = t/2` makes the odd powers integrate
/// to zero, leaving a sum of non-negative terms:
///
/// ```text
/// v = a + bτ + cτ²,  a = v(t/2),  b = 2Aξ(η + Aξt/2),  c = A²ξ²
/// ∫v  = a t + c t³/12
/// ∫v² = a² t + (b² + 2ac) t³/12 + c² t⁵/80
/// ```
///
/// This equals the expansion about `s = 0` term by term after collecting
/// powers of `t`, but never subtracts large quantities.
#[inline]
pub fn v_moments(a: f64, xi: f64, eta: f64, zeta: f64, t: f64) -> (f64, f64) {
    let axi = a * xi;
    let mid = eta + 0.5 * axi * t;
    let am = xi * xi + mid * mid + zeta * zeta;
    let bm = 2.0 * axi * mid;
    let c = axi * axi;
    let t2 = t * t;
    let t3 = t2 * t;
    let iv = am * t + c * t3 / 12.0;
    let iv2 = am * am * t + (bm * bm + 2.0 * am * c) * t3 / 12.0 + c * c * t3 * t2 / 80.0;
    (iv, iv2)
}

/// `E(t) = ∫₀ᵗ [v − κ − 4v²] ds`, raw-argument form.
#[inline]
pub fn exponent(a: f64, kappa: f64, xi: f64, eta: f64, zeta: f64, t: f64) -> f64 {
    let (iv, iv2) = v_moments(a, xi, eta, zeta, t);
    iv - kappa * t - 4.0 * iv2
}

/// The exponent of the multiplier at `pt`.
pub fn symbol_exponent(pt: &SymbolPoint, p: &Params) -> f64 {
    exponent(p.a, p.kappa, pt.xi, pt.eta, pt.zeta, pt.t)
}

/// `Ĝ₂ = exp(E)`, in `(0, e^{−(κ−1/16)t}]`.
pub fn multiplier_g2(pt: &SymbolPoint, p: &Params) -> f64 {
    symbol_exponent(pt, p).exp()
}
