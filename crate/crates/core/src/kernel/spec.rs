use rustfft::num_complex::Complex64;

use crate::error::{Error, Result};

/// Which variables the derivatives act on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// `(x, y, z)`.
    Unprimed,
    /// `(x′, y′, z′)`, the integration variables of the solution formula.
    Primed,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Unprimed => "unprimed",
            Side::Primed => "primed",
        }
    }
}

impl std::str::FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unprimed" => Ok(Side::Unprimed),
            "primed" => Ok(Side::Primed),
            _ => Err(Error::InvalidParams(format!("unknown side '{s}'"))),
        }
    }
}

/// Derivative multi-index and side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct KernelSpec {
    pub deriv: [u32; 3],
    pub side: Side,
}

impl KernelSpec {
    pub const MAX_ORDER: u32 = 6;

    pub fn new(deriv: [u32; 3], side: Side) -> Result<Self> {
        let k: u32 = deriv.iter().sum();
        if k > Self::MAX_ORDER {
            return Err(Error::InvalidParams(format!(
                "derivative order {k} exceeds {}",
                Self::MAX_ORDER
            )));
        }
        Ok(Self { deriv, side })
    }

    /// The undifferentiated kernel.
    pub fn value() -> Self {
        Self { deriv: [0; 3], side: Side::Unprimed }
    }

    pub fn unprimed(deriv: [u32; 3]) -> Result<Self> {
        Self::new(deriv, Side::Unprimed)
    }

    pub fn primed(deriv: [u32; 3]) -> Result<Self> {
        Self::new(deriv, Side::Primed)
    }

    pub fn order(&self) -> u32 {
        self.deriv.iter().sum()
    }

    /// Fourier weight of the derivative at physical wavevector `(ξ, η, ζ)`;
    /// `at` is `A·t`.
    ///
    /// Unprimed: `(iξ)^{k1} (iη)^{k2} (iζ)^{k3}`.
    /// Primed: `(−iξ)^{k1} (−i(η + Atξ))^{k2} (−iζ)^{k3}`.
    #[inline]
    pub fn weight(&self, xi: f64, eta: f64, zeta: f64, at: f64) -> Complex64 {
        let [k1, k2, k3] = self.deriv;
        let k = k1 + k2 + k3;
        if k == 0 {
            return Complex64::new(1.0, 0.0);
        }
        let (unit, eta_eff) = match self.side {
            Side::Unprimed => (Complex64::i(), eta),
            Side::Primed => (-Complex64::i(), eta + at * xi),
        };
        let mag = xi.powi(k1 as i32) * eta_eff.powi(k2 as i32) * zeta.powi(k3 as i32);
        unit.powu(k) * mag
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_limit() {
        assert!(KernelSpec::unprimed([2, 2, 2]).is_ok());
        assert!(KernelSpec::unprimed([3, 2, 2]).is_err());
    }

    #[test]
    fn weights() {
        let s = KernelSpec::unprimed([1, 0, 0]).unwrap();
        assert_eq!(s.weight(2.0, 5.0, 7.0, 0.0), Complex64::new(0.0, 2.0));
        let s = KernelSpec::primed([0, 1, 0]).unwrap();
        let w = s.weight(2.0, 5.0, 7.0, 3.0);
        assert!((w - Complex64::new(0.0, -11.0)).norm() < 1e-15);
        let s = KernelSpec::unprimed([1, 1, 0]).unwrap();
        assert!((s.weight(2.0, 3.0, 0.0, 0.0) - Complex64::new(-6.0, 0.0)).norm() < 1e-15);
    }
}
