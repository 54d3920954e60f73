use crate::error::{Error, Result};

/// Physical constants of the equation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Params {
    /// Couette amplitude `A`.
    pub a: f64,
    /// Damping `κ`.
    pub kappa: f64,
    /// Decay-rate margin `ε`.
    pub epsilon: f64,
}

impl Params {
    /// Largest growth rate of the undamped symbol, `max_v (v − 4v²)`.
    pub const KAPPA_THRESHOLD: f64 = 1.0 / 16.0;

    /// Validated constructor. `epsilon = None` selects
    /// [`Params::default_epsilon`].
    pub fn new(a: f64, kappa: f64, epsilon: Option<f64>) -> Result<Self> {
        if !(a.is_finite() && a >= 0.0) {
            return Err(Error::InvalidParams(format!("A must be finite and ≥ 0, got {a}")));
        }
        if !(kappa.is_finite() && kappa > 0.0) {
            return Err(Error::InvalidParams(format!("kappa must be positive, got {kappa}")));
        }
        if kappa <= Self::KAPPA_THRESHOLD {
            return Err(Error::InvalidParams(format!(
                "kappa = {kappa} violates the hypothesis κ > 1/16 + ε (needs kappa > 0.0625)"
            )));
        }
        let epsilon = epsilon.unwrap_or_else(|| Self::default_epsilon(kappa));
        if !(epsilon.is_finite() && epsilon > 0.0) {
            return Err(Error::InvalidParams(format!("epsilon must be positive, got {epsilon}")));
        }
        if kappa <= Self::KAPPA_THRESHOLD + epsilon {
            return Err(Error::InvalidParams(format!(
                "kappa = {kappa}, epsilon = {epsilon} violate the hypothesis κ > 1/16 + ε"
            )));
        }
        Ok(Self { a, kappa, epsilon })
    }

    /// No hypothesis check, for exploratory runs below the threshold.
    pub fn unchecked(a: f64, kappa: f64, epsilon: f64) -> Self {
        Self { a, kappa, epsilon }
    }

    /// `(κ − 1/16)/2`, halfway into the admissible range.
    pub fn default_epsilon(kappa: f64) -> f64 {
        0.5 * (kappa - Self::KAPPA_THRESHOLD)
    }

    pub fn with_a(self, a: f64) -> Self {
        Self { a, ..self }
    }

    /// Whether `κ > 1/16 + ε` with positive margins.
    pub fn satisfies_hypothesis(&self) -> bool {
        self.a >= 0.0 && self.epsilon > 0.0 && self.kappa > Self::KAPPA_THRESHOLD + self.epsilon
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_margin() {
        let p = Params::new(1.0, 0.2, None).unwrap();
        assert!((p.epsilon - 0.06875).abs() < 1e-15);
        assert!(p.satisfies_hypothesis());
    }

    #[test]
    fn hypothesis_enforced() {
        assert!(Params::new(0.0, 0.05, None).is_err());
        assert!(Params::new(0.0, 0.0625, None).is_err());
        assert!(Params::new(0.0, 0.1, Some(0.04)).is_err());
        assert!(Params::new(0.0, 0.1, Some(0.03)).is_ok());
        assert!(Params::new(-1.0, 0.2, None).is_err());
        assert!(!Params::unchecked(0.0, 0.05, 0.01).satisfies_hypothesis());
    }
}
