use std::collections::BTreeMap;
use std::fmt;

/// Outcome of a sampled inequality check.
#[derive(Clone, Debug, PartialEq)]
pub struct InequalityCertificate {
    pub name: String,
    pub sampled_points: u64,
    /// Smallest `bound − quantity` seen.
    pub worst_margin: f64,
    /// Samples where the quantity exceeded the bound beyond rounding.
    pub violations: u64,
    /// Pass requires `worst_margin ≥ −tolerance`.
    pub tolerance: f64,
    pub parameters: BTreeMap<String, String>,
}

impl InequalityCertificate {
    pub const DEFAULT_TOLERANCE: f64 = 1e-10;

    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            sampled_points: 0,
            worst_margin: f64::INFINITY,
            violations: 0,
            tolerance: Self::DEFAULT_TOLERANCE,
            parameters: BTreeMap::new(),
        }
    }

    pub fn with_param(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.set(key, value);
        self
    }

    pub fn set(&mut self, key: &str, value: impl fmt::Display) {
        self.parameters.insert(key.to_string(), value.to_string());
    }

    pub fn param(&self, key: &str) -> Option<&str> {
        self.parameters.get(key).map(String::as_str)
    }

    pub fn passed(&self) -> bool {
        self.violations == 0 && self.worst_margin >= -self.tolerance
    }
}

impl fmt::Display for InequalityCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: {} points, worst margin {:.3e}, {} violations",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.sampled_points,
            self.worst_margin,
            self.violations
        )?;
        for (k, v) in &self.parameters {
            write!(f, "; {k}={v}")?;
        }
        Ok(())
    }
}
