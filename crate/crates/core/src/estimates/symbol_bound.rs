use rand::Rng;

use crate::error::Result;
use crate::estimates::{c0_max, lemma_coercivity_constant, InequalityCertificate};
use crate::kernel::{symbol_exponent, Params, SymbolPoint};

/// Constants of the chain from the multiplier to the quartic bound:
/// `C̃₀ = C₀ · ½ · min(C₄, 1/5)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundChain {
    pub c0: f64,
    pub c4: f64,
    pub tilde_c0: f64,
}

/// Angle samples used for `C₄` in the chain.
pub const CHAIN_C4_BUDGET: usize = 4096;

pub fn bound_chain(p: &Params) -> Result<BoundChain> {
    let c0 = c0_max(p.kappa, p.epsilon)?;
    let c4 = lemma_coercivity_constant(4.0, CHAIN_C4_BUDGET)?;
    Ok(BoundChain { c0, c4, tilde_c0: c0 * 0.5 * c4.min(0.2) })
}

/// `Q = t[(1 + (At)⁴)ξ⁴ + η⁴ + ζ⁴]`.
pub fn quartic_form(pt: &SymbolPoint, a: f64) -> f64 {
    let at = a * pt.t;
    pt.t * ((1.0 + at.powi(4)) * pt.xi.powi(4) + pt.eta.powi(4) + pt.zeta.powi(4))
}

/// `log` of the bound `e^{−εt} exp(−C̃₀ Q)`.
pub fn log_symbol_bound(pt: &SymbolPoint, p: &Params, tilde_c0: f64) -> f64 {
    -p.epsilon * pt.t - tilde_c0 * quartic_form(pt, p.a)
}

struct Tally {
    points: u64,
    worst_margin: f64,
    violations: u64,
    /// Smallest factor on `C̃₀` that would make some sample violate.
    critical_factor: f64,
}

impl Tally {
    fn new() -> Self {
        Self { points: 0, worst_margin: f64::INFINITY, violations: 0, critical_factor: f64::INFINITY }
    }

    fn add(&mut self, pt: &SymbolPoint, p: &Params, tilde_c0: f64) {
        let e = symbol_exponent(pt, p);
        let lb = log_symbol_bound(pt, p, tilde_c0);
        self.points += 1;
        self.worst_margin = self.worst_margin.min(lb.exp() - e.exp());
        if e > lb + 1e-12 * lb.abs().max(1.0) {
            self.violations += 1;
        }
        let q = quartic_form(pt, p.a);
        if q > 0.0 && tilde_c0 > 0.0 {
            self.critical_factor = self.critical_factor.min((-e - p.epsilon * pt.t) / (tilde_c0 * q));
        }
    }

    fn merge(mut self, o: Tally) -> Tally {
        self.points += o.points;
        self.worst_margin = self.worst_margin.min(o.worst_margin);
        self.violations += o.violations;
        self.critical_factor = self.critical_factor.min(o.critical_factor);
        self
    }
}

/// The bound `Ĝ₂ ≤ e^{−εt} exp(−C̃₀ Q)` at one point, `C̃₀` from
/// [`bound_chain`].
pub fn check_symbol_bound(pt: &SymbolPoint, p: &Params) -> Result<InequalityCertificate> {
    let chain = bound_chain(p)?;
    Ok(check_symbol_bound_with(pt, p, chain.tilde_c0))
}

pub fn check_symbol_bound_with(pt: &SymbolPoint, p: &Params, tilde_c0: f64) -> InequalityCertificate {
    let mut t = Tally::new();
    t.add(pt, p, tilde_c0);
    finish("symbol bound", t, tilde_c0)
        .with_param("xi", pt.xi)
        .with_param("eta", pt.eta)
        .with_param("zeta", pt.zeta)
        .with_param("t", pt.t)
        .with_param("a", p.a)
}

fn finish(name: &str, t: Tally, tilde_c0: f64) -> InequalityCertificate {
    let mut c = InequalityCertificate::new(name).with_param("tilde_c0", tilde_c0);
    c.sampled_points = t.points;
    c.worst_margin = t.worst_margin;
    c.violations = t.violations;
    c.set("critical_factor", t.critical_factor);
    c
}

/// Randomised suite for the symbol bound.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolSuite {
    pub samples: usize,
    pub seed: u64,
    pub t_max: f64,
    pub k_max: f64,
    pub a_values: Vec<f64>,
    /// Factor applied to `C̃₀`; values above 1 tighten the bound.
    pub scale: f64,
}

impl Default for SymbolSuite {
    fn default() -> Self {
        Self {
            samples: 100_000,
            seed: 0x5EED,
            t_max: 10.0,
            k_max: 4.0,
            a_values: vec![0.0, 1.0, 8.0],
            scale: 1.0,
        }
    }
}

/// Checks the bound on `suite.samples` points. Half the times and radii are
/// uniform, half log-uniform, to reach both the bulk and the small-scale
/// corners; directions are uniform on the sphere; `A` cycles through
/// `suite.a_values`.
///
/// The `critical_factor` parameter reports the smallest factor on `C̃₀` at
/// which some sample would violate.
pub fn symbol_bound_suite(kappa: f64, epsilon: f64, suite: &SymbolSuite) -> Result<InequalityCertificate> {
    const BLOCK: usize = 4096;
    let base = Params::new(0.0, kappa, Some(epsilon))?;
    let chain = bound_chain(&base)?;
    let tilde_c0 = chain.tilde_c0 * suite.scale;
    let n = suite.samples;
    let tallies = crate::par::map_range(n.div_ceil(BLOCK), |b| {
        let mut rng = crate::rng::block_rng(suite.seed, b as u64);
        let mut tally = Tally::new();
        for i in b * BLOCK..((b + 1) * BLOCK).min(n) {
            let p = base.with_a(suite.a_values[i % suite.a_values.len()]);
            let t = if rng.gen::<bool>() {
                suite.t_max * (1.0 - rng.gen::<f64>())
            } else {
                suite.t_max * 10f64.powf(-rng.gen_range(0.0..5.0))
            };
            let r = if rng.gen::<bool>() {
                suite.k_max * rng.gen::<f64>().cbrt()
            } else {
                suite.k_max * 10f64.powf(-rng.gen_range(0.0..4.0))
            };
            let z: f64 = rng.gen_range(-1.0..1.0);
            let phi = rng.gen_range(0.0..std::f64::consts::TAU);
            let rho = (1.0 - z * z).sqrt();
            let pt = SymbolPoint::new(r * rho * phi.cos(), r * rho * phi.sin(), r * z, t);
            tally.add(&pt, &p, tilde_c0);
        }
        tally
    });
    let total = tallies.into_iter().fold(Tally::new(), Tally::merge);
    Ok(finish("symbol bound suite", total, tilde_c0)
        .with_param("c0", chain.c0)
        .with_param("c4", chain.c4)
        .with_param("scale", suite.scale)
        .with_param("kappa", kappa)
        .with_param("epsilon", epsilon)
        .with_param("seed", suite.seed))
}
