//! Numerical checks of the kernel inequalities and decay rates.
//!
//! Every check reports an [`InequalityCertificate`] or a [`RateReport`];
//! none of them can certify a specific constant, only that a bounding
//! constant exists over the sampled range.

mod c0;
mod certificate;
mod coercivity;
mod fit;
mod pointwise;
mod rates;
mod symbol_bound;
mod transfer;

pub use c0::{c0_max, verify_quadratic_negativity};
pub use certificate::InequalityCertificate;
pub use coercivity::{
    coercivity_minimum, coercivity_ratio, coercivity_ratio_raw, coercivity_sampled,
    lemma_coercivity_constant, CoercivityMinimum,
};
pub use fit::fit_decay_exponent;
pub use pointwise::{
    pointwise_bound_ratio, pointwise_bound_ratio_with, pointwise_profile, pointwise_sup_ratio,
    PointwiseRatio,
};
pub use rates::{
    enhanced_dissipation_ordering, log_grid, lp_rate_report, predicted_amplitude_exponent,
    predicted_time_exponent, rate_tolerance, Branch, RateOptions, RateReport, Verdict, MAX_STDERR,
};
pub use symbol_bound::{
    bound_chain, check_symbol_bound, check_symbol_bound_with, log_symbol_bound, quartic_form,
    symbol_bound_suite, BoundChain, SymbolSuite, CHAIN_C4_BUDGET,
};
pub use transfer::{transfer_identity_residual, transfer_identity_residual_with};
