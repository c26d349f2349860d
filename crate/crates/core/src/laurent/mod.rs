//! Formal Laurent series in `X^{-1}` over `F_p` and their continued fractions.
//!
//! A [`LaurentSeries`] is a coefficient oracle `i -> a_i` for
//! `L = sum_{i >= w} a_i X^{-i}`. Exact rationals expand to finite continued
//! fractions by the Euclidean algorithm; every other backing is expanded from
//! a finite coefficient prefix, and only the quotients that prefix provably
//! determines are kept (see [`cf_expand`]).

mod cf;
mod series;
mod spec;

pub use cf::{
    certify_quotients, cf_expand, k_of, series_from_cf, valuation_of_difference, CfExpansion,
};
pub use series::{sample_haar, Backing, LaurentSeries};
pub use spec::{CfSpec, CfTail};

/// Default number of certified quotients used when a sup over all partial
/// quotient degrees is approximated by a finite horizon.
pub const DEFAULT_K_HORIZON: usize = 64;
