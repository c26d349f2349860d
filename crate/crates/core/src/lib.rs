//! Low-discrepancy sequences over prime fields.
//!
//! The crate builds digital Kronecker sequences `({n(X) L(X)})`, Halton
//! sequences in monic polynomial bases, and their hybrid concatenation, all
//! over `F_p`. Points are kept as exact base-`p` digit strings so that every
//! distribution check (ranks, `t`-values, net verification, star discrepancy)
//! is an exact combinatorial computation rather than a floating point one.
//!
//! Module map:
//!
//! * [`ff`]: `F_p` and `F_p[X]` arithmetic, text format for polynomials.
//! * [`laurent`]: formal Laurent series in `X^{-1}` as coefficient oracles,
//!   fractional parts, and certified continued fraction expansion.
//! * [`seqgen`]: point generation and the residue-block enumeration used by
//!   the fair-count argument.
//! * [`quality`]: ranks over `F_p`, `t`-values, net checks, box counts and
//!   exact star discrepancy.
//! * [`theorems`]: runnable experiment drivers for each distribution claim.
//! * [`report`]: the line-oriented report format shared by the drivers.

pub mod error;
pub mod ff;
pub mod laurent;
pub mod quality;
pub mod report;
pub mod seqgen;
pub mod theorems;

pub use error::{Error, Result};
pub use ff::{Degree, FieldChar, Poly};
pub use laurent::{CfExpansion, CfSpec, LaurentSeries};
pub use quality::{FpMatrix, NetReport};
pub use seqgen::{DigitPoint, GeneratingMatrix, HybridSpec};


