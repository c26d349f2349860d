//! Exact arithmetic in `F_p` and `F_p[X]`.
//!
//! Residues are stored canonically in `0..p` and polynomials little-endian
//! (index `i` holds the coefficient of `X^i`). Integers map to polynomials
//! through their base-`p` digits, which is how sequence indices `n` become
//! `n(X)`.

mod field;
mod parse;
mod poly;

pub use field::{FieldChar, Residue};
pub use poly::{crt, Degree, Poly};
