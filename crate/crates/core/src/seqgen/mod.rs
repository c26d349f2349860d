//! Point generation: Halton sequences in polynomial bases, digital Kronecker
//! sequences, their hybrid concatenation, and residue-block enumeration.
//!
//! Points are [`DigitPoint`]s. Coordinate digits beyond the requested
//! precision are dropped, so box membership at any resolution up to the
//! precision is exact.

mod blocks;
mod csv;
mod halton;
mod hybrid;
mod kronecker;
mod matrix;
mod point;

pub use blocks::{residue_block_indices, ResidueBlock};
pub use csv::{read_points, write_points, PointDump, PointWriter};
pub use halton::{halton_coordinate, halton_point, round_precision, validate_bases};
pub use hybrid::{default_precision, generate, hybrid_point, HybridGenerator, HybridSpec};
pub use kronecker::kronecker_point;
pub use matrix::{digital_point, kronecker_matrix, GeneratingMatrix};
pub use point::DigitPoint;

pub(crate) use kronecker::kronecker_digits;
