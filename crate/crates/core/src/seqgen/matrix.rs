use crate::error::{Error, Result};
use crate::ff::{FieldChar, Poly, Residue};
use crate::laurent::LaurentSeries;
use crate::quality::FpMatrix;

use super::halton::halton_coordinate;
use super::point::DigitPoint;

/// A generating matrix with rows `j >= 1` and columns `k >= 0`, truncated on
/// demand.
#[derive(Clone, Debug)]
pub enum GeneratingMatrix {
    /// Entry `(j, k)` is `a_{j+k}`, the fractional coefficients of a series.
    Hankel(LaurentSeries),
    /// Column `k` holds the digits of the radical inverse of `X^k` in the base.
    Halton(Poly),
    /// A fixed finite matrix.
    Explicit(FpMatrix),
}

impl GeneratingMatrix {
    pub fn field(&self) -> FieldChar {
        match self {
            GeneratingMatrix::Hankel(l) => l.field(),
            GeneratingMatrix::Halton(b) => b.field(),
            GeneratingMatrix::Explicit(m) => m.field(),
        }
    }

    /// The upper-left `rows x cols` block.
    pub fn truncate(&self, rows: usize, cols: usize) -> Result<FpMatrix> {
        let p = self.field();
        match self {
            GeneratingMatrix::Hankel(l) => {
                let a = l.frac_coeffs((rows + cols).saturating_sub(1))?;
                Ok(FpMatrix::from_fn(p, rows, cols, |j, k| a[j + k]))
            }
            GeneratingMatrix::Halton(b) => {
                let columns = (0..cols)
                    .map(|k| halton_coordinate(&Poly::monomial(p, 1, k), b, rows))
                    .collect::<Result<Vec<_>>>()?;
                Ok(FpMatrix::from_fn(p, rows, cols, |j, k| columns[k][j]))
            }
            GeneratingMatrix::Explicit(m) => {
                if rows > m.rows() || cols > m.cols() {
                    return Err(Error::DimensionMismatch {
                        expected: rows.max(cols),
                        got: m.rows().min(m.cols()),
                    });
                }
                Ok(m.submatrix(rows, cols))
            }
        }
    }
}

/// The `m x m` Hankel truncation of `L`'s generating matrix.
pub fn kronecker_matrix(l: &LaurentSeries, m: usize) -> Result<FpMatrix> {
    GeneratingMatrix::Hankel(l.clone()).truncate(m, m)
}

/// Point `n` of the digital sequence with the given truncated matrices:
/// coordinate `j` is `C_j n`, with `n` as its base-`p` digit vector.
pub fn digital_point(matrices: &[FpMatrix], n: u64) -> Result<DigitPoint> {
    let p = matrices
        .first()
        .map(FpMatrix::field)
        .ok_or_else(|| Error::Invalid("no generating matrices".into()))?;
    let digits: Vec<Residue> = p.digits(n);
    let coords = matrices
        .iter()
        .map(|c| {
            if digits.len() > c.cols() {
                return Err(Error::DimensionMismatch {
                    expected: digits.len(),
                    got: c.cols(),
                });
            }
            Ok(c.apply(&digits))
        })
        .collect::<Result<_>>()?;
    Ok(DigitPoint::new(p, coords))
}
