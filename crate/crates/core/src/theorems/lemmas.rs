use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ff::{FieldChar, Poly, Residue};
use crate::laurent::{cf_expand, sample_haar, LaurentSeries};
use crate::quality::star_disc_1d;
use crate::report::Report;
use crate::seqgen::{kronecker_digits, DigitPoint, GeneratingMatrix};

use super::mc::sample_seed;

/// For `d_H <= m < d_{H+1}`, the `d_H x m` Hankel slice of `L` has full row
/// rank. `None` when the expansion does not determine `H`.
pub fn lemma5_check(l: &LaurentSeries, budget: usize, m: usize) -> Result<Option<bool>> {
    let cf = cf_expand(l, budget)?;
    let Some(h) = cf.index_for_degree(m) else {
        return Ok(None);
    };
    let d_h = cf.d(h).unwrap_or(0);
    let slice = GeneratingMatrix::Hankel(l.clone()).truncate(d_h, m)?;
    Ok(Some(slice.rank() == d_h))
}

/// `p^m D*` of the shifted block and the bound `p^{deg A_{H+1}}` (`None`
/// when the expansion ends at `A_H`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma6Outcome {
    pub m: usize,
    pub lhs: BigRational,
    pub rhs: Option<BigRational>,
}

impl Lemma6Outcome {
    pub fn pass(&self) -> bool {
        self.rhs.as_ref().is_none_or(|r| &self.lhs <= r)
    }
}

/// The block `{k L + V}` over all `deg k < m`, with `L` given by its
/// fractional coefficients `a_1..a_M` (read as the exact rational
/// `sum a_i X^{-i}`) and `V` by `v_1..v_M`.
pub fn lemma6_check(p: FieldChar, a: &[Residue], v: &[Residue], m: usize) -> Result<Lemma6Outcome> {
    let big_m = a.len();
    if v.len() != big_m || big_m < m {
        return Err(Error::DimensionMismatch {
            expected: big_m,
            got: v.len(),
        });
    }
    let mut rev = a.to_vec();
    rev.reverse();
    let l = LaurentSeries::rational(Poly::from_residues(p, rev), Poly::monomial(p, 1, big_m))?;
    let cf = cf_expand(&l, 0)?;
    let h = cf
        .index_for_degree(m)
        .ok_or_else(|| Error::Invalid("complete expansion determines H".into()))?;
    let rhs = cf.quotient_degree(h + 1).map(|d| {
        BigRational::from_integer(BigInt::from(p.get()).pow(d as u32))
    });
    // a_j = 0 beyond M, so M digits are exact
    let mut frac = a.to_vec();
    frac.resize(big_m + m, 0);
    let n = p.checked_pow(m as u32).ok_or(Error::Overflow("block size"))?;
    let pts: Vec<DigitPoint> = (0..n)
        .into_par_iter()
        .map(|k| {
            let mut y = kronecker_digits(p, &p.digits(k), &frac, big_m);
            for (d, &s) in y.iter_mut().zip(v) {
                *d = p.add(*d, s);
            }
            DigitPoint::single(p, y)
        })
        .collect();
    let lhs = star_disc_1d(&pts)? * BigRational::from_integer(BigInt::from(n));
    Ok(Lemma6Outcome { m, lhs, rhs })
}

/// Runs both checks on `samples` Haar-sampled series: the rank check for
/// `m <= m5_max` and the shifted-block bound for `m <= m6_max`.
pub fn lemma56_sweep(p: FieldChar, samples: u64, seed: u64, m5_max: usize, m6_max: usize) -> Result<Report> {
    let budget5 = 4 * m5_max;
    let outcomes = (0..samples)
        .into_par_iter()
        .map(|i| -> Result<(u64, u64, u64)> {
            let s = sample_seed(seed, i);
            let l = sample_haar(p, budget5, s);
            let (mut ok5, mut undecided5) = (0, 0);
            for m in 1..=m5_max {
                match lemma5_check(&l, budget5, m) {
                    Ok(Some(true)) => ok5 += 1,
                    Ok(Some(false)) => {}
                    Ok(None) | Err(Error::ZeroSeries) => undecided5 += 1,
                    Err(e) => return Err(e),
                }
            }
            let mut ok6 = 0;
            for m in 1..=m6_max {
                let big_m = 2 * m + 24;
                let a = sample_haar(p, big_m, s).frac_coeffs(big_m)?;
                let v = sample_haar(p, big_m, s ^ 0x5eed).frac_coeffs(big_m)?;
                if a.iter().all(|&c| c == 0) || lemma6_check(p, &a, &v, m)?.pass() {
                    ok6 += 1;
                }
            }
            Ok((ok5, undecided5, ok6))
        })
        .collect::<Result<Vec<_>>>()?;
    let ok5: u64 = outcomes.iter().map(|o| o.0).sum();
    let undecided5: u64 = outcomes.iter().map(|o| o.1).sum();
    let ok6: u64 = outcomes.iter().map(|o| o.2).sum();
    let total5 = samples * m5_max as u64;
    let total6 = samples * m6_max as u64;
    let mut r = Report::new("lemma5_6")
        .field("p", p)
        .field("samples", samples)
        .field("rank_ok", ok5)
        .field("rank_undecided", undecided5)
        .field("block_ok", ok6);
    r.check("full_row_rank", ok5 + undecided5 == total5);
    r.check("block_bound", ok6 == total6);
    Ok(r)
}
