use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ff::FieldChar;
use crate::seqgen::DigitPoint;

/// `num / p^res`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bound {
    pub num: u128,
    pub res: u32,
}

impl Bound {
    pub const ZERO: Bound = Bound { num: 0, res: 0 };
    pub const ONE: Bound = Bound { num: 1, res: 0 };

    pub fn new(num: u128, res: u32) -> Self {
        Bound { num, res }
    }

    pub fn value(&self, p: FieldChar) -> BigRational {
        BigRational::new(
            BigInt::from(self.num),
            BigInt::from(p.get()).pow(self.res),
        )
    }
}

/// One side of a box with per-end closedness flags.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Side {
    pub lo: Bound,
    pub hi: Bound,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Side {
    /// `[lo, hi)`.
    pub fn half_open(lo: Bound, hi: Bound) -> Self {
        Side {
            lo,
            hi,
            lo_closed: true,
            hi_closed: false,
        }
    }

    /// The elementary side `[a p^{-d}, (a+1) p^{-d})`.
    pub fn elementary(a: u128, d: u32) -> Self {
        Self::half_open(Bound::new(a, d), Bound::new(a + 1, d))
    }

    fn resolution(&self) -> u32 {
        self.lo.res.max(self.hi.res)
    }
}

/// An axis-parallel box in `[0,1]^s` with base-`p` rational ends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Box {
    p: FieldChar,
    sides: Vec<Side>,
}

/// `floor(x p^k)` for `k <= precision`, and whether digits beyond `k` are all zero.
fn split_at(pt: &DigitPoint, j: usize, k: u32) -> (u128, bool) {
    let lead = pt.leading(j, k as usize);
    let tail_zero = pt.coord(j).iter().skip(k as usize).all(|&d| d == 0);
    (lead, tail_zero)
}

impl Box {
    /// Checks `0 <= lo <= hi <= 1` on every side and that `p^res` fits.
    pub fn new(p: FieldChar, sides: Vec<Side>) -> Result<Self> {
        for s in &sides {
            for b in [s.lo, s.hi] {
                let den = (p.get() as u128)
                    .checked_pow(b.res)
                    .ok_or(Error::Overflow("box resolution"))?;
                if b.num > den {
                    return Err(Error::Invalid(format!("box bound {}/{}^{} exceeds 1", b.num, p, b.res)));
                }
            }
            if s.lo.value(p) > s.hi.value(p) {
                return Err(Error::Invalid("box lower bound exceeds upper bound".into()));
            }
        }
        Ok(Box { p, sides })
    }

    /// `[0,1)^s`.
    pub fn unit(p: FieldChar, s: usize) -> Self {
        Box {
            p,
            sides: vec![Side::half_open(Bound::ZERO, Bound::ONE); s],
        }
    }

    /// The elementary interval `prod [a_j p^{-d_j}, (a_j+1) p^{-d_j})`.
    pub fn elementary(p: FieldChar, cells: &[(u128, u32)]) -> Result<Self> {
        Self::new(p, cells.iter().map(|&(a, d)| Side::elementary(a, d)).collect())
    }

    /// The anchored box `prod [0, y_j)`.
    pub fn anchored(p: FieldChar, upper: &[Bound]) -> Result<Self> {
        Self::new(
            p,
            upper.iter().map(|&y| Side::half_open(Bound::ZERO, y)).collect(),
        )
    }

    pub fn field(&self) -> FieldChar {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.sides.len()
    }

    pub fn sides(&self) -> &[Side] {
        &self.sides
    }

    /// The largest resolution exponent over all ends.
    pub fn resolution(&self) -> u32 {
        self.sides.iter().map(Side::resolution).max().unwrap_or(0)
    }

    pub fn volume(&self) -> BigRational {
        self.sides.iter().fold(BigRational::one(), |acc, s| {
            acc * (s.hi.value(self.p) - s.lo.value(self.p))
        })
    }

    fn check(&self, pt: &DigitPoint) -> Result<()> {
        if pt.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: pt.dim(),
            });
        }
        for (j, s) in self.sides.iter().enumerate() {
            let r = s.resolution() as usize;
            if r > pt.precision(j) {
                return Err(Error::ResolutionExceedsPrecision {
                    dim: j,
                    resolution: r,
                    precision: pt.precision(j),
                });
            }
        }
        Ok(())
    }

    /// Exact membership by digit comparison.
    pub fn contains(&self, pt: &DigitPoint) -> Result<bool> {
        self.check(pt)?;
        Ok(self.contains_unchecked(pt))
    }

    fn contains_unchecked(&self, pt: &DigitPoint) -> bool {
        self.sides.iter().enumerate().all(|(j, s)| {
            let (lead, tail_zero) = split_at(pt, j, s.lo.res);
            // x >= lo iff lead >= num; x > lo iff additionally not (lead == num and tail zero)
            let above = if s.lo_closed {
                lead >= s.lo.num
            } else {
                lead > s.lo.num || (lead == s.lo.num && !tail_zero)
            };
            if !above {
                return false;
            }
            let (lead, tail_zero) = split_at(pt, j, s.hi.res);
            if s.hi_closed {
                lead < s.hi.num || (lead == s.hi.num && tail_zero)
            } else {
                lead < s.hi.num
            }
        })
    }
}

impl fmt::Display for Box {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, s) in self.sides.iter().enumerate() {
            if j > 0 {
                f.write_str("x")?;
            }
            write!(
                f,
                "{}{},{}{}",
                if s.lo_closed { '[' } else { '(' },
                s.lo.value(self.p),
                s.hi.value(self.p),
                if s.hi_closed { ']' } else { ')' }
            )?;
        }
        Ok(())
    }
}

/// `#{n : z_n in box}`.
pub fn count_in_box(points: &[DigitPoint], bx: &Box) -> Result<u64> {
    if let Some(bad) = points.iter().find_map(|pt| bx.check(pt).err()) {
        return Err(bad);
    }
    Ok(points
        .par_iter()
        .filter(|pt| bx.contains_unchecked(pt))
        .count() as u64)
}

/// `|A_N(box)/N - vol(box)|`, a lower bound on the extreme discrepancy.
pub fn extreme_disc_lower_bound(points: &[DigitPoint], bx: &Box) -> Result<BigRational> {
    if points.is_empty() {
        return Err(Error::Invalid("empty point set".into()));
    }
    let count = count_in_box(points, bx)?;
    let dev = BigRational::new(count.into(), (points.len() as u64).into()) - bx.volume();
    Ok(if dev < BigRational::zero() { -dev } else { dev })
}
