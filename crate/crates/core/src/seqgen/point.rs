use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ff::{FieldChar, Residue};

/// An exact point of `[0,1)^s`: coordinate `j` is `sum_k y_k p^{-k}` over its
/// digit string `y_1 y_2 ... y_m`. Digits past the precision are zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DigitPoint {
    p: FieldChar,
    coords: Vec<Vec<Residue>>,
}

impl DigitPoint {
    pub fn new(p: FieldChar, coords: Vec<Vec<Residue>>) -> Self {
        debug_assert!(coords.iter().flatten().all(|&d| d < p.get()));
        DigitPoint { p, coords }
    }

    /// A one-dimensional point.
    pub fn single(p: FieldChar, digits: Vec<Residue>) -> Self {
        Self::new(p, vec![digits])
    }

    pub fn field(&self) -> FieldChar {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coord(&self, j: usize) -> &[Residue] {
        &self.coords[j]
    }

    pub fn coords(&self) -> &[Vec<Residue>] {
        &self.coords
    }

    pub fn precision(&self, j: usize) -> usize {
        self.coords[j].len()
    }

    /// Digit `k` (1-based) of coordinate `j`; zero past the precision.
    #[inline]
    pub fn digit(&self, j: usize, k: usize) -> Residue {
        self.coords[j].get(k - 1).copied().unwrap_or(0)
    }

    /// The integer formed by the first `k` digits of coordinate `j`, i.e.
    /// `floor(x_j p^k)`. Requires `p^k` to fit in `u128`.
    pub fn leading(&self, j: usize, k: usize) -> u128 {
        let p = self.p.get() as u128;
        (1..=k).fold(0u128, |acc, i| acc * p + self.digit(j, i) as u128)
    }

    pub fn to_f64(&self, j: usize) -> f64 {
        let p = self.p.get() as f64;
        let mut v = 0.0;
        for &d in self.coords[j].iter().rev() {
            v = (v + d as f64) / p;
        }
        v
    }

    pub fn value(&self, j: usize) -> BigRational {
        let p = BigUint::from(self.p.get());
        let mut num = BigUint::zero();
        let mut den = BigUint::one();
        for &d in &self.coords[j] {
            num = num * &p + BigUint::from(d);
            den *= &p;
        }
        BigRational::new(num.into(), den.into())
    }

    /// Concatenates coordinates.
    pub fn concat(mut self, other: DigitPoint) -> DigitPoint {
        assert_eq!(self.p, other.p, "field mismatch");
        self.coords.extend(other.coords);
        self
    }

    /// Base-`p` digit string of coordinate `j`. Digits are single characters
    /// `0-9a-z` for `p <= 36` and `:`-separated decimals otherwise.
    pub fn digit_string(&self, j: usize) -> String {
        format_digits(self.p, &self.coords[j])
    }
}

pub(crate) fn format_digits(p: FieldChar, digits: &[Residue]) -> String {
    if p.get() <= 36 {
        digits
            .iter()
            .map(|&d| char::from_digit(d as u32, 36).expect("digit below 36"))
            .collect()
    } else {
        digits.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(":")
    }
}

pub(crate) fn parse_digits(p: FieldChar, s: &str) -> Result<Vec<Residue>> {
    let bad = || Error::Parse(format!("bad base-{p} digit string {s:?}"));
    let digits: Vec<u32> = if p.get() <= 36 {
        s.chars()
            .map(|c| c.to_digit(36).ok_or_else(bad))
            .collect::<Result<_>>()?
    } else if s.is_empty() {
        Vec::new()
    } else {
        s.split(':')
            .map(|t| t.parse::<u32>().map_err(|_| bad()))
            .collect::<Result<_>>()?
    };
    digits
        .into_iter()
        .map(|d| if d < p.get() as u32 { Ok(d as Residue) } else { Err(bad()) })
        .collect()
}

impl fmt::Debug for DigitPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for j in 0..self.dim() {
            if j > 0 {
                f.write_str(", ")?;
            }
            write!(f, "0.{}", self.digit_string(j))?;
        }
        write!(f, ")_{}", self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values() {
        let pt = DigitPoint::new(FieldChar::TWO, vec![vec![1, 1], vec![0, 1, 1]]);
        assert_eq!(pt.to_f64(0), 0.75);
        assert_eq!(pt.to_f64(1), 0.375);
        assert_eq!(pt.value(1), BigRational::new(3.into(), 8.into()));
        assert_eq!(pt.leading(1, 3), 3);
        assert_eq!(pt.leading(0, 4), 12);
        assert_eq!(pt.digit(0, 9), 0);
    }

    #[test]
    fn digit_strings_round_trip() {
        let p = FieldChar::new(7).unwrap();
        let pt = DigitPoint::single(p, vec![6, 0, 3]);
        assert_eq!(pt.digit_string(0), "603");
        assert_eq!(parse_digits(p, "603").unwrap(), vec![6, 0, 3]);
        assert!(parse_digits(p, "7").is_err());

        let big = FieldChar::new(101).unwrap();
        let pt = DigitPoint::single(big, vec![100, 0, 42]);
        assert_eq!(pt.digit_string(0), "100:0:42");
        assert_eq!(parse_digits(big, "100:0:42").unwrap(), vec![100, 0, 42]);
    }
}
