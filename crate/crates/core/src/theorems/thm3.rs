use num_rational::BigRational;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ff::{FieldChar, Poly};
use crate::laurent::LaurentSeries;
use crate::quality::{Bound, Box, Side};
use crate::report::Report;
use crate::seqgen::HybridSpec;

/// The empty-interval witness at level `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Thm3Witness {
    pub level: u32,
    /// `N = 2^{2^{n+2} - 2^n - 3}`.
    pub n_points: u64,
    /// `g = 2^{n+1} - 2^{n-1} - 2`; the box is `[1/2,1) x [0, 2^{-g})`.
    pub g: u32,
    pub count: u64,
    /// `N vol(I_n) = 2^{3 2^{n-1} - 2}`.
    pub n_lambda: u64,
    /// `|count - N vol(I_n)|`, a lower bound for `N D_N`.
    pub lower_bound: BigRational,
    /// `2 (3 2^{n-1} - 2) = (2^{n+2} - 2^n - 3) - 1`, i.e. `(N vol)^2 = N/2`.
    pub identity_ok: bool,
}

impl Thm3Witness {
    pub fn interval(&self) -> Box {
        witness_box(self.g)
    }

    pub fn pass(&self) -> bool {
        self.count == 0 && self.identity_ok
    }

    pub fn to_report(&self) -> Report {
        let mut r = Report::new("thm3")
            .field("level", self.level)
            .field("N", self.n_points)
            .field("interval", self.interval())
            .field("count", self.count);
        r.check("expected_empty", self.count == 0);
        r.push("lower_bound", &self.lower_bound);
        r.check("sqrt_identity", self.identity_ok);
        r
    }
}

fn witness_box(g: u32) -> Box {
    Box::new(
        FieldChar::TWO,
        vec![
            Side::half_open(Bound::new(1, 1), Bound::ONE),
            Side::half_open(Bound::ZERO, Bound::new(1, g)),
        ],
    )
    .expect("witness box bounds are valid")
}

/// Counts the Gap2 / base-`X` hybrid points `n < N` in `I_n`.
pub fn thm3_witness(level: u32) -> Result<Thm3Witness> {
    if !(1..=3).contains(&level) {
        return Err(Error::LevelOutOfRange(level));
    }
    let e = (1u32 << (level + 2)) - (1 << level) - 3;
    let g = (1u32 << (level + 1)) - (1 << (level - 1)) - 2;
    let half_exp = 3 * (1u32 << (level - 1)) - 2;
    let n_points = 1u64 << e;
    // N vol = 2^{e - 1 - g}
    let n_lambda = 1u64 << (e - 1 - g);
    let identity_ok = 2 * half_exp == e - 1
        && e - 1 - g == half_exp
        && (n_lambda as u128) * (n_lambda as u128) * 2 == n_points as u128;

    let f2 = FieldChar::TWO;
    let spec = HybridSpec::new(vec![LaurentSeries::gap2()], vec![Poly::x(f2)], g as usize)?;
    let gen = spec.generator(n_points)?;
    let bx = witness_box(g);
    let count = (0..n_points)
        .into_par_iter()
        .map(|n| gen.point(n).and_then(|pt| bx.contains(&pt)))
        .try_fold(|| 0u64, |acc, hit| hit.map(|h| acc + h as u64))
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    let dev = count as i128 - n_lambda as i128;
    Ok(Thm3Witness {
        level,
        n_points,
        g,
        count,
        n_lambda,
        lower_bound: BigRational::from_integer(dev.abs().into()),
        identity_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quality::{count_in_box, extreme_disc_lower_bound};
    use crate::seqgen::generate;

    #[test]
    fn levels_one_and_two() {
        for (level, n, g, nl) in [(1, 8, 1, 2), (2, 512, 4, 16)] {
            let w = thm3_witness(level).unwrap();
            assert_eq!((w.n_points, w.g, w.n_lambda, w.count), (n, g, nl, 0));
            assert!(w.pass());
            let spec = HybridSpec::new(
                vec![LaurentSeries::gap2()],
                vec![Poly::x(FieldChar::TWO)],
                8,
            )
            .unwrap();
            let pts = generate(&spec, n).unwrap();
            assert_eq!(count_in_box(&pts, &w.interval()).unwrap(), 0);
            let lb = extreme_disc_lower_bound(&pts, &w.interval()).unwrap();
            assert_eq!(lb * BigRational::from_integer(n.into()), w.lower_bound);
        }
        let w = thm3_witness(1).unwrap();
        assert_eq!(w.interval().to_string(), "[1/2,1)x[0,1/2)");
    }

    #[test]
    fn level_range() {
        assert_eq!(thm3_witness(0).unwrap_err(), Error::LevelOutOfRange(0));
        assert_eq!(thm3_witness(4).unwrap_err(), Error::LevelOutOfRange(4));
    }
}
