use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{Error, Result};
use crate::ff::{FieldChar, Poly};
use crate::laurent::{cf_expand, sample_haar};
use crate::report::Report;

/// Seed of sample `i` in the stream keyed by `seed`.
pub fn sample_seed(seed: u64, i: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i);
    rng.next_u64()
}

/// The cylinder set of series whose first partial quotients are `B_1..B_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CylinderSpec {
    quotients: Vec<Poly>,
}

impl CylinderSpec {
    pub fn new(quotients: Vec<Poly>) -> Result<Self> {
        let first = quotients
            .first()
            .ok_or_else(|| Error::Invalid("empty cylinder".into()))?;
        let p = first.field();
        for q in &quotients {
            if q.field() != p {
                return Err(Error::FieldMismatch {
                    left: p.get(),
                    right: q.field().get(),
                });
            }
            if q.deg().unwrap_or(0) == 0 {
                return Err(Error::DegreeViolation(format!("quotient {q} must have degree >= 1")));
            }
        }
        Ok(CylinderSpec { quotients })
    }

    pub fn field(&self) -> FieldChar {
        self.quotients[0].field()
    }

    pub fn quotients(&self) -> &[Poly] {
        &self.quotients
    }

    fn degree_sum(&self) -> u32 {
        self.quotients.iter().map(|q| q.deg().unwrap_or(0) as u32).sum()
    }

    /// `p^{-2 sum deg B_i}`.
    pub fn measure(&self) -> BigRational {
        BigRational::new(
            BigInt::from(1),
            BigInt::from(self.field().get()).pow(2 * self.degree_sum()),
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Lemma3Result {
    pub hits: u64,
    pub decided: u64,
    /// Samples whose prefix certified too few quotients to decide membership.
    pub undecided: u64,
    pub frequency: f64,
    pub exact: f64,
    pub z: f64,
}

impl Lemma3Result {
    pub const Z_LIMIT: f64 = 3.0;

    pub fn pass(&self) -> bool {
        self.z.abs() < Self::Z_LIMIT
    }

    pub fn to_report(&self) -> Report {
        let mut r = Report::new("lemma3")
            .field("hits", self.hits)
            .field("decided", self.decided)
            .field("undecided", self.undecided)
            .field("frequency", format!("{:.6}", self.frequency))
            .field("exact", format!("{:.6}", self.exact))
            .field("z", format!("{:.3}", self.z));
        r.check("z_below_3", self.pass());
        r
    }
}

/// Monte Carlo frequency of the cylinder over Haar samples truncated to
/// `budget` coefficients.
pub fn lemma3_mc(cyl: &CylinderSpec, samples: u64, budget: usize, seed: u64) -> Result<Lemma3Result> {
    let p = cyl.field();
    let k = cyl.quotients.len();
    // (hit, decided) per sample
    let (hits, decided) = (0..samples)
        .into_par_iter()
        .map(|i| -> Result<(u64, u64)> {
            let l = sample_haar(p, budget, sample_seed(seed, i));
            let cf = match cf_expand(&l, budget) {
                Ok(cf) => cf,
                // the all-zero prefix certifies nothing
                Err(Error::ZeroSeries) => return Ok((0, 0)),
                Err(e) => return Err(e),
            };
            for h in 1..=k {
                match cf.quotient(h) {
                    Some(a) if a != &cyl.quotients[h - 1] => return Ok((0, 1)),
                    Some(_) => {}
                    None => {
                        return Ok(match cf.quotient_degree(h) {
                            Some(d) if d != cyl.quotients[h - 1].deg().unwrap_or(0) => (0, 1),
                            _ => (0, 0),
                        })
                    }
                }
            }
            Ok((1, 1))
        })
        .try_reduce(|| (0, 0), |a, b| Ok((a.0 + b.0, a.1 + b.1)))?;
    let exact = 1.0 / (p.get() as f64).powi(2 * cyl.degree_sum() as i32);
    let frequency = if decided > 0 { hits as f64 / decided as f64 } else { 0.0 };
    let sd = (decided as f64 * exact * (1.0 - exact)).sqrt();
    let z = if sd > 0.0 {
        (hits as f64 - decided as f64 * exact) / sd
    } else {
        0.0
    };
    Ok(Lemma3Result {
        hits,
        decided,
        undecided: samples - decided,
        frequency,
        exact,
        z,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Lemma4Result {
    pub statistic: f64,
    pub dof: u64,
    /// 99th percentile of the chi-square distribution with `dof` degrees.
    pub threshold: f64,
    pub counts: Vec<u64>,
}

impl Lemma4Result {
    pub fn pass(&self) -> bool {
        self.statistic < self.threshold
    }

    pub fn to_report(&self) -> Report {
        let mut r = Report::new("lemma4")
            .field("cells", self.counts.len())
            .field("chi2", format!("{:.3}", self.statistic))
            .field("dof", self.dof)
            .field("threshold99", format!("{:.3}", self.threshold));
        r.check("below_threshold", self.pass());
        r
    }
}

/// Chi-square test of the first `r` coefficients of `{B L}` against the
/// uniform distribution on `p^r` cells.
pub fn lemma4_mc(b: &Poly, samples: u64, seed: u64, r: usize) -> Result<Lemma4Result> {
    if b.is_zero() {
        return Err(Error::Invalid("B must be nonzero".into()));
    }
    let p = b.field();
    let cells = p
        .checked_pow(r as u32)
        .filter(|&c| c <= 1 << 20)
        .ok_or_else(|| Error::CapExceeded("lemma4_mc supports at most 2^20 cells".into()))?
        as usize;
    if r == 0 || samples == 0 {
        return Err(Error::Invalid("need r >= 1 and at least one sample".into()));
    }
    let budget = r + b.deg().unwrap_or(0);
    let counts = (0..samples)
        .into_par_iter()
        .map(|i| -> Result<usize> {
            let l = sample_haar(p, budget, sample_seed(seed, i));
            let digits = l.times_poly(b)?.frac_coeffs(r)?;
            Ok(digits
                .iter()
                .fold(0usize, |acc, &d| acc * p.get() as usize + d as usize))
        })
        .try_fold(
            || vec![0u64; cells],
            |mut hist, idx| {
                hist[idx?] += 1;
                Ok(hist)
            },
        )
        .try_reduce(
            || vec![0u64; cells],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                Ok(a)
            },
        )?;
    let expected = samples as f64 / cells as f64;
    let statistic = counts
        .iter()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum();
    let dof = cells as u64 - 1;
    let threshold = ChiSquared::new(dof as f64)
        .map_err(|e| Error::Invalid(format!("chi-square: {e}")))?
        .inverse_cdf(0.99);
    Ok(Lemma4Result {
        statistic,
        dof,
        threshold,
        counts,
    })
}

/// Per-sample `max_H (1/H) sum_{h <= H} deg(A_h) p^{deg A_h}` over the
/// certified quotients of Haar samples. Descriptive evidence only.
pub fn growth_study(p: FieldChar, samples: u64, budget: usize, seed: u64) -> Result<Vec<f64>> {
    (0..samples)
        .into_par_iter()
        .map(|i| {
            let l = sample_haar(p, budget, sample_seed(seed, i));
            let cf = match cf_expand(&l, budget) {
                Ok(cf) => cf,
                Err(Error::ZeroSeries) => return Ok(0.0),
                Err(e) => return Err(e),
            };
            let mut acc = 0.0;
            let mut best: f64 = 0.0;
            for (h, a) in cf.quotients().iter().enumerate() {
                let d = a.deg().unwrap_or(0) as i32;
                acc += d as f64 * (p.get() as f64).powi(d);
                best = best.max(acc / (h + 1) as f64);
            }
            Ok(best)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_are_stable_and_distinct() {
        assert_eq!(sample_seed(7, 3), sample_seed(7, 3));
        assert_ne!(sample_seed(7, 3), sample_seed(7, 4));
        assert_ne!(sample_seed(7, 3), sample_seed(8, 3));
    }

    #[test]
    fn cylinder_measure() {
        let f3 = FieldChar::new(3).unwrap();
        let c = CylinderSpec::new(vec![Poly::x(f3)]).unwrap();
        assert_eq!(c.measure(), BigRational::new(1.into(), 9.into()));
        assert!(CylinderSpec::new(vec![Poly::one(f3)]).is_err());
    }

    #[test]
    fn small_runs() {
        let f2 = FieldChar::TWO;
        let c = CylinderSpec::new(vec![Poly::x(f2)]).unwrap();
        let r = lemma3_mc(&c, 4000, 32, 1).unwrap();
        assert!(r.pass(), "{}", r.to_report());
        let r = lemma4_mc(&Poly::one(f2), 4000, 1, 3).unwrap();
        assert!(r.pass(), "{}", r.to_report());
        assert_eq!(r.counts.iter().sum::<u64>(), 4000);
        let g = growth_study(f2, 10, 32, 1).unwrap();
        assert_eq!(g.len(), 10);
    }
}
