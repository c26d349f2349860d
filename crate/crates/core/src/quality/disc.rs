use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ff::FieldChar;
use crate::seqgen::DigitPoint;

/// Default point cap for [`star_disc_exact`].
pub const STAR_DISC_MAX_POINTS: usize = 4096;
/// Largest dimension accepted by [`star_disc_exact`].
pub const STAR_DISC_MAX_DIM: usize = 3;

trait Scalar:
    Clone + Ord + Send + Sync + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + From<i64>
{
}

impl<T> Scalar for T where
    T: Clone + Ord + Send + Sync + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + From<i64>
{
}

/// Coordinates scaled by `p^k`, with `k` the longest digit string after
/// trailing zeros are dropped.
struct Scaled<S> {
    coords: Vec<Vec<S>>,
    one: S,
}

fn digit_span(points: &[DigitPoint]) -> usize {
    points
        .iter()
        .flat_map(|pt| pt.coords().iter())
        .map(|c| c.iter().rposition(|&d| d != 0).map_or(0, |i| i + 1))
        .max()
        .unwrap_or(0)
}

fn scale<S: Scalar>(points: &[DigitPoint], p: FieldChar, k: usize) -> Scaled<S> {
    let base = S::from(p.get() as i64);
    let horner = |digits: &[u16]| {
        (0..k).fold(S::from(0), |acc, i| {
            acc * base.clone() + S::from(digits.get(i).copied().unwrap_or(0) as i64)
        })
    };
    let coords = points
        .iter()
        .map(|pt| pt.coords().iter().map(|c| horner(c)).collect())
        .collect();
    let one = (0..k).fold(S::from(1), |acc, _| acc * base.clone());
    Scaled { coords, one }
}

/// Whether `N p^{k s}` leaves headroom in `i128`.
fn fits_i128(p: FieldChar, k: usize, s: usize, n: usize) -> bool {
    let bits = (p.get() as f64).log2() * (k * s) as f64 + (n as f64 + 1.0).log2();
    bits < 120.0
}

fn common_field(points: &[DigitPoint]) -> Result<(FieldChar, usize)> {
    let first = points
        .first()
        .ok_or_else(|| Error::Invalid("empty point set".into()))?;
    let (p, s) = (first.field(), first.dim());
    for pt in points {
        if pt.field() != p {
            return Err(Error::FieldMismatch {
                left: p.get(),
                right: pt.field().get(),
            });
        }
        if pt.dim() != s {
            return Err(Error::DimensionMismatch { expected: s, got: pt.dim() });
        }
    }
    Ok((p, s))
}

fn to_rational<S>(num: S, den: S) -> BigRational
where
    BigInt: From<S>,
{
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn disc_1d<S: Scalar>(sc: Scaled<S>) -> (S, S) {
    let n = sc.coords.len() as i64;
    let mut xs: Vec<S> = sc.coords.into_iter().map(|mut c| c.swap_remove(0)).collect();
    xs.sort();
    let nn = S::from(n);
    let mut best = S::from(0);
    for (i, x) in xs.into_iter().enumerate() {
        let i = i as i64;
        let above = S::from(i + 1) * sc.one.clone() - nn.clone() * x.clone();
        let below = nn.clone() * x - S::from(i) * sc.one.clone();
        best = best.max(above).max(below);
    }
    (best, nn * sc.one)
}

/// Exact star discrepancy of one-dimensional points by the sorted formula
/// `max_i max(i/N - x_(i), x_(i) - (i-1)/N)`.
pub fn star_disc_1d(points: &[DigitPoint]) -> Result<BigRational> {
    let (p, s) = common_field(points)?;
    if s != 1 {
        return Err(Error::DimensionMismatch { expected: 1, got: s });
    }
    let k = digit_span(points);
    Ok(if fits_i128(p, k, 1, points.len()) {
        let (a, b) = disc_1d::<i128>(scale(points, p, k));
        to_rational(a, b)
    } else {
        let (a, b) = disc_1d::<BigInt>(scale(points, p, k));
        to_rational(a, b)
    })
}

/// Sorted unique values plus `one`.
fn grid<S: Scalar>(values: impl Iterator<Item = S>, one: &S) -> Vec<S> {
    let mut g: Vec<S> = values.collect();
    g.push(one.clone());
    g.sort();
    g.dedup();
    g
}

fn disc_corners<S: Scalar>(sc: Scaled<S>, s: usize) -> (S, S) {
    let n = sc.coords.len();
    let nn = S::from(n as i64);
    let one = sc.one.clone();
    let last = s - 1;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| sc.coords[a][last].cmp(&sc.coords[b][last]));
    let xl: Vec<S> = order.iter().map(|&i| sc.coords[i][last].clone()).collect();
    let grids: Vec<Vec<S>> = (0..s)
        .map(|j| grid(sc.coords.iter().map(|c| c[j].clone()), &one))
        .collect();

    // corner prefixes over the first s-1 dimensions
    let mut prefixes: Vec<Vec<usize>> = vec![Vec::new()];
    for g in &grids[..last] {
        prefixes = prefixes
            .into_iter()
            .flat_map(|pre| {
                (0..g.len()).map(move |i| {
                    let mut v = pre.clone();
                    v.push(i);
                    v
                })
            })
            .collect();
    }

    let denom = (0..s).fold(nn.clone(), |acc, _| acc * one.clone());
    let best = prefixes
        .par_iter()
        .map(|pre| {
            let ys: Vec<&S> = pre.iter().enumerate().map(|(j, &i)| &grids[j][i]).collect();
            let vol_pre = ys.iter().fold(S::from(1), |acc, &y| acc * y.clone());
            let scale_rest = (0..last).fold(S::from(1), |acc, _| acc * one.clone());
            let in_open: Vec<bool> = order
                .iter()
                .map(|&i| ys.iter().enumerate().all(|(j, &y)| sc.coords[i][j] < *y))
                .collect();
            let in_closed: Vec<bool> = order
                .iter()
                .map(|&i| ys.iter().enumerate().all(|(j, &y)| sc.coords[i][j] <= *y))
                .collect();
            let (mut open, mut closed, mut ptr) = (0i64, 0i64, 0usize);
            let mut best = S::from(0);
            for y in &grids[last] {
                while ptr < n && xl[ptr] < *y {
                    open += in_open[ptr] as i64;
                    closed += in_closed[ptr] as i64;
                    ptr += 1;
                }
                let mut closed_here = closed;
                let mut q = ptr;
                while q < n && xl[q] == *y {
                    closed_here += in_closed[q] as i64;
                    q += 1;
                }
                let vol = nn.clone() * vol_pre.clone() * y.clone();
                let full = scale_rest.clone() * one.clone();
                let over = S::from(closed_here) * full.clone() - vol.clone();
                let under = vol - S::from(open) * full;
                best = best.max(over).max(under);
            }
            best
        })
        .reduce(|| S::from(0), |a, b| a.max(b));
    (best, denom)
}

/// Exact star discrepancy over anchored boxes for `s <= 3` and at most
/// `cap` points. Every corner of the grid spanned by the point coordinates
/// and `1` is tested with the closed count (excess) and the open count
/// (deficit).
pub fn star_disc_exact_capped(points: &[DigitPoint], cap: usize) -> Result<BigRational> {
    let (p, s) = common_field(points)?;
    if s == 0 || s > STAR_DISC_MAX_DIM {
        return Err(Error::CapExceeded(format!(
            "exact star discrepancy supports 1 <= s <= {STAR_DISC_MAX_DIM}, got s = {s}"
        )));
    }
    if points.len() > cap {
        return Err(Error::CapExceeded(format!(
            "exact star discrepancy is capped at N = {cap} (got {}); use extreme_disc_lower_bound on chosen boxes instead",
            points.len()
        )));
    }
    let k = digit_span(points);
    Ok(if fits_i128(p, k, s, points.len()) {
        let (a, b) = disc_corners::<i128>(scale(points, p, k), s);
        to_rational(a, b)
    } else {
        let (a, b) = disc_corners::<BigInt>(scale(points, p, k), s);
        to_rational(a, b)
    })
}

/// [`star_disc_exact_capped`] with the default cap.
pub fn star_disc_exact(points: &[DigitPoint]) -> Result<BigRational> {
    star_disc_exact_capped(points, STAR_DISC_MAX_POINTS)
}

/// `2^s` times the star discrepancy, the classical upper bound on the
/// extreme discrepancy.
pub fn extreme_upper_from_star(star: &BigRational, s: usize) -> BigRational {
    star * BigRational::from_integer(BigInt::from(1u64 << s))
}
