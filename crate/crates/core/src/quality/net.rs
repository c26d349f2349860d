use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ff::FieldChar;
use crate::seqgen::{DigitPoint, GeneratingMatrix};

use super::boxes::Box;
use super::matrix::FpMatrix;

/// Largest dimension accepted by [`t_param`].
pub const T_PARAM_MAX_DIM: usize = 4;
/// Largest `m` accepted by [`t_param`].
pub const T_PARAM_MAX_M: usize = 20;

/// All `(d_1, ..., d_s)` with `d_i >= 0` and `sum d_i = total`, in
/// lexicographic order.
pub fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn rec(total: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            cur.push(total);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for d in 0..=total {
            cur.push(d);
            rec(total - d, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts > 0 {
        rec(total, parts, &mut Vec::with_capacity(parts), &mut out);
    }
    out
}

/// Whether the first `d_i` rows of each `C_i` stack to full row rank for every
/// composition of `rows` into `s` parts.
pub fn stacked_full_rank(truncated: &[FpMatrix], rows: usize) -> bool {
    let p = truncated[0].field();
    let cols = truncated[0].cols();
    compositions(rows, truncated.len()).par_iter().all(|d| {
        let parts: Vec<FpMatrix> = truncated
            .iter()
            .zip(d)
            .map(|(c, &di)| c.submatrix(di, cols))
            .collect();
        FpMatrix::vstack(p, cols, &parts).rank() == rows
    })
}

/// Minimal `T` in `0..=m` for already truncated `m x m` matrices.
pub fn t_param_truncated(truncated: &[FpMatrix], m: usize) -> Result<usize> {
    if truncated.is_empty() {
        return Err(Error::Invalid("no generating matrices".into()));
    }
    if let Some(c) = truncated.iter().find(|c| c.rows() < m || c.cols() != m) {
        return Err(Error::DimensionMismatch {
            expected: m,
            got: c.rows().min(c.cols()),
        });
    }
    Ok((0..=m)
        .find(|&t| stacked_full_rank(truncated, m - t))
        .unwrap_or(m))
}

/// The quality parameter `T(m)` of the given generating matrices.
pub fn t_param(matrices: &[GeneratingMatrix], m: usize) -> Result<usize> {
    if matrices.len() > T_PARAM_MAX_DIM || m > T_PARAM_MAX_M {
        return Err(Error::CapExceeded(format!(
            "t_param supports s <= {T_PARAM_MAX_DIM} and m <= {T_PARAM_MAX_M}"
        )));
    }
    let truncated = matrices
        .iter()
        .map(|c| c.truncate(m, m))
        .collect::<Result<Vec<_>>>()?;
    t_param_truncated(&truncated, m)
}

/// One elementary interval whose count is off.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub interval: Box,
    pub expected: u64,
    pub observed: u64,
}

/// Outcome of a net check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetReport {
    pub m: usize,
    pub s: usize,
    pub t: usize,
    pub verdict: bool,
    /// The first violations found (at most [`NetReport::MAX_LISTED`]).
    pub violations: Vec<Violation>,
    pub violation_count: u64,
}

impl NetReport {
    pub const MAX_LISTED: usize = 16;
}

impl fmt::Display for NetReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} t={} m={} s={}",
            if self.verdict { "PASS" } else { "FAIL" },
            self.t,
            self.m,
            self.s
        )?;
        if !self.verdict {
            write!(f, " violations={}", self.violation_count)?;
        }
        for v in &self.violations {
            write!(
                f,
                "\ninterval={} expected={} observed={}",
                v.interval, v.expected, v.observed
            )?;
        }
        Ok(())
    }
}

fn cell_histogram(points: &[DigitPoint], d: &[usize], p: FieldChar) -> Vec<u64> {
    let pp = p.get() as usize;
    let cells: usize = d.iter().map(|&di| pp.pow(di as u32)).product();
    points
        .par_iter()
        .fold(
            || vec![0u64; cells],
            |mut hist, pt| {
                let mut idx = 0usize;
                for (j, &dj) in d.iter().enumerate() {
                    idx = idx * pp.pow(dj as u32) + pt.leading(j, dj) as usize;
                }
                hist[idx] += 1;
                hist
            },
        )
        .reduce(
            || vec![0u64; cells],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        )
}

/// Checks whether `p^m` points form a `(t, m, s)`-net: every elementary
/// interval of volume `p^{t-m}` holds exactly `p^t` points. Coarser elementary
/// intervals are checked as well so that reports name the largest offending
/// cells first.
pub fn is_net(points: &[DigitPoint], t: usize, m: usize) -> Result<NetReport> {
    if t > m {
        return Err(Error::Invalid(format!("t = {t} exceeds m = {m}")));
    }
    let first = points
        .first()
        .ok_or(Error::CardinalityMismatch { expected: 1, got: 0 })?;
    let p = first.field();
    let s = first.dim();
    let want = p
        .checked_pow(m as u32)
        .ok_or(Error::Overflow("net size"))?;
    if points.len() as u64 != want {
        return Err(Error::CardinalityMismatch {
            expected: want,
            got: points.len() as u64,
        });
    }
    if let Some(pt) = points.iter().find(|pt| pt.dim() != s) {
        return Err(Error::DimensionMismatch { expected: s, got: pt.dim() });
    }
    for j in 0..s {
        let prec = points.iter().map(|pt| pt.precision(j)).min().unwrap_or(0);
        if m - t > prec {
            return Err(Error::ResolutionExceedsPrecision {
                dim: j,
                resolution: m - t,
                precision: prec,
            });
        }
    }
    let pp = p.get() as u128;
    let mut violations = Vec::new();
    let mut violation_count = 0u64;
    for level in 0..=m - t {
        let expected = want / (pp.pow(level as u32) as u64);
        for d in compositions(level, s) {
            let hist = cell_histogram(points, &d, p);
            for (idx, &observed) in hist.iter().enumerate() {
                if observed == expected {
                    continue;
                }
                violation_count += 1;
                if violations.len() < NetReport::MAX_LISTED {
                    let mut rest = idx as u128;
                    let mut cells = vec![(0u128, 0u32); s];
                    for j in (0..s).rev() {
                        let w = pp.pow(d[j] as u32);
                        cells[j] = (rest % w, d[j] as u32);
                        rest /= w;
                    }
                    violations.push(Violation {
                        interval: Box::elementary(p, &cells)?,
                        expected,
                        observed,
                    });
                }
            }
        }
    }
    Ok(NetReport {
        m,
        s,
        t,
        verdict: violation_count == 0,
        violations,
        violation_count,
    })
}
