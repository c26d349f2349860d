use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ff::{crt, Poly};
use crate::quality::{Box, FpMatrix};
use crate::report::Report;
use crate::seqgen::{GeneratingMatrix, HybridSpec};

/// An elementary interval for a hybrid sequence: `(a_i, d_i)` per Kronecker
/// coordinate (side `[a_i p^{-d_i}, (a_i+1) p^{-d_i})`) and `(a_j, l_j)` per
/// Halton coordinate (resolution `e_j l_j` digits).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FairCountQuery {
    pub kronecker: Vec<(u128, u32)>,
    pub halton: Vec<(u128, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FairCount {
    pub observed: u64,
    pub expected: u64,
    pub u: u32,
    /// Index range `[lo, hi)` of the counted block.
    pub block: (u64, u64),
}

impl FairCountQuery {
    fn check(&self, spec: &HybridSpec) -> Result<()> {
        let (s, t) = (spec.kronecker().len(), spec.halton().len());
        if self.kronecker.len() != s || self.halton.len() != t {
            return Err(Error::DimensionMismatch {
                expected: s + t,
                got: self.kronecker.len() + self.halton.len(),
            });
        }
        Ok(())
    }

    fn to_box(&self, spec: &HybridSpec) -> Result<Box> {
        let mut cells = self.kronecker.clone();
        for (b, &(a, l)) in spec.halton().iter().zip(&self.halton) {
            cells.push((a, l * b.deg().unwrap_or(1) as u32));
        }
        Box::elementary(spec.field(), &cells)
    }

    /// The congruence `n(X) = R (mod B)` equivalent to the Halton sides,
    /// `B = prod b_j^{l_j}`.
    pub fn halton_congruence(&self, spec: &HybridSpec) -> Result<(Poly, Poly)> {
        let p = spec.field();
        let mut parts = Vec::new();
        for (b, &(a, l)) in spec.halton().iter().zip(&self.halton) {
            let e = b.deg().unwrap_or(1);
            let width = e * l as usize;
            let pp = p.get() as u128;
            // digits of a, most significant first
            let digs: Vec<u16> = (0..width)
                .map(|k| ((a / pp.pow((width - 1 - k) as u32)) % pp) as u16)
                .collect();
            let mut r = Poly::zero(p);
            let mut bpow = Poly::one(p);
            for i in 0..l as usize {
                let block: Vec<u16> = (0..e).map(|k| digs[e * i + e - 1 - k]).collect();
                r = &r + &(&Poly::from_residues(p, block) * &bpow);
                bpow = &bpow * b;
            }
            parts.push((r, b.pow(l)));
        }
        if parts.is_empty() {
            return Ok((Poly::one(p), Poly::zero(p)));
        }
        let modulus = parts.iter().fold(Poly::one(p), |acc, (_, m)| &acc * m);
        Ok((modulus, crt(&parts)?))
    }
}

/// Rank of the stacked first `d_i` rows and first `u` columns of the Hankel
/// matrices of `B L_i`.
pub fn stacked_rank(spec: &HybridSpec, d: &[u32], b: &Poly, u: u32) -> Result<usize> {
    let p = spec.field();
    let parts = spec
        .kronecker()
        .iter()
        .zip(d)
        .map(|(l, &di)| GeneratingMatrix::Hankel(l.times_poly(b)?).truncate(di as usize, u as usize))
        .collect::<Result<Vec<_>>>()?;
    Ok(FpMatrix::vstack(p, u as usize, &parts).rank())
}

/// Smallest `u >= sum d_i` passing the stacked rank condition, searched up
/// to `sum d_i + 64`.
pub fn minimal_u(spec: &HybridSpec, query: &FairCountQuery) -> Result<u32> {
    query.check(spec)?;
    let (b, _) = query.halton_congruence(spec)?;
    let d: Vec<u32> = query.kronecker.iter().map(|&(_, d)| d).collect();
    let needed: u32 = d.iter().sum();
    let mut last = 0;
    for u in needed..=needed + 64 {
        last = stacked_rank(spec, &d, &b, u)?;
        if last == needed as usize {
            return Ok(u);
        }
    }
    Err(Error::RankConditionUnverified {
        u: needed + 64,
        rank: last,
        needed: needed as usize,
    })
}

/// Counts hybrid points with `n` in `[K p^{u+deg B}, (K+1) p^{u+deg B})` inside
/// the interval; the expected count is `p^{u - sum d_i}`.
pub fn thm1_fair_count(spec: &HybridSpec, query: &FairCountQuery, u: u32, k: u64) -> Result<FairCount> {
    query.check(spec)?;
    let p = spec.field();
    let (b, _) = query.halton_congruence(spec)?;
    let d: Vec<u32> = query.kronecker.iter().map(|&(_, d)| d).collect();
    let needed: u32 = d.iter().sum();
    let rank = stacked_rank(spec, &d, &b, u)?;
    if u < needed || rank != needed as usize {
        return Err(Error::RankConditionUnverified {
            u,
            rank,
            needed: needed as usize,
        });
    }
    let width_exp = u + b.deg().unwrap_or(0) as u32;
    if width_exp > 40 {
        return Err(Error::CapExceeded(format!("block of p^{width_exp} indices")));
    }
    let width = p.checked_pow(width_exp).ok_or(Error::Overflow("block width"))?;
    let lo = k.checked_mul(width).ok_or(Error::Overflow("block start"))?;
    let hi = lo.checked_add(width).ok_or(Error::Overflow("block end"))?;
    let bx = query.to_box(spec)?;
    let gen = spec
        .with_precision((bx.resolution() as usize).max(1))?
        .generator(hi)?;
    let observed = (lo..hi)
        .into_par_iter()
        .map(|n| gen.point(n).and_then(|pt| bx.contains(&pt)))
        .try_fold(|| 0u64, |acc, hit| hit.map(|h| acc + h as u64))
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    Ok(FairCount {
        observed,
        expected: p.as_u64().pow(u - needed),
        u,
        block: (lo, hi),
    })
}

fn cartesian(ranges: &[u32]) -> Vec<Vec<u32>> {
    ranges.iter().fold(vec![Vec::new()], |acc, &r| {
        acc.into_iter()
            .flat_map(|v| {
                (0..=r).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect()
    })
}

/// Fair counts for every elementary interval with `d_i <= d_max`,
/// `l_j <= l_max`, each at its minimal verified `u`, over blocks `K < k_count`.
pub fn thm1_sweep(spec: &HybridSpec, d_max: u32, l_max: u32, k_count: u64) -> Result<Report> {
    let p = spec.field().get() as u128;
    let (s, t) = (spec.kronecker().len(), spec.halton().len());
    let mut report = Report::new("thm1")
        .field("d_max", d_max)
        .field("l_max", l_max)
        .field("blocks", k_count);
    let mut intervals = 0u64;
    let mut failures = 0u64;
    let mut max_u = 0;
    let res_ranges: Vec<u32> = std::iter::repeat(d_max)
        .take(s)
        .chain(std::iter::repeat(l_max).take(t))
        .collect();
    for res in cartesian(&res_ranges) {
        let widths: Vec<u32> = res
            .iter()
            .enumerate()
            .map(|(i, &r)| {
                let pp = if i < s {
                    p.pow(r)
                } else {
                    p.pow(r * spec.halton()[i - s].deg().unwrap_or(1) as u32)
                };
                (pp - 1) as u32
            })
            .collect();
        let mut u_cache = None;
        for a in cartesian(&widths) {
            let query = FairCountQuery {
                kronecker: (0..s).map(|i| (a[i] as u128, res[i])).collect(),
                halton: (0..t).map(|j| (a[s + j] as u128, res[s + j])).collect(),
            };
            let u = match u_cache {
                Some(u) => u,
                None => *u_cache.insert(minimal_u(spec, &query)?),
            };
            max_u = max_u.max(u);
            for k in 0..k_count {
                intervals += 1;
                let fc = thm1_fair_count(spec, &query, u, k)?;
                if fc.observed != fc.expected {
                    failures += 1;
                    report.line(format!(
                        "res={res:?} a={a:?} u={u} K={k} expected={} observed={}",
                        fc.expected, fc.observed
                    ));
                }
            }
        }
    }
    report.push("checked", intervals);
    report.push("max_u", max_u);
    report.check("fair", failures == 0);
    Ok(report)
}
