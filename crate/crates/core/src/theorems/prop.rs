use crate::error::{Error, Result, ResultExt};
use crate::ff::Poly;
use crate::laurent::{certify_quotients, k_of, LaurentSeries, DEFAULT_K_HORIZON};
use crate::quality::{is_net, t_param, T_PARAM_MAX_M};
use crate::report::Report;
use crate::seqgen::{generate, GeneratingMatrix, HybridSpec};

/// Largest `m` for which point counting backs up the rank test.
pub const PROP1_NET_MAX_M: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prop1Row {
    pub m: usize,
    /// `T(m)` of the Hankel matrix of `{B L}`.
    pub t_rank: usize,
    /// Net verdict at `t = min(t_claim, m)` on the first `p^m` points.
    pub net: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prop1Report {
    pub k: usize,
    pub e: usize,
    pub t_claim: usize,
    pub horizon: usize,
    pub rows: Vec<Prop1Row>,
    pub pass: bool,
}

impl Prop1Report {
    pub fn to_report(&self) -> Report {
        let mut r = Report::new("prop1")
            .field("K", self.k)
            .field("e", self.e)
            .field("t_claim", self.t_claim)
            .field("horizon", self.horizon)
            .field("mmax", self.rows.len());
        r.pass = self.pass;
        for row in &self.rows {
            r.line(format!(
                "m={} T={} net={}",
                row.m,
                row.t_rank,
                row.net.map_or("skipped".to_string(), |v| v.to_string())
            ));
        }
        r
    }
}

/// `{B L}` is claimed to be a `(t, 1)`-sequence with `t = K(L) + deg B - 1`.
/// Checks `T(m) <= t` by rank for `m <= m_max` and the net property by
/// counting for `m <= min(m_max, 12)`. `K(L)` is taken over the first 64
/// certified quotients.
pub fn prop1_check(l: &LaurentSeries, b: &Poly, m_max: usize) -> Result<Prop1Report> {
    if l.is_rational() {
        return Err(Error::RationalSeries("prop1_check"));
    }
    if b.is_zero() {
        return Err(Error::Invalid("B must be nonzero".into()));
    }
    if m_max > T_PARAM_MAX_M {
        return Err(Error::CapExceeded(format!("m_max <= {T_PARAM_MAX_M}")));
    }
    let horizon = DEFAULT_K_HORIZON;
    let k = k_of(l, horizon)?;
    let e = b.deg().unwrap_or(0);
    let t_claim = (k + e).saturating_sub(1);
    let bl = l.times_poly(b)?;
    let c = GeneratingMatrix::Hankel(bl.clone());
    let p = l.field();
    let mut rows = Vec::new();
    for m in 1..=m_max {
        let t_rank = t_param(std::slice::from_ref(&c), m)?;
        let net = if m <= PROP1_NET_MAX_M {
            let n = p.checked_pow(m as u32).ok_or(Error::Overflow("net size"))?;
            let pts = generate(&HybridSpec::new(vec![bl.clone()], vec![], m)?, n)?;
            Some(is_net(&pts, t_claim.min(m), m)?.verdict)
        } else {
            None
        };
        rows.push(Prop1Row { m, t_rank, net });
    }
    let pass = rows
        .iter()
        .all(|r| r.t_rank <= t_claim && r.net != Some(false));
    Ok(Prop1Report {
        k,
        e,
        t_claim,
        horizon,
        rows,
        pass,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prop2Term {
    pub l: Vec<u32>,
    pub h: usize,
    pub deg: usize,
    /// `deg A_h * p^{deg A_h}`.
    pub contribution: u128,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prop2Bound {
    /// `max(floor(log_p N), 1)^t`.
    pub log_term: u128,
    pub terms: Vec<Prop2Term>,
    pub value: u128,
}

fn tuples(len: usize, max: u32) -> Vec<Vec<u32>> {
    (0..len).fold(vec![Vec::new()], |acc, _| {
        acc.into_iter()
            .flat_map(|v| {
                (1..=max).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect()
    })
}

/// `max(F, 1)^t + sum_{h=1}^{F} sum_{1 <= l_j <= F} deg(A_h) p^{deg A_h}` with
/// `F = floor(log_p N)` and `A_h` the partial quotients of
/// `b_1^{l_1} ... b_t^{l_t} L`.
pub fn prop2_bound(l: &LaurentSeries, bases: &[Poly], n: u64) -> Result<Prop2Bound> {
    if l.is_rational() {
        return Err(Error::RationalSeries("prop2_bound"));
    }
    let p = l.field();
    let f = if n == 0 { 0 } else { p.floor_log(n) };
    let t = bases.len() as u32;
    let log_term = (f.max(1) as u128).pow(t);
    let mut terms = Vec::new();
    if f > 0 {
        for lv in tuples(bases.len(), f) {
            let b = bases
                .iter()
                .zip(&lv)
                .fold(Poly::one(p), |acc, (b, &li)| &acc * &b.pow(li));
            let cf = certify_quotients(&l.times_poly(&b)?, f as usize)
                .context(|| format!("prop2_bound at l={lv:?}, h<={f}"))?;
            for h in 1..=f as usize {
                let deg = cf.quotient_degree(h).ok_or_else(|| Error::Context {
                    context: format!("prop2_bound at l={lv:?}, h={h}"),
                    source: std::boxed::Box::new(Error::IndexBeyondCertified {
                        index: h,
                        certified: cf.certified_count(),
                    }),
                })?;
                let contribution = (p.get() as u128)
                    .checked_pow(deg as u32)
                    .and_then(|v| v.checked_mul(deg as u128))
                    .ok_or(Error::Overflow("prop2 term"))?;
                terms.push(Prop2Term {
                    l: lv.clone(),
                    h,
                    deg,
                    contribution,
                });
            }
        }
    }
    let value = terms
        .iter()
        .try_fold(log_term, |acc, t| acc.checked_add(t.contribution))
        .ok_or(Error::Overflow("prop2 sum"))?;
    Ok(Prop2Bound {
        log_term,
        terms,
        value,
    })
}
