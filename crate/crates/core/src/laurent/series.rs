use std::fmt;
use std::sync::{Arc, Mutex};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::cf::cf_value_prefix;
use super::spec::{CfSpec, CfTail};
use crate::error::{Error, Result};
use crate::ff::{FieldChar, Poly, Residue};

/// How the coefficients of a series are produced.
#[derive(Clone)]
pub enum Backing {
    /// Exact value `num / den`, `den != 0`.
    Rational { num: Poly, den: Poly },
    /// Infinite (eventually periodic) continued fraction.
    Cf(CfSpec),
    /// `sum_{n >= 1} X^{-(2^{n+1} - 2^{n-1} - 2)}` over `F_2`, the series with
    /// continued fraction `[0; X, X^2, X, X^2, ...]`.
    Gap2,
    /// i.i.d. uniform coefficients `a_1, a_2, ...` drawn from a seeded stream.
    Random { seed: u64 },
    /// A finite list of known coefficients starting at the series' start index.
    Truncated { coeffs: Vec<Residue> },
    /// `factor * series`.
    Product { factor: Poly, series: LaurentSeries },
    /// `{series}`.
    FracPart(LaurentSeries),
}

struct Inner {
    p: FieldChar,
    /// Lowest index that may carry a nonzero coefficient.
    start: i64,
    backing: Backing,
    memo: Mutex<Memo>,
}

#[derive(Default)]
struct Memo {
    /// Coefficients `a_start, a_{start+1}, ...`, extended monotonically.
    coeffs: Vec<Residue>,
    engine: Option<Engine>,
}

enum Engine {
    /// Long division of `rem / den`; `rem` has length `deg den`.
    Division {
        rem: Vec<Residue>,
        den: Poly,
        inv_lead: Residue,
    },
    Stream(ChaCha8Rng),
}

/// A formal Laurent series over `F_p`, cheap to clone and safe to share.
///
/// Coefficient queries are deterministic; memoized prefixes are extended under
/// a per-series mutex.
#[derive(Clone)]
pub struct LaurentSeries {
    inner: Arc<Inner>,
}

impl LaurentSeries {
    fn build(p: FieldChar, start: i64, backing: Backing) -> Self {
        LaurentSeries {
            inner: Arc::new(Inner {
                p,
                start,
                backing,
                memo: Mutex::new(Memo::default()),
            }),
        }
    }

    /// `num / den`.
    pub fn rational(num: Poly, den: Poly) -> Result<Self> {
        if num.field() != den.field() {
            return Err(Error::FieldMismatch {
                left: num.field().get(),
                right: den.field().get(),
            });
        }
        let p = num.field();
        let dq = den.deg().ok_or(Error::DivisionByZero)? as i64;
        let start = match num.deg() {
            None => 1,
            Some(dp) => (dq - dp as i64).min(1),
        };
        Ok(Self::build(p, start, Backing::Rational { num, den }))
    }

    /// A polynomial viewed as a series (no fractional part).
    pub fn polynomial(a: Poly) -> Self {
        let one = Poly::one(a.field());
        Self::rational(a, one).expect("nonzero denominator")
    }

    /// The value of a continued fraction. Terminating specs become exact
    /// rationals; specs with an unknown tail keep only the coefficients their
    /// quotients determine.
    pub fn from_cf(spec: CfSpec) -> Result<Self> {
        spec.validate()?;
        match spec.tail {
            CfTail::Terminating => {
                let (num, den) = spec.value_convergent(spec.head.len());
                Self::rational(num, den)
            }
            CfTail::Periodic(_) => {
                let start = match spec.a0.deg() {
                    None => 1,
                    Some(d) => -(d as i64),
                };
                Ok(Self::build(spec.a0.field(), start, Backing::Cf(spec)))
            }
            CfTail::Unknown => {
                let p = spec.a0.field();
                let n = spec.head.len();
                if n == 0 {
                    return Err(Error::InsufficientQuotients { needed: 1, available: 0 });
                }
                // P_n/Q_n agrees with L below index d_n + d_{n+1} >= 2 d_n + 1
                let dn: usize = spec.head.iter().map(|a| a.deg().unwrap_or(0)).sum();
                let known = 2 * dn + 1;
                let (num, den) = spec.value_convergent(n);
                let exact = Self::rational(num, den)?;
                let start = exact.start_index();
                let coeffs = exact.coeff_range(start, known as i64 - 1)?;
                Ok(Self::truncated(p, start, coeffs))
            }
        }
    }

    /// The series with continued fraction `[0; X, X^2, X, X^2, ...]` over `F_2`.
    pub fn gap2() -> Self {
        Self::build(FieldChar::TWO, 1, Backing::Gap2)
    }

    /// Unbounded Haar-random series in `H`, reproducible from `seed`.
    pub fn random(p: FieldChar, seed: u64) -> Self {
        Self::build(p, 1, Backing::Random { seed })
    }

    /// Known coefficients `a_start, a_{start+1}, ...`; queries past the end
    /// fail with [`Error::PrecisionExhausted`].
    pub fn truncated(p: FieldChar, start: i64, coeffs: Vec<Residue>) -> Self {
        debug_assert!(coeffs.iter().all(|&c| c < p.get()));
        Self::build(p, start, Backing::Truncated { coeffs })
    }

    #[inline]
    pub fn field(&self) -> FieldChar {
        self.inner.p
    }

    pub fn backing(&self) -> &Backing {
        &self.inner.backing
    }

    /// Lowest index that may carry a nonzero coefficient.
    pub fn start_index(&self) -> i64 {
        self.inner.start
    }

    pub fn is_rational(&self) -> bool {
        matches!(self.inner.backing, Backing::Rational { .. })
    }

    /// Exact `(num, den)` when the backing is rational.
    pub fn as_rational(&self) -> Option<(&Poly, &Poly)> {
        match &self.inner.backing {
            Backing::Rational { num, den } => Some((num, den)),
            _ => None,
        }
    }

    /// Largest index available, or `None` when unbounded.
    pub fn available_upto(&self) -> Option<i64> {
        match &self.inner.backing {
            Backing::Truncated { coeffs } => Some(self.inner.start + coeffs.len() as i64 - 1),
            Backing::Product { factor, series } => series
                .available_upto()
                .map(|a| a - factor.deg().unwrap_or(0) as i64),
            Backing::FracPart(series) => series.available_upto(),
            _ => None,
        }
    }

    /// The coefficient `a_i` of `X^{-i}`.
    pub fn coeff(&self, i: i64) -> Result<Residue> {
        Ok(self.coeff_range(i, i)?[0])
    }

    /// Coefficients `a_lo, ..., a_hi` (empty if `hi < lo`).
    pub fn coeff_range(&self, lo: i64, hi: i64) -> Result<Vec<Residue>> {
        if hi < lo {
            return Ok(Vec::new());
        }
        let start = self.inner.start;
        let len = (hi - lo + 1) as usize;
        let mut out = vec![0; len];
        if hi < start {
            return Ok(out);
        }
        let from = lo.max(start);
        let offset = (from - lo) as usize;
        let p = self.inner.p;
        match &self.inner.backing {
            Backing::Gap2 => {
                for (k, slot) in out[offset..].iter_mut().enumerate() {
                    *slot = gap2_coeff(from + k as i64);
                }
            }
            Backing::Truncated { coeffs } => {
                let last = start + coeffs.len() as i64 - 1;
                if hi > last {
                    return Err(Error::PrecisionExhausted {
                        needed: hi,
                        available: last,
                    });
                }
                let s = (from - start) as usize;
                out[offset..].copy_from_slice(&coeffs[s..s + (hi - from + 1) as usize]);
            }
            Backing::Product { factor, series } => {
                // (sum b_k X^k)(sum a_j X^{-j}) has a_{i+k} b_k at X^{-i}
                let deg = factor.deg().unwrap_or(0) as i64;
                let child = series.coeff_range(from, hi + deg)?;
                for (idx, slot) in out[offset..].iter_mut().enumerate() {
                    let mut acc = 0u64;
                    for (k, &b) in factor.coeffs().iter().enumerate() {
                        if b != 0 {
                            acc += b as u64 * child[idx + k] as u64;
                        }
                    }
                    *slot = p.reduce(acc);
                }
            }
            Backing::FracPart(series) => {
                let from1 = from.max(1);
                if from1 <= hi {
                    let child = series.coeff_range(from1, hi)?;
                    let o = (from1 - lo) as usize;
                    out[o..].copy_from_slice(&child);
                }
            }
            Backing::Rational { .. } | Backing::Cf(_) | Backing::Random { .. } => {
                let mut memo = self.inner.memo.lock().expect("series memo poisoned");
                let need = (hi - start + 1) as usize;
                if memo.coeffs.len() < need {
                    self.extend(&mut memo, need)?;
                }
                let s = (from - start) as usize;
                out[offset..].copy_from_slice(&memo.coeffs[s..s + (hi - from + 1) as usize]);
            }
        }
        Ok(out)
    }

    /// The fractional coefficients `a_1, ..., a_m`.
    pub fn frac_coeffs(&self, m: usize) -> Result<Vec<Residue>> {
        self.coeff_range(1, m as i64)
    }

    fn extend(&self, memo: &mut Memo, need: usize) -> Result<()> {
        let p = self.inner.p;
        let start = self.inner.start;
        match &self.inner.backing {
            Backing::Rational { num, den } => {
                if memo.engine.is_none() {
                    let (q, r) = num.divmod(den)?;
                    // indices start..=0 come from the polynomial part
                    for i in start..=0 {
                        memo.coeffs.push(q.coeff((-i) as usize));
                    }
                    let dq = den.deg().unwrap_or(0);
                    let mut rem = r.coeffs().to_vec();
                    rem.resize(dq, 0);
                    memo.engine = Some(Engine::Division {
                        rem,
                        inv_lead: p.inv(den.lead()),
                        den: den.clone(),
                    });
                }
                let Some(Engine::Division { rem, den, inv_lead }) = memo.engine.as_mut() else {
                    unreachable!("rational series uses the division engine")
                };
                let dq = rem.len();
                while memo.coeffs.len() < need {
                    if dq == 0 {
                        memo.coeffs.push(0);
                        continue;
                    }
                    // rem <- rem * X, peel off the X^{dq} term
                    let top = rem[dq - 1];
                    rem.copy_within(0..dq - 1, 1);
                    rem[0] = 0;
                    let c = p.mul(top, *inv_lead);
                    if c != 0 {
                        for (j, r) in rem.iter_mut().enumerate() {
                            *r = p.sub(*r, p.mul(c, den.coeff(j)));
                        }
                    }
                    memo.coeffs.push(c);
                }
            }
            Backing::Random { seed } => {
                if memo.engine.is_none() {
                    memo.engine = Some(Engine::Stream(ChaCha8Rng::seed_from_u64(*seed)));
                }
                let Some(Engine::Stream(rng)) = memo.engine.as_mut() else {
                    unreachable!("random series uses the stream engine")
                };
                while memo.coeffs.len() < need {
                    memo.coeffs.push(rng.gen_range(0..p.get()));
                }
            }
            Backing::Cf(spec) => {
                let target = need.max(2 * memo.coeffs.len()).max(32);
                let upto = start + target as i64 - 1;
                memo.coeffs = cf_value_prefix(spec, start, upto)?;
            }
            _ => unreachable!("only memoized backings extend"),
        }
        Ok(())
    }

    /// Index of the first nonzero coefficient, searching up to `limit`.
    pub fn valuation_index(&self, limit: i64) -> Result<Option<i64>> {
        let start = self.inner.start;
        let c = self.coeff_range(start, limit)?;
        Ok(c.iter().position(|&a| a != 0).map(|k| start + k as i64))
    }

    /// The polynomial part `sum_{i <= 0} a_i X^{-i}`.
    pub fn polynomial_part(&self) -> Result<Poly> {
        let p = self.inner.p;
        let start = self.inner.start;
        if start > 0 {
            return Ok(Poly::zero(p));
        }
        if let Backing::Rational { num, den } = &self.inner.backing {
            return Ok(num.divmod(den)?.0);
        }
        let c = self.coeff_range(start, 0)?;
        // c[k] is a_{start+k}, the coefficient of X^{-(start+k)}
        let mut coeffs = vec![0; (-start) as usize + 1];
        for (k, &a) in c.iter().enumerate() {
            coeffs[(-(start + k as i64)) as usize] = a;
        }
        Ok(Poly::from_residues(p, coeffs))
    }

    /// `{L}`: the coefficients at indices `>= 1`.
    pub fn frac_part(&self) -> LaurentSeries {
        let p = self.inner.p;
        if self.inner.start >= 1 {
            return self.clone();
        }
        match &self.inner.backing {
            Backing::Rational { num, den } => {
                let r = num.rem(den).expect("nonzero denominator");
                Self::rational(r, den.clone()).expect("nonzero denominator")
            }
            Backing::Cf(spec) => {
                let mut spec = spec.clone();
                spec.a0 = Poly::zero(p);
                Self::build(p, 1, Backing::Cf(spec))
            }
            Backing::Truncated { coeffs } => {
                let skip = (1 - self.inner.start) as usize;
                Self::truncated(p, 1, coeffs.iter().skip(skip).copied().collect())
            }
            Backing::FracPart(_) => self.clone(),
            _ => Self::build(p, 1, Backing::FracPart(self.clone())),
        }
    }

    /// `B * L`. Valuation index shifts down by `deg B`.
    pub fn times_poly(&self, factor: &Poly) -> Result<LaurentSeries> {
        let p = self.inner.p;
        if factor.field() != p {
            return Err(Error::FieldMismatch {
                left: factor.field().get(),
                right: p.get(),
            });
        }
        if factor.is_one() {
            return Ok(self.clone());
        }
        if factor.is_zero() {
            return Ok(Self::polynomial(Poly::zero(p)));
        }
        if let Backing::Rational { num, den } = &self.inner.backing {
            return Self::rational(factor * num, den.clone());
        }
        let start = self.inner.start - factor.deg().unwrap_or(0) as i64;
        Ok(Self::build(
            p,
            start,
            Backing::Product {
                factor: factor.clone(),
                series: self.clone(),
            },
        ))
    }
}

pub(crate) fn gap2_coeff(i: i64) -> Residue {
    // nonzero exactly at i = 3 * 2^{n-1} - 2, n >= 1
    if i < 1 || (i + 2) % 3 != 0 {
        return 0;
    }
    let q = (i + 2) / 3;
    (q & (q - 1) == 0) as Residue
}

/// A Haar-distributed element of `H` truncated to `a_1, ..., a_M`, drawn from
/// a stream keyed by `seed`.
pub fn sample_haar(p: FieldChar, m: usize, seed: u64) -> LaurentSeries {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeffs = (0..m).map(|_| rng.gen_range(0..p.get())).collect();
    LaurentSeries::truncated(p, 1, coeffs)
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.inner.backing {
            Backing::Rational { num, den } => format!("rational({num})/({den})"),
            Backing::Cf(spec) => format!("cf({spec})"),
            Backing::Gap2 => "gap2".into(),
            Backing::Random { seed } => format!("random({seed})"),
            Backing::Truncated { coeffs } => format!("truncated[{}]", coeffs.len()),
            Backing::Product { factor, series } => format!("({factor})*{series:?}"),
            Backing::FracPart(series) => format!("frac({series:?})"),
        };
        write!(f, "LaurentSeries<{:?}>({kind})", self.inner.p)
    }
}
