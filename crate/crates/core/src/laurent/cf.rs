use super::series::LaurentSeries;
use super::spec::{CfSpec, CfTail};
use crate::error::{Error, Result};
use crate::ff::{Poly, Residue};

/// Largest coefficient budget tried when certifying quotients of an
/// unbounded oracle.
const MAX_BUDGET: usize = 1 << 15;

/// A continued fraction `[A_0; A_1, ..., A_c]` whose quotients are all
/// guaranteed to be those of the source series.
#[derive(Clone, Debug)]
pub struct CfExpansion {
    a0: Poly,
    quotients: Vec<Poly>,
    /// `P_0, ..., P_c` and `Q_0, ..., Q_c`.
    numerators: Vec<Poly>,
    denominators: Vec<Poly>,
    /// `deg A_{c+1}` when the prefix pins it down.
    next_degree: Option<usize>,
    /// The expansion is the whole (finite) continued fraction.
    complete: bool,
    budget: usize,
}

impl CfExpansion {
    fn new(a0: Poly, quotients: Vec<Poly>, next_degree: Option<usize>, complete: bool, budget: usize) -> Self {
        let p = a0.field();
        let mut numerators = vec![a0.clone()];
        let mut denominators = vec![Poly::one(p)];
        let (mut p_prev, mut q_prev) = (Poly::one(p), Poly::zero(p));
        for a in &quotients {
            let pn = &(a * numerators.last().unwrap()) + &p_prev;
            let qn = &(a * denominators.last().unwrap()) + &q_prev;
            p_prev = numerators.last().unwrap().clone();
            q_prev = denominators.last().unwrap().clone();
            numerators.push(pn);
            denominators.push(qn);
        }
        CfExpansion {
            a0,
            quotients,
            numerators,
            denominators,
            next_degree,
            complete,
            budget,
        }
    }

    pub fn a0(&self) -> &Poly {
        &self.a0
    }

    /// Certified quotients `A_1, ..., A_c`.
    pub fn quotients(&self) -> &[Poly] {
        &self.quotients
    }

    /// `A_h` for `1 <= h <= c`.
    pub fn quotient(&self, h: usize) -> Option<&Poly> {
        h.checked_sub(1).and_then(|i| self.quotients.get(i))
    }

    pub fn certified_count(&self) -> usize {
        self.quotients.len()
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Number of fractional coefficients the expansion was extracted from
    /// (0 for exact rationals).
    pub fn budget(&self) -> usize {
        self.budget
    }

    /// `deg A_{c+1}`, known whenever the prefix determines it.
    pub fn next_degree(&self) -> Option<usize> {
        self.next_degree
    }

    /// `d_h = deg Q_h` for `0 <= h <= c`.
    pub fn d(&self, h: usize) -> Option<usize> {
        self.denominators.get(h).map(|q| q.deg().unwrap_or(0))
    }

    /// A lower bound for `d_{c+1}` (exact when [`Self::next_degree`] is known).
    /// Past the end of a complete expansion this is `usize::MAX`.
    pub fn d_next_lower_bound(&self) -> usize {
        let d_c = self.d(self.quotients.len()).unwrap_or(0);
        if self.complete {
            return usize::MAX;
        }
        match self.next_degree {
            Some(nd) => d_c + nd,
            // nu(L - P_c/Q_c) = -(d_c + d_{c+1}) lies below the prefix
            None => (self.budget + 1).saturating_sub(d_c).max(d_c + 1),
        }
    }

    /// `deg A_h` for `1 <= h <= c + 1` where known.
    pub fn quotient_degree(&self, h: usize) -> Option<usize> {
        if h >= 1 && h <= self.quotients.len() {
            return self.quotients[h - 1].deg();
        }
        if h == self.quotients.len() + 1 {
            return self.next_degree;
        }
        None
    }

    /// `(P_h, Q_h)`, coprime, `deg Q_h = d_h`.
    pub fn convergent(&self, h: usize) -> Result<(Poly, Poly)> {
        if h > self.quotients.len() {
            return Err(Error::IndexBeyondCertified {
                index: h,
                certified: self.quotients.len(),
            });
        }
        Ok((self.numerators[h].clone(), self.denominators[h].clone()))
    }

    /// Largest `H` with `d_H <= m`, provided `d_{H+1}` is known to exceed `m`.
    pub fn index_for_degree(&self, m: usize) -> Option<usize> {
        let mut h = 0;
        while h < self.quotients.len() && self.d(h + 1)? <= m {
            h += 1;
        }
        if h < self.quotients.len() {
            return Some(h);
        }
        if self.complete || self.d_next_lower_bound() > m {
            Some(h)
        } else {
            None
        }
    }

    /// `max deg A_h` over the first `horizon` certified quotients.
    pub fn max_degree(&self, horizon: usize) -> usize {
        self.quotients
            .iter()
            .take(horizon)
            .filter_map(Poly::deg)
            .max()
            .unwrap_or(0)
    }
}

/// Partial quotients of `num/den` by the Euclidean algorithm.
fn euclid(num: &Poly, den: &Poly) -> Result<(Poly, Vec<Poly>)> {
    let (a0, mut r) = num.divmod(den)?;
    let mut d = den.clone();
    let mut quotients = Vec::new();
    while !r.is_zero() {
        let (q, r2) = d.divmod(&r)?;
        quotients.push(q);
        d = std::mem::replace(&mut r, r2);
    }
    Ok((a0, quotients))
}

/// Continued fraction expansion of `L`.
///
/// Rational series are expanded exactly. Otherwise the first `max_coeff`
/// fractional coefficients are read as the rational `N / X^{max_coeff}`; its
/// quotients `A_1, ..., A_h` are kept only while `2 d_h <= max_coeff`, which
/// guarantees they coincide with those of `L`. In particular every `h` with
/// `d_h + d_{h+1} <= max_coeff` is certified.
pub fn cf_expand(l: &LaurentSeries, max_coeff: usize) -> Result<CfExpansion> {
    if let Some((num, den)) = l.as_rational() {
        if num.is_zero() {
            return Err(Error::ZeroSeries);
        }
        let (a0, quotients) = euclid(num, den)?;
        return Ok(CfExpansion::new(a0, quotients, None, true, 0));
    }
    if max_coeff == 0 {
        return Err(Error::Invalid("cf_expand needs at least one coefficient".into()));
    }
    let p = l.field();
    let a0 = l.polynomial_part()?;
    let prefix = l.frac_coeffs(max_coeff)?;
    // N = sum_{i=1}^{M} a_i X^{M-i}
    let mut rev: Vec<Residue> = prefix.clone();
    rev.reverse();
    let num = Poly::from_residues(p, rev);
    if num.is_zero() {
        return Ok(CfExpansion::new(a0, Vec::new(), None, false, max_coeff));
    }
    let den = Poly::monomial(p, 1, max_coeff);
    let (_, trial) = euclid(&num, &den)?;

    // A_h is certified once 2 d_h <= M: then nu(T - P_h/Q_h) < -2 d_h for the
    // truncation T, so P_h/Q_h is a convergent of T and of L alike.
    let mut certified = 0;
    let mut d_c = 0;
    for a in &trial {
        let d_next = d_c + a.deg().unwrap_or(0);
        if 2 * d_next > max_coeff {
            break;
        }
        certified += 1;
        d_c = d_next;
    }
    // deg A_{c+1} is exact when nu(L - P_c/Q_c) = -(d_c + d_{c+1}) is visible
    // inside the prefix.
    let next_degree = trial
        .get(certified)
        .and_then(Poly::deg)
        .filter(|&nd| d_c + d_c + nd <= max_coeff);
    let quotients = trial.into_iter().take(certified).collect();
    Ok(CfExpansion::new(a0, quotients, next_degree, false, max_coeff))
}

/// Expands `L` with a growing coefficient budget until at least `count`
/// quotients are certified (or, for rational `L`, the whole finite expansion).
pub fn certify_quotients(l: &LaurentSeries, count: usize) -> Result<CfExpansion> {
    if l.is_rational() {
        return cf_expand(l, 0);
    }
    let limit = l.available_upto().map(|a| a.max(0) as usize);
    let mut budget = (4 * count + 8).max(16);
    loop {
        if let Some(lim) = limit {
            budget = budget.min(lim);
        }
        if budget == 0 {
            return Err(Error::PrecisionExhausted { needed: 1, available: 0 });
        }
        let cf = cf_expand(l, budget)?;
        if cf.certified_count() >= count {
            return Ok(cf);
        }
        if limit == Some(budget) || budget >= MAX_BUDGET {
            return Err(Error::PrecisionExhausted {
                needed: (budget + 1) as i64,
                available: budget as i64,
            });
        }
        budget *= 2;
    }
}

/// `max_{1 <= d <= H} deg A_d`: a horizon-limited lower bound for
/// `K(L) = sup_d deg A_d`. For rational `L` the maximum runs over the whole
/// finite expansion when it is shorter than `H`.
pub fn k_of(l: &LaurentSeries, horizon: usize) -> Result<usize> {
    let cf = certify_quotients(l, horizon)?;
    Ok(cf.max_degree(horizon))
}

/// Fractional coefficients of the value of `spec`, indices `start..=upto`,
/// read off a convergent `P_h / Q_h` with `d_h + d_{h+1} > upto`.
pub(crate) fn cf_value_prefix(spec: &CfSpec, start: i64, upto: i64) -> Result<Vec<Residue>> {
    let target = upto.max(0) as usize;
    let mut h = 0;
    let mut d_h = 0usize;
    loop {
        match spec.quotient(h + 1) {
            None => {
                if spec.tail == CfTail::Unknown {
                    // the guaranteed accuracy 2 d_h + 1 is all we have
                    if 2 * d_h + 1 <= target {
                        return Err(Error::InsufficientQuotients {
                            needed: h + 1,
                            available: h,
                        });
                    }
                }
                break;
            }
            Some(a) => {
                let next = a.deg().unwrap_or(0);
                if d_h + d_h + next > target {
                    break;
                }
                d_h += next;
                h += 1;
            }
        }
    }
    let (num, den) = spec.value_convergent(h);
    let exact = LaurentSeries::rational(num, den)?;
    exact.coeff_range(start, upto)
}

/// First `m` fractional coefficients (plus the polynomial part `A_0`) of the
/// continued fraction `spec`.
pub fn series_from_cf(spec: &CfSpec, m: usize) -> Result<LaurentSeries> {
    spec.validate()?;
    let p = spec.field();
    let start = match spec.a0.deg() {
        None => 1,
        Some(d) => -(d as i64),
    };
    let coeffs = cf_value_prefix(spec, start, m as i64)?;
    Ok(LaurentSeries::truncated(p, start, coeffs))
}

/// `nu(k L - b)`, i.e. minus the index of the first nonzero coefficient of
/// `k L - b`, searched up to index `limit`. `None` if no nonzero coefficient
/// shows up by then.
pub fn valuation_of_difference(l: &LaurentSeries, k: &Poly, b: &Poly, limit: i64) -> Result<Option<i64>> {
    let kl = l.times_poly(k)?;
    let lo = kl.start_index().min(-(b.deg().unwrap_or(0) as i64));
    let c = kl.coeff_range(lo, limit)?;
    let p = l.field();
    for (off, &a) in c.iter().enumerate() {
        let i = lo + off as i64;
        let bi = if i <= 0 { b.coeff((-i) as usize) } else { 0 };
        if p.sub(a, bi) != 0 {
            return Ok(Some(-i));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::FieldChar;

    fn f2() -> FieldChar {
        FieldChar::TWO
    }
    fn poly(c: &[i64]) -> Poly {
        Poly::from_coeffs(f2(), c)
    }

    #[test]
    fn rational_examples() {
        let l = LaurentSeries::rational(Poly::one(f2()), Poly::x(f2())).unwrap();
        let cf = cf_expand(&l, 10).unwrap();
        assert!(cf.a0().is_zero());
        assert_eq!(cf.quotients(), &[Poly::x(f2())]);
        assert!(cf.is_complete());

        // X^2 = (X+1)(X+1) + 1, then exact division
        let l = LaurentSeries::rational(poly(&[1, 1]), poly(&[0, 0, 1])).unwrap();
        let cf = cf_expand(&l, 10).unwrap();
        assert_eq!(cf.quotients(), &[poly(&[1, 1]), poly(&[1, 1])]);
        let (p2, q2) = cf.convergent(2).unwrap();
        assert_eq!((p2, q2), (poly(&[1, 1]), poly(&[0, 0, 1])));
        assert!(matches!(cf.convergent(3), Err(Error::IndexBeyondCertified { .. })));
    }

    #[test]
    fn zero_series_rejected() {
        let z = LaurentSeries::rational(Poly::zero(f2()), Poly::one(f2())).unwrap();
        assert_eq!(cf_expand(&z, 5).unwrap_err(), Error::ZeroSeries);
    }

    #[test]
    fn gap2_prefix_14() {
        let cf = cf_expand(&LaurentSeries::gap2(), 14).unwrap();
        let x = Poly::x(f2());
        let x2 = Poly::monomial(f2(), 1, 2);
        assert!(cf.certified_count() >= 5, "{}", cf.certified_count());
        assert_eq!(&cf.quotients()[..5], &[x.clone(), x2.clone(), x.clone(), x2, x]);
    }

    #[test]
    fn convergent_of_x_x2() {
        // [0; X, X^2] -> X^2 / (X^3 + 1)
        let spec = CfSpec::terminating(Poly::zero(f2()), vec![Poly::x(f2()), Poly::monomial(f2(), 1, 2)]);
        let l = LaurentSeries::from_cf(spec).unwrap();
        let cf = cf_expand(&l, 0).unwrap();
        assert_eq!(cf.convergent(1).unwrap(), (Poly::one(f2()), Poly::x(f2())));
        assert_eq!(
            cf.convergent(2).unwrap(),
            (Poly::monomial(f2(), 1, 2), poly(&[1, 0, 0, 1]))
        );
    }

    #[test]
    fn series_from_cf_examples() {
        let x = Poly::x(f2());
        let s = series_from_cf(&CfSpec::terminating(Poly::zero(f2()), vec![x.clone()]), 5).unwrap();
        assert_eq!(s.frac_coeffs(5).unwrap(), vec![1, 0, 0, 0, 0]);

        let gap = CfSpec::periodic(Poly::zero(f2()), vec![], vec![x.clone(), Poly::monomial(f2(), 1, 2)]);
        let s = series_from_cf(&gap, 12).unwrap();
        let ones: Vec<usize> = (1..=12).filter(|&i| s.coeff(i as i64).unwrap() == 1).collect();
        assert_eq!(ones, vec![1, 4, 10]);

        let x1 = poly(&[1, 1]);
        let s = series_from_cf(&CfSpec::terminating(Poly::zero(f2()), vec![x1.clone(), x1]), 4).unwrap();
        assert_eq!(s.frac_coeffs(4).unwrap(), vec![1, 1, 0, 0]);

        let short = CfSpec {
            a0: Poly::zero(f2()),
            head: vec![x],
            tail: CfTail::Unknown,
        };
        assert!(series_from_cf(&short, 2).is_ok());
        assert!(matches!(
            series_from_cf(&short, 3),
            Err(Error::InsufficientQuotients { .. })
        ));
    }

    #[test]
    fn k_examples() {
        assert_eq!(k_of(&LaurentSeries::gap2(), 10).unwrap(), 2);
        let ones = LaurentSeries::parse("cf:X*", f2()).unwrap();
        assert_eq!(k_of(&ones, 10).unwrap(), 1);
        let r = LaurentSeries::rational(poly(&[1, 1]), poly(&[0, 0, 1])).unwrap();
        assert_eq!(k_of(&r, 2).unwrap(), 1);
    }

    #[test]
    fn truncated_budget_exhausts() {
        let l = LaurentSeries::truncated(f2(), 1, vec![1, 0, 0, 1, 0, 0]);
        assert!(matches!(
            certify_quotients(&l, 10),
            Err(Error::PrecisionExhausted { .. })
        ));
        let cf = certify_quotients(&l, 1).unwrap();
        assert_eq!(cf.quotient(1), Some(&Poly::x(f2())));
    }

    #[test]
    fn index_for_degree_gap2() {
        // d_h = 0, 1, 3, 4, 6, 7, ...
        let cf = cf_expand(&LaurentSeries::gap2(), 64).unwrap();
        assert_eq!(cf.index_for_degree(0), Some(0));
        assert_eq!(cf.index_for_degree(2), Some(1));
        assert_eq!(cf.index_for_degree(3), Some(2));
        assert_eq!(cf.index_for_degree(5), Some(3));
    }

    #[test]
    fn valuation_of_difference_basic() {
        // L = 1/X; k = X, b = 1 gives kL - b = 0
        let l = LaurentSeries::rational(Poly::one(f2()), Poly::x(f2())).unwrap();
        assert_eq!(valuation_of_difference(&l, &Poly::x(f2()), &Poly::one(f2()), 20).unwrap(), None);
        assert_eq!(valuation_of_difference(&l, &Poly::one(f2()), &Poly::zero(f2()), 20).unwrap(), Some(-1));
    }
}
