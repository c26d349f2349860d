use crate::error::{Error, Result};
use crate::ff::{FieldChar, Poly};
use crate::laurent::{cf_expand, LaurentSeries};
use crate::quality::is_net;
use crate::report::Report;
use crate::seqgen::{generate, validate_bases, HybridSpec};

use super::prop::prop1_check;

/// Coefficients of `X^{-i}` in `L^2 + X^2 L + X` for `i = -2..=upto`, for
/// `L` over `F_2` with zero polynomial part.
pub fn quadratic_identity_residuals(l: &LaurentSeries, upto: usize) -> Result<Vec<u16>> {
    if l.field() != FieldChar::TWO {
        return Err(Error::FieldMismatch { left: 2, right: l.field().get() });
    }
    let a = l.frac_coeffs(upto + 2)?;
    let coeff = |i: i64| if i >= 1 { a[i as usize - 1] } else { 0 };
    Ok((-2..=upto as i64)
        .map(|i| {
            let square: u16 = (1..i).map(|j| coeff(j) * coeff(i - j)).sum();
            let x_term = (i == -1) as u16;
            (square + coeff(i + 2) + x_term) % 2
        })
        .collect())
}

/// The Gap2 bundle: the alternating continued fraction, the quadratic
/// identity through index 64, and the `(1, 1)`-sequence property.
pub fn example2_check(m_max: usize) -> Result<Report> {
    let f2 = FieldChar::TWO;
    let g = LaurentSeries::gap2();
    let mut r = Report::new("example2");

    let cf = cf_expand(&g, 64)?;
    let x = Poly::x(f2);
    let x2 = Poly::monomial(f2, 1, 2);
    let alternating = cf
        .quotients()
        .iter()
        .enumerate()
        .all(|(i, a)| a == if i % 2 == 0 { &x } else { &x2 });
    r.push("certified", cf.certified_count());
    r.check("cf_alternating", alternating && cf.certified_count() >= 10);

    let residuals = quadratic_identity_residuals(&g, 64)?;
    r.check("identity_through_64", residuals.iter().all(|&c| c == 0));

    let p1 = prop1_check(&g, &Poly::one(f2), m_max)?;
    r.push("t_claim", p1.t_claim);
    r.check("rank_t_le_1", p1.t_claim <= 1 && p1.rows.iter().all(|row| row.t_rank <= 1));
    r.check("nets", p1.rows.iter().all(|row| row.net != Some(false)));
    Ok(r)
}

/// The first `p^k` Halton points in the given bases form a `(t, k, s)`-net
/// with `t = sum (e_i - 1)` for every `t <= k <= m`.
pub fn nets_check(bases: &[Poly], m: usize) -> Result<Report> {
    let p = validate_bases(bases)?;
    let t: usize = bases.iter().map(|b| b.deg().unwrap_or(1) - 1).sum();
    if m < t {
        return Err(Error::Invalid(format!("m = {m} is below t = {t}")));
    }
    let n = p.checked_pow(m as u32).ok_or(Error::Overflow("net size"))?;
    let pts = generate(&HybridSpec::new(vec![], bases.to_vec(), m.max(1))?, n)?;
    let mut r = Report::new("nets")
        .field("p", p)
        .field("s", bases.len())
        .field("t", t)
        .field("m", m);
    let mut ok = true;
    for k in t..=m {
        let count = p.checked_pow(k as u32).unwrap_or(u64::MAX) as usize;
        let rep = is_net(&pts[..count], t, k)?;
        if !rep.verdict {
            r.line(rep.to_string());
        }
        ok &= rep.verdict;
    }
    r.check("net", ok);
    Ok(r)
}
