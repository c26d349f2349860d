use crate::error::{Error, Result};
use crate::ff::{FieldChar, Poly, Residue};

use super::point::DigitPoint;

/// Checks that `bases` are monic, nonconstant, pairwise coprime and share one
/// field; returns that field.
pub fn validate_bases(bases: &[Poly]) -> Result<FieldChar> {
    let first = bases
        .first()
        .ok_or_else(|| Error::Invalid("at least one Halton base is required".into()))?;
    let p = first.field();
    for b in bases {
        if b.field() != p {
            return Err(Error::FieldMismatch {
                left: p.get(),
                right: b.field().get(),
            });
        }
        if !b.is_monic() || b.deg().unwrap_or(0) == 0 {
            return Err(Error::InvalidBase(b.to_string()));
        }
    }
    for (i, a) in bases.iter().enumerate() {
        for b in &bases[i + 1..] {
            if !a.gcd(b)?.is_one() {
                return Err(Error::NotCoprime(a.to_string(), b.to_string()));
            }
        }
    }
    Ok(p)
}

/// `m` rounded up to a multiple of `e`.
pub fn round_precision(m: usize, e: usize) -> usize {
    m.div_ceil(e) * e
}

/// Radical inverse of `n(X)` in base `b`, to `m` base-`p` digits with `m`
/// rounded up to a multiple of `deg b`. Digit `a_i` of `n(X)` occupies digits
/// `e i + 1 ..= e i + e`, most significant coefficient first.
pub fn halton_coordinate(n: &Poly, base: &Poly, m: usize) -> Result<Vec<Residue>> {
    let e = base
        .deg()
        .filter(|&e| e >= 1)
        .ok_or_else(|| Error::InvalidBase(base.to_string()))?;
    let m = round_precision(m, e);
    let mut out = vec![0; m];
    for (i, a) in n.base_digits(base)?.iter().enumerate() {
        if e * i >= m {
            break;
        }
        for k in 0..e {
            out[e * i + e - 1 - k] = a.coeff(k);
        }
    }
    Ok(out)
}

/// Point `n` of the Halton sequence in polynomial bases.
pub fn halton_point(n: u64, bases: &[Poly], m: usize) -> Result<DigitPoint> {
    let p = validate_bases(bases)?;
    let np = Poly::from_int(n, p);
    let coords = bases
        .iter()
        .map(|b| halton_coordinate(&np, b, m))
        .collect::<Result<_>>()?;
    Ok(DigitPoint::new(p, coords))
}
