use crate::error::Result;
use crate::ff::{FieldChar, Poly, Residue};
use crate::laurent::LaurentSeries;

use super::point::DigitPoint;

/// Digits `y_i = sum_k n_k a_{i+k}` of `{n(X) L}` for `i = 1..=m`, where
/// `frac[j - 1] = a_j`. Needs `frac.len() >= m + deg n`.
pub(crate) fn kronecker_digits(p: FieldChar, n: &[Residue], frac: &[Residue], m: usize) -> Vec<Residue> {
    (1..=m)
        .map(|i| {
            let acc: u64 = n
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(k, &c)| c as u64 * frac[i + k - 1] as u64)
                .sum();
            p.reduce(acc)
        })
        .collect()
}

/// The first `m` digits of `{n(X) L + V}`.
pub fn kronecker_point(
    n: u64,
    l: &LaurentSeries,
    m: usize,
    shift: Option<&LaurentSeries>,
) -> Result<DigitPoint> {
    let p = l.field();
    let np = Poly::from_int(n, p);
    let frac = l.frac_coeffs(m + np.deg().unwrap_or(0))?;
    let mut digits = kronecker_digits(p, np.coeffs(), &frac, m);
    if let Some(v) = shift {
        for (y, s) in digits.iter_mut().zip(v.frac_coeffs(m)?) {
            *y = p.add(*y, s);
        }
    }
    Ok(DigitPoint::single(p, digits))
}
