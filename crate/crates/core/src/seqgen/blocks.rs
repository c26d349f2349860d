use crate::error::{Error, Result};
use crate::ff::{FieldChar, Poly};

/// The indices of one residue block together with the fixed high part `C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueBlock {
    /// Increasing indices `n` in the block with `n(X) = R (mod B)`.
    pub indices: Vec<u64>,
    /// Every such `n(X) = (r(X) + X^u C(X)) B(X) + R(X)` with `deg r < u`.
    pub c: Poly,
}

/// All `n` in `[K p^{u+e}, (K+1) p^{u+e})` with `n(X) = R (mod B)`, where
/// `e = deg B`. There are exactly `p^u` of them.
pub fn residue_block_indices(p: FieldChar, k: u64, u: u32, b: &Poly, r: &Poly) -> Result<ResidueBlock> {
    if b.field() != p || r.field() != p {
        return Err(Error::FieldMismatch {
            left: p.get(),
            right: if b.field() != p { b.field().get() } else { r.field().get() },
        });
    }
    let e = match b.deg() {
        Some(e) if e >= 1 && b.is_monic() => e,
        _ => return Err(Error::InvalidBase(b.to_string())),
    };
    if r.degree() >= b.degree() {
        return Err(Error::DegreeViolation(format!("deg({r}) must be below deg({b})")));
    }
    let width = p
        .checked_pow(u + e as u32)
        .ok_or(Error::Overflow("residue block width"))?;
    let lo = k.checked_mul(width).ok_or(Error::Overflow("residue block start"))?;
    let hi = lo.checked_add(width).ok_or(Error::Overflow("residue block end"))?;

    let shift = u as usize + e;
    let top = Poly::from_int(k, p).shift(shift);
    let n0 = &top + &(r - &top).rem(b)?;
    let (k0, rem0) = (&n0 - r).divmod(b)?;
    debug_assert!(rem0.is_zero());
    let c = k0.unshift(u as usize);

    let count = p.checked_pow(u).ok_or(Error::Overflow("residue block count"))?;
    let mut indices = Vec::with_capacity(count as usize);
    for t in 0..count {
        let n = &n0 + &(b * &Poly::from_int(t, p));
        let idx = n.to_int()?;
        let (kk, rem) = (&n - r).divmod(b)?;
        if !(lo..hi).contains(&idx) || !rem.is_zero() || kk.unshift(u as usize) != c {
            return Err(Error::Invalid(format!(
                "residue block decomposition failed at n = {idx}"
            )));
        }
        indices.push(idx);
    }
    indices.sort_unstable();
    Ok(ResidueBlock { indices, c })
}
