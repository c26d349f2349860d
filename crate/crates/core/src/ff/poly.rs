use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{FieldChar, Residue};
use crate::error::{Error, Result};

/// Degree of a polynomial. The zero polynomial has degree [`Degree::NegInf`],
/// which orders below every finite degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInf,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInf => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInf => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// A polynomial over `F_p`, coefficients little-endian and normalized so the
/// last stored coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    p: FieldChar,
    coeffs: Vec<Residue>,
}

impl Poly {
    pub fn zero(p: FieldChar) -> Self {
        Poly { p, coeffs: Vec::new() }
    }

    pub fn one(p: FieldChar) -> Self {
        Poly::constant(p, 1)
    }

    pub fn constant(p: FieldChar, c: u64) -> Self {
        Poly::from_residues(p, vec![p.reduce(c)])
    }

    /// The indeterminate `X`.
    pub fn x(p: FieldChar) -> Self {
        Poly::monomial(p, 1, 1)
    }

    /// `c X^k`.
    pub fn monomial(p: FieldChar, c: u64, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = p.reduce(c);
        Poly::from_residues(p, coeffs)
    }

    /// Builds from arbitrary integers, reducing each mod `p`.
    pub fn from_coeffs(p: FieldChar, coeffs: &[i64]) -> Self {
        Poly::from_residues(p, coeffs.iter().map(|&c| p.reduce_signed(c)).collect())
    }

    /// Builds from residues already in `0..p`.
    pub fn from_residues(p: FieldChar, mut coeffs: Vec<Residue>) -> Self {
        debug_assert!(coeffs.iter().all(|&c| c < p.get()));
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { p, coeffs }
    }

    /// `n(X)`: the base-`p` digits of `n` read as coefficients.
    pub fn from_int(n: u64, p: FieldChar) -> Self {
        Poly { p, coeffs: p.digits(n) }
    }

    #[inline]
    pub fn field(&self) -> FieldChar {
        self.p
    }

    #[inline]
    pub fn coeffs(&self) -> &[Residue] {
        &self.coeffs
    }

    /// Coefficient of `X^i` (zero past the degree).
    #[inline]
    pub fn coeff(&self, i: usize) -> Residue {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInf,
            n => Degree::Finite(n - 1),
        }
    }

    /// Degree as `usize`; zero maps to `None`.
    #[inline]
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Leading coefficient, zero for the zero polynomial.
    pub fn lead(&self) -> Residue {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == 1
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.p.inv(self.lead());
        self.scale(inv)
    }

    pub fn scale(&self, c: Residue) -> Poly {
        let p = self.p;
        Poly::from_residues(p, self.coeffs.iter().map(|&a| p.mul(a, c)).collect())
    }

    /// Multiplies by `X^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { p: self.p, coeffs }
    }

    /// Drops the `k` lowest coefficients (floor division by `X^k`).
    pub fn unshift(&self, k: usize) -> Poly {
        Poly::from_residues(self.p, self.coeffs.iter().skip(k).copied().collect())
    }

    /// Keeps the coefficients below `X^k` (remainder mod `X^k`).
    pub fn truncate(&self, k: usize) -> Poly {
        Poly::from_residues(self.p, self.coeffs.iter().take(k).copied().collect())
    }

    pub fn pow(&self, mut exp: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.p);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    fn check_field(&self, other: &Poly) -> Result<()> {
        if self.p != other.p {
            return Err(Error::FieldMismatch {
                left: self.p.get(),
                right: other.p.get(),
            });
        }
        Ok(())
    }

    /// Euclidean division: `self = q * b + r` with `deg r < deg b`.
    pub fn divmod(&self, b: &Poly) -> Result<(Poly, Poly)> {
        self.check_field(b)?;
        let db = b.deg().ok_or(Error::DivisionByZero)?;
        let p = self.p;
        let da = match self.deg() {
            Some(d) if d >= db => d,
            _ => return Ok((Poly::zero(p), self.clone())),
        };
        let inv_lead = p.inv(b.lead());
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0; da - db + 1];
        for i in (0..=da - db).rev() {
            let c = p.mul(rem[i + db], inv_lead);
            if c == 0 {
                continue;
            }
            quot[i] = c;
            for (j, &bj) in b.coeffs.iter().enumerate() {
                rem[i + j] = p.sub(rem[i + j], p.mul(c, bj));
            }
        }
        rem.truncate(db);
        Ok((Poly::from_residues(p, quot), Poly::from_residues(p, rem)))
    }

    pub fn rem(&self, b: &Poly) -> Result<Poly> {
        Ok(self.divmod(b)?.1)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, b: &Poly) -> Result<Poly> {
        self.check_field(b)?;
        if self.is_zero() && b.is_zero() {
            return Err(Error::BothZero);
        }
        let (mut a, mut b) = (self.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Extended Euclid: returns `(g, s, t)` with `s*self + t*b = g`, `g` monic.
    pub fn ext_gcd(&self, b: &Poly) -> Result<(Poly, Poly, Poly)> {
        self.check_field(b)?;
        if self.is_zero() && b.is_zero() {
            return Err(Error::BothZero);
        }
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), b.clone());
        let (mut s0, mut s1) = (Poly::one(p), Poly::zero(p));
        let (mut t0, mut t1) = (Poly::zero(p), Poly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1)?;
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = p.inv(r0.lead());
        Ok((r0.scale(inv), s0.scale(inv), t0.scale(inv)))
    }

    /// Digits of `self` in base `b`: `self = sum a_i b^i` with `deg a_i < deg b`.
    /// Trailing zero digits are trimmed; the zero polynomial has no digits.
    pub fn base_digits(&self, b: &Poly) -> Result<Vec<Poly>> {
        self.check_field(b)?;
        if !b.is_monic() || b.deg().unwrap_or(0) == 0 {
            return Err(Error::InvalidBase(b.to_string()));
        }
        let mut out = Vec::new();
        if b.deg() == Some(1) && b.coeff(0) == 0 {
            // base X: the digits are the coefficients themselves
            out.extend(self.coeffs.iter().map(|&c| Poly::from_residues(self.p, vec![c])));
        } else {
            let mut n = self.clone();
            while !n.is_zero() {
                let (q, r) = n.divmod(b)?;
                out.push(r);
                n = q;
            }
        }
        while out.last().is_some_and(Poly::is_zero) {
            out.pop();
        }
        Ok(out)
    }

    /// Evaluates with coefficients read as integers in `0..p`:
    /// `sum coeff_i * at^i`.
    pub fn eval_int(&self, at: u64) -> Result<u128> {
        let mut acc: u128 = 0;
        for &c in self.coeffs.iter().rev() {
            acc = acc
                .checked_mul(at as u128)
                .and_then(|v| v.checked_add(c as u128))
                .ok_or(Error::Overflow("polynomial evaluation"))?;
        }
        Ok(acc)
    }

    /// Inverse of [`Poly::from_int`]: evaluation at `X = p`.
    pub fn to_int(&self) -> Result<u64> {
        let v = self.eval_int(self.p.as_u64())?;
        u64::try_from(v).map_err(|_| Error::Overflow("polynomial index exceeds u64"))
    }

    /// Inverse of `self` modulo `m`, if `gcd(self, m) = 1`.
    pub fn inverse_mod(&self, m: &Poly) -> Result<Option<Poly>> {
        let (g, s, _) = self.ext_gcd(m)?;
        if !g.is_one() {
            return Ok(None);
        }
        Ok(Some(s.rem(m)?))
    }
}

/// Chinese remaindering in `F_p[X]`: the unique `R` with `deg R < deg(prod m_i)`
/// and `R = r_i mod m_i` for pairwise coprime moduli.
pub fn crt(residues: &[(Poly, Poly)]) -> Result<Poly> {
    let p = match residues.first() {
        Some((r, _)) => r.field(),
        None => return Err(Error::Invalid("empty CRT system".into())),
    };
    let mut acc = Poly::zero(p);
    let mut modulus = Poly::one(p);
    for (r, m) in residues {
        // acc + modulus * k = r (mod m)
        let inv = modulus
            .inverse_mod(m)?
            .ok_or_else(|| Error::NotCoprime(modulus.to_string(), m.to_string()))?;
        let k = (&(r - &acc) * &inv).rem(m)?;
        acc = &acc + &(&modulus * &k);
        modulus = &modulus * m;
        acc = acc.rem(&modulus)?;
    }
    Ok(acc)
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;

    /// Panics if the fields differ.
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.p, rhs.p, "field mismatch");
        let p = self.p;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_residues(p, (0..n).map(|i| p.add(self.coeff(i), rhs.coeff(i))).collect())
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        assert_eq!(self.p, rhs.p, "field mismatch");
        let p = self.p;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_residues(p, (0..n).map(|i| p.sub(self.coeff(i), rhs.coeff(i))).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        let p = self.p;
        Poly::from_residues(p, self.coeffs.iter().map(|&c| p.neg(c)).collect())
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.p, rhs.p, "field mismatch");
        let p = self.p;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(p);
        }
        let mut acc = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        let pp = p.as_u64();
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u64 * b as u64) % pp;
            }
        }
        Poly::from_residues(p, acc.into_iter().map(|c| c as Residue).collect())
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                (&self).$f(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by degree, then by coefficients from the top down.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
            .then_with(|| self.p.cmp(&other.p))
    }
}

impl fmt::Display for Poly {
    /// Symbolic form, highest power first: `X^2+X+1`, `2*X^3+1`, `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => f.write_str("X")?,
                (1, c) => write!(f, "{c}*X")?,
                (i, 1) => write!(f, "X^{i}")?,
                (i, c) => write!(f, "{c}*X^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self} over {:?})", self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FieldChar {
        FieldChar::TWO
    }
    fn f3() -> FieldChar {
        FieldChar::new(3).unwrap()
    }
    fn poly(p: FieldChar, c: &[i64]) -> Poly {
        Poly::from_coeffs(p, c)
    }

    #[test]
    fn int_to_poly_examples() {
        assert!(Poly::from_int(0, f2()).is_zero());
        assert_eq!(Poly::from_int(6, f2()), poly(f2(), &[0, 1, 1]));
        assert_eq!(Poly::from_int(7, f3()), poly(f3(), &[1, 2]));
    }

    #[test]
    fn divmod_examples() {
        // X^3 + X by X + 1 over F_2: hand long division gives X^2 + X rem 0
        let (q, r) = poly(f2(), &[0, 1, 0, 1]).divmod(&poly(f2(), &[1, 1])).unwrap();
        assert_eq!(q, poly(f2(), &[0, 1, 1]));
        assert!(r.is_zero());

        let (q, r) = poly(f3(), &[1, 0, 1]).divmod(&Poly::x(f3())).unwrap();
        assert_eq!(q, Poly::x(f3()));
        assert_eq!(r, Poly::one(f3()));

        let (q, r) = Poly::one(f2()).divmod(&Poly::x(f2())).unwrap();
        assert!(q.is_zero());
        assert_eq!(r, Poly::one(f2()));
    }

    #[test]
    fn divmod_errors() {
        assert_eq!(
            Poly::x(f2()).divmod(&Poly::zero(f2())),
            Err(Error::DivisionByZero)
        );
        assert_eq!(
            Poly::x(f2()).divmod(&Poly::x(f3())),
            Err(Error::FieldMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(
            Poly::x(f2()).gcd(&poly(f2(), &[1, 1])).unwrap(),
            Poly::one(f2())
        );
        assert_eq!(
            poly(f2(), &[0, 1, 1]).gcd(&Poly::x(f2())).unwrap(),
            Poly::x(f2())
        );
        assert_eq!(
            Poly::zero(f3()).gcd(&poly(f3(), &[0, 2])).unwrap(),
            Poly::x(f3())
        );
        assert_eq!(Poly::zero(f3()).gcd(&Poly::zero(f3())), Err(Error::BothZero));
    }

    #[test]
    fn base_digit_examples() {
        let x = Poly::x(f2());
        let one = Poly::one(f2());
        assert_eq!(poly(f2(), &[1, 1]).base_digits(&x).unwrap(), vec![one.clone(), one.clone()]);
        // X = 1 + 1*(X+1)
        assert_eq!(
            x.base_digits(&poly(f2(), &[1, 1])).unwrap(),
            vec![one.clone(), one.clone()]
        );
        assert!(Poly::zero(f2()).base_digits(&x).unwrap().is_empty());
        assert!(matches!(x.base_digits(&one), Err(Error::InvalidBase(_))));
        assert!(matches!(
            x.base_digits(&poly(f3(), &[0, 2])),
            Err(Error::FieldMismatch { .. })
        ));
        assert!(matches!(
            Poly::x(f3()).base_digits(&poly(f3(), &[0, 2])),
            Err(Error::InvalidBase(_))
        ));
    }

    #[test]
    fn base_digits_keep_interior_zeros() {
        // X^2 in base X has digits 0, 0, 1
        let x = Poly::x(f2());
        let d = Poly::monomial(f2(), 1, 2).base_digits(&x).unwrap();
        assert_eq!(d.len(), 3);
        assert!(d[0].is_zero() && d[1].is_zero() && d[2].is_one());
    }

    #[test]
    fn eval_examples() {
        assert_eq!(poly(f2(), &[1, 1]).eval_int(2).unwrap(), 3);
        assert_eq!(Poly::zero(f2()).eval_int(7).unwrap(), 0);
        assert_eq!(poly(f3(), &[1, 2]).eval_int(3).unwrap(), 7);
    }

    #[test]
    fn degree_sentinel_orders_below() {
        assert!(Poly::zero(f2()).degree() < Poly::one(f2()).degree());
        assert_eq!(Poly::zero(f2()).degree().to_string(), "-inf");
    }

    #[test]
    fn crt_two_moduli() {
        let p = f2();
        let x = Poly::x(p);
        let x1 = poly(p, &[1, 1]);
        // R = 1 mod X, R = 0 mod X+1  ->  R = X + 1
        let r = crt(&[(Poly::one(p), x.clone()), (Poly::zero(p), x1.clone())]).unwrap();
        assert_eq!(r, x1);
        assert!(matches!(
            crt(&[(Poly::one(p), x.clone()), (Poly::zero(p), x.clone())]),
            Err(Error::NotCoprime(..))
        ));
    }

    #[test]
    fn display() {
        assert_eq!(poly(f2(), &[1, 1, 1]).to_string(), "X^2+X+1");
        assert_eq!(poly(f3(), &[1, 2, 0, 2]).to_string(), "2*X^3+2*X+1");
        assert_eq!(Poly::zero(f3()).to_string(), "0");
    }
}
