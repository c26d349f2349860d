use std::fmt;

use crate::error::{Error, Result};

/// A residue in `0..p`. `p < 2^16`, so products fit in `u32`.
pub type Residue = u16;

/// The characteristic `p` of the prime field `F_p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldChar(u16);

impl FieldChar {
    pub const TWO: FieldChar = FieldChar(2);

    /// Validates primality. Only machine-word primes `p < 2^16` are supported.
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 16 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldChar(p as u16))
    }

    #[inline]
    pub fn get(self) -> u16 {
        self.0
    }

    #[inline]
    pub fn as_u64(self) -> u64 {
        self.0 as u64
    }

    #[inline]
    pub fn reduce(self, v: u64) -> Residue {
        (v % self.0 as u64) as Residue
    }

    #[inline]
    pub fn reduce_signed(self, v: i64) -> Residue {
        v.rem_euclid(self.0 as i64) as Residue
    }

    #[inline]
    pub fn add(self, a: Residue, b: Residue) -> Residue {
        let s = a as u32 + b as u32;
        let p = self.0 as u32;
        (if s >= p { s - p } else { s }) as Residue
    }

    #[inline]
    pub fn sub(self, a: Residue, b: Residue) -> Residue {
        let p = self.0 as u32;
        ((a as u32 + p - b as u32) % p) as Residue
    }

    #[inline]
    pub fn neg(self, a: Residue) -> Residue {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: Residue, b: Residue) -> Residue {
        ((a as u32 * b as u32) % self.0 as u32) as Residue
    }

    /// Multiplicative inverse by Fermat. Panics on zero.
    pub fn inv(self, a: Residue) -> Residue {
        assert!(a != 0, "inverse of zero in F_{}", self.0);
        self.pow(a, self.0 as u64 - 2)
    }

    pub fn pow(self, mut base: Residue, mut exp: u64) -> Residue {
        let mut acc: Residue = 1 % self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Base-`p` digits of `n`, least significant first. Empty for `n = 0`.
    pub fn digits(self, mut n: u64) -> Vec<Residue> {
        let p = self.as_u64();
        let mut out = Vec::new();
        while n > 0 {
            out.push((n % p) as Residue);
            n /= p;
        }
        out
    }

    /// `p^k`, or `None` on `u64` overflow.
    pub fn checked_pow(self, k: u32) -> Option<u64> {
        self.as_u64().checked_pow(k)
    }

    /// `floor(log_p n)` for `n >= 1`; 0 for `n = 0`.
    pub fn floor_log(self, n: u64) -> u32 {
        let p = self.as_u64();
        let mut k = 0;
        let mut v = n;
        while v >= p {
            v /= p;
            k += 1;
        }
        k
    }

    /// `ceil(log_p n)` for `n >= 1`.
    pub fn ceil_log(self, n: u64) -> u32 {
        let mut k = 0;
        let mut pow: u128 = 1;
        while pow < n as u128 {
            pow *= self.0 as u128;
            k += 1;
        }
        k
    }
}

impl fmt::Debug for FieldChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.0)
    }
}

impl fmt::Display for FieldChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}
