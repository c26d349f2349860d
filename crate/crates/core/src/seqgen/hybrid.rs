use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ff::{FieldChar, Poly, Residue};
use crate::laurent::LaurentSeries;

use super::halton::{halton_coordinate, validate_bases};
use super::kronecker::kronecker_digits;
use super::point::DigitPoint;

/// Default precision for `n` points: `ceil(log_p n) + 20` digits.
pub fn default_precision(p: FieldChar, n: u64) -> usize {
    p.ceil_log(n) as usize + 20
}

/// Kronecker coordinates `L_1..L_s` followed by Halton coordinates in bases
/// `b_1..b_t`, all over one field at a shared precision.
#[derive(Clone, Debug)]
pub struct HybridSpec {
    p: FieldChar,
    kronecker: Vec<LaurentSeries>,
    halton: Vec<Poly>,
    precision: usize,
}

impl HybridSpec {
    pub fn new(kronecker: Vec<LaurentSeries>, halton: Vec<Poly>, precision: usize) -> Result<Self> {
        let p = match (kronecker.first(), halton.first()) {
            (Some(l), _) => l.field(),
            (None, Some(b)) => b.field(),
            (None, None) => return Err(Error::Invalid("empty hybrid spec".into())),
        };
        if !halton.is_empty() && validate_bases(&halton)? != p {
            return Err(Error::FieldMismatch {
                left: p.get(),
                right: halton[0].field().get(),
            });
        }
        if let Some(l) = kronecker.iter().find(|l| l.field() != p) {
            return Err(Error::FieldMismatch {
                left: p.get(),
                right: l.field().get(),
            });
        }
        if precision == 0 {
            return Err(Error::Invalid("precision must be positive".into()));
        }
        Ok(HybridSpec {
            p,
            kronecker,
            halton,
            precision,
        })
    }

    pub fn field(&self) -> FieldChar {
        self.p
    }

    pub fn kronecker(&self) -> &[LaurentSeries] {
        &self.kronecker
    }

    pub fn halton(&self) -> &[Poly] {
        &self.halton
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn dim(&self) -> usize {
        self.kronecker.len() + self.halton.len()
    }

    pub fn with_precision(&self, precision: usize) -> Result<Self> {
        Self::new(self.kronecker.clone(), self.halton.clone(), precision)
    }

    /// A generator for indices `n < n_max` with the coefficient prefixes
    /// fetched up front.
    pub fn generator(&self, n_max: u64) -> Result<HybridGenerator> {
        let max_deg = self.p.digits(n_max.saturating_sub(1)).len();
        let frac = self
            .kronecker
            .iter()
            .map(|l| l.frac_coeffs(self.precision + max_deg))
            .collect::<Result<_>>()?;
        Ok(HybridGenerator {
            spec: self.clone(),
            n_max,
            frac,
        })
    }
}

/// Hybrid point generation with prefetched series coefficients; shareable
/// across threads.
#[derive(Clone, Debug)]
pub struct HybridGenerator {
    spec: HybridSpec,
    n_max: u64,
    frac: Vec<Vec<Residue>>,
}

impl HybridGenerator {
    pub fn spec(&self) -> &HybridSpec {
        &self.spec
    }

    pub fn n_max(&self) -> u64 {
        self.n_max
    }

    pub fn point(&self, n: u64) -> Result<DigitPoint> {
        if n >= self.n_max {
            return hybrid_point(n, &self.spec);
        }
        let p = self.spec.p;
        let m = self.spec.precision;
        let np = Poly::from_int(n, p);
        let mut coords = Vec::with_capacity(self.spec.dim());
        for frac in &self.frac {
            coords.push(kronecker_digits(p, np.coeffs(), frac, m));
        }
        for b in &self.spec.halton {
            coords.push(halton_coordinate(&np, b, m)?);
        }
        Ok(DigitPoint::new(p, coords))
    }

    /// Points `lo..hi` in index order, generated in parallel.
    pub fn points(&self, lo: u64, hi: u64) -> Result<Vec<DigitPoint>> {
        (lo..hi).into_par_iter().map(|n| self.point(n)).collect()
    }
}

/// Point `n` of the hybrid sequence: Kronecker coordinates, then Halton.
pub fn hybrid_point(n: u64, spec: &HybridSpec) -> Result<DigitPoint> {
    let p = spec.p;
    let m = spec.precision;
    let np = Poly::from_int(n, p);
    let mut coords = Vec::with_capacity(spec.dim());
    for l in &spec.kronecker {
        let frac = l.frac_coeffs(m + np.deg().unwrap_or(0))?;
        coords.push(kronecker_digits(p, np.coeffs(), &frac, m));
    }
    for b in &spec.halton {
        coords.push(halton_coordinate(&np, b, m)?);
    }
    Ok(DigitPoint::new(p, coords))
}

/// The first `n` points at the spec precision.
pub fn generate(spec: &HybridSpec, n: u64) -> Result<Vec<DigitPoint>> {
    spec.generator(n)?.points(0, n)
}
