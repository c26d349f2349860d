use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::quality::{star_disc_1d, star_disc_exact};
use crate::report::{format_rational, to_f64, Report};
use crate::seqgen::{default_precision, generate, HybridSpec};

#[derive(Clone, Debug, PartialEq)]
pub struct Thm2Row {
    pub n: u64,
    /// `N D*_N`.
    pub nd: BigRational,
    /// `N D*_N / (sqrt(N) max(ln N, 1)^{t+1})`.
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Thm2Table {
    pub t: usize,
    pub rows: Vec<Thm2Row>,
    /// The ratio grew by more than 5% per doubling over each of the last four steps.
    pub growth_flag: bool,
}

impl Thm2Table {
    pub fn max_ratio(&self) -> f64 {
        self.rows.iter().map(|r| r.ratio).fold(0.0, f64::max)
    }

    pub fn to_report(&self, spec: &HybridSpec) -> Report {
        let mut r = Report::new("thm2")
            .field("t", self.t)
            .field("max_ratio", format!("{:.6}", self.max_ratio()));
        r.check("bounded", !self.growth_flag);
        r.line("N,ND,ND_decimal,ratio");
        for row in &self.rows {
            r.line(format!(
                "{},{},{:.6},{:.6}",
                row.n,
                format_rational(&row.nd, spec.field()),
                to_f64(&row.nd),
                row.ratio
            ));
        }
        r
    }
}

/// The normalizer `sqrt(N) max(ln N, 1)^{t+1}`.
pub fn thm2_normalizer(n: u64, t: usize) -> f64 {
    (n as f64).sqrt() * (n as f64).ln().max(1.0).powi(t as i32 + 1)
}

/// Whether the ratio rises more than 5% per doubling of `N` across each of
/// the last four steps.
pub fn growth_flag(rows: &[Thm2Row]) -> bool {
    if rows.len() < 5 {
        return false;
    }
    rows[rows.len() - 5..].windows(2).all(|w| {
        let doublings = (w[1].n as f64 / w[0].n as f64).log2();
        doublings > 0.0 && w[0].ratio > 0.0 && (w[1].ratio / w[0].ratio).powf(1.0 / doublings) > 1.05
    })
}

/// Exact `N D*_N` of the first `N` points for each `N` in `n_list`. The spec
/// precision is raised to the default for the largest `N` when lower.
pub fn thm2_scaling(spec: &HybridSpec, n_list: &[u64]) -> Result<Thm2Table> {
    let t = spec.halton().len();
    let n_max = n_list.iter().copied().max().unwrap_or(0);
    if n_max == 0 {
        return Err(Error::Invalid("empty N list".into()));
    }
    let prec = spec.precision().max(default_precision(spec.field(), n_max));
    let pts = generate(&spec.with_precision(prec)?, n_max)?;
    let mut rows = Vec::new();
    for &n in n_list {
        let prefix = &pts[..n as usize];
        let d = if spec.dim() == 1 {
            star_disc_1d(prefix)?
        } else {
            star_disc_exact(prefix)?
        };
        let nd = d * BigRational::from_integer(BigInt::from(n));
        let ratio = to_f64(&nd) / thm2_normalizer(n, t);
        rows.push(Thm2Row { n, nd, ratio });
    }
    let growth_flag = growth_flag(&rows);
    Ok(Thm2Table {
        t,
        rows,
        growth_flag,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::{FieldChar, Poly};
    use crate::laurent::LaurentSeries;

    #[test]
    fn single_point() {
        let spec = HybridSpec::new(
            vec![LaurentSeries::gap2()],
            vec![Poly::x(FieldChar::TWO)],
            8,
        )
        .unwrap();
        let tab = thm2_scaling(&spec, &[1]).unwrap();
        assert_eq!(tab.rows[0].nd, BigRational::from_integer(1.into()));
        assert_eq!(tab.rows[0].ratio, 1.0);
    }

    #[test]
    fn van_der_corput_meets_net_bound() {
        let spec = HybridSpec::new(vec![], vec![Poly::x(FieldChar::TWO)], 8).unwrap();
        let ns: Vec<u64> = (0..=8).map(|k| 1 << k).collect();
        let tab = thm2_scaling(&spec, &ns).unwrap();
        for row in &tab.rows {
            assert!(row.nd <= BigRational::from_integer(1.into()), "N = {}", row.n);
        }
        assert!(!tab.growth_flag);
    }

    #[test]
    fn growth_detection() {
        let rows: Vec<Thm2Row> = (0..6)
            .map(|k| Thm2Row {
                n: 1 << k,
                nd: BigRational::from_integer(1.into()),
                ratio: 1.1f64.powi(k),
            })
            .collect();
        assert!(growth_flag(&rows));
        assert!(!growth_flag(&rows[..4]));
    }
}
