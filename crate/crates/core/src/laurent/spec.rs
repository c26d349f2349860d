//! Continued fraction specs and the series mini-language.
//!
//! Series specs:
//!
//! * `rational:<P>/<Q>`
//! * `cf:<A1>,<A2>,...` terminating continued fraction `[0; A1, A2, ...]`;
//!   a trailing `*` makes the list periodic (`cf:X,X^2*`), an optional
//!   `;` separates a preperiod from the period (`cf:X^3;X,X^2*`), and a
//!   trailing `...` marks an unknown continuation (`cf:X,X^2,...`)
//! * `gap2` (only over `F_2`)
//! * `random:<seed>`
//!
//! Polynomials use the `ff` text format.

use std::fmt;

use super::series::LaurentSeries;
use crate::error::{Error, Result};
use crate::ff::{FieldChar, Poly};

/// What follows the explicit quotients of a [`CfSpec`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CfTail {
    /// The expansion ends: the value is rational.
    Terminating,
    /// The given quotients repeat forever after the head.
    Periodic(Vec<Poly>),
    /// Further quotients exist but are not known.
    Unknown,
}

/// `[a0; head..., tail]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CfSpec {
    pub a0: Poly,
    pub head: Vec<Poly>,
    pub tail: CfTail,
}

impl CfSpec {
    pub fn terminating(a0: Poly, quotients: Vec<Poly>) -> Self {
        CfSpec {
            a0,
            head: quotients,
            tail: CfTail::Terminating,
        }
    }

    pub fn periodic(a0: Poly, preperiod: Vec<Poly>, period: Vec<Poly>) -> Self {
        CfSpec {
            a0,
            head: preperiod,
            tail: CfTail::Periodic(period),
        }
    }

    pub fn field(&self) -> FieldChar {
        self.a0.field()
    }

    pub fn validate(&self) -> Result<()> {
        let p = self.a0.field();
        let period: &[Poly] = match &self.tail {
            CfTail::Periodic(v) => {
                if v.is_empty() {
                    return Err(Error::Invalid("empty period".into()));
                }
                v
            }
            _ => &[],
        };
        for a in self.head.iter().chain(period) {
            if a.field() != p {
                return Err(Error::FieldMismatch {
                    left: p.get(),
                    right: a.field().get(),
                });
            }
            if a.deg().unwrap_or(0) == 0 {
                return Err(Error::DegreeViolation(format!(
                    "partial quotient {a} must have degree >= 1"
                )));
            }
        }
        Ok(())
    }

    /// `A_h` for `h >= 1`, `None` past a terminating or unknown end.
    pub fn quotient(&self, h: usize) -> Option<&Poly> {
        assert!(h >= 1, "partial quotients are indexed from 1");
        if let Some(a) = self.head.get(h - 1) {
            return Some(a);
        }
        match &self.tail {
            CfTail::Periodic(period) => {
                Some(&period[(h - 1 - self.head.len()) % period.len()])
            }
            _ => None,
        }
    }

    /// `(P_h, Q_h)` from the recurrence; `h` must not exceed the known quotients.
    pub fn value_convergent(&self, h: usize) -> (Poly, Poly) {
        let p = self.a0.field();
        let (mut p_prev, mut p_cur) = (Poly::one(p), self.a0.clone());
        let (mut q_prev, mut q_cur) = (Poly::zero(p), Poly::one(p));
        for i in 1..=h {
            let a = self.quotient(i).expect("quotient index within spec");
            let p_next = &(a * &p_cur) + &p_prev;
            let q_next = &(a * &q_cur) + &q_prev;
            p_prev = std::mem::replace(&mut p_cur, p_next);
            q_prev = std::mem::replace(&mut q_cur, q_next);
        }
        (p_cur, q_cur)
    }

    pub fn parse(body: &str, p: FieldChar) -> Result<CfSpec> {
        let body = body.trim();
        let zero = Poly::zero(p);
        let parse_list = |s: &str| -> Result<Vec<Poly>> {
            s.split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(|t| Poly::parse(t, p))
                .collect()
        };
        let spec = if let Some(rest) = body.strip_suffix('*') {
            let (pre, per) = match rest.split_once(';') {
                Some((a, b)) => (parse_list(a)?, parse_list(b)?),
                None => (Vec::new(), parse_list(rest)?),
            };
            CfSpec::periodic(zero, pre, per)
        } else if let Some(rest) = body.strip_suffix("...") {
            CfSpec {
                a0: zero,
                head: parse_list(rest)?,
                tail: CfTail::Unknown,
            }
        } else {
            if body.contains(';') {
                return Err(Error::Parse("';' is only valid in periodic specs".into()));
            }
            CfSpec::terminating(zero, parse_list(body)?)
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl fmt::Display for CfSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[Poly]| v.iter().map(Poly::to_string).collect::<Vec<_>>().join(",");
        write!(f, "[{}; {}", self.a0, join(&self.head))?;
        match &self.tail {
            CfTail::Terminating => f.write_str("]"),
            CfTail::Periodic(period) => write!(f, " | ({})*]", join(period)),
            CfTail::Unknown => f.write_str(", ...]"),
        }
    }
}

impl LaurentSeries {
    /// Parses a series spec; see the module docs for the grammar.
    pub fn parse(spec: &str, p: FieldChar) -> Result<LaurentSeries> {
        let spec = spec.trim();
        if spec == "gap2" {
            if p != FieldChar::TWO {
                return Err(Error::Invalid("gap2 is defined over F_2 only".into()));
            }
            return Ok(LaurentSeries::gap2());
        }
        let (kind, body) = spec
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("unknown series spec {spec:?}")))?;
        match kind {
            "rational" => {
                let (num, den) = body
                    .split_once('/')
                    .ok_or_else(|| Error::Parse(format!("expected P/Q in {body:?}")))?;
                LaurentSeries::rational(Poly::parse(num, p)?, Poly::parse(den, p)?)
            }
            "cf" => LaurentSeries::from_cf(CfSpec::parse(body, p)?),
            "random" => {
                let seed = body
                    .trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad seed {body:?}")))?;
                Ok(LaurentSeries::random(p, seed))
            }
            _ => Err(Error::Parse(format!("unknown series kind {kind:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FieldChar {
        FieldChar::TWO
    }

    #[test]
    fn parse_periodic_and_terminating() {
        let s = CfSpec::parse("X,X^2*", f2()).unwrap();
        assert!(s.head.is_empty());
        assert_eq!(s.quotient(1), Some(&Poly::x(f2())));
        assert_eq!(s.quotient(4), Some(&Poly::monomial(f2(), 1, 2)));

        let s = CfSpec::parse("X^3;X*", f2()).unwrap();
        assert_eq!(s.quotient(1).unwrap().deg(), Some(3));
        assert_eq!(s.quotient(7), Some(&Poly::x(f2())));

        let s = CfSpec::parse("X+1,X+1", f2()).unwrap();
        assert_eq!(s.tail, CfTail::Terminating);
        assert_eq!(s.quotient(3), None);

        let s = CfSpec::parse("X,X,...", f2()).unwrap();
        assert_eq!(s.tail, CfTail::Unknown);
    }

    #[test]
    fn parse_rejects_constant_quotients() {
        assert!(matches!(
            CfSpec::parse("X,1", f2()),
            Err(Error::DegreeViolation(_))
        ));
        assert!(CfSpec::parse("X;X", f2()).is_err());
    }

    #[test]
    fn convergent_recurrence() {
        // [0; X, X^2] = X^2 / (X^3 + 1)
        let s = CfSpec::parse("X,X^2", f2()).unwrap();
        let (p, q) = s.value_convergent(2);
        assert_eq!(p, Poly::monomial(f2(), 1, 2));
        assert_eq!(q, Poly::from_coeffs(f2(), &[1, 0, 0, 1]));
    }

    #[test]
    fn series_specs() {
        let l = LaurentSeries::parse("rational:X+1/X^2", f2()).unwrap();
        assert_eq!(l.frac_coeffs(4).unwrap(), vec![1, 1, 0, 0]);
        assert!(LaurentSeries::parse("gap2", FieldChar::new(3).unwrap()).is_err());
        assert!(LaurentSeries::parse("random:12", f2()).is_ok());
        assert!(LaurentSeries::parse("random:x", f2()).is_err());
        assert!(LaurentSeries::parse("bogus", f2()).is_err());
        assert_eq!(
            LaurentSeries::parse("rational:1/0", f2()).unwrap_err(),
            Error::DivisionByZero
        );
        let c = LaurentSeries::parse("cf:X,X^2*", f2()).unwrap();
        let g = LaurentSeries::gap2();
        assert_eq!(c.frac_coeffs(100).unwrap(), g.frac_coeffs(100).unwrap());
    }

    #[test]
    fn unknown_tail_keeps_determined_prefix() {
        // [0; X, X^2, ...]: d_2 = 3 and d_3 >= 4, so a_1..a_6 are determined
        let l = LaurentSeries::parse("cf:X,X^2,...", f2()).unwrap();
        assert_eq!(l.frac_coeffs(6).unwrap(), vec![1, 0, 0, 1, 0, 0]);
        assert!(l.coeff(7).is_err());
    }
}
