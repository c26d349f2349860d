//! Text format for polynomials.
//!
//! Two spellings are accepted: symbolic (`X^2+X+1`, `2*X^3 + 1`, `X^2-1`;
//! terms in any order, `x` or `X`, optional `*`) and a little-endian
//! coefficient list (`1,1,1`). A bare integer is a constant.

use super::field::FieldChar;
use super::poly::Poly;
use crate::error::{Error, Result};

impl Poly {
    pub fn parse(s: &str, p: FieldChar) -> Result<Poly> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        if s.contains(['X', 'x']) {
            parse_symbolic(&s, p)
        } else if s.contains(',') {
            let coeffs = s
                .split(',')
                .map(|t| parse_int(t).map(|v| p.reduce_signed(v) as i64))
                .collect::<Result<Vec<_>>>()?;
            Ok(Poly::from_coeffs(p, &coeffs))
        } else {
            Ok(Poly::from_coeffs(p, &[parse_signed(&s)?]))
        }
    }
}

fn parse_int(t: &str) -> Result<i64> {
    t.parse::<i64>()
        .map_err(|_| Error::Parse(format!("bad integer {t:?}")))
}

fn parse_signed(t: &str) -> Result<i64> {
    let (sign, body) = match t.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, t.strip_prefix('+').unwrap_or(t)),
    };
    Ok(sign * parse_int(body)?)
}

fn parse_symbolic(s: &str, p: FieldChar) -> Result<Poly> {
    let mut coeffs: Vec<i64> = Vec::new();
    // split into signed terms
    let mut terms = Vec::new();
    let mut start = 0;
    for (i, c) in s.char_indices() {
        if (c == '+' || c == '-') && i > 0 {
            terms.push(&s[start..i]);
            start = i;
        }
    }
    terms.push(&s[start..]);

    for term in terms {
        let (sign, body) = match term.strip_prefix('-') {
            Some(rest) => (-1i64, rest),
            None => (1, term.strip_prefix('+').unwrap_or(term)),
        };
        if body.is_empty() {
            return Err(Error::Parse(format!("empty term in {s:?}")));
        }
        let (coef, power) = match body.find(['X', 'x']) {
            None => (parse_int(body)?, 0usize),
            Some(pos) => {
                let head = body[..pos].trim_end_matches('*');
                let coef = if head.is_empty() { 1 } else { parse_int(head)? };
                let tail = &body[pos + 1..];
                let power = if tail.is_empty() {
                    1
                } else {
                    let e = tail
                        .strip_prefix('^')
                        .ok_or_else(|| Error::Parse(format!("bad term {body:?}")))?;
                    e.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad exponent in {body:?}")))?
                };
                (coef, power)
            }
        };
        if power > 1 << 20 {
            return Err(Error::Parse(format!("exponent too large in {body:?}")));
        }
        if coeffs.len() <= power {
            coeffs.resize(power + 1, 0);
        }
        coeffs[power] = (coeffs[power] + sign * coef).rem_euclid(p.get() as i64);
    }
    Ok(Poly::from_coeffs(p, &coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbolic_and_list_agree() {
        let p = FieldChar::TWO;
        let a = Poly::parse("X^2+X+1", p).unwrap();
        let b = Poly::parse("1,1,1", p).unwrap();
        let c = Poly::parse("1 + x + X^2", p).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
    }

    #[test]
    fn coefficients_reduce_mod_p() {
        let p = FieldChar::new(3).unwrap();
        assert_eq!(
            Poly::parse("2*X^3+4X+1", p).unwrap(),
            Poly::from_coeffs(p, &[1, 1, 0, 2])
        );
        assert_eq!(Poly::parse("X-1", p).unwrap(), Poly::from_coeffs(p, &[2, 1]));
        assert_eq!(Poly::parse("X+X", p).unwrap(), Poly::from_coeffs(p, &[0, 2]));
        assert!(Poly::parse("0", p).unwrap().is_zero());
        assert!(Poly::parse("3", p).unwrap().is_zero());
    }

    #[test]
    fn rejects_garbage() {
        let p = FieldChar::TWO;
        assert!(Poly::parse("", p).is_err());
        assert!(Poly::parse("X^", p).is_err());
        assert!(Poly::parse("Y+1", p).is_err());
        assert!(Poly::parse("X++1", p).is_err());
        assert!(Poly::parse("1,a", p).is_err());
    }

    #[test]
    fn display_round_trips() {
        let p = FieldChar::new(5).unwrap();
        let f = Poly::from_coeffs(p, &[4, 0, 3, 1, 0, 2]);
        assert_eq!(Poly::parse(&f.to_string(), p).unwrap(), f);
    }
}
