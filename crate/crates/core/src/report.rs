//! Line-oriented experiment reports.
//!
//! The first line is `PASS <name> key=value ...` (or `FAIL`), and any further
//! lines carry details such as violated intervals or per-row data.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::ff::FieldChar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub name: String,
    pub pass: bool,
    pub fields: Vec<(String, String)>,
    pub lines: Vec<String>,
}

impl Report {
    pub fn new(name: impl Into<String>) -> Self {
        Report {
            name: name.into(),
            pass: true,
            fields: Vec::new(),
            lines: Vec::new(),
        }
    }

    pub fn field(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.push(key, value);
        self
    }

    pub fn push(&mut self, key: &str, value: impl fmt::Display) {
        self.fields.push((key.to_string(), value.to_string()));
    }

    pub fn line(&mut self, line: impl Into<String>) {
        self.lines.push(line.into());
    }

    /// Records a named check; the report passes only if every check does.
    pub fn check(&mut self, key: &str, ok: bool) {
        self.push(key, ok);
        self.pass &= ok;
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    /// Appends another report's fields under `prefix.` and its lines.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        self.pass &= other.pass;
        self.push(&format!("{prefix}.pass"), other.pass);
        for (k, v) in other.fields {
            self.fields.push((format!("{prefix}.{k}"), v));
        }
        self.lines.extend(other.lines);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", if self.pass { "PASS" } else { "FAIL" }, self.name)?;
        for (k, v) in &self.fields {
            write!(f, " {k}={v}")?;
        }
        for l in &self.lines {
            write!(f, "\n{l}")?;
        }
        Ok(())
    }
}

/// `k` with `den = p^k`, if any.
fn power_of(den: &BigInt, p: FieldChar) -> Option<u32> {
    let base = BigInt::from(p.get());
    let mut v = BigInt::one();
    let mut k = 0;
    while &v < den {
        v *= &base;
        k += 1;
    }
    (&v == den).then_some(k)
}

/// `num/p^k` when the reduced denominator is a power of `p`, else `num/den`.
pub fn format_rational(r: &BigRational, p: FieldChar) -> String {
    if r.is_zero() {
        return "0".into();
    }
    match power_of(r.denom(), p) {
        Some(0) => r.numer().to_string(),
        Some(k) => format!("{}/{}^{}", r.numer(), p, k),
        None => format!("{}/{}", r.numer(), r.denom()),
    }
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
