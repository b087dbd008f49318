//! Text, CSV and JSON renderings of polynomials, values and node sets.

use std::fmt::Write as _;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use xoplab_core::poly::{CPoly, Poly, Rational};
use xoplab_core::rootfind::NodeSet;

use crate::target::{parse_rational, Evaluated};
use crate::UsageError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// `p/q`, or `p` when the denominator is one.
pub fn rational_string(q: &Rational) -> String {
    q.to_string()
}

/// Shortest decimal that parses back to the same `f64`, with `-0` folded
/// to `0` and exponent notation for very small or large magnitudes.
pub fn float_string(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let s = format!("{v:?}");
    match s.strip_suffix(".0") {
        Some(t) => t.to_string(),
        None => s,
    }
}

fn complex_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn complex_from_json(v: &Value) -> Option<Complex64> {
    let a = v.as_array()?;
    match a.as_slice() {
        [re, im] => Some(Complex64::new(re.as_f64()?, im.as_f64()?)),
        _ => None,
    }
}

impl Evaluated {
    pub fn to_text(&self) -> String {
        match self {
            Evaluated::Exact(p) => p.to_string(),
            Evaluated::Float(p) => p.to_string(),
        }
    }

    pub fn to_json(&self, target: &str, method: &str) -> Value {
        match self {
            Evaluated::Exact(p) => json!({
                "target": target,
                "method": method,
                "kind": "exact",
                "coefficients": p.coeffs().iter().map(rational_string).collect::<Vec<_>>(),
            }),
            Evaluated::Float(p) => json!({
                "target": target,
                "method": method,
                "kind": "float",
                "coefficients": p.coeffs().iter().map(|&c| complex_json(c)).collect::<Vec<_>>(),
            }),
        }
    }

    /// `power,coefficient` for exact coefficients, `power,re,im` otherwise.
    pub fn to_csv(&self) -> anyhow::Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        match self {
            Evaluated::Exact(p) => {
                w.write_record(["power", "coefficient"])?;
                for (j, c) in p.coeffs().iter().enumerate() {
                    w.write_record([j.to_string(), rational_string(c)])?;
                }
            }
            Evaluated::Float(p) => {
                w.write_record(["power", "re", "im"])?;
                for (j, c) in p.coeffs().iter().enumerate() {
                    w.write_record([j.to_string(), float_string(c.re), float_string(c.im)])?;
                }
            }
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }

    pub fn from_json(v: &Value) -> Result<Self, UsageError> {
        let bad = || UsageError("malformed coefficient JSON".into());
        let coeffs = v.get("coefficients").and_then(Value::as_array).ok_or_else(bad)?;
        match v.get("kind").and_then(Value::as_str) {
            Some("exact") => {
                let c = coeffs
                    .iter()
                    .map(|c| c.as_str().ok_or_else(bad).and_then(parse_rational))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Evaluated::Exact(Poly::new(c)))
            }
            Some("float") => {
                let c = coeffs
                    .iter()
                    .map(|c| complex_from_json(c).ok_or_else(bad))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Evaluated::Float(Poly::new(c)))
            }
            _ => Err(bad()),
        }
    }

    pub fn from_csv(text: &str) -> Result<Self, UsageError> {
        let bad = |what: &str| UsageError(format!("malformed coefficient CSV: {what}"));
        let mut r = csv::Reader::from_reader(text.as_bytes());
        let headers = r.headers().map_err(|e| bad(&e.to_string()))?.clone();
        let exact = match headers.len() {
            2 => true,
            3 => false,
            _ => return Err(bad("unexpected header")),
        };
        let mut rat = Vec::new();
        let mut flt = Vec::new();
        for (j, rec) in r.records().enumerate() {
            let rec = rec.map_err(|e| bad(&e.to_string()))?;
            if rec.get(0).and_then(|p| p.parse::<usize>().ok()) != Some(j) {
                return Err(bad("powers out of order"));
            }
            if exact {
                rat.push(parse_rational(&rec[1])?);
            } else {
                let re = f64::from_str(&rec[1]).map_err(|_| bad("re"))?;
                let im = f64::from_str(&rec[2]).map_err(|_| bad("im"))?;
                flt.push(Complex64::new(re, im));
            }
        }
        Ok(if exact {
            Evaluated::Exact(Poly::new(rat))
        } else {
            Evaluated::Float(Poly::new(flt))
        })
    }
}

/// An evaluation point: exact when it parses as a rational.
#[derive(Debug, Clone, PartialEq)]
pub enum Point {
    Exact(Rational),
    Complex(Complex64),
}

impl FromStr for Point {
    type Err = UsageError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Ok(q) = parse_rational(s) {
            return Ok(Point::Exact(q));
        }
        parse_complex(s).map(Point::Complex)
    }
}

impl Point {
    pub fn label(&self) -> String {
        match self {
            Point::Exact(q) => rational_string(q),
            Point::Complex(z) => xoplab_core::poly::format_complex(*z),
        }
    }

    fn as_complex(&self) -> Complex64 {
        match self {
            Point::Exact(q) => Complex64::new(xoplab_core::poly::rational_to_f64(q), 0.0),
            Point::Complex(z) => *z,
        }
    }
}

/// Accepts `a`, `bi`, `a+bi`, `a-bi`, with `i` alone meaning `1i`.
pub fn parse_complex(s: &str) -> Result<Complex64, UsageError> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || UsageError(format!("'{s}' is not a complex number"));
    let Some(body) = t.strip_suffix('i') else {
        return f64::from_str(&t).map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    // split at the last sign that is not part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        v => f64::from_str(v).map_err(|_| bad())?,
    };
    let re = f64::from_str(re).map_err(|_| bad())?;
    Ok(Complex64::new(re, im))
}

/// The value of `p` at `x`: exact for an exact polynomial at a rational point.
pub fn value_at(p: &Evaluated, x: &Point) -> ValueOut {
    match (p, x) {
        (Evaluated::Exact(p), Point::Exact(q)) => ValueOut::Exact(p.evaluate(q)),
        (Evaluated::Exact(p), Point::Complex(_)) => {
            ValueOut::Float(p.to_complex().evaluate(&x.as_complex()))
        }
        (Evaluated::Float(p), _) => ValueOut::Float(p.evaluate(&x.as_complex())),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ValueOut {
    Exact(Rational),
    Float(Complex64),
}

impl ValueOut {
    pub fn text(&self) -> String {
        match self {
            ValueOut::Exact(q) => rational_string(q),
            ValueOut::Float(z) => xoplab_core::poly::format_complex(*z),
        }
    }

    pub fn json(&self) -> Value {
        match self {
            ValueOut::Exact(q) => Value::String(rational_string(q)),
            ValueOut::Float(z) => complex_json(*z),
        }
    }
}

pub fn values_csv(points: &[Point], values: &[ValueOut]) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["x", "value"])?;
    for (x, v) in points.iter().zip(values) {
        w.write_record([x.label(), v.text()])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

/// One row per node in canonical order: `re,im,source`.
pub fn zeros_csv(nodes: &NodeSet) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["re", "im", "source"])?;
    for z in nodes.points() {
        w.write_record([float_string(z.re), float_string(z.im), nodes.source().to_string()])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn zeros_json(nodes: &NodeSet) -> Value {
    json!({
        "source": nodes.source(),
        "zeros": nodes.points().iter().map(|&z| complex_json(z)).collect::<Vec<_>>(),
    })
}

pub fn zeros_text(nodes: &NodeSet) -> String {
    let mut out = String::new();
    for z in nodes.points() {
        let _ = writeln!(out, "{}\t{}", float_string(z.re), float_string(z.im));
    }
    out
}

/// Coefficient `j` of either kind, as a table cell.
pub fn coefficient_cell(p: &Evaluated, j: usize) -> String {
    match p {
        Evaluated::Exact(p) => rational_string(&p.coeff(j)),
        Evaluated::Float(p) => xoplab_core::poly::format_complex(p.coeff(j)),
    }
}

pub fn coefficient_count(p: &Evaluated) -> usize {
    match p {
        Evaluated::Exact(p) => p.coeffs().len(),
        Evaluated::Float(p) => p.coeffs().len(),
    }
}

/// Floating-point view used for side-by-side differences.
pub fn as_complex_poly(p: &Evaluated) -> CPoly {
    match p {
        Evaluated::Exact(p) => p.to_complex(),
        Evaluated::Float(p) => p.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("1+2i").unwrap(), Complex64::new(1.0, 2.0));
        assert_eq!(parse_complex("-i").unwrap(), Complex64::new(0.0, -1.0));
        assert_eq!(parse_complex("0.5i").unwrap(), Complex64::new(0.0, 0.5));
        assert_eq!(parse_complex("1e-3-2e+1i").unwrap(), Complex64::new(1e-3, -20.0));
        assert!(parse_complex("abc").is_err());
    }

    #[test]
    fn negative_zero_prints_as_zero() {
        assert_eq!(float_string(-0.0), "0");
        assert_eq!(float_string(0.1), "0.1");
        assert_eq!(float_string(3.0), "3");
        assert_eq!(float_string(1.5e-20), "1.5e-20");
        assert_eq!(float_string(1.5e-20).parse::<f64>().unwrap(), 1.5e-20);
    }
}
