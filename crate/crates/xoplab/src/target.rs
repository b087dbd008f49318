//! Parsing command-line descriptors into polynomials.

use std::str::FromStr;

use num_traits::Zero;
use xoplab_core::classical::{generalized_hermite, Partition};
use xoplab_core::det::{det_xop_with, DetOptions};
use xoplab_core::poly::{CPoly, RatPoly, Rational};
use xoplab_core::rootfind::{family_zeros, zeros_exact, ClassicalFamily, NodeSet, RootOptions};
use xoplab_core::xop::{evaluate, Family, Method, XopSpec};

use crate::UsageError;

pub const FAMILIES: &[&str] = &[
    "laguerre",
    "jacobi-classical",
    "hermite",
    "genhermite",
    "lag1",
    "lag2",
    "lag3",
    "jacobi",
    "hermite11",
    "xhermite",
];

/// Raw descriptor fields as given on the command line.
#[derive(Debug, Clone, Default)]
pub struct Descriptor {
    pub family: String,
    pub m: Option<u32>,
    pub n: Option<u32>,
    pub alpha: Option<Rational>,
    pub beta: Option<Rational>,
    pub partition: Option<Partition>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Target {
    Classical(ClassicalFamily, u32),
    GenHermite(Partition),
    Xop(XopSpec),
}

/// How a polynomial is produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    Exact(Method),
    Determinant,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::Exact(m) => m.name(),
            Route::Determinant => "det",
        }
    }
}

impl FromStr for Route {
    type Err = UsageError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "det" {
            return Ok(Route::Determinant);
        }
        Method::parse(s)
            .map(Route::Exact)
            .ok_or_else(|| UsageError(format!("unknown method '{s}' (product, integral, wronskian, closed_form, det)")))
    }
}

/// Either exact coefficients or floating-point ones.
#[derive(Debug, Clone, PartialEq)]
pub enum Evaluated {
    Exact(RatPoly),
    Float(CPoly),
}

/// Parses a rational from `p`, `p/q` or a finite decimal such as `-0.25`.
pub fn parse_rational(s: &str) -> Result<Rational, UsageError> {
    let s = s.trim();
    let bad = || UsageError(format!("'{s}' is not a rational number"));
    if let Some((p, q)) = s.split_once('/') {
        let p: num_bigint::BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: num_bigint::BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(UsageError(format!("'{s}' has a zero denominator")));
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = format!("{whole}{frac}");
        let num: num_bigint::BigInt = digits.parse().map_err(|_| bad())?;
        let den = num_bigint::BigInt::from(10u32).pow(frac.len() as u32);
        return Ok(Rational::new(num, den));
    }
    let p: num_bigint::BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(p))
}

pub fn parse_partition(s: &str) -> Result<Partition, UsageError> {
    let parts = s
        .split(',')
        .map(|p| p.trim().parse::<u32>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| UsageError(format!("'{s}' is not a comma-separated list of parts")))?;
    Partition::new(parts).map_err(|e| UsageError(format!("partition {s}: {e}")))
}

fn need<T: Clone>(v: &Option<T>, flag: &str, family: &str) -> Result<T, UsageError> {
    v.clone()
        .ok_or_else(|| UsageError(format!("--{flag} is required for family {family}")))
}

impl Descriptor {
    /// Builds and validates the target.
    pub fn resolve(&self) -> Result<Target, UsageError> {
        let target = self.build()?;
        if let Target::Xop(spec) = &target {
            spec.validate().map_err(|e| UsageError(e.to_string()))?;
        }
        Ok(target)
    }

    /// Builds the target without checking the exceptional parameter constraints.
    pub fn build(&self) -> Result<Target, UsageError> {
        let f = self.family.as_str();
        let n = || need(&self.n, "n", f);
        let m = || need(&self.m, "m", f);
        let alpha = || need(&self.alpha, "alpha", f);
        let beta = || need(&self.beta, "beta", f);
        let target = match f {
            "laguerre" => Target::Classical(ClassicalFamily::Laguerre(alpha()?), n()?),
            "jacobi-classical" => Target::Classical(ClassicalFamily::Jacobi(alpha()?, beta()?), n()?),
            "hermite" => Target::Classical(ClassicalFamily::Hermite, n()?),
            "genhermite" => Target::GenHermite(need(&self.partition, "partition", f)?),
            "lag1" => Target::Xop(XopSpec::lag1(m()?, n()?, alpha()?)),
            "lag2" => Target::Xop(XopSpec::lag2(m()?, n()?, alpha()?)),
            "lag3" => Target::Xop(XopSpec::lag3(m()?, n()?, alpha()?)),
            "jacobi" => Target::Xop(XopSpec::jacobi(m()?, n()?, alpha()?, beta()?)),
            "hermite11" => Target::Xop(XopSpec::hermite11(n()?)),
            "xhermite" => Target::Xop(XopSpec::hermite(need(&self.partition, "partition", f)?, n()?)),
            other => {
                return Err(UsageError(format!(
                    "unknown family '{other}' (one of {})",
                    FAMILIES.join(", ")
                )))
            }
        };
        Ok(target)
    }
}

impl Target {
    pub fn describe(&self) -> String {
        match self {
            Target::Classical(f, n) => f.describe(*n),
            Target::GenHermite(p) => format!("H_({p})"),
            Target::Xop(s) => s.descriptor(),
        }
    }

    pub fn routes(&self) -> Vec<Route> {
        match self {
            Target::Xop(s) => {
                let mut r: Vec<Route> = s.family.methods().iter().map(|&m| Route::Exact(m)).collect();
                if !matches!(s.family, Family::HermiteGeneral(_)) {
                    r.push(Route::Determinant);
                }
                r
            }
            Target::Classical(..) => vec![Route::Exact(Method::Product)],
            Target::GenHermite(_) => vec![Route::Exact(Method::Wronskian)],
        }
    }

    pub fn default_route(&self) -> Route {
        match self {
            Target::Xop(s) => Route::Exact(s.family.default_method()),
            _ => self.routes()[0],
        }
    }

    /// The exact polynomial; `method` only matters for exceptional families.
    pub fn exact(&self, method: Method) -> Result<RatPoly, UsageError> {
        match self {
            Target::Classical(f, n) => Ok(f.polynomial(*n)),
            Target::GenHermite(p) => Ok(generalized_hermite(p)),
            Target::Xop(s) => evaluate(s, method).map_err(|e| UsageError(e.to_string())),
        }
    }

    pub fn compute(&self, route: Route, opts: &DetOptions) -> anyhow::Result<Evaluated> {
        match (route, self) {
            (Route::Exact(m), _) => Ok(Evaluated::Exact(self.exact(m)?)),
            (Route::Determinant, Target::Xop(s)) => Ok(Evaluated::Float(det_xop_with(s, opts)?)),
            (Route::Determinant, _) => {
                Err(UsageError(format!("no determinantal formula for {}", self.describe())).into())
            }
        }
    }

    pub fn zeros(&self, opts: &RootOptions) -> anyhow::Result<NodeSet> {
        let nodes = match self {
            Target::Classical(f, n) => family_zeros(f, *n, opts)?,
            Target::GenHermite(p) => zeros_exact(&generalized_hermite(p), opts, self.describe())?,
            Target::Xop(s) => {
                let p = evaluate(s, s.family.default_method()).map_err(|e| UsageError(e.to_string()))?;
                zeros_exact(&p, opts, self.describe())?
            }
        };
        Ok(nodes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use xoplab_core::poly::rat;

    #[test]
    fn rationals_parse_in_three_shapes() {
        assert_eq!(parse_rational("7/3").unwrap(), rat(7, 3));
        assert_eq!(parse_rational("-0.25").unwrap(), rat(-1, 4));
        assert_eq!(parse_rational("2").unwrap(), rat(2, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn violated_constraint_is_named() {
        let d = Descriptor {
            family: "lag2".into(),
            m: Some(3),
            n: Some(4),
            alpha: Some(rat(1, 2)),
            ..Default::default()
        };
        let err = d.resolve().unwrap_err().to_string();
        assert!(err.contains("alpha > m-1"), "{err}");
    }

    #[test]
    fn missing_flag_is_named() {
        let d = Descriptor {
            family: "laguerre".into(),
            n: Some(2),
            ..Default::default()
        };
        assert!(d.resolve().unwrap_err().to_string().contains("--alpha"));
    }
}
