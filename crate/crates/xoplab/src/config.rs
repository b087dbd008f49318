//! Verification run configuration.

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use xoplab_core::classical::Partition;
use xoplab_core::poly::{int, rat, Rational};
use xoplab_core::rootfind::{RootOptions, HARD_DEGREE_CAP};
use xoplab_core::xop::{Family, XopGrid};

use crate::output::Format;
use crate::target::{parse_partition, parse_rational};
use crate::UsageError;

pub const MAX_DEGREE_ENV: &str = "XOPLAB_MAX_DEGREE";

/// The degree cap after applying `XOPLAB_MAX_DEGREE`, never above the hard cap.
pub fn degree_cap() -> Result<usize, UsageError> {
    match std::env::var(MAX_DEGREE_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map(|d| d.min(HARD_DEGREE_CAP))
            .map_err(|_| UsageError(format!("{MAX_DEGREE_ENV}='{v}' is not a non-negative integer"))),
        Err(_) => Ok(HARD_DEGREE_CAP),
    }
}

mod rationals {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|q| q.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

mod partitions {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Partition], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|p| {
            p.parts().iter().map(u32::to_string).collect::<Vec<_>>().join(",")
        }))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Partition>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| parse_partition(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// A corrupted constant factor, used only as a negative control.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Corruption {
    pub family: String,
    pub factor: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub m_max: u32,
    pub n_max: u32,
    /// Degree bound of the classical identity suite.
    pub identity_n_max: u32,
    /// Degree bound of the leading-coefficient suite.
    pub leading_n_max: u32,
    /// Even partitions up to this weight are checked for real zeros.
    pub even_weight_max: u32,
    #[serde(with = "rationals")]
    pub identity_alphas: Vec<Rational>,
    #[serde(with = "rationals")]
    pub identity_betas: Vec<Rational>,
    #[serde(with = "rationals")]
    pub lag1_alphas: Vec<Rational>,
    #[serde(with = "rationals")]
    pub lag2_alphas: Vec<Rational>,
    #[serde(with = "rationals")]
    pub lag3_alphas: Vec<Rational>,
    #[serde(with = "rationals")]
    pub jacobi_alphas: Vec<Rational>,
    #[serde(with = "rationals")]
    pub jacobi_betas: Vec<Rational>,
    #[serde(with = "partitions")]
    pub partitions: Vec<Partition>,
    pub root_tol: f64,
    /// Overrides the degree-dependent determinantal agreement tolerance.
    pub agreement_tol: Option<f64>,
    pub permutations: usize,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub corrupt: Option<Corruption>,
    #[serde(skip, default = "default_format")]
    pub format: Format,
    /// Worker threads; `0` uses every core. Not part of the report.
    #[serde(skip)]
    pub jobs: usize,
    #[serde(skip)]
    pub timings: bool,
}

fn default_format() -> Format {
    Format::Json
}

impl Default for RunConfig {
    fn default() -> Self {
        let grid = XopGrid::default();
        Self {
            m_max: 3,
            n_max: 12,
            identity_n_max: 10,
            leading_n_max: 10,
            even_weight_max: 8,
            identity_alphas: vec![rat(1, 2), int(1), rat(3, 2), int(2), rat(7, 3)],
            identity_betas: vec![rat(1, 2), int(1), rat(5, 2)],
            lag1_alphas: grid.lag1_alphas,
            lag2_alphas: grid.lag2_alphas,
            lag3_alphas: grid.lag3_alphas,
            jacobi_alphas: grid.jacobi_alphas,
            jacobi_betas: grid.jacobi_betas,
            partitions: grid.partitions,
            root_tol: RootOptions::default().tol,
            agreement_tol: None,
            permutations: 20,
            seed: 0,
            corrupt: None,
            format: Format::Json,
            jobs: 0,
            timings: false,
        }
    }
}

impl RunConfig {
    /// Shrinks every degree bound to at most `n_max` and the `m` range to `1..=m_max`.
    pub fn bounded(m_max: u32, n_max: u32) -> Self {
        let d = Self::default();
        Self {
            m_max,
            n_max,
            identity_n_max: d.identity_n_max.min(n_max),
            leading_n_max: d.leading_n_max.min(n_max),
            even_weight_max: d.even_weight_max.min(2 * n_max.max(1)),
            ..d
        }
    }

    pub fn validate(&self) -> Result<(), UsageError> {
        let cap = degree_cap()? as u32;
        let positive = |v: f64, name: &str| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(UsageError(format!("{name} must be positive (got {v})")))
            }
        };
        positive(self.root_tol, "root tolerance")?;
        if let Some(t) = self.agreement_tol {
            positive(t, "agreement tolerance")?;
        }
        if self.m_max < 1 {
            return Err(UsageError("m_max must be at least 1".into()));
        }
        for (v, name) in [
            (self.n_max, "n_max"),
            (self.m_max, "m_max"),
            (self.identity_n_max, "identity n_max"),
            (self.even_weight_max, "even partition weight"),
        ] {
            if v > cap {
                return Err(UsageError(format!("{name}={v} exceeds the degree cap {cap}")));
            }
        }
        if self.permutations == 0 {
            return Err(UsageError("at least one permutation is required".into()));
        }
        self.corruption()?;
        Ok(())
    }

    pub fn root_options(&self) -> Result<RootOptions, UsageError> {
        Ok(RootOptions {
            tol: self.root_tol,
            max_degree: degree_cap()?,
            ..RootOptions::default()
        })
    }

    pub fn grid(&self) -> XopGrid {
        XopGrid {
            m_values: (1..=self.m_max).collect(),
            n_max: self.n_max,
            lag1_alphas: self.lag1_alphas.clone(),
            lag2_alphas: self.lag2_alphas.clone(),
            lag3_alphas: self.lag3_alphas.clone(),
            jacobi_alphas: self.jacobi_alphas.clone(),
            jacobi_betas: self.jacobi_betas.clone(),
            partitions: self.partitions.clone(),
        }
    }

    /// The family and factor of a requested corruption.
    pub fn corruption(&self) -> Result<Option<(Family, Rational)>, UsageError> {
        let Some(c) = &self.corrupt else {
            return Ok(None);
        };
        let family = match c.family.as_str() {
            "lag1" => Family::LagI,
            "lag2" => Family::LagII,
            "lag3" => Family::LagIII,
            "jacobi" => Family::Jacobi,
            "hermite11" => Family::Hermite11,
            other => return Err(UsageError(format!("cannot corrupt family '{other}'"))),
        };
        Ok(Some((family, parse_rational(&c.factor)?)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_round_trips_through_json() {
        let c = RunConfig::default();
        let text = serde_json::to_string(&c).unwrap();
        let back: RunConfig = serde_json::from_str(&text).unwrap();
        assert_eq!(back, c);
        assert!(text.contains("\"7/3\""));
    }

    #[test]
    fn bad_bounds_are_rejected() {
        let mut c = RunConfig {
            n_max: 31,
            ..RunConfig::default()
        };
        assert!(c.validate().is_err());
        c.n_max = 12;
        c.root_tol = 0.0;
        assert!(c.validate().is_err());
    }
}
