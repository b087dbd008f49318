//! Verification reports and their serializations.

use std::fmt::Write as _;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;
use xoplab_core::check::{CaseOutcome, Residual, Status};

use crate::config::RunConfig;
use crate::output::{float_string, Format};

fn status_from_str(s: &str) -> Option<Status> {
    [Status::Pass, Status::Fail, Status::Skipped, Status::Refused]
        .into_iter()
        .find(|st| st.as_str() == s)
}

mod status_serde {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Status, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(v.as_str())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Status, D::Error> {
        let raw = String::deserialize(d)?;
        status_from_str(&raw).ok_or_else(|| D::Error::custom(format!("unknown status {raw}")))
    }
}

/// Residual as written to a report: `"exact-zero"`, an exact nonzero
/// polynomial as text, a float, or nothing.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualValue(pub Residual);

impl ResidualValue {
    pub fn text(&self) -> String {
        match &self.0 {
            Residual::ExactZero => "exact-zero".into(),
            Residual::ExactNonzero(p) => p.clone(),
            Residual::Float(v) => float_string(*v),
            Residual::None => String::new(),
        }
    }
}

impl Serialize for ResidualValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match &self.0 {
            Residual::Float(v) if v.is_finite() => s.serialize_f64(*v),
            Residual::None => s.serialize_none(),
            _ => s.serialize_str(&self.text()),
        }
    }
}

impl<'de> Deserialize<'de> for ResidualValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(ResidualValue(match Value::deserialize(d)? {
            Value::Null => Residual::None,
            Value::Number(n) => Residual::Float(n.as_f64().ok_or_else(|| D::Error::custom("bad number"))?),
            Value::String(s) => match s.as_str() {
                "exact-zero" => Residual::ExactZero,
                "inf" => Residual::Float(f64::INFINITY),
                "-inf" => Residual::Float(f64::NEG_INFINITY),
                "NaN" => Residual::Float(f64::NAN),
                _ => Residual::ExactNonzero(s),
            },
            other => return Err(D::Error::custom(format!("unexpected residual {other}"))),
        }))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseRecord {
    pub group: String,
    pub spec: String,
    pub check: String,
    #[serde(with = "status_serde")]
    pub status: Status,
    pub residual: ResidualValue,
    pub tolerance: Option<f64>,
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wall_ms: Option<f64>,
}

impl CaseRecord {
    pub fn new(group: &str, c: CaseOutcome) -> Self {
        Self {
            group: group.to_string(),
            spec: c.spec,
            check: c.check,
            status: c.status,
            residual: ResidualValue(c.residual),
            tolerance: c.tolerance,
            detail: c.detail,
            wall_ms: None,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Totals {
    pub cases: usize,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub refused: usize,
}

impl Totals {
    pub fn count(cases: &[CaseRecord]) -> Self {
        let mut t = Totals {
            cases: cases.len(),
            ..Default::default()
        };
        for c in cases {
            match c.status {
                Status::Pass => t.pass += 1,
                Status::Fail => t.fail += 1,
                Status::Skipped => t.skipped += 1,
                Status::Refused => t.refused += 1,
            }
        }
        t
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub config: RunConfig,
    pub cases: Vec<CaseRecord>,
    pub totals: Totals,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, config: RunConfig, cases: Vec<CaseRecord>) -> Self {
        let totals = Totals::count(&cases);
        Self {
            suite: suite.into(),
            config,
            cases,
            totals,
        }
    }

    /// Exit code contract: success iff nothing failed.
    pub fn success(&self) -> bool {
        self.totals.fail == 0
    }

    pub fn consistent(&self) -> bool {
        self.totals == Totals::count(&self.cases)
    }

    pub fn render(&self, format: Format) -> anyhow::Result<String> {
        Ok(match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self)?;
                s.push('\n');
                s
            }
            Format::Csv => self.to_csv()?,
            Format::Text => self.to_text(),
        })
    }

    fn to_csv(&self) -> anyhow::Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let timed = self.cases.iter().any(|c| c.wall_ms.is_some());
        let mut header = vec!["group", "spec", "check", "status", "residual", "tolerance", "detail"];
        if timed {
            header.push("wall_ms");
        }
        w.write_record(&header)?;
        for c in &self.cases {
            let mut row = vec![
                c.group.clone(),
                c.spec.clone(),
                c.check.clone(),
                c.status.as_str().to_string(),
                c.residual.text(),
                c.tolerance.map(float_string).unwrap_or_default(),
                c.detail.clone().unwrap_or_default(),
            ];
            if timed {
                row.push(c.wall_ms.map(float_string).unwrap_or_default());
            }
            w.write_record(&row)?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }

    fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.cases {
            let _ = write!(out, "{:<8} {:<12} {:<40} {}", c.status.as_str(), c.group, c.spec, c.check);
            let r = c.residual.text();
            if !r.is_empty() {
                let _ = write!(out, "  residual {r}");
            }
            if let Some(t) = c.tolerance {
                let _ = write!(out, " (tol {})", float_string(t));
            }
            if let Some(d) = &c.detail {
                let _ = write!(out, "  [{d}]");
            }
            if let Some(ms) = c.wall_ms {
                let _ = write!(out, "  {ms:.1} ms");
            }
            out.push('\n');
        }
        let t = &self.totals;
        let _ = writeln!(
            out,
            "{}: {} cases, {} pass, {} fail, {} skipped, {} refused",
            self.suite, t.cases, t.pass, t.fail, t.skipped, t.refused
        );
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(status: Status, residual: Residual) -> CaseRecord {
        CaseRecord {
            group: "det".into(),
            spec: "lag1 m=1 n=2 alpha=1".into(),
            check: "det-vs-exact".into(),
            status,
            residual: ResidualValue(residual),
            tolerance: Some(1e-10),
            detail: None,
            wall_ms: None,
        }
    }

    #[test]
    fn json_round_trip_keeps_every_residual_kind() {
        let cases = vec![
            record(Status::Pass, Residual::ExactZero),
            record(Status::Fail, Residual::ExactNonzero("x + 1".into())),
            record(Status::Pass, Residual::Float(3.5e-12)),
            record(Status::Fail, Residual::Float(f64::INFINITY)),
            record(Status::Skipped, Residual::None),
            record(Status::Refused, Residual::None),
        ];
        let report = VerificationReport::new("det", RunConfig::bounded(1, 2), cases);
        let text = report.render(Format::Json).unwrap();
        let back: VerificationReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, report);
        assert!(back.consistent());
        assert_eq!(
            back.totals,
            Totals { cases: 6, pass: 2, fail: 2, skipped: 1, refused: 1 }
        );
        assert!(!back.success());
    }

    #[test]
    fn tampered_totals_are_inconsistent() {
        let mut r = VerificationReport::new("det", RunConfig::default(), vec![record(Status::Pass, Residual::ExactZero)]);
        assert!(r.consistent() && r.success());
        r.totals.pass = 0;
        assert!(!r.consistent());
    }

    #[test]
    fn csv_has_one_row_per_case() {
        let r = VerificationReport::new("det", RunConfig::default(), vec![record(Status::Pass, Residual::Float(1e-12)); 3]);
        let csv = r.render(Format::Csv).unwrap();
        assert_eq!(csv.lines().count(), 4);
        assert!(csv.starts_with("group,spec,check,status,residual,tolerance,detail\n"));
    }
}
