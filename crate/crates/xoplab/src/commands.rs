//! The non-verification subcommands, rendering to strings.

use std::fmt::Write as _;

use serde_json::{json, Value};
use xoplab_core::det::{compare_coefficients, DetOptions};
use xoplab_core::rootfind::RootOptions;
use xoplab_core::xop::XopError;

use crate::output::{
    as_complex_poly, coefficient_cell, coefficient_count, float_string, value_at, values_csv,
    zeros_csv, zeros_json, zeros_text, Format, Point,
};
use crate::target::{Descriptor, Evaluated, Route, Target};
use crate::UsageError;

fn json_text(v: &Value) -> anyhow::Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

/// `eval`: the polynomial, its values at `points`, or both.
pub fn eval(
    target: &Target,
    route: Route,
    points: &[Point],
    coeffs: bool,
    format: Format,
    opts: &DetOptions,
) -> anyhow::Result<String> {
    let p = target.compute(route, opts)?;
    let show_coeffs = coeffs || points.is_empty();
    let values: Vec<_> = points.iter().map(|x| value_at(&p, x)).collect();
    match format {
        Format::Text => {
            let mut out = String::new();
            if show_coeffs {
                writeln!(out, "{}", p.to_text())?;
            }
            for v in &values {
                writeln!(out, "{}", v.text())?;
            }
            Ok(out)
        }
        Format::Csv => {
            if coeffs && !points.is_empty() {
                return Err(UsageError("csv output takes either --coeffs or --at, not both".into()).into());
            }
            if points.is_empty() {
                p.to_csv()
            } else {
                values_csv(points, &values)
            }
        }
        Format::Json => {
            let mut v = p.to_json(&target.describe(), route.name());
            if !show_coeffs {
                v.as_object_mut().expect("object").remove("coefficients");
            }
            if !points.is_empty() {
                v["values"] = points
                    .iter()
                    .zip(&values)
                    .map(|(x, y)| json!({"x": x.label(), "value": y.json()}))
                    .collect();
            }
            json_text(&v)
        }
    }
}

/// `zeros`: the node set in canonical order.
pub fn zeros(target: &Target, roots: &RootOptions, format: Format) -> anyhow::Result<String> {
    let nodes = target.zeros(roots)?;
    match format {
        Format::Csv => zeros_csv(&nodes),
        Format::Json => json_text(&zeros_json(&nodes)),
        Format::Text => Ok(zeros_text(&nodes)),
    }
}

/// `compare`: several routes side by side, with each route's worst relative
/// coefficient difference from the exact default route.
pub fn compare(
    target: &Target,
    routes: &[Route],
    format: Format,
    opts: &DetOptions,
) -> anyhow::Result<String> {
    let Route::Exact(base) = target.default_route() else {
        unreachable!("default routes are exact")
    };
    let reference = target.exact(base)?;
    let results = routes
        .iter()
        .map(|&r| target.compute(r, opts))
        .collect::<anyhow::Result<Vec<_>>>()?;
    let diffs: Vec<f64> = results
        .iter()
        .map(|p| match p {
            Evaluated::Exact(q) if *q == reference => 0.0,
            _ => compare_coefficients(&as_complex_poly(p), &reference).max_rel_err,
        })
        .collect();
    let rows = results.iter().map(coefficient_count).max().unwrap_or(0);
    match format {
        Format::Json => json_text(&json!({
            "target": target.describe(),
            "reference": base.name(),
            "results": results
                .iter()
                .zip(routes)
                .zip(&diffs)
                .map(|((p, r), d)| {
                    let mut v = p.to_json(&target.describe(), r.name());
                    v["max_rel_diff"] = json!(d);
                    v
                })
                .collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let mut header = vec!["power".to_string()];
            header.extend(routes.iter().map(|r| r.name().to_string()));
            w.write_record(&header)?;
            for j in 0..rows {
                let mut row = vec![j.to_string()];
                row.extend(results.iter().map(|p| coefficient_cell(p, j)));
                w.write_record(&row)?;
            }
            Ok(String::from_utf8(w.into_inner()?)?)
        }
        Format::Text => {
            let mut out = String::new();
            writeln!(out, "{}", target.describe())?;
            write!(out, "{:>6}", "power")?;
            for r in routes {
                write!(out, "  {:>24}", r.name())?;
            }
            out.push('\n');
            for j in (0..rows).rev() {
                write!(out, "{j:>6}")?;
                for p in &results {
                    write!(out, "  {:>24}", coefficient_cell(p, j))?;
                }
                out.push('\n');
            }
            write!(out, "max relative difference from {}:", base.name())?;
            for (r, d) in routes.iter().zip(&diffs) {
                write!(out, " {} {}", r.name(), float_string(*d))?;
            }
            out.push('\n');
            Ok(out)
        }
    }
}

/// `table`: coefficients for every admissible `n` in `n_min..=n_max`.
pub fn table(
    desc: &Descriptor,
    n_min: u32,
    n_max: u32,
    route: Option<Route>,
    format: Format,
    opts: &DetOptions,
) -> anyhow::Result<String> {
    if desc.family == "genhermite" {
        return Err(UsageError("genhermite has no degree index; use eval".into()).into());
    }
    let mut entries = Vec::new();
    for n in n_min..=n_max {
        let d = Descriptor {
            n: Some(n),
            ..desc.clone()
        };
        let target = d.build()?;
        if let Target::Xop(spec) = &target {
            match spec.validate() {
                Ok(()) => {}
                // degrees missing from a family are skipped
                Err(XopError::DegreeGap { .. } | XopError::TypeThreeGap { .. } | XopError::NotAdmissible { .. }) => {
                    continue
                }
                Err(XopError::Constraint { family: "hermite11", .. }) if n < 3 => continue,
                Err(e) => return Err(UsageError(e.to_string()).into()),
            }
        }
        let route = route.unwrap_or_else(|| target.default_route());
        entries.push((n, target.describe(), route, target.compute(route, opts)?));
    }
    if entries.is_empty() {
        return Err(UsageError(format!("no admissible degree in {n_min}..={n_max}")).into());
    }
    match format {
        Format::Text => {
            let mut out = String::new();
            for (n, _, _, p) in &entries {
                writeln!(out, "n={n}\t{}", p.to_text())?;
            }
            Ok(out)
        }
        Format::Json => json_text(&Value::Array(
            entries
                .iter()
                .map(|(n, name, r, p)| {
                    let mut v = p.to_json(name, r.name());
                    v["n"] = json!(n);
                    v
                })
                .collect(),
        )),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let float = entries.iter().any(|e| matches!(e.3, Evaluated::Float(_)));
            if float {
                w.write_record(["target", "n", "power", "re", "im"])?;
            } else {
                w.write_record(["target", "n", "power", "coefficient"])?;
            }
            for (n, name, _, p) in &entries {
                for j in 0..coefficient_count(p) {
                    let mut row = vec![name.clone(), n.to_string(), j.to_string()];
                    match p {
                        Evaluated::Exact(q) => row.push(q.coeff(j).to_string()),
                        Evaluated::Float(c) => {
                            row.push(float_string(c.coeff(j).re));
                            row.push(float_string(c.coeff(j).im));
                        }
                    }
                    w.write_record(&row)?;
                }
            }
            Ok(String::from_utf8(w.into_inner()?)?)
        }
    }
}
