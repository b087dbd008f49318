use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use xoplab::config::{Corruption, RunConfig};
use xoplab::output::{Format, Point};
use xoplab::suites::{run_suites, Suite};
use xoplab::target::{parse_partition, parse_rational, Descriptor, Route, Target};
use xoplab::{commands, UsageError};
use xoplab_core::det::DetOptions;
use xoplab_core::rootfind::RootOptions;

#[derive(Parser)]
#[command(name = "xoplab", version, about = "Exceptional orthogonal polynomials: evaluation, zeros and formula verification")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct DescArgs {
    /// laguerre, jacobi-classical, hermite, genhermite, lag1, lag2, lag3, jacobi, hermite11, xhermite
    #[arg(long)]
    family: String,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    n: Option<u32>,
    /// Rational: `p`, `p/q` or a finite decimal
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    /// Comma-separated parts, largest first
    #[arg(long)]
    partition: Option<String>,
}

impl DescArgs {
    fn descriptor(&self) -> Result<Descriptor, UsageError> {
        Ok(Descriptor {
            family: self.family.clone(),
            m: self.m,
            n: self.n,
            alpha: self.alpha.as_deref().map(parse_rational).transpose()?,
            beta: self.beta.as_deref().map(parse_rational).transpose()?,
            partition: self.partition.as_deref().map(parse_partition).transpose()?,
        })
    }
}

#[derive(Args, Clone)]
struct OutArgs {
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print a polynomial or its values
    Eval {
        #[command(flatten)]
        desc: DescArgs,
        /// product, integral, wronskian, closed_form or det
        #[arg(long)]
        method: Option<String>,
        /// Evaluation point, rational or complex like `1-2i`; repeatable
        #[arg(long, allow_hyphen_values = true)]
        at: Vec<String>,
        /// Print exact coefficients as well as values
        #[arg(long)]
        coeffs: bool,
        /// Root tolerance for the determinantal route
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Zeros in canonical order (default CSV: re,im,source)
    Zeros {
        #[command(flatten)]
        desc: DescArgs,
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Run the verification suites
    Verify {
        /// Largest m in the grid
        #[arg(long)]
        m: Option<u32>,
        /// Largest n in the grid
        #[arg(long)]
        n: Option<u32>,
        /// Root-finder tolerance
        #[arg(long)]
        tol: Option<f64>,
        /// Replace the degree-dependent determinantal agreement tolerance
        #[arg(long)]
        agreement_tol: Option<f64>,
        /// Worker threads (0 = all cores)
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Seed for the node permutations
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Node permutations per spec
        #[arg(long, default_value_t = 20)]
        permutations: usize,
        /// Only these suites (repeatable)
        #[arg(long)]
        suite: Vec<String>,
        /// Record per-case wall time (makes output nondeterministic)
        #[arg(long)]
        timings: bool,
        /// FAMILY:FACTOR, multiplies one family's constant (negative control)
        #[arg(long, hide = true)]
        corrupt: Option<String>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Several methods side by side
    Compare {
        #[command(flatten)]
        desc: DescArgs,
        /// Methods to compare (repeatable); default all of the family's
        #[arg(long)]
        method: Vec<String>,
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Coefficient table over a range of n (`--n` is the upper end)
    Table {
        #[command(flatten)]
        desc: DescArgs,
        #[arg(long, default_value_t = 0)]
        n_min: u32,
        #[arg(long)]
        method: Option<String>,
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        out: OutArgs,
    },
}

fn root_options(tol: Option<f64>) -> Result<RootOptions, UsageError> {
    let mut r = RootOptions {
        max_degree: xoplab::config::degree_cap()?,
        ..RootOptions::default()
    };
    if let Some(t) = tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(UsageError(format!("--tol must be positive (got {t})")));
        }
        r.tol = t;
    }
    Ok(r)
}

fn det_options(tol: Option<f64>) -> Result<DetOptions, UsageError> {
    Ok(DetOptions {
        roots: root_options(tol)?,
        ..DetOptions::default()
    })
}

fn emit(text: &str, out: &OutArgs) -> anyhow::Result<()> {
    match &out.out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn target(desc: &DescArgs) -> Result<Target, UsageError> {
    desc.descriptor()?.resolve()
}

fn suite_named(name: &str) -> Result<Suite, UsageError> {
    Suite::ALL
        .into_iter()
        .find(|s| s.name() == name)
        .ok_or_else(|| {
            let names: Vec<_> = Suite::ALL.iter().map(|s| s.name()).collect();
            UsageError(format!("unknown suite '{name}' (one of {})", names.join(", ")))
        })
}

/// Returns whether the command succeeded in the exit-code sense.
fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.cmd {
        Cmd::Eval { desc, method, at, coeffs, tol, out } => {
            let t = target(&desc)?;
            let route = match method {
                Some(m) => m.parse::<Route>()?,
                None => t.default_route(),
            };
            let points = at.iter().map(|s| s.parse::<Point>()).collect::<Result<Vec<_>, _>>()?;
            let text = commands::eval(&t, route, &points, coeffs, out.format.unwrap_or(Format::Text), &det_options(tol)?)?;
            emit(&text, &out)?;
        }
        Cmd::Zeros { desc, tol, out } => {
            let text = commands::zeros(&target(&desc)?, &root_options(tol)?, out.format.unwrap_or(Format::Csv))?;
            emit(&text, &out)?;
        }
        Cmd::Compare { desc, method, tol, out } => {
            let t = target(&desc)?;
            let routes = if method.is_empty() {
                t.routes()
            } else {
                method.iter().map(|m| m.parse::<Route>()).collect::<Result<Vec<_>, _>>()?
            };
            let text = commands::compare(&t, &routes, out.format.unwrap_or(Format::Text), &det_options(tol)?)?;
            emit(&text, &out)?;
        }
        Cmd::Table { desc, n_min, method, tol, out } => {
            let d = desc.descriptor()?;
            let n_max = d.n.ok_or_else(|| UsageError("--n (the largest degree) is required".into()))?;
            let route = method.map(|m| m.parse::<Route>()).transpose()?;
            let text = commands::table(&d, n_min, n_max, route, out.format.unwrap_or(Format::Csv), &det_options(tol)?)?;
            emit(&text, &out)?;
        }
        Cmd::Verify { m, n, tol, agreement_tol, jobs, seed, permutations, suite, timings, corrupt, out } => {
            let mut cfg = match (m, n) {
                (None, None) => RunConfig::default(),
                (m, n) => {
                    let d = RunConfig::default();
                    RunConfig::bounded(m.unwrap_or(d.m_max), n.unwrap_or(d.n_max))
                }
            };
            if let Some(t) = tol {
                cfg.root_tol = t;
            }
            cfg.agreement_tol = agreement_tol;
            cfg.jobs = jobs;
            cfg.seed = seed;
            cfg.permutations = permutations;
            cfg.timings = timings;
            cfg.format = out.format.unwrap_or(Format::Text);
            if let Some(c) = corrupt {
                let (family, factor) = c
                    .split_once(':')
                    .ok_or_else(|| UsageError("--corrupt takes FAMILY:FACTOR".into()))?;
                cfg.corrupt = Some(Corruption {
                    family: family.to_string(),
                    factor: factor.to_string(),
                });
            }
            let suites = if suite.is_empty() {
                Suite::ALL.to_vec()
            } else {
                suite.iter().map(|s| suite_named(s)).collect::<Result<Vec<_>, _>>()?
            };
            let report = run_suites(&suites, &cfg)?;
            emit(&report.render(cfg.format)?, &out)?;
            let t = &report.totals;
            eprintln!(
                "{}: {} cases, {} pass, {} fail, {} skipped, {} refused",
                report.suite, t.cases, t.pass, t.fail, t.skipped, t.refused
            );
            return Ok(report.success());
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
