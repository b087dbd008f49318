//! The verification suites and their deterministic parallel runner.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use xoplab_core::check::{CaseOutcome, Status};
use xoplab_core::classical::{check_classical_identities, IdentityGrid, Partition};
use xoplab_core::det::{
    agreement_tolerance, assemble, compare_coefficients, det_agreement_case_at, det_xop_with, kernel_case, leading_coefficient_case,
    permutation_case, resolve_type2_constant, type2_constant_case, DetOptions, TYPE2_READING,
};
use xoplab_core::poly::Rational;
use xoplab_core::rootfind::{check_even_partition_no_real_zeros, check_zero_theorems, HARD_DEGREE_CAP};
use xoplab_core::xop::{evaluate, path_agreement_cases, relation_cases, Family, XopSpec};

use crate::config::RunConfig;
use crate::report::{CaseRecord, VerificationReport};
use crate::UsageError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Classical,
    Zeros,
    Paths,
    Relations,
    Det,
    Leading,
    Kernel,
    Permutation,
    Type2,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Classical,
        Suite::Zeros,
        Suite::Paths,
        Suite::Relations,
        Suite::Det,
        Suite::Leading,
        Suite::Kernel,
        Suite::Permutation,
        Suite::Type2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Classical => "classical",
            Suite::Zeros => "zeros",
            Suite::Paths => "paths",
            Suite::Relations => "relations",
            Suite::Det => "det",
            Suite::Leading => "leading",
            Suite::Kernel => "kernel",
            Suite::Permutation => "permutation",
            Suite::Type2 => "type2",
        }
    }
}

type Job = Box<dyn Fn() -> Vec<CaseOutcome> + Send + Sync>;

/// Specs that have a determinantal formula.
pub fn det_specs(cfg: &RunConfig) -> Vec<XopSpec> {
    let grid = cfg.grid();
    let mut specs = grid.laguerre_jacobi_specs();
    specs.extend(grid.hermite11_specs());
    specs.retain(|s| !(s.family == Family::LagIII && s.n == 0));
    specs
}

/// Every α appearing in the Laguerre and Jacobi grids, sorted and deduplicated.
fn zero_theorem_alphas(cfg: &RunConfig) -> Vec<Rational> {
    let mut a: Vec<Rational> = cfg
        .lag1_alphas
        .iter()
        .chain(&cfg.lag2_alphas)
        .chain(&cfg.jacobi_alphas)
        .cloned()
        .collect();
    a.sort();
    a.dedup();
    a
}

/// `count` permutations drawn from one stream of the seeded generator.
///
/// Each is a shuffle of `0..len` for `len` at least any node count, so
/// dropping entries `>= k` leaves a uniform permutation of `0..k`.
pub fn node_permutations(seed: u64, stream: u64, count: usize) -> Vec<Vec<usize>> {
    let len = 2 * HARD_DEGREE_CAP + 4;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    (0..count)
        .map(|_| {
            let mut p: Vec<usize> = (0..len).collect();
            p.shuffle(&mut rng);
            p
        })
        .collect()
}

fn restrict(perms: &[Vec<usize>], k: usize) -> Vec<Vec<usize>> {
    perms
        .iter()
        .map(|p| p.iter().copied().filter(|&i| i < k).collect())
        .collect()
}

fn det_options(cfg: &RunConfig) -> Result<DetOptions, UsageError> {
    Ok(DetOptions {
        roots: cfg.root_options()?,
        corrupt_factor: cfg.corruption()?,
        ..DetOptions::default()
    })
}

/// The `(1,1)` Hermite polynomial of degree 3 through the determinant, to `1e-12`.
fn worked_example_case(opts: &DetOptions) -> CaseOutcome {
    let spec = XopSpec::hermite11(3);
    let check = "det-worked-example";
    let exact = evaluate(&spec, spec.family.default_method()).expect("valid spec");
    match det_xop_with(&spec, opts) {
        Ok(p) => {
            let cmp = compare_coefficients(&p, &exact);
            CaseOutcome::within(spec.descriptor(), check, cmp.max_rel_err, 1e-12)
                .with_detail(format!("expected {exact}, got {p}"))
        }
        Err(e) => CaseOutcome::new(spec.descriptor(), check)
            .with_status(if e.is_refusal() { Status::Refused } else { Status::Fail })
            .with_detail(e.to_string()),
    }
}

fn jobs(suite: Suite, cfg: &RunConfig) -> Result<Vec<Job>, UsageError> {
    let roots = cfg.root_options()?;
    let opts = det_options(cfg)?;
    let mut out: Vec<Job> = Vec::new();
    match suite {
        Suite::Classical => {
            let grid = IdentityGrid {
                n_max: cfg.identity_n_max,
                alphas: cfg.identity_alphas.clone(),
                betas: cfg.identity_betas.clone(),
            };
            out.push(Box::new(move || check_classical_identities(&grid)));
        }
        Suite::Zeros => {
            for m in 1..=cfg.m_max {
                for a in zero_theorem_alphas(cfg) {
                    for b in cfg.jacobi_betas.clone() {
                        let a = a.clone();
                        out.push(Box::new(move || check_zero_theorems(m, &a, &b, &roots)));
                    }
                }
            }
            for w in 1..=cfg.even_weight_max {
                for p in Partition::all_of_weight(w).into_iter().filter(Partition::is_even) {
                    out.push(Box::new(move || vec![check_even_partition_no_real_zeros(&p, &roots)]));
                }
            }
        }
        Suite::Paths | Suite::Relations => {
            for spec in cfg.grid().all_specs() {
                if suite == Suite::Paths {
                    out.push(Box::new(move || path_agreement_cases(&spec)));
                } else {
                    out.push(Box::new(move || relation_cases(&spec)));
                }
            }
        }
        Suite::Det => {
            let tol = cfg.agreement_tol;
            for spec in det_specs(cfg) {
                let opts = opts.clone();
                let tol = tol.unwrap_or_else(|| agreement_tolerance(spec.n));
                out.push(Box::new(move || vec![det_agreement_case_at(&spec, &opts, tol)]));
            }
            if cfg.n_max >= 3 {
                let opts = opts.clone();
                out.push(Box::new(move || vec![worked_example_case(&opts)]));
            }
        }
        Suite::Leading => {
            for spec in det_specs(cfg).into_iter().filter(|s| s.n <= cfg.leading_n_max) {
                let opts = opts.clone();
                out.push(Box::new(move || vec![leading_coefficient_case(&spec, &opts)]));
            }
        }
        Suite::Kernel => {
            for spec in det_specs(cfg) {
                let opts = opts.clone();
                out.push(Box::new(move || vec![kernel_case(&spec, &opts)]));
            }
        }
        Suite::Permutation => {
            for (i, spec) in det_specs(cfg).into_iter().enumerate() {
                let opts = opts.clone();
                let perms = node_permutations(cfg.seed, i as u64, cfg.permutations);
                out.push(Box::new(move || {
                    let k = assemble(&spec, &opts).map(|a| a.nodes.len()).unwrap_or(0);
                    vec![permutation_case(&spec, &restrict(&perms, k), &opts)]
                }));
            }
        }
        Suite::Type2 => {
            let specs: Vec<XopSpec> =
                det_specs(cfg).into_iter().filter(|s| s.family == Family::LagII).collect();
            for spec in specs.clone() {
                let opts = opts.clone();
                out.push(Box::new(move || vec![type2_constant_case(&spec, &opts)]));
            }
            let opts = opts.clone();
            out.push(Box::new(move || vec![type2_resolution_case(&specs, &opts)]));
        }
    }
    Ok(out)
}

/// One case recording which reading of the type II constant the grid supports.
fn type2_resolution_case(specs: &[XopSpec], opts: &DetOptions) -> CaseOutcome {
    let label = format!("lag2 grid ({} specs)", specs.len());
    let check = "type2-constant-resolution";
    match resolve_type2_constant(specs, opts, 1e-9) {
        Ok(res) => {
            let resolved = res.resolved();
            let status = if specs.is_empty() {
                Status::Skipped
            } else if resolved == Some(TYPE2_READING) {
                Status::Pass
            } else {
                Status::Fail
            };
            let chosen = match resolved {
                Some(r) => format!("resolved to {}", r.expression()),
                None => "no single expression fits".to_string(),
            };
            CaseOutcome::new(label, check)
                .with_status(status)
                .with_detail(format!("{chosen}; {}", res.summary()))
        }
        Err(e) => CaseOutcome::new(label, check)
            .with_status(if e.is_refusal() { Status::Refused } else { Status::Fail })
            .with_detail(e.to_string()),
    }
}

fn run_jobs(group: &str, jobs: Vec<Job>, timings: bool) -> Vec<CaseRecord> {
    jobs.par_iter()
        .map(|job| {
            let t0 = Instant::now();
            let cases = job();
            let ms = t0.elapsed().as_secs_f64() * 1e3;
            cases
                .into_iter()
                .map(|c| {
                    let mut r = CaseRecord::new(group, c);
                    if timings {
                        r.wall_ms = Some(ms);
                    }
                    r
                })
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// Runs one suite; cases come back in grid order whatever the thread count.
pub fn run_suite(suite: Suite, cfg: &RunConfig) -> Result<Vec<CaseRecord>, UsageError> {
    cfg.validate()?;
    Ok(run_jobs(suite.name(), jobs(suite, cfg)?, cfg.timings))
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool, UsageError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| UsageError(format!("thread pool: {e}")))
}

/// Runs every suite in a fixed order.
pub fn verify(cfg: &RunConfig) -> Result<VerificationReport, UsageError> {
    run_suites(&Suite::ALL, cfg)
}

pub fn run_suites(suites: &[Suite], cfg: &RunConfig) -> Result<VerificationReport, UsageError> {
    cfg.validate()?;
    let pool = pool(cfg.jobs)?;
    let mut cases = Vec::new();
    for &s in suites {
        let jobs = jobs(s, cfg)?;
        cases.extend(pool.install(|| run_jobs(s.name(), jobs, cfg.timings)));
    }
    let name = if suites.len() == Suite::ALL.len() {
        "verify".to_string()
    } else {
        suites.iter().map(|s| s.name()).collect::<Vec<_>>().join("+")
    };
    Ok(VerificationReport::new(name, cfg.clone(), cases))
}
