use anyhow::{anyhow, bail, Result};
use serde::Serialize;
use starinv_core::verify::{self, SearchOutcome, SearchTarget};
use starinv_core::{zoo, Check, Error, Extremal, Subject, Suite, Tolerance, VerificationReport};

use crate::output::{format_float, render, CsvRow, Header};
use crate::RunConfig;

/// Sampled functions per α in the bounds suite unless `--samples` says otherwise.
pub const DEFAULT_SAMPLES: usize = 20;

const DECILES: [f64; 10] = [0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];
const JABOTINSKY_POWERS: [i64; 6] = [-3, -2, -1, 1, 2, 3];
const JABOTINSKY_N_MAX: usize = 15;
const SAMPLED_SUBJECTS: u64 = 50;
const ROUNDTRIP_N: usize = 16;
const LEMMA1_ALPHAS: [f64; 4] = [0.0, 0.13, 0.5, 0.86];

const REPORT_COLUMNS: &[&str] = &[
    "suite", "name", "n", "alpha", "observed", "bound", "ratio", "pass",
];

impl CsvRow for Check {
    fn fields(&self) -> Vec<String> {
        vec![
            self.suite.to_string(),
            self.name.clone(),
            self.n.to_string(),
            format_float(self.alpha),
            format_float(self.observed),
            format_float(self.bound),
            format_float(self.ratio),
            self.pass.to_string(),
        ]
    }
}

/// Folds an error into the report as a failed row so the run still completes.
fn absorb(
    report: &mut VerificationReport,
    suite: Suite,
    name: String,
    n: i64,
    alpha: f64,
    result: starinv_core::Result<VerificationReport>,
) {
    match result {
        Ok(part) => report.merge(part),
        Err(e) => report.push(Check::failure(suite, format!("{name}: {e}"), n, alpha)),
    }
}

fn sampled_subjects(config: &RunConfig) -> Vec<(String, f64, starinv_core::Result<Subject>)> {
    (0..SAMPLED_SUBJECTS)
        .map(|i| {
            let alpha = DECILES[i as usize % DECILES.len()];
            let seed = config.seed.wrapping_add(i);
            let label = format!("sample={seed}");
            let subject = zoo::sample_starlike(alpha, seed, config.order)
                .and_then(|spec| spec.realize())
                .map(|f| Subject::new(label.clone(), alpha, f));
            (label, alpha, subject)
        })
        .collect()
}

fn extremal_subjects(
    config: &RunConfig,
    roots: std::ops::RangeInclusive<usize>,
) -> Vec<(String, f64, starinv_core::Result<Subject>)> {
    let mut out = Vec::new();
    for &alpha in &DECILES {
        for m in roots.clone() {
            let e = Extremal::root(m);
            let label = e.to_string();
            let subject = e
                .schlicht(alpha, config.order)
                .map(|f| Subject::new(label.clone(), alpha, f));
            out.push((label, alpha, subject));
        }
    }
    out
}

fn bounds_suite(config: &RunConfig, tol: Tolerance, report: &mut VerificationReport) {
    for (j, &alpha) in DECILES.iter().enumerate() {
        let seed = config.seed.wrapping_add((j * config.samples) as u64);
        let result = verify::verify_bounds_sample(alpha, config.samples, config.order, seed, tol);
        absorb(
            report,
            Suite::Bounds,
            format!("seed={seed}"),
            0,
            alpha,
            result,
        );
    }
}

fn sharpness_suite(config: &RunConfig, tol: Tolerance, report: &mut VerificationReport) {
    for n in 0..=config.n_max {
        for alpha in config.alpha_grid() {
            let result = verify::verify_sharpness(n, alpha, config.order, tol);
            absorb(
                report,
                Suite::Sharpness,
                "sharpness".into(),
                n as i64,
                alpha,
                result,
            );
        }
    }
}

fn jabotinsky_suite(config: &RunConfig, tol: Tolerance, report: &mut VerificationReport) {
    let n_max = JABOTINSKY_N_MAX.min(config.order.saturating_sub(4));
    let subjects = extremal_subjects(config, 1..=3)
        .into_iter()
        .chain(sampled_subjects(config));
    for (label, alpha, subject) in subjects {
        let result =
            subject.and_then(|s| verify::verify_jabotinsky(&s, &JABOTINSKY_POWERS, n_max, tol));
        absorb(report, Suite::Jabotinsky, label, 0, alpha, result);
    }
}

fn lemma1_suite(tol: Tolerance, report: &mut VerificationReport) {
    let grid: Vec<(usize, f64, usize)> = (1..=6)
        .flat_map(|n| {
            LEMMA1_ALPHAS
                .iter()
                .flat_map(move |&a| (1..=10).map(move |g| (n, a, g)))
        })
        .collect();
    absorb(
        report,
        Suite::Lemma1,
        "grid".into(),
        0,
        0.0,
        verify::verify_lemma1(&grid, tol),
    );
}

fn roundtrip_suite(config: &RunConfig, tol: Tolerance, report: &mut VerificationReport) {
    let n_max = ROUNDTRIP_N.min(config.order);
    let subjects = extremal_subjects(config, 1..=5)
        .into_iter()
        .chain(sampled_subjects(config));
    for (label, alpha, subject) in subjects {
        let result = subject.and_then(|s| verify::verify_roundtrip(&s, n_max, tol));
        absorb(report, Suite::Roundtrip, label, 0, alpha, result);
    }
}

/// Runs the selected suites in the fixed order of [`Suite::ALL`]; an empty
/// selection means all of them. The identity suites run at a tighter
/// relative tolerance than the bound suites.
pub fn run_suites(config: &RunConfig, suites: &[Suite]) -> Result<VerificationReport> {
    config.validate()?;
    let tol = config.tolerance();
    let mut report = VerificationReport::new(config.seed, config.order, tol);
    for suite in Suite::ALL {
        if !suites.is_empty() && !suites.contains(&suite) {
            continue;
        }
        match suite {
            Suite::Bounds => bounds_suite(config, tol, &mut report),
            Suite::Sharpness => sharpness_suite(config, tol, &mut report),
            Suite::Jabotinsky => jabotinsky_suite(config, tol.tightened(1e-9), &mut report),
            Suite::Lemma1 => lemma1_suite(tol.tightened(1e-12), &mut report),
            Suite::Roundtrip => roundtrip_suite(config, tol, &mut report),
        }
    }
    Ok(report)
}

pub fn render_report(
    config: &RunConfig,
    command: String,
    report: &VerificationReport,
) -> Result<Vec<u8>> {
    render(Header::new(command, config), REPORT_COLUMNS, &report.checks)
}

/// Runs and writes the report. The caller exits nonzero unless
/// `report.all_pass()`.
pub fn cmd_verify(config: &RunConfig, suites: &[Suite]) -> Result<VerificationReport> {
    let report = run_suites(config, suites)?;
    let names: Vec<String> = suites.iter().map(|s| s.to_string()).collect();
    let command = format!("verify {}", names.join(" ")).trim_end().to_string();
    config.emit(&render_report(config, command, &report)?)?;
    Ok(report)
}

pub fn cmd_sharp(config: &RunConfig, n: usize, alpha: f64) -> Result<VerificationReport> {
    config.validate()?;
    let report = verify::verify_sharpness(n, alpha, config.order, config.tolerance())?;
    config.emit(&render_report(
        config,
        format!("sharp --n {n} --alpha {alpha}"),
        &report,
    )?)?;
    Ok(report)
}

/// One row per atom of the best function found.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchReport {
    pub target: SearchTarget,
    pub n: usize,
    pub alpha: f64,
    pub k: usize,
    pub regime: String,
    pub bound: f64,
    pub best_ratio: f64,
    pub evaluations: usize,
    pub atom: usize,
    pub re: f64,
    pub im: f64,
    pub lambda: f64,
}

impl CsvRow for SearchReport {
    fn fields(&self) -> Vec<String> {
        vec![
            match self.target {
                SearchTarget::Inverse => "inverse",
                SearchTarget::ExteriorInverse => "exterior",
            }
            .to_string(),
            self.n.to_string(),
            format_float(self.alpha),
            self.k.to_string(),
            self.regime.clone(),
            format_float(self.bound),
            format_float(self.best_ratio),
            self.evaluations.to_string(),
            self.atom.to_string(),
            format_float(self.re),
            format_float(self.im),
            format_float(self.lambda),
        ]
    }
}

const SEARCH_COLUMNS: &[&str] = &[
    "target",
    "n",
    "alpha",
    "k",
    "regime",
    "bound",
    "best_ratio",
    "evaluations",
    "atom",
    "re",
    "im",
    "lambda",
];

pub fn search_report(outcome: &SearchOutcome) -> Vec<SearchReport> {
    outcome
        .best_spec
        .atoms()
        .iter()
        .enumerate()
        .map(|(i, atom)| SearchReport {
            target: outcome.target,
            n: outcome.n,
            alpha: outcome.alpha,
            k: outcome.bound.interval_k,
            regime: outcome.bound.regime.to_string(),
            bound: outcome.bound.value,
            best_ratio: outcome.best_ratio,
            evaluations: outcome.evaluations,
            atom: i,
            re: atom.re,
            im: atom.im,
            lambda: atom.lambda,
        })
        .collect()
}

pub fn cmd_search(
    config: &RunConfig,
    target: SearchTarget,
    n: usize,
    alpha: f64,
    budget: usize,
) -> Result<SearchOutcome> {
    config.validate()?;
    if budget == 0 {
        bail!("search budget must be at least 1");
    }
    let outcome = verify::search_extremal(target, n, alpha, budget, config.seed, config.order).map_err(|e| match e {
        Error::WrongRegime { n, alpha, regime } => anyhow!(
            "(n, alpha) = ({n}, {alpha}) falls in regime {regime}, where the bound is already sharp; \
             search only runs where no extremal is known"
        ),
        other => other.into(),
    })?;
    let command = format!("search --n {n} --alpha {alpha} --budget {budget}");
    config.emit(&render(
        Header::new(command, config),
        SEARCH_COLUMNS,
        &search_report(&outcome),
    )?)?;
    Ok(outcome)
}
