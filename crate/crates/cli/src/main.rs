use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand, ValueEnum};
use starinv_cli::{
    cmd_search, cmd_sharp, cmd_table, cmd_verify, Format, RunConfig, TableKind, DEFAULT_SAMPLES,
};
use starinv_core::verify::SearchTarget;
use starinv_core::Suite;

#[derive(Parser)]
#[command(
    name = "starinv",
    version,
    about = "Coefficient bounds for inverses of starlike functions of order alpha"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalArgs {
    /// Truncation order of every series
    #[arg(long, global = true, default_value_t = starinv_core::DEFAULT_ORDER)]
    order: usize,
    /// Relative tolerance
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,
    /// Absolute tolerance floor
    #[arg(long, global = true, default_value_t = 1e-12)]
    abs_floor: f64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Spacing of the alpha grid
    #[arg(long, global = true, default_value_t = 0.01)]
    alpha_step: f64,
    #[arg(long, global = true, default_value_t = 12)]
    n_max: usize,
    /// Sampled functions per alpha in the bounds suite
    #[arg(long, global = true, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output file; stdout if omitted
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

impl GlobalArgs {
    fn config(&self) -> RunConfig {
        RunConfig {
            order: self.order,
            rel_tol: self.tol,
            abs_floor: self.abs_floor,
            seed: self.seed,
            alpha_step: self.alpha_step,
            n_max: self.n_max,
            samples: self.samples,
            format: self.format,
            out: self.out.clone(),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Bounds,
    Sharpness,
    Jabotinsky,
    Lemma1,
    Roundtrip,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Bounds => Suite::Bounds,
            SuiteArg::Sharpness => Suite::Sharpness,
            SuiteArg::Jabotinsky => Suite::Jabotinsky,
            SuiteArg::Lemma1 => Suite::Lemma1,
            SuiteArg::Roundtrip => Suite::Roundtrip,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    /// |A_n| of the inverse
    Inverse,
    /// |B_n| of the exterior inverse
    Exterior,
}

#[derive(Subcommand)]
enum Command {
    /// Bound table over the (n, alpha) grid
    Table {
        #[arg(value_enum)]
        which: TableKind,
    },
    /// Run verification suites (all of them if none are named)
    Verify {
        #[arg(value_enum)]
        suites: Vec<SuiteArg>,
    },
    /// Check attainment of every bound at one (n, alpha)
    Sharp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alpha: f64,
    },
    /// Search for large coefficients where no extremal is known
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        budget: usize,
        #[arg(long, value_enum, default_value_t = TargetArg::Inverse)]
        target: TargetArg,
    },
}

fn run(cli: Cli) -> Result<bool> {
    let config = cli.global.config();
    match cli.command {
        Command::Table { which } => {
            cmd_table(&config, which)?;
            Ok(true)
        }
        Command::Verify { suites } => {
            let suites: Vec<Suite> = suites.into_iter().map(Suite::from).collect();
            let report = cmd_verify(&config, &suites)?;
            let failed = report.failures().count();
            eprintln!("{} checks, {failed} failed", report.checks.len());
            Ok(failed == 0)
        }
        Command::Sharp { n, alpha } => {
            let report = cmd_sharp(&config, n, alpha)?;
            Ok(report.all_pass())
        }
        Command::Search {
            n,
            alpha,
            budget,
            target,
        } => {
            let target = match target {
                TargetArg::Inverse => SearchTarget::Inverse,
                TargetArg::Exterior => SearchTarget::ExteriorInverse,
            };
            let outcome = cmd_search(&config, target, n, alpha, budget)?;
            eprintln!(
                "best ratio {:.6} after {} evaluations",
                outcome.best_ratio, outcome.evaluations
            );
            for (extremal, ratio) in &outcome.baseline {
                eprintln!("  {extremal}: {ratio:.6}");
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
