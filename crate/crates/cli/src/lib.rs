//! Front end for `starinv`: bound tables, verification runs, sharpness
//! checks and extremal search, written as CSV or JSON.
//!
//! Everything here is driven by an explicit [`RunConfig`]; nothing is read
//! from the environment.

mod output;
mod run;
mod table;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use serde::Serialize;
use starinv_core::Tolerance;

pub use output::{format_float, Header};
pub use run::{
    cmd_search, cmd_sharp, cmd_verify, render_report, run_suites, search_report, SearchReport,
    DEFAULT_SAMPLES,
};
pub use table::{cmd_table, render_table, table_rows, TableKind, TableRow};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Smallest truncation order the suites can run at.
pub const MIN_ORDER: usize = 8;
pub const MAX_ORDER: usize = 40;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub order: usize,
    pub rel_tol: f64,
    pub abs_floor: f64,
    pub seed: u64,
    pub alpha_step: f64,
    pub n_max: usize,
    /// Sampled functions per α in the bounds suite.
    pub samples: usize,
    pub format: Format,
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            order: starinv_core::DEFAULT_ORDER,
            rel_tol: 1e-8,
            abs_floor: 1e-12,
            seed: 0,
            alpha_step: 0.01,
            n_max: 12,
            samples: DEFAULT_SAMPLES,
            format: Format::Csv,
            out: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha_step > 0.0 && self.alpha_step <= 0.25) {
            bail!("alpha step must lie in (0, 0.25], got {}", self.alpha_step);
        }
        if !(2..=20).contains(&self.n_max) {
            bail!("n-max must lie in 2..=20, got {}", self.n_max);
        }
        if !(MIN_ORDER..=MAX_ORDER).contains(&self.order) {
            bail!(
                "order must lie in {MIN_ORDER}..={MAX_ORDER}, got {}",
                self.order
            );
        }
        if !(self.rel_tol.is_finite() && self.rel_tol >= 0.0) {
            bail!(
                "tolerance must be finite and nonnegative, got {}",
                self.rel_tol
            );
        }
        if !(self.abs_floor.is_finite() && self.abs_floor >= 0.0) {
            bail!(
                "absolute floor must be finite and nonnegative, got {}",
                self.abs_floor
            );
        }
        Ok(())
    }

    pub fn tolerance(&self) -> Tolerance {
        Tolerance::new(self.rel_tol, self.abs_floor)
    }

    /// `i·alpha_step` for `i = 0, 1, ...` while below 1.
    pub fn alpha_grid(&self) -> Vec<f64> {
        (0..)
            .map(|i| i as f64 * self.alpha_step)
            .take_while(|&a| a < 1.0)
            .collect()
    }

    /// Sends `bytes` to `--out`, or stdout when no path is set.
    pub fn emit(&self, bytes: &[u8]) -> Result<()> {
        match &self.out {
            Some(path) => {
                fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))
            }
            None => {
                let mut stdout = io::stdout().lock();
                stdout.write_all(bytes)?;
                stdout.flush()?;
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(RunConfig::default().validate().is_ok());
        for bad in [
            RunConfig {
                alpha_step: 0.0,
                ..Default::default()
            },
            RunConfig {
                alpha_step: 0.3,
                ..Default::default()
            },
            RunConfig {
                n_max: 1,
                ..Default::default()
            },
            RunConfig {
                n_max: 21,
                ..Default::default()
            },
            RunConfig {
                order: 41,
                ..Default::default()
            },
            RunConfig {
                order: 4,
                ..Default::default()
            },
            RunConfig {
                rel_tol: -1.0,
                ..Default::default()
            },
            RunConfig {
                abs_floor: f64::NAN,
                ..Default::default()
            },
        ] {
            assert!(bad.validate().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn grid_is_half_open() {
        let grid = RunConfig {
            alpha_step: 0.25,
            ..Default::default()
        }
        .alpha_grid();
        assert_eq!(grid, vec![0.0, 0.25, 0.5, 0.75]);
        let grid = RunConfig::default().alpha_grid();
        assert_eq!(grid.len(), 100);
        assert!(grid.iter().all(|&a| a < 1.0));
    }
}
