use anyhow::Result;
use clap::ValueEnum;
use serde::Serialize;
use starinv_core::bounds::{self, BoundResult, Extremal, Regime};

use crate::output::{format_float, render, CsvRow, Header};
use crate::RunConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TableKind {
    /// `|A_n|`, `n = 2..=n_max`
    Thm1,
    /// `|b_m|`, `m = 0..=n_max`
    Thm2,
    /// `|B_n|`, `n = 0..=n_max`
    Thm3,
    /// `|a^{(-n)}_{-n+g}|`, `n = 1..=n_max`, `g = 1..=n+1`
    Lemma2,
    /// `|A_2|`, `|A_3|`
    Klz,
    /// `|A_n|` over all of `S*`, `n = 2..=n_max`
    Loewner,
}

impl TableKind {
    pub fn name(self) -> &'static str {
        match self {
            TableKind::Thm1 => "thm1",
            TableKind::Thm2 => "thm2",
            TableKind::Thm3 => "thm3",
            TableKind::Lemma2 => "lemma2",
            TableKind::Klz => "klz",
            TableKind::Loewner => "loewner",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TableRow {
    pub n: usize,
    pub alpha: f64,
    pub k: usize,
    pub regime: String,
    pub bound: f64,
    pub sharp: bool,
    pub extremal: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<usize>,
}

impl TableRow {
    fn from_bound(n: usize, alpha: f64, bound: &BoundResult) -> Self {
        Self {
            n,
            alpha,
            k: bound.interval_k,
            regime: bound.regime.to_string(),
            bound: bound.value,
            sharp: bound.is_sharp(),
            extremal: bound.extremal().map(|e| e.to_string()),
            g: None,
        }
    }

    fn fixed(
        n: usize,
        alpha: f64,
        k: usize,
        regime: Regime,
        bound: f64,
        extremal: Extremal,
    ) -> Self {
        Self {
            n,
            alpha,
            k,
            regime: regime.to_string(),
            bound,
            sharp: true,
            extremal: Some(extremal.to_string()),
            g: None,
        }
    }
}

impl CsvRow for TableRow {
    fn fields(&self) -> Vec<String> {
        let mut fields = vec![
            self.n.to_string(),
            format_float(self.alpha),
            self.k.to_string(),
            self.regime.clone(),
            format_float(self.bound),
            if self.sharp { "sharp" } else { "open" }.to_string(),
            self.extremal.clone().unwrap_or_default(),
        ];
        if let Some(g) = self.g {
            fields.push(g.to_string());
        }
        fields
    }
}

const COLUMNS: &[&str] = &["n", "alpha", "k", "regime", "bound", "sharp", "extremal"];
const LEMMA2_COLUMNS: &[&str] = &[
    "n", "alpha", "k", "regime", "bound", "sharp", "extremal", "g",
];

/// Rows in grid order: α outer, index inner.
pub fn table_rows(config: &RunConfig, which: TableKind) -> Result<Vec<TableRow>> {
    config.validate()?;
    let n_max = config.n_max;
    let mut rows = Vec::new();
    if which == TableKind::Loewner {
        for n in 2..=n_max {
            let value = bounds::loewner_bound(n)?;
            rows.push(TableRow::fixed(
                n,
                0.0,
                0,
                Regime::Loewner,
                value,
                Extremal::KoebeAlpha,
            ));
        }
        return Ok(rows);
    }
    for alpha in config.alpha_grid() {
        match which {
            TableKind::Thm1 => {
                for n in 2..=n_max {
                    rows.push(TableRow::from_bound(
                        n,
                        alpha,
                        &bounds::thm1_bound(n, alpha)?,
                    ));
                }
            }
            TableKind::Thm2 => {
                for m in 0..=n_max {
                    rows.push(TableRow::from_bound(
                        m,
                        alpha,
                        &bounds::thm2_bound(m, alpha)?,
                    ));
                }
            }
            TableKind::Thm3 => {
                for n in 0..=n_max {
                    rows.push(TableRow::from_bound(
                        n,
                        alpha,
                        &bounds::thm3_bound(n, alpha)?,
                    ));
                }
            }
            TableKind::Lemma2 => {
                for n in 1..=n_max {
                    for g in 1..=n + 1 {
                        let bound = bounds::lemma2_bound(n, g, alpha)?;
                        rows.push(TableRow {
                            g: Some(g),
                            ..TableRow::from_bound(n, alpha, &bound)
                        });
                    }
                }
            }
            TableKind::Klz => {
                let (a2, a3) = bounds::klz_bounds(alpha)?;
                // Past α = 2/3 the A_3 bound is attained by K_{α,2} instead.
                let a3_extremal = if alpha <= 2.0 / 3.0 {
                    Extremal::KoebeAlpha
                } else {
                    Extremal::KoebeAlphaN(2)
                };
                let k2 = bounds::interval_index(alpha, 2)?;
                let k3 = bounds::interval_index(alpha, 3)?;
                rows.push(TableRow::fixed(
                    2,
                    alpha,
                    k2,
                    Regime::Klz,
                    a2,
                    Extremal::KoebeAlpha,
                ));
                rows.push(TableRow::fixed(3, alpha, k3, Regime::Klz, a3, a3_extremal));
            }
            TableKind::Loewner => unreachable!(),
        }
    }
    Ok(rows)
}

pub fn render_table(config: &RunConfig, which: TableKind, rows: &[TableRow]) -> Result<Vec<u8>> {
    let columns = if which == TableKind::Lemma2 {
        LEMMA2_COLUMNS
    } else {
        COLUMNS
    };
    render(
        Header::new(format!("table {}", which.name()), config),
        columns,
        rows,
    )
}

pub fn cmd_table(config: &RunConfig, which: TableKind) -> Result<Vec<TableRow>> {
    let rows = table_rows(config, which)?;
    config.emit(&render_table(config, which, &rows)?)?;
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(step: f64, n_max: usize) -> RunConfig {
        RunConfig {
            alpha_step: step,
            n_max,
            ..Default::default()
        }
    }

    #[test]
    fn thm1_small_grid() {
        let rows = table_rows(&config(0.25, 3), TableKind::Thm1).unwrap();
        assert_eq!(rows.len(), 8);
        let row = rows.iter().find(|r| r.n == 2 && r.alpha == 0.25).unwrap();
        assert_eq!(row.bound, 2.0 * (1.0 - 0.25));
        assert_eq!(row.regime, "T1a");
        assert!(rows.iter().all(|r| r.alpha < 1.0));
    }

    #[test]
    fn thm3_zero_rows() {
        for row in table_rows(&config(0.1, 4), TableKind::Thm3)
            .unwrap()
            .iter()
            .filter(|r| r.n == 0)
        {
            assert!((row.bound - 2.0 * (1.0 - row.alpha)).abs() < 1e-15);
            assert_eq!(row.regime, "T3a");
        }
    }

    #[test]
    fn lemma2_has_g_column() {
        let c = config(0.25, 2);
        let rows = table_rows(&c, TableKind::Lemma2).unwrap();
        assert_eq!(rows.len(), 4 * (2 + 3));
        let csv = String::from_utf8(render_table(&c, TableKind::Lemma2, &rows).unwrap()).unwrap();
        assert!(csv.starts_with("n,alpha,k,regime,bound,sharp,extremal,g\n"));
    }

    #[test]
    fn klz_rows_switch_extremal() {
        let rows = table_rows(&config(0.05, 3), TableKind::Klz).unwrap();
        let last = rows.iter().rev().find(|r| r.n == 3).unwrap();
        assert_eq!(last.extremal.as_deref(), Some("K_alpha_n(2)"));
        assert!((last.bound - (1.0 - last.alpha)).abs() < 1e-15);
    }
}
