use anyhow::Result;
use serde::Serialize;

use crate::{Format, RunConfig, VERSION};

/// 17 significant digits, enough to round-trip any `f64`.
pub fn format_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

/// Config echo written ahead of the rows in JSON output.
#[derive(Serialize)]
pub struct Header<'a> {
    pub program: &'static str,
    pub version: &'static str,
    pub command: String,
    pub seed: u64,
    pub config: &'a RunConfig,
}

impl<'a> Header<'a> {
    pub fn new(command: impl Into<String>, config: &'a RunConfig) -> Self {
        Self {
            program: "starinv",
            version: VERSION,
            command: command.into(),
            seed: config.seed,
            config,
        }
    }
}

pub(crate) trait CsvRow {
    fn fields(&self) -> Vec<String>;
}

#[derive(Serialize)]
struct Document<'a, R: Serialize> {
    #[serde(flatten)]
    header: Header<'a>,
    rows: &'a [R],
}

pub(crate) fn render<R: CsvRow + Serialize>(
    header: Header<'_>,
    columns: &[&str],
    rows: &[R],
) -> Result<Vec<u8>> {
    match header.config.format {
        Format::Csv => {
            let mut writer = csv::Writer::from_writer(Vec::new());
            writer.write_record(columns)?;
            for row in rows {
                writer.write_record(row.fields())?;
            }
            Ok(writer.into_inner()?)
        }
        Format::Json => {
            let mut bytes = serde_json::to_vec_pretty(&Document { header, rows })?;
            bytes.push(b'\n');
            Ok(bytes)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for x in [0.1, 1.5, 2.0 / 3.0, 1e-300, 208012.0] {
            let s = format_float(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
        }
        assert_eq!(format_float(1.5), "1.5000000000000000e0");
        assert_eq!(format_float(f64::NAN), "NaN");
    }
}
