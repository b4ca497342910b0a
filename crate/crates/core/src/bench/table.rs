//! Comparison table of description size and playout throughput.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ComparisonRow {
    pub game: String,
    pub tokens_rbg: usize,
    pub tokens_ludemic: usize,
    pub pps_interp: f64,
    pub pps_compiled: f64,
    pub pps_ludemic: f64,
}

fn ratio(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        f64::NAN
    } else {
        a / b
    }
}

impl ComparisonRow {
    /// Ludemic tokens per regex-dialect token.
    pub fn token_rate(&self) -> f64 {
        ratio(self.tokens_ludemic as f64, self.tokens_rbg as f64)
    }

    /// Ludemic throughput relative to the interpreter.
    pub fn rate_vs_interp(&self) -> f64 {
        ratio(self.pps_ludemic, self.pps_interp)
    }

    /// Ludemic throughput relative to the compiled executor.
    pub fn rate_vs_compiled(&self) -> f64 {
        ratio(self.pps_ludemic, self.pps_compiled)
    }

    fn cells(&self) -> [String; 9] {
        let f = |x: f64| format!("{x:.2}");
        [
            self.game.clone(),
            self.tokens_rbg.to_string(),
            self.tokens_ludemic.to_string(),
            f(self.token_rate()),
            f(self.pps_interp),
            f(self.pps_compiled),
            f(self.pps_ludemic),
            f(self.rate_vs_interp()),
            f(self.rate_vs_compiled()),
        ]
    }
}

pub const COLUMNS: [&str; 9] = [
    "game",
    "tokensRbg",
    "tokensLudemic",
    "tokenRate",
    "ppsInterp",
    "ppsCompiled",
    "ppsLudemic",
    "rateVsInterp",
    "rateVsCompiled",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Markdown,
    Csv,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableError {
    #[error("no rows to emit")]
    NoRows,
}

pub fn emit_table(rows: &[ComparisonRow], format: TableFormat) -> Result<String, TableError> {
    if rows.is_empty() {
        return Err(TableError::NoRows);
    }
    Ok(match format {
        TableFormat::Markdown => {
            let mut out = format!(
                "| {} |\n|{}\n",
                COLUMNS.join(" | "),
                " --- |".repeat(COLUMNS.len())
            );
            for r in rows {
                let cells: Vec<String> = r.cells().iter().map(|c| c.replace('|', "\\|")).collect();
                out += &format!("| {} |\n", cells.join(" | "));
            }
            out
        }
        TableFormat::Csv => {
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::CRLF)
                .from_writer(Vec::new());
            w.write_record(COLUMNS).expect("in-memory write");
            for r in rows {
                w.write_record(r.cells()).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("cells are UTF-8")
        }
    })
}
