//! Benchmarking and validation tools.

mod perft;
mod playouts;
mod table;
mod tokens;
mod xval;

pub use perft::{perft, perft_from};
pub use playouts::{bench_playouts, BenchResult, Budget, DEFAULT_SECONDS, WARMUP_PLAYOUTS};
pub use table::{emit_table, ComparisonRow, TableError, TableFormat, COLUMNS};
pub use tokens::count_tokens;
pub use xval::{
    cross_validate, cross_validate_games, DeltaMismatch, ModeCount, ModePayoffs, OutcomeMismatch,
    PerftAgreement, Report,
};

use thiserror::Error;

use crate::library::{load_description, load_game, Dialect, Engine, GameEntry, LoadError};
use crate::playout::PlayoutError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BenchError {
    #[error(transparent)]
    Load(#[from] LoadError),
    #[error(transparent)]
    Playout(#[from] PlayoutError),
}

/// Measures one table row: token counts plus throughput in every mode.
pub fn measure_row(
    entry: &GameEntry,
    budget: Budget,
    seed: u64,
) -> Result<ComparisonRow, BenchError> {
    let tokens = |d| count_tokens(load_description(entry.name, d)?, d);
    let pps = |e| -> Result<f64, BenchError> {
        let g = load_game(entry.name, e)?;
        Ok(bench_playouts(g.as_ref(), e, budget, seed)?.playouts_per_sec)
    };
    Ok(ComparisonRow {
        game: entry.title.to_string(),
        tokens_rbg: tokens(Dialect::Rbg)?,
        tokens_ludemic: tokens(Dialect::Ludemic)?,
        pps_interp: pps(Engine::Interpreter)?,
        pps_compiled: pps(Engine::Compiled)?,
        pps_ludemic: pps(Engine::Ludemic)?,
    })
}
