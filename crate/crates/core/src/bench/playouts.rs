//! Flat Monte Carlo throughput.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::library::Engine;
use crate::playout::{run_playout, Game, PlayoutError, DEFAULT_MAX_PLIES};
use crate::prng::PrngState;

pub const WARMUP_PLAYOUTS: u64 = 100;
pub const DEFAULT_SECONDS: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Budget {
    FixedCount(u64),
    FixedSeconds(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BenchResult {
    pub game: String,
    pub mode: String,
    pub playouts: u64,
    pub elapsed: f64,
    pub playouts_per_sec: f64,
    pub avg_playout_length: f64,
    pub truncated_count: u64,
    pub seed: u64,
    /// Summed payoff per player over all timed playouts.
    pub payoff_totals: Vec<u64>,
}

impl BenchResult {
    /// The fields that depend only on (game, mode, seed, count).
    pub fn deterministic_part(&self) -> (u64, f64, u64, &[u64]) {
        (
            self.playouts,
            self.avg_playout_length,
            self.truncated_count,
            &self.payoff_totals,
        )
    }
}

/// Runs single-threaded random playouts. The i-th timed playout is seeded
/// with the i-th draw of a generator seeded with `seed`; warm-up playouts
/// draw from a separate stream and are not counted or timed.
pub fn bench_playouts(
    game: &dyn Game,
    engine: Engine,
    budget: Budget,
    seed: u64,
) -> Result<BenchResult, PlayoutError> {
    let mut scratch = game.new_scratch();
    let mut warm = PrngState::new(!seed);
    for _ in 0..WARMUP_PLAYOUTS {
        run_playout(game, &mut scratch, warm.next_u64(), DEFAULT_MAX_PLIES)?;
    }

    let mut stream = PrngState::new(seed);
    let mut playouts = 0u64;
    let mut plies = 0u64;
    let mut truncated = 0u64;
    let mut totals = vec![0u64; game.player_count()];
    let start = Instant::now();
    let deadline = match budget {
        Budget::FixedSeconds(t) => Some(Duration::from_secs_f64(t.max(0.0))),
        Budget::FixedCount(_) => None,
    };
    loop {
        match (budget, deadline) {
            (Budget::FixedCount(n), _) if playouts >= n => break,
            (_, Some(d)) if start.elapsed() >= d => break,
            _ => {}
        }
        let r = run_playout(game, &mut scratch, stream.next_u64(), DEFAULT_MAX_PLIES)?;
        playouts += 1;
        plies += r.move_count as u64;
        truncated += r.truncated as u64;
        for (t, p) in totals.iter_mut().zip(&r.outcome) {
            *t += *p as u64;
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    Ok(BenchResult {
        game: game.name().to_string(),
        mode: engine.to_string(),
        playouts,
        elapsed,
        playouts_per_sec: if elapsed > 0.0 {
            playouts as f64 / elapsed
        } else {
            0.0
        },
        avg_playout_length: if playouts > 0 {
            plies as f64 / playouts as f64
        } else {
            0.0
        },
        truncated_count: truncated,
        seed,
        payoff_totals: totals,
    })
}
