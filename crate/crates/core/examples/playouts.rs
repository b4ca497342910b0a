//! Random playout throughput for one game in all modes.
//!
//! `cargo run --release --example playouts -- reversi 2`

use ggsys::bench::{bench_playouts, Budget};
use ggsys::library::{load_game, Engine};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "tictactoe".into());
    let seconds: f64 = args.next().map_or(Ok(1.0), |s| s.parse())?;
    for engine in Engine::ALL {
        let g = load_game(&name, engine)?;
        let r = bench_playouts(g.as_ref(), engine, Budget::FixedSeconds(seconds), 1)?;
        println!(
            "{:<9} {:>10.1}/s  avg length {:.1}",
            engine, r.playouts_per_sec, r.avg_playout_length
        );
    }
    Ok(())
}
