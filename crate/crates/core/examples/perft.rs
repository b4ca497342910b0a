//! Perft for every bundled game in every mode, checked against the golds.

use ggsys::bench::perft;
use ggsys::library::{list_games, load_game, Engine};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for entry in list_games() {
        for gold in entry.perft_golds.iter().filter(|g| g.depth <= 3) {
            for engine in Engine::ALL {
                let n = perft(load_game(entry.name, engine)?.as_ref(), gold.depth);
                let tag = if n == gold.count { "ok" } else { "WRONG" };
                println!(
                    "{:<13} d{} {:<9} {:>8} {tag}",
                    entry.title, gold.depth, engine, n
                );
            }
        }
    }
    Ok(())
}
