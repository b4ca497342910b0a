//! Line and connection checks on hand-built positions.

use ggsys::board::Side;
use ggsys::library::{load_description, Dialect};
use ggsys::ludeme::{detect_line, region_connected, LudemicGame};
use ggsys::playout::Game;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let hex = LudemicGame::from_source(load_description("hex", Dialect::Ludemic)?)?;
    let owner = |p| hex.compiled().pieces.owner(p);
    let mut s = hex.initial_state();
    for row in 0..11 {
        s.contents[row * 11 + 3] = 1;
    }
    println!(
        "column of P1 stones joins N-S: {}",
        region_connected(hex.board(), &s, owner, 0, Side::North, Side::South)
    );

    let gomoku = LudemicGame::from_source(load_description("gomoku", Dialect::Ludemic)?)?;
    let owner = |p| gomoku.compiled().pieces.owner(p);
    let mut s = gomoku.initial_state();
    for i in 0..5 {
        s.contents[i * 16] = 2;
    }
    println!(
        "diagonal five for P2: {}",
        detect_line(gomoku.board(), &s, owner, 32, 1, 5)
    );
    Ok(())
}
