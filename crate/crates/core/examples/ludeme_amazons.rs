//! Loads the ludemic Amazons description and plays one full turn: a queen
//! move that keeps control, then an arrow that passes it.

use ggsys::library::{load_description, Dialect};
use ggsys::ludeme::LudemicGame;
use ggsys::playout::Game;
use ggsys::state::move_delta;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = LudemicGame::from_source(load_description("amazons", Dialect::Ludemic)?)?;
    let v = g.vocabulary();
    let s0 = g.ludemic_initial_state();
    let queen_moves = g.ludemic_legal_moves(&s0)?;
    println!(
        "{} queen moves, first {}",
        queen_moves.len(),
        v.encode_delta(&move_delta(&s0, &queen_moves[0]))
    );
    let s1 = g.ludemic_apply(&s0, &queen_moves[0])?;
    let arrows = g.ludemic_legal_moves(&s1)?;
    println!("{} arrows, mover still P{}", arrows.len(), s1.mover + 1);
    let s2 = g.ludemic_apply(&s1, &arrows[0])?;
    println!(
        "now P{} to move\n{}",
        s2.mover + 1,
        v.render(g.board(), &s2)
    );
    Ok(())
}
