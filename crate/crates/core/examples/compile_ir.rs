//! Shows the compiled instruction listing for Tic-Tac-Toe and how much the
//! epsilon pass shrinks the automaton.

use ggsys::compiler::eliminate_epsilon;
use ggsys::library::{load_description, Dialect};
use ggsys::playout::Game;
use ggsys::rbg::{RbgGame, RbgMode};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = RbgGame::from_source(
        "tictactoe",
        load_description("tictactoe", Dialect::Rbg)?,
        RbgMode::Compiled,
    )?;
    let nfa = g.nfa();
    let free = eliminate_epsilon(nfa);
    println!(
        "nodes {} -> {}, edges {} -> {}",
        nfa.node_count,
        free.nfa.node_count,
        nfa.edges.len(),
        free.nfa.edges.len()
    );
    let v = g.vocabulary();
    print!(
        "{}",
        g.program()
            .expect("compiled")
            .listing(v.pieces.symbols(), &v.players)
    );
    Ok(())
}
