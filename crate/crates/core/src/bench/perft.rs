//! Move-path enumeration to a fixed depth.

use crate::playout::{Game, Scratch};
use crate::state::{dedup_by_neutral_delta, GameState};

/// Decision sequences of length `depth` from `state`. A terminal state
/// reached earlier counts as one leaf. Moves with equal neutral deltas are
/// counted once so that both dialects enumerate the same tree.
pub fn perft(game: &dyn Game, depth: u32) -> u64 {
    let mut scratch = game.new_scratch();
    perft_from(game, &mut scratch, &game.initial_state(), depth)
}

pub fn perft_from(game: &dyn Game, scratch: &mut Scratch, state: &GameState, depth: u32) -> u64 {
    if depth == 0 {
        return 1;
    }
    let moves = dedup_by_neutral_delta(game.vocabulary(), state, &game.legal_moves(state, scratch));
    if moves.is_empty() {
        return 1;
    }
    if depth == 1 {
        return moves.len() as u64;
    }
    let mut total = 0;
    let mut next = state.clone();
    for (_, m) in &moves {
        next.clone_from(state);
        game.apply(&mut next, m);
        total += perft_from(game, scratch, &next, depth - 1);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::library::{load_game, Engine};

    #[test]
    fn tictactoe_two_plies() {
        for engine in Engine::ALL {
            assert_eq!(
                perft(load_game("tictactoe", engine).unwrap().as_ref(), 2),
                72,
                "{engine}"
            );
        }
    }

    #[test]
    fn opening_counts() {
        for (name, n) in [("reversi", 4), ("amazons", 80), ("breakthrough", 22)] {
            for engine in Engine::ALL {
                assert_eq!(
                    perft(load_game(name, engine).unwrap().as_ref(), 1),
                    n,
                    "{name} {engine}"
                );
            }
        }
    }
}
