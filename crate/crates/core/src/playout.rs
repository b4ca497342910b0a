//! The engine interface shared by both front-ends and the flat Monte Carlo
//! playout driver.

use std::any::Any;

use thiserror::Error;

use crate::board::BoardGraph;
use crate::prng::PrngState;
use crate::state::{GameState, Move, Payoffs, Vocabulary, DRAW};

pub const DEFAULT_MAX_PLIES: usize = 1000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlayoutError {
    #[error("engine fault: non-terminal state with no legal moves at ply {ply}")]
    EngineFault { ply: usize },
}

/// Per-worker search buffers. Engines downcast to their own scratch type.
pub struct Scratch(Box<dyn Any + Send>);

impl Scratch {
    pub fn new<T: Any + Send>(inner: T) -> Self {
        Scratch(Box::new(inner))
    }

    pub fn none() -> Self {
        Scratch(Box::new(()))
    }

    pub fn get<T: Any>(&mut self) -> &mut T {
        self.0
            .downcast_mut::<T>()
            .expect("scratch created by a different engine")
    }
}

/// A compiled game plus executor. Implementations are immutable and may be
/// shared between threads; all mutable search state lives in [`Scratch`].
pub trait Game: Send + Sync {
    fn name(&self) -> &str;
    fn board(&self) -> &BoardGraph;
    fn vocabulary(&self) -> &Vocabulary;
    fn initial_state(&self) -> GameState;
    fn new_scratch(&self) -> Scratch;
    /// Canonically sorted legal moves; empty iff the state is terminal.
    fn legal_moves(&self, state: &GameState, scratch: &mut Scratch) -> Vec<Move>;
    /// Applies a move known to be legal.
    fn apply(&self, state: &mut GameState, mv: &Move);
    /// `None` while the game is still running.
    fn payoffs(&self, state: &GameState, scratch: &mut Scratch) -> Option<Payoffs>;

    fn player_count(&self) -> usize {
        self.vocabulary().players.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlayoutResult {
    pub move_count: usize,
    pub outcome: Payoffs,
    pub truncated: bool,
}

/// Plays uniformly random legal moves from the initial position until the
/// game ends or `max_length` plies have been made. Truncated playouts score
/// as a draw.
pub fn run_playout(
    game: &dyn Game,
    scratch: &mut Scratch,
    seed: u64,
    max_length: usize,
) -> Result<PlayoutResult, PlayoutError> {
    let mut rng = PrngState::new(seed);
    let mut state = game.initial_state();
    run_playout_from(game, scratch, &mut state, &mut rng, max_length, |_| {})
}

/// Same as [`run_playout`] from an arbitrary state, reporting each chosen
/// move index to `on_choice`.
pub fn run_playout_from(
    game: &dyn Game,
    scratch: &mut Scratch,
    state: &mut GameState,
    rng: &mut PrngState,
    max_length: usize,
    mut on_choice: impl FnMut(usize),
) -> Result<PlayoutResult, PlayoutError> {
    let mut plies = 0;
    loop {
        let moves = game.legal_moves(state, scratch);
        if moves.is_empty() {
            state.terminal = true;
            let outcome = game
                .payoffs(state, scratch)
                .ok_or(PlayoutError::EngineFault { ply: plies })?;
            return Ok(PlayoutResult {
                move_count: plies,
                outcome,
                truncated: false,
            });
        }
        if plies >= max_length {
            return Ok(PlayoutResult {
                move_count: plies,
                outcome: vec![DRAW; game.player_count()],
                truncated: true,
            });
        }
        let i = rng.uniform_index(moves.len());
        on_choice(i);
        game.apply(state, &moves[i]);
        plies += 1;
    }
}
