//! Cross-checks the three engines against each other.

use serde::Serialize;

use super::perft::perft;
use crate::library::{load_game, Engine, LoadError};
use crate::playout::{Game, Scratch, DEFAULT_MAX_PLIES};
use crate::prng::PrngState;
use crate::state::{dedup_by_neutral_delta, GameState, Move, Payoffs};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ModeCount {
    pub mode: String,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PerftAgreement {
    pub depth: u32,
    pub agree: bool,
    pub counts: Vec<ModeCount>,
}

/// First state of a walk where an engine's move deltas differ from the
/// reference engine's.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DeltaMismatch {
    pub walk: usize,
    pub ply: usize,
    pub mode: String,
    /// Neutral deltas of the moves that led here.
    pub path: Vec<String>,
    pub state: String,
    pub only_in_reference: Vec<String>,
    pub only_in_mode: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ModePayoffs {
    pub mode: String,
    pub payoffs: Option<Payoffs>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct OutcomeMismatch {
    pub walk: usize,
    pub ply: usize,
    pub payoffs: Vec<ModePayoffs>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub perft_agreement: Vec<PerftAgreement>,
    pub delta_set_mismatches: Vec<DeltaMismatch>,
    pub outcome_mismatches: Vec<OutcomeMismatch>,
}

impl Report {
    pub fn is_clean(&self) -> bool {
        self.perft_agreement.iter().all(|p| p.agree)
            && self.delta_set_mismatches.is_empty()
            && self.outcome_mismatches.is_empty()
    }
}

/// Compares every engine on a bundled game.
pub fn cross_validate(
    name: &str,
    depth: u32,
    walks: usize,
    seed: u64,
) -> Result<Report, LoadError> {
    let games = Engine::ALL
        .iter()
        .map(|&e| Ok((e, load_game(name, e)?)))
        .collect::<Result<Vec<_>, LoadError>>()?;
    let refs: Vec<(Engine, &dyn Game)> = games.iter().map(|(e, g)| (*e, g.as_ref())).collect();
    Ok(cross_validate_games(&refs, depth, walks, seed))
}

struct Walker<'a> {
    engine: Engine,
    game: &'a dyn Game,
    scratch: Scratch,
    state: GameState,
}

impl Walker<'_> {
    fn moves(&mut self) -> Vec<(String, Move)> {
        let ms = self.game.legal_moves(&self.state, &mut self.scratch);
        dedup_by_neutral_delta(self.game.vocabulary(), &self.state, &ms)
    }
}

fn difference(a: &[(String, Move)], b: &[(String, Move)]) -> Vec<String> {
    a.iter()
        .filter(|(k, _)| b.binary_search_by(|(x, _)| x.cmp(k)).is_err())
        .map(|(k, _)| k.clone())
        .collect()
}

/// Compares `games` (the first is the reference) on perft to `depth`, and
/// on move delta sets and payoffs along `walks` seeded random walks.
pub fn cross_validate_games(
    games: &[(Engine, &dyn Game)],
    depth: u32,
    walks: usize,
    seed: u64,
) -> Report {
    let perft_agreement = (1..=depth)
        .map(|d| {
            let counts: Vec<ModeCount> = games
                .iter()
                .map(|(e, g)| ModeCount {
                    mode: e.to_string(),
                    count: perft(*g, d),
                })
                .collect();
            PerftAgreement {
                depth: d,
                agree: counts.windows(2).all(|w| w[0].count == w[1].count),
                counts,
            }
        })
        .collect();

    let mut delta_set_mismatches = Vec::new();
    let mut outcome_mismatches = Vec::new();
    let mut seeds = PrngState::new(seed);
    for walk in 0..walks {
        let mut rng = PrngState::new(seeds.next_u64());
        let mut walkers: Vec<Walker> = games
            .iter()
            .map(|&(engine, game)| Walker {
                engine,
                game,
                scratch: game.new_scratch(),
                state: game.initial_state(),
            })
            .collect();
        let mut path = Vec::new();
        for ply in 0..=DEFAULT_MAX_PLIES {
            let lists: Vec<Vec<(String, Move)>> = walkers.iter_mut().map(Walker::moves).collect();
            let reference = &lists[0];
            let mut diverged = false;
            for (w, list) in walkers.iter().zip(&lists).skip(1) {
                let only_in_reference = difference(reference, list);
                let only_in_mode = difference(list, reference);
                if !only_in_reference.is_empty() || !only_in_mode.is_empty() {
                    diverged = true;
                    delta_set_mismatches.push(DeltaMismatch {
                        walk,
                        ply,
                        mode: w.engine.to_string(),
                        path: path.clone(),
                        state: walkers[0]
                            .game
                            .vocabulary()
                            .render(walkers[0].game.board(), &walkers[0].state),
                        only_in_reference,
                        only_in_mode,
                    });
                }
            }
            if diverged {
                break;
            }
            if reference.is_empty() {
                let payoffs: Vec<ModePayoffs> = walkers
                    .iter_mut()
                    .map(|w| ModePayoffs {
                        mode: w.engine.to_string(),
                        payoffs: w.game.payoffs(&w.state, &mut w.scratch),
                    })
                    .collect();
                if payoffs
                    .iter()
                    .any(|p| p.payoffs.is_none() || p.payoffs != payoffs[0].payoffs)
                {
                    outcome_mismatches.push(OutcomeMismatch { walk, ply, payoffs });
                }
                break;
            }
            if ply == DEFAULT_MAX_PLIES {
                break;
            }
            let i = rng.uniform_index(reference.len());
            path.push(reference[i].0.clone());
            for (w, list) in walkers.iter_mut().zip(&lists) {
                w.game.apply(&mut w.state, &list[i].1);
            }
        }
    }
    Report {
        perft_agreement,
        delta_set_mismatches,
        outcome_mismatches,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tictactoe_agrees() {
        let r = cross_validate("tictactoe", 3, 20, 1).unwrap();
        assert!(r.is_clean(), "{r:?}");
        assert_eq!(r.perft_agreement[2].counts[0].count, 504);
    }

    #[test]
    fn json_keys_follow_the_report_order() {
        let r = cross_validate("tictactoe", 1, 1, 1).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        let keys = [
            "\"perftAgreement\"",
            "\"deltaSetMismatches\"",
            "\"outcomeMismatches\"",
        ];
        let at: Vec<usize> = keys.iter().map(|k| text.find(k).unwrap()).collect();
        assert!(at.windows(2).all(|w| w[0] < w[1]));
    }
}
