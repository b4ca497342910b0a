//! Random patterns on micro-boards and a set-based reference for them.

use std::collections::BTreeSet;

use ggsys::playout::Game;
use ggsys::prng::PrngState;
use ggsys::rbg::{RbgGame, RbgMode};
use ggsys::state::Effect;

#[derive(Debug, Clone)]
pub enum Pat {
    Shift(usize),
    On(bool, bool),
    Star(Box<Pat>),
    Alt(Box<Pat>, Box<Pat>),
    Cat(Box<Pat>, Box<Pat>),
}

const DIRS: [(&str, i32, i32); 4] = [
    ("up", -1, 0),
    ("down", 1, 0),
    ("left", 0, -1),
    ("right", 0, 1),
];

pub fn render(p: &Pat) -> String {
    match p {
        Pat::Shift(d) => DIRS[*d].0.to_string(),
        Pat::On(e, x) => {
            let names: Vec<&str> = [(*e, "e"), (*x, "x")]
                .iter()
                .filter(|t| t.0)
                .map(|t| t.1)
                .collect();
            format!("{{{}}}", names.join(", "))
        }
        Pat::Star(a) => format!("({})*", render(a)),
        Pat::Alt(a, b) => format!("({} + {})", render(a), render(b)),
        Pat::Cat(a, b) => format!("({} {})", render(a), render(b)),
    }
}

/// A random pattern with exactly `size` nodes.
pub fn random(rng: &mut PrngState, size: usize) -> Pat {
    if size == 1 {
        return if rng.uniform_index(3) < 2 {
            Pat::Shift(rng.uniform_index(4))
        } else {
            let e = rng.uniform_index(2) == 0;
            Pat::On(e, !e || rng.uniform_index(2) == 0)
        };
    }
    if size == 2 || rng.uniform_index(3) == 0 {
        return Pat::Star(Box::new(random(rng, size - 1)));
    }
    let left = 1 + rng.uniform_index(size - 2);
    let (a, b) = (
        Box::new(random(rng, left)),
        Box::new(random(rng, size - 1 - left)),
    );
    if rng.uniform_index(2) == 0 {
        Pat::Alt(a, b)
    } else {
        Pat::Cat(a, b)
    }
}

pub struct Micro {
    pub rows: usize,
    pub cols: usize,
    /// true where the cell holds `x`
    pub cells: Vec<bool>,
}

impl Micro {
    fn step(&self, v: usize, d: usize) -> Option<usize> {
        let (r, c) = (
            (v / self.cols) as i32 + DIRS[d].1,
            (v % self.cols) as i32 + DIRS[d].2,
        );
        (r >= 0 && c >= 0 && r < self.rows as i32 && c < self.cols as i32)
            .then(|| r as usize * self.cols + c as usize)
    }

    pub fn reach(&self, p: &Pat, from: &BTreeSet<usize>) -> BTreeSet<usize> {
        match p {
            Pat::Shift(d) => from.iter().filter_map(|&v| self.step(v, *d)).collect(),
            Pat::On(e, x) => from
                .iter()
                .copied()
                .filter(|&v| if self.cells[v] { *x } else { *e })
                .collect(),
            Pat::Cat(a, b) => self.reach(b, &self.reach(a, from)),
            Pat::Alt(a, b) => &self.reach(a, from) | &self.reach(b, from),
            Pat::Star(a) => {
                // Any path uses at most 4V iterations of the body here.
                let mut all = from.clone();
                let mut layer = from.clone();
                for _ in 0..4 * self.cells.len() {
                    layer = self.reach(a, &layer);
                    all.extend(layer.iter().copied());
                }
                all
            }
        }
    }

    fn source_with(&self, rules: &str, variables: &str) -> String {
        let rows: Vec<String> = self
            .cells
            .chunks(self.cols)
            .map(|r| {
                format!(
                    "[{}]",
                    r.iter()
                        .map(|&x| if x { "x" } else { "e" })
                        .collect::<Vec<_>>()
                        .join(", ")
                )
            })
            .collect();
        format!(
            "#players = p(1)\n#pieces = e, x, m\n#variables = {variables}\n#board = rectangle(up,down,left,right,\n{})\n#rules = ->p {rules} [m] ->p\n",
            rows.join("\n")
        )
    }
}

pub const BOARDS: [(usize, usize); 4] = [(1, 3), (1, 4), (1, 6), (3, 3)];

fn random_board(rng: &mut PrngState, rows: usize, cols: usize) -> Micro {
    Micro {
        rows,
        cols,
        cells: (0..rows * cols)
            .map(|_| rng.uniform_index(3) == 0)
            .collect(),
    }
}

/// Compares the reachable end cells of random patterns (up to six nodes)
/// with the reference, in both modes. Returns the number of cases checked.
pub fn loop_guard_cases(seed: u64, per_board: usize) -> Result<usize, String> {
    let mut rng = PrngState::new(seed);
    let mut checked = 0;
    for (rows, cols) in BOARDS {
        for _ in 0..per_board {
            let board = random_board(&mut rng, rows, cols);
            let size = 1 + rng.uniform_index(6);
            let p = random(&mut rng, size);
            let expect = board.reach(&p, &BTreeSet::from([0]));
            let src = board.source_with(&render(&p), "");
            for mode in [RbgMode::Interpreter, RbgMode::Compiled] {
                let g =
                    RbgGame::from_source("micro", &src, mode).map_err(|e| format!("{src}\n{e}"))?;
                let marker = g.vocabulary().pieces.id_of("m").unwrap();
                let mut scratch = g.new_scratch();
                let mut got = BTreeSet::new();
                for m in g.legal_moves(&g.initial_state(), &mut scratch) {
                    match m.effects[0] {
                        Effect::SetPiece(v, p) if p == marker => got.insert(v as usize),
                        ref e => return Err(format!("unexpected effect {e:?}\n{src}")),
                    };
                }
                if got != expect {
                    return Err(format!("{mode:?}: got {got:?}, expected {expect:?}\n{src}"));
                }
                checked += 1;
            }
        }
    }
    Ok(checked)
}

/// Random patterns with positive and negative lookaheads that write
/// pieces and variables inside the test. Every lookahead is evaluated at
/// every cell and must leave the position untouched; both modes must agree
/// on the resulting moves. Returns the number of cases checked.
pub fn purity_cases(seed: u64, per_board: usize) -> Result<usize, String> {
    let mut rng = PrngState::new(seed);
    let mut checked = 0;
    for (rows, cols) in BOARDS {
        for _ in 0..per_board {
            let board = random_board(&mut rng, rows, cols);
            let mut part = |n: usize| {
                let size = 1 + rng.uniform_index(n);
                render(&random(&mut rng, size))
            };
            let rules = format!(
                "({} {{? {} [x] [$ c=3] {}}} + {} {{! {} [e] {}}})",
                part(3),
                part(3),
                part(3),
                part(3),
                part(3),
                part(2)
            );
            let src = board.source_with(&rules, "c(5)");
            let interp = RbgGame::from_source("micro", &src, RbgMode::Interpreter)
                .map_err(|e| format!("{src}\n{e}"))?;
            let compiled = RbgGame::from_source("micro", &src, RbgMode::Compiled)
                .map_err(|e| format!("{src}\n{e}"))?;
            let state = interp.initial_state();
            let table = interp
                .lookahead_outcomes(&state)
                .map_err(|e| format!("{e}\n{src}"))?;
            if table.len() != 2 {
                return Err(format!("expected two lookaheads\n{src}"));
            }
            let a = interp.legal_moves(&state, &mut interp.new_scratch());
            let b = compiled.legal_moves(&state, &mut compiled.new_scratch());
            if a != b {
                return Err(format!("modes disagree\n{src}"));
            }
            checked += 1;
        }
    }
    Ok(checked)
}
