//! Resolution of an expanded description into an executable game.

use super::ast::*;
use super::nfa::{build_nfa, Label, Nfa};
use super::parser::parse_rbg_source;
use super::search::SearchCore;
use super::{expand_macros, interp, PieceSet, RbgError};
use crate::board::{BoardGraph, VertexId};
use crate::compiler::{self, LoweredProgram};
use crate::playout::{Game, Scratch};
use crate::state::{
    apply_effects, canonical_order, Continuation, GameState, Move, Payoffs, PieceId, PieceTable,
    PlayerId, Vocabulary,
};

/// Action with names resolved to indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Op {
    Shift(u8),
    On(PieceSet),
    SetHere(PieceId),
    Assign(Vec<(u16, u32)>),
    SwitchTo(PlayerId),
    SwitchKeep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RbgMode {
    Interpreter,
    Compiled,
}

impl RbgMode {
    pub fn as_str(self) -> &'static str {
        match self {
            RbgMode::Interpreter => "interpreter",
            RbgMode::Compiled => "compiled",
        }
    }
}

#[derive(Debug, Clone)]
pub struct RbgGame {
    name: String,
    def: RbgGameDef,
    board: BoardGraph,
    vocab: Vocabulary,
    initial_board: Vec<PieceId>,
    nfa: Nfa<Op>,
    initial_control: u32,
    initial_mover: PlayerId,
    program: Option<LoweredProgram>,
    mode: RbgMode,
}

pub(crate) struct RbgScratch {
    pub core: SearchCore,
}

impl RbgGame {
    pub fn from_source(name: &str, src: &str, mode: RbgMode) -> Result<Self, RbgError> {
        Self::from_def(name, &parse_rbg_source(src)?, mode)
    }

    pub fn from_def(name: &str, def: &RbgGameDef, mode: RbgMode) -> Result<Self, RbgError> {
        let def = expand_macros(def)?;
        let board = make_board(&def.board)?;
        let players: Vec<String> = def.players.iter().map(|p| p.0.clone()).collect();
        let player_index = |n: &str| players.iter().position(|p| p == n).map(|i| i as PlayerId);
        let mut symbols = Vec::new();
        let mut owners = Vec::new();
        for pd in &def.pieces {
            symbols.push(pd.name.clone());
            owners.push(match &pd.owner {
                None => None,
                Some(o) => Some(player_index(o).ok_or_else(|| {
                    RbgError::Validation(format!(
                        "piece `{}` owned by unknown player `{o}`",
                        pd.name
                    ))
                })?),
            });
        }
        let pieces = PieceTable::new(symbols, 0, owners).ok_or_else(|| {
            RbgError::Validation("piece symbols must be unique, at most 64".into())
        })?;
        let mut var_names = players.clone();
        let mut bounds: Vec<u32> = def.players.iter().map(|p| p.1).collect();
        for (n, b) in &def.variables {
            if var_names.contains(n) {
                return Err(RbgError::Validation(format!(
                    "variable `{n}` declared twice"
                )));
            }
            var_names.push(n.clone());
            bounds.push(*b);
        }
        let mut initial_board = Vec::with_capacity(board.vertex_count());
        for row in &def.board.rows {
            for s in row {
                initial_board.push(pieces.id_of(s).ok_or_else(|| {
                    RbgError::Validation(format!("board uses undeclared piece `{s}`"))
                })?);
            }
        }
        validate_pattern(&def.rules, false)?;

        let raw = build_nfa(&def.rules);
        let nfa =
            raw.try_map_actions(|a| -> Result<Op, RbgError> {
                Ok(match a {
                    Action::Shift(d) => {
                        Op::Shift(board.direction_index(d).ok_or_else(|| {
                            RbgError::Validation(format!("unknown direction `{d}`"))
                        })? as u8)
                    }
                    Action::On(set) => {
                        let mut s = PieceSet::default();
                        for p in set {
                            s.insert(pieces.id_of(p).ok_or_else(|| {
                                RbgError::Validation(format!("unknown piece `{p}`"))
                            })?);
                        }
                        Op::On(s)
                    }
                    Action::SetHere(p) => Op::SetHere(
                        pieces
                            .id_of(p)
                            .ok_or_else(|| RbgError::Validation(format!("unknown piece `{p}`")))?,
                    ),
                    Action::AssignVars(xs) => Op::Assign(
                        xs.iter()
                            .map(|(n, v)| {
                                let i = var_names.iter().position(|x| x == n).ok_or_else(|| {
                                    RbgError::Validation(format!("unknown variable `{n}`"))
                                })?;
                                if *v > bounds[i] {
                                    return Err(RbgError::Validation(format!(
                                        "value {v} exceeds the bound {} of `{n}`",
                                        bounds[i]
                                    )));
                                }
                                Ok((i as u16, *v))
                            })
                            .collect::<Result<_, _>>()?,
                    ),
                    Action::SwitchTo(p) => Op::SwitchTo(
                        player_index(p)
                            .ok_or_else(|| RbgError::Validation(format!("unknown player `{p}`")))?,
                    ),
                    Action::SwitchKeep => Op::SwitchKeep,
                })
            })?;
        let (initial_control, initial_mover) =
            leading_switch(&nfa).ok_or(RbgError::RulesMustOpenWithSwitch)?;
        let vocab = Vocabulary::new(&board, pieces, players, var_names);
        let mut g = RbgGame {
            name: name.to_string(),
            def,
            board,
            vocab,
            initial_board,
            nfa,
            initial_control,
            initial_mover,
            program: None,
            mode: RbgMode::Interpreter,
        };
        g.set_mode(mode);
        Ok(g)
    }

    /// Switches executor, lowering the automaton on first use.
    pub fn set_mode(&mut self, mode: RbgMode) {
        if mode == RbgMode::Compiled && self.program.is_none() {
            let free = compiler::eliminate_epsilon(&self.nfa);
            self.program = Some(compiler::lower(&free, &self.board));
        }
        self.mode = mode;
    }

    pub fn with_mode(&self, mode: RbgMode) -> Self {
        let mut g = self.clone();
        g.set_mode(mode);
        g
    }

    pub fn mode(&self) -> RbgMode {
        self.mode
    }

    /// Expanded, macro-free definition.
    pub fn def(&self) -> &RbgGameDef {
        &self.def
    }

    pub fn nfa(&self) -> &Nfa<Op> {
        &self.nfa
    }

    pub fn program(&self) -> Option<&LoweredProgram> {
        self.program.as_ref()
    }

    pub fn variable_bounds(&self) -> Vec<u32> {
        let mut b: Vec<u32> = self.def.players.iter().map(|p| p.1).collect();
        b.extend(self.def.variables.iter().map(|v| v.1));
        b
    }

    pub fn rbg_initial_state(&self) -> GameState {
        GameState {
            contents: self.initial_board.clone(),
            mover: self.initial_mover,
            variables: vec![0; self.vocab.variables.len()],
            turn_number: 0,
            control_point: self.initial_control,
            last_to: None,
            last_mover: None,
            current_vertex: 0,
            terminal: false,
        }
    }

    fn scratch_for(&self) -> RbgScratch {
        let locations = match (&self.program, self.mode) {
            (Some(p), RbgMode::Compiled) => p.instructions.len(),
            _ => self.nfa.node_count as usize,
        };
        RbgScratch {
            core: SearchCore::new(locations.max(1), self.board.vertex_count()),
        }
    }

    /// Raw search results before canonical ordering.
    pub(crate) fn search(&self, state: &GameState, core: &mut SearchCore) {
        core.reset(state);
        match (self.mode, &self.program) {
            (RbgMode::Compiled, Some(p)) => {
                let entry = p.entry_of(state.control_point);
                compiler::exec::search(
                    p,
                    self.board.vertex_count(),
                    core,
                    entry,
                    state.current_vertex,
                );
            }
            _ => {
                let node = self.nfa.edges[state.control_point as usize].to;
                interp::search(&self.nfa, &self.board, core, node, state.current_vertex);
            }
        }
    }

    /// Legal semi-moves in canonical order, merged by effect sequence.
    pub fn legal_semimoves(&self, state: &GameState, scratch: &mut Scratch) -> Vec<Move> {
        let core = &mut scratch.get::<RbgScratch>().core;
        self.search(state, core);
        let moves = core
            .results
            .drain(..)
            .map(|(effects, replay, continuation)| Move {
                effects,
                replay,
                continuation,
            })
            .collect();
        canonical_order(&self.vocab, state, moves)
    }

    /// Applies a move after checking it against the legal list.
    pub fn rbg_apply(
        &self,
        state: &GameState,
        mv: &Move,
        scratch: &mut Scratch,
    ) -> Result<GameState, RbgError> {
        let legal = self.legal_semimoves(state, scratch);
        let found = legal
            .iter()
            .find(|m| m.effects == mv.effects)
            .ok_or(RbgError::IllegalMove)?;
        let mut next = state.clone();
        self.apply_unchecked(&mut next, found);
        Ok(next)
    }

    fn apply_unchecked(&self, state: &mut GameState, mv: &Move) {
        let mover = state.mover;
        apply_effects(state, &mv.effects);
        if let Continuation::Resume { control, vertex } = mv.continuation {
            state.control_point = control;
            state.current_vertex = vertex;
        }
        state.last_mover = Some(mover);
        state.turn_number += 1;
        state.terminal = false;
    }

    /// Player variables once no semi-move remains; `None` otherwise.
    pub fn terminal_payoffs(&self, state: &GameState, scratch: &mut Scratch) -> Option<Payoffs> {
        let core = &mut scratch.get::<RbgScratch>().core;
        self.search(state, core);
        if core.results.is_empty() {
            Some(state.variables[..self.def.players.len()].to_vec())
        } else {
            None
        }
    }

    /// Outcome of every lookahead (in edge order) at every vertex of
    /// `state`. Fails if an evaluation leaves the board, variables or effect
    /// log different from how it found them.
    pub fn lookahead_outcomes(&self, state: &GameState) -> Result<Vec<Vec<bool>>, RbgError> {
        let mut core = self.scratch_for().core;
        core.reset(state);
        let mut table = Vec::new();
        for e in &self.nfa.edges {
            let Label::Check { start, accept, .. } = e.label else {
                continue;
            };
            let mut row = Vec::with_capacity(self.board.vertex_count());
            for v in 0..self.board.vertex_count() as VertexId {
                row.push(interp::eval_lookahead(
                    &self.nfa,
                    &self.board,
                    &mut core,
                    start,
                    accept,
                    v,
                ));
                if core.board != state.contents
                    || core.vars != state.variables
                    || !core.effects.is_empty()
                {
                    return Err(RbgError::Validation(format!(
                        "lookahead at {} changed the position",
                        self.board.label(v)
                    )));
                }
            }
            table.push(row);
        }
        Ok(table)
    }

    /// Resolves a vertex label for tests and tools.
    pub fn vertex(&self, label: &str) -> Option<VertexId> {
        self.board.decode(label).ok()
    }
}

impl Game for RbgGame {
    fn name(&self) -> &str {
        &self.name
    }

    fn board(&self) -> &BoardGraph {
        &self.board
    }

    fn vocabulary(&self) -> &Vocabulary {
        &self.vocab
    }

    fn initial_state(&self) -> GameState {
        self.rbg_initial_state()
    }

    fn new_scratch(&self) -> Scratch {
        Scratch::new(self.scratch_for())
    }

    fn legal_moves(&self, state: &GameState, scratch: &mut Scratch) -> Vec<Move> {
        self.legal_semimoves(state, scratch)
    }

    fn apply(&self, state: &mut GameState, mv: &Move) {
        self.apply_unchecked(state, mv)
    }

    fn payoffs(&self, state: &GameState, scratch: &mut Scratch) -> Option<Payoffs> {
        self.terminal_payoffs(state, scratch)
    }
}

fn make_board(decl: &BoardDecl) -> Result<BoardGraph, RbgError> {
    let rows = decl.rows.len();
    let cols = decl.rows[0].len();
    if cols > 26 {
        return Err(RbgError::Validation(
            "boards are limited to 26 columns".into(),
        ));
    }
    let d: Vec<&str> = decl.directions.iter().map(String::as_str).collect();
    let board = match decl.generator {
        BoardGenerator::Rectangle => {
            BoardGraph::rectangle_named(rows, cols, [d[0], d[1], d[2], d[3]])
        }
        BoardGenerator::Hex => {
            BoardGraph::hex_named(rows, cols, [d[0], d[1], d[2], d[3], d[4], d[5]])
        }
    };
    let mut names = board.directions().to_vec();
    names.sort();
    names.dedup();
    if names.len() != board.directions().len() {
        return Err(RbgError::Validation(
            "direction names must be distinct".into(),
        ));
    }
    Ok(board)
}

/// Switches may not occur inside a lookahead.
fn validate_pattern(p: &PatternExpr, guarded: bool) -> Result<(), RbgError> {
    match p {
        PatternExpr::Leaf(Action::SwitchTo(_) | Action::SwitchKeep) if guarded => Err(
            RbgError::Validation("player switches are not allowed inside `{? }` / `{! }`".into()),
        ),
        PatternExpr::Leaf(_) => Ok(()),
        PatternExpr::Concat(xs) | PatternExpr::Alt(xs) => {
            xs.iter().try_for_each(|x| validate_pattern(x, guarded))
        }
        // the rules loop itself repeats whole turns, so stars may hold switches
        PatternExpr::Star(x) => validate_pattern(x, guarded),
        PatternExpr::CheckPositive(x) | PatternExpr::CheckNegative(x) => validate_pattern(x, true),
        PatternExpr::MacroCall { name, .. } => Err(RbgError::UnknownMacro(name.clone())),
    }
}

/// First switch reachable from the start through epsilon edges only.
fn leading_switch(nfa: &Nfa<Op>) -> Option<(u32, PlayerId)> {
    let mut seen = vec![false; nfa.node_count as usize];
    let mut stack = vec![nfa.start];
    while let Some(n) = stack.pop() {
        if std::mem::replace(&mut seen[n as usize], true) {
            continue;
        }
        for (i, e) in nfa.out_edges(n) {
            match &e.label {
                Label::Action(Op::SwitchTo(p)) => return Some((i, *p)),
                Label::Epsilon => stack.push(e.to),
                _ => {}
            }
        }
    }
    None
}
