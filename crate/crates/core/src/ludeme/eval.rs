//! Move generation and end-rule evaluation for compiled ludemic games.

use super::compile::*;
use super::sexpr::parse_sexpr;
use super::LudemeError;
use crate::board::{BoardGraph, BoardShape, Side, VertexId};
use crate::playout::{Game, Scratch};
use crate::state::{
    apply_effects, canonical_order, Continuation, Effect, GameState, Move, Payoffs, PieceId,
    PlayerId, Vocabulary, DRAW, LOSS, WIN,
};

#[derive(Debug, Clone)]
pub struct LudemicGame {
    game: CompiledLudemicGame,
    vocab: Vocabulary,
}

/// True when the run of `player`'s pieces through `at` along some axis
/// has length at least `n`.
pub fn detect_line(
    board: &BoardGraph,
    state: &GameState,
    owner: impl Fn(PieceId) -> Option<PlayerId>,
    at: VertexId,
    player: PlayerId,
    n: usize,
) -> bool {
    let mine = |v: VertexId| owner(state.contents[v as usize]) == Some(player);
    if !mine(at) {
        return false;
    }
    for d in 0..board.directions().len() {
        let back = board.opposite(d);
        if back < d {
            continue;
        }
        let mut count = 1;
        for dir in [d, back] {
            let mut v = at;
            while let Some(w) = board.neighbor(v, dir) {
                if !mine(w) {
                    break;
                }
                count += 1;
                v = w;
            }
        }
        if count >= n {
            return true;
        }
    }
    false
}

/// Breadth-first search over `player`'s stones from those on `a`; true
/// once a stone on `b` is reached.
pub fn region_connected(
    board: &BoardGraph,
    state: &GameState,
    owner: impl Fn(PieceId) -> Option<PlayerId>,
    player: PlayerId,
    a: Side,
    b: Side,
) -> bool {
    let n = board.vertex_count();
    let mine = |v: VertexId| owner(state.contents[v as usize]) == Some(player);
    let mut seen = vec![false; n];
    let mut queue: Vec<VertexId> = (0..n as VertexId)
        .filter(|&v| mine(v) && board.on_side(v, a))
        .collect();
    for &v in &queue {
        seen[v as usize] = true;
    }
    let mut i = 0;
    while i < queue.len() {
        let v = queue[i];
        i += 1;
        if board.on_side(v, b) {
            return true;
        }
        for d in 0..board.directions().len() {
            if let Some(w) = board.neighbor(v, d) {
                if mine(w) && !std::mem::replace(&mut seen[w as usize], true) {
                    queue.push(w);
                }
            }
        }
    }
    false
}

impl LudemicGame {
    pub fn from_source(src: &str) -> Result<Self, LudemeError> {
        Ok(Self::new(compile_ludemic(&parse_sexpr(src)?)?))
    }

    pub fn new(game: CompiledLudemicGame) -> Self {
        let players = (1..=game.players).map(|p| format!("P{p}")).collect();
        let vocab = Vocabulary::new(&game.board, game.pieces.clone(), players, Vec::new());
        LudemicGame { game, vocab }
    }

    pub fn compiled(&self) -> &CompiledLudemicGame {
        &self.game
    }

    pub fn ludemic_initial_state(&self) -> GameState {
        let mut contents = vec![0; self.game.board.vertex_count()];
        for (p, vs) in &self.game.start {
            for &v in vs {
                contents[v as usize] = *p;
            }
        }
        GameState {
            contents,
            mover: 0,
            variables: Vec::new(),
            turn_number: 0,
            control_point: 0,
            last_to: None,
            last_mover: None,
            current_vertex: 0,
            terminal: false,
        }
    }

    fn owner(&self, p: PieceId) -> Option<PlayerId> {
        self.game.pieces.owner(p)
    }

    fn next(&self, p: PlayerId) -> PlayerId {
        ((p as usize + 1) % self.game.players) as PlayerId
    }

    fn holds(&self, c: &CellCond, state: &GameState, mover: PlayerId, v: VertexId) -> bool {
        let p = state.contents[v as usize];
        match c {
            CellCond::Empty => p == 0,
            CellCond::Friend => self.owner(p) == Some(mover),
            CellCond::Enemy => matches!(self.owner(p), Some(o) if o != mover),
            CellCond::Not(x) => !self.holds(x, state, mover, v),
        }
    }

    fn direction(&self, d: DirSpec, mover: PlayerId) -> usize {
        let b = &self.game.board;
        let name = |n: &str| b.direction_index(n).expect("board direction");
        let first = mover == 0;
        match d {
            DirSpec::Abs(i) => i as usize,
            DirSpec::Forward => name(if first { "N" } else { "S" }),
            DirSpec::ForwardLeft => match (b.shape(), first) {
                (BoardShape::Hex, true) => name("W"),
                (BoardShape::Hex, false) => name("E"),
                (_, true) => name("NW"),
                (_, false) => name("SE"),
            },
            DirSpec::ForwardRight => match (b.shape(), first) {
                (BoardShape::Hex, true) => name("NE"),
                (BoardShape::Hex, false) => name("SW"),
                (_, true) => name("NE"),
                (_, false) => name("SW"),
            },
        }
    }

    fn finish(
        &self,
        mut effects: Vec<Effect>,
        mover: PlayerId,
        replay: bool,
        to: Option<VertexId>,
    ) -> Move {
        if !replay {
            effects.push(Effect::PassControl(self.next(mover)));
        }
        let continuation = to.map_or(Continuation::None, Continuation::Landing);
        Move {
            effects,
            replay,
            continuation,
        }
    }

    fn piece_moves(
        &self,
        rule: &Rule,
        state: &GameState,
        mover: PlayerId,
        from: VertexId,
        out: &mut Vec<Move>,
    ) {
        let b = &self.game.board;
        let piece = state.contents[from as usize];
        let relocate = |to: VertexId| vec![Effect::SetPiece(from, 0), Effect::SetPiece(to, piece)];
        match rule {
            Rule::Or(rs) => rs
                .iter()
                .for_each(|r| self.piece_moves(r, state, mover, from, out)),
            Rule::Slide { dirs, cond, replay } => {
                let all: Vec<usize> = match dirs {
                    Some(ds) => ds.iter().map(|&d| self.direction(d, mover)).collect(),
                    None => (0..b.directions().len()).collect(),
                };
                for d in all {
                    let mut v = from;
                    while let Some(w) = b.neighbor(v, d) {
                        if !self.holds(cond, state, mover, w) {
                            break;
                        }
                        out.push(self.finish(relocate(w), mover, *replay, Some(w)));
                        v = w;
                    }
                }
            }
            Rule::Step { dirs, cond, replay } => {
                for &d in dirs {
                    if let Some(w) = b.neighbor(from, self.direction(d, mover)) {
                        if self.holds(cond, state, mover, w) {
                            out.push(self.finish(relocate(w), mover, *replay, Some(w)));
                        }
                    }
                }
            }
            _ => unreachable!("rejected when compiling"),
        }
    }

    fn instance(&self, kind: usize, mover: PlayerId) -> PieceId {
        self.game.kinds[kind].ids[mover as usize]
    }

    fn play_moves(
        &self,
        rule: &Rule,
        state: &GameState,
        mover: PlayerId,
        out: &mut Vec<Move>,
    ) -> Result<(), LudemeError> {
        let b = &self.game.board;
        let n = b.vertex_count() as VertexId;
        match rule {
            Rule::ByPiece => {
                for v in 0..n {
                    let p = state.contents[v as usize];
                    if self.owner(p) != Some(mover) {
                        continue;
                    }
                    if let Some(r) = &self.game.kinds[self.game.kind_of[p as usize]].rule {
                        self.piece_moves(r, state, mover, v, out);
                    }
                }
            }
            Rule::If(c, a, e) => {
                let branch = if self.turn_holds(c, state) { a } else { e };
                self.play_moves(branch, state, mover, out)?;
            }
            Rule::Or(rs) => {
                for r in rs {
                    self.play_moves(r, state, mover, out)?;
                }
            }
            Rule::Priority(rs) => {
                for r in rs {
                    let before = out.len();
                    self.play_moves(r, state, mover, out)?;
                    if out.len() > before {
                        break;
                    }
                }
            }
            Rule::Pass => out.push(self.finish(Vec::new(), mover, false, None)),
            Rule::Shoot { cond, piece } => {
                let from = state.last_to.ok_or(LudemeError::ShootWithoutContext)?;
                for d in 0..b.directions().len() {
                    let mut v = from;
                    while let Some(w) = b.neighbor(v, d) {
                        if !self.holds(cond, state, mover, w) {
                            break;
                        }
                        out.push(self.finish(
                            vec![Effect::SetPiece(w, *piece)],
                            mover,
                            false,
                            Some(w),
                        ));
                        v = w;
                    }
                }
            }
            Rule::Place { kind, cond } => {
                let p = self.instance(*kind, mover);
                for v in 0..n {
                    if self.holds(cond, state, mover, v) {
                        out.push(self.finish(vec![Effect::SetPiece(v, p)], mover, false, Some(v)));
                    }
                }
            }
            Rule::Drop { kind } => {
                let p = self.instance(*kind, mover);
                let down = b.direction_index("S").expect("board direction");
                for c in 0..b.cols() as VertexId {
                    let mut v = c;
                    if state.contents[v as usize] != 0 {
                        continue;
                    }
                    while let Some(w) = b.neighbor(v, down) {
                        if state.contents[w as usize] != 0 {
                            break;
                        }
                        v = w;
                    }
                    out.push(self.finish(vec![Effect::SetPiece(v, p)], mover, false, Some(v)));
                }
            }
            Rule::CustodialFlip { kind } => {
                let p = self.instance(*kind, mover);
                for v in 0..n {
                    if state.contents[v as usize] != 0 {
                        continue;
                    }
                    let mut effects = vec![Effect::SetPiece(v, p)];
                    for d in 0..b.directions().len() {
                        let mut run = Vec::new();
                        let mut w = v;
                        let closed = loop {
                            match b.neighbor(w, d) {
                                Some(x) if self.holds(&CellCond::Enemy, state, mover, x) => {
                                    run.push(x);
                                    w = x;
                                }
                                Some(x) => {
                                    break !run.is_empty()
                                        && self.owner(state.contents[x as usize]) == Some(mover)
                                }
                                None => break false,
                            }
                        };
                        if closed {
                            effects.extend(run.into_iter().map(|x| Effect::SetPiece(x, p)));
                        }
                    }
                    if effects.len() > 1 {
                        out.push(self.finish(effects, mover, false, Some(v)));
                    }
                }
            }
            Rule::Slide { .. } | Rule::Step { .. } => unreachable!("rejected when compiling"),
        }
        Ok(())
    }

    fn turn_holds(&self, c: &TurnCond, state: &GameState) -> bool {
        match c {
            TurnCond::EvenTurn => state.turn_number.is_multiple_of(2),
            TurnCond::Not(x) => !self.turn_holds(x, state),
        }
    }

    /// Play-rule moves for `mover`, unsorted.
    fn raw_moves(&self, state: &GameState, mover: PlayerId) -> Result<Vec<Move>, LudemeError> {
        let mut out = Vec::new();
        self.play_moves(&self.game.play, state, mover, &mut out)?;
        Ok(out)
    }

    fn resolve(&self, who: Who, state: &GameState) -> PlayerId {
        let n = self.game.players;
        match who {
            Who::Mover => state.mover,
            Who::Next => self.next(state.mover),
            Who::LastMover => state
                .last_mover
                .unwrap_or(((state.mover as usize + n - 1) % n) as PlayerId),
            Who::Player(p) => p,
        }
    }

    fn end_holds(
        &self,
        c: &EndCond,
        state: &GameState,
        own: &mut Option<Vec<Move>>,
    ) -> Result<bool, LudemeError> {
        let b = &self.game.board;
        let owner = |p: PieceId| self.owner(p);
        Ok(match c {
            EndCond::Stalemated(who) => {
                let p = self.resolve(*who, state);
                if p == state.mover {
                    if own.is_none() {
                        *own = Some(self.raw_moves(state, p)?);
                    }
                    own.as_ref().unwrap().is_empty()
                } else {
                    self.raw_moves(state, p)?.is_empty()
                }
            }
            EndCond::Line(n) => match state.last_to {
                Some(v) => match self.owner(state.contents[v as usize]) {
                    Some(p) => detect_line(b, state, owner, v, p, *n),
                    None => false,
                },
                None => false,
            },
            EndCond::Connected(who, a, s) => {
                region_connected(b, state, owner, self.resolve(*who, state), *a, *s)
            }
            EndCond::BoardFull => state.contents.iter().all(|&p| p != 0),
            EndCond::NoMovesAll => {
                let placing = |ms: &[Move]| {
                    ms.iter()
                        .any(|m| m.effects.len() > 1 || m.pass_target().is_none())
                };
                (0..self.game.players as PlayerId).try_fold(true, |acc, p| {
                    Ok::<_, LudemeError>(acc && !placing(&self.raw_moves(state, p)?))
                })?
            }
            EndCond::ReachedEdge => match (state.last_to, state.last_mover) {
                (Some(v), Some(p)) => {
                    self.owner(state.contents[v as usize]) == Some(p)
                        && b.neighbor(v, self.direction(DirSpec::Forward, p)).is_none()
                }
                _ => false,
            },
        })
    }

    fn payoff(&self, r: &ResultRule, state: &GameState) -> Payoffs {
        let n = self.game.players;
        match r {
            ResultRule::Result(who, outcome) => {
                let w = self.resolve(*who, state) as usize;
                (0..n)
                    .map(|p| match outcome {
                        Outcome::Draw => DRAW,
                        Outcome::Win => {
                            if p == w {
                                WIN
                            } else {
                                LOSS
                            }
                        }
                        Outcome::Loss => {
                            if p == w {
                                LOSS
                            } else {
                                WIN
                            }
                        }
                    })
                    .collect()
            }
            ResultRule::ByCount => {
                let mut counts = vec![0usize; n];
                for &p in &state.contents {
                    if let Some(o) = self.owner(p) {
                        counts[o as usize] += 1;
                    }
                }
                let best = counts.iter().copied().max().unwrap_or(0);
                let leaders = counts.iter().filter(|&&c| c == best).count();
                counts
                    .iter()
                    .map(|&c| {
                        if leaders > 1 {
                            DRAW
                        } else if c == best {
                            WIN
                        } else {
                            LOSS
                        }
                    })
                    .collect()
            }
        }
    }

    /// First satisfied end rule's payoffs, plus the mover's moves if they
    /// were generated along the way.
    fn evaluate(
        &self,
        state: &GameState,
    ) -> Result<(Option<Payoffs>, Option<Vec<Move>>), LudemeError> {
        let mut own = None;
        for (cond, result) in &self.game.end {
            if self.end_holds(cond, state, &mut own)? {
                return Ok((Some(self.payoff(result, state)), own));
            }
        }
        Ok((None, own))
    }

    pub fn ludemic_legal_moves(&self, state: &GameState) -> Result<Vec<Move>, LudemeError> {
        let (done, own) = self.evaluate(state)?;
        if done.is_some() {
            return Ok(Vec::new());
        }
        let moves = match own {
            Some(m) => m,
            None => self.raw_moves(state, state.mover)?,
        };
        Ok(canonical_order(&self.vocab, state, moves))
    }

    pub fn ludemic_apply(&self, state: &GameState, mv: &Move) -> Result<GameState, LudemeError> {
        let legal = self.ludemic_legal_moves(state)?;
        let m = legal
            .iter()
            .find(|m| m.effects == mv.effects)
            .ok_or(LudemeError::IllegalMove)?;
        let mut next = state.clone();
        self.apply_unchecked(&mut next, m);
        Ok(next)
    }

    fn apply_unchecked(&self, state: &mut GameState, mv: &Move) {
        let mover = state.mover;
        apply_effects(state, &mv.effects);
        state.last_to = match mv.continuation {
            Continuation::Landing(v) => Some(v),
            _ => None,
        };
        state.last_mover = Some(mover);
        state.turn_number += 1;
        state.terminal = false;
    }

    pub fn ludemic_terminal_result(
        &self,
        state: &GameState,
    ) -> Result<Option<Payoffs>, LudemeError> {
        Ok(self.evaluate(state)?.0)
    }
}

impl Game for LudemicGame {
    fn name(&self) -> &str {
        &self.game.name
    }

    fn board(&self) -> &BoardGraph {
        &self.game.board
    }

    fn vocabulary(&self) -> &Vocabulary {
        &self.vocab
    }

    fn initial_state(&self) -> GameState {
        self.ludemic_initial_state()
    }

    fn new_scratch(&self) -> Scratch {
        Scratch::none()
    }

    /// Evaluation errors leave the list empty; `payoffs` then reports no
    /// result, which playouts surface as an engine fault.
    fn legal_moves(&self, state: &GameState, _: &mut Scratch) -> Vec<Move> {
        self.ludemic_legal_moves(state).unwrap_or_default()
    }

    fn apply(&self, state: &mut GameState, mv: &Move) {
        self.apply_unchecked(state, mv);
    }

    fn payoffs(&self, state: &GameState, _: &mut Scratch) -> Option<Payoffs> {
        self.ludemic_terminal_result(state).ok().flatten()
    }
}
