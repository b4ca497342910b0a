//! Pieces, positions, moves and their net-change form.

use std::collections::HashMap;

use crate::board::{BoardGraph, VertexId};

pub type PieceId = u8;
pub type PlayerId = u8;

/// Per-player payoffs on the 0/50/100 scale.
pub type Payoffs = Vec<u32>;

pub const WIN: u32 = 100;
pub const DRAW: u32 = 50;
pub const LOSS: u32 = 0;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PieceTable {
    symbols: Vec<String>,
    empty: PieceId,
    owner: Vec<Option<PlayerId>>,
}

impl PieceTable {
    /// Returns `None` when symbols repeat, the empty id is out of range or
    /// more than 64 pieces are declared.
    pub fn new(symbols: Vec<String>, empty: PieceId, owner: Vec<Option<PlayerId>>) -> Option<Self> {
        if symbols.len() > 64 || symbols.len() != owner.len() || empty as usize >= symbols.len() {
            return None;
        }
        for (i, s) in symbols.iter().enumerate() {
            if symbols[..i].contains(s) {
                return None;
            }
        }
        Some(Self {
            symbols,
            empty,
            owner,
        })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn empty(&self) -> PieceId {
        self.empty
    }

    pub fn symbol(&self, p: PieceId) -> &str {
        &self.symbols[p as usize]
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn id_of(&self, name: &str) -> Option<PieceId> {
        self.symbols
            .iter()
            .position(|s| s == name)
            .map(|i| i as PieceId)
    }

    pub fn owner(&self, p: PieceId) -> Option<PlayerId> {
        self.owner[p as usize]
    }

    /// Dialect-neutral name: `_` for empty, `p<owner>.<k>` for the k-th piece
    /// owned by a player, `n.<k>` for the k-th neutral piece.
    pub fn normalized(&self, p: PieceId) -> String {
        if p == self.empty {
            return "_".to_string();
        }
        let owner = self.owner[p as usize];
        let k = (0..p as usize)
            .filter(|&q| q != self.empty as usize && self.owner[q] == owner)
            .count();
        match owner {
            Some(o) => format!("p{o}.{k}"),
            None => format!("n.{k}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GameState {
    pub contents: Vec<PieceId>,
    pub mover: PlayerId,
    pub variables: Vec<u32>,
    pub turn_number: u32,
    /// Front-end owned resume token.
    pub control_point: u32,
    pub last_to: Option<VertexId>,
    pub last_mover: Option<PlayerId>,
    pub current_vertex: VertexId,
    pub terminal: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Effect {
    SetPiece(VertexId, PieceId),
    SetVar(u16, u32),
    PassControl(PlayerId),
}

/// Front-end bookkeeping carried alongside a move; not part of its identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Continuation {
    None,
    /// Regex dialect: switch edge that ended the semi-move and walker position.
    Resume {
        control: u32,
        vertex: VertexId,
    },
    /// Ludemic dialect: destination cell of the move.
    Landing(VertexId),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Move {
    pub effects: Vec<Effect>,
    /// Mover keeps control after the move.
    pub replay: bool,
    pub continuation: Continuation,
}

impl Move {
    pub fn pass_target(&self) -> Option<PlayerId> {
        match self.effects.last() {
            Some(Effect::PassControl(p)) => Some(*p),
            _ => None,
        }
    }
}

/// Applies the effect list of a move to a position. Does not touch the
/// front-end fields (control point, walker, turn counter).
pub fn apply_effects(state: &mut GameState, effects: &[Effect]) {
    for e in effects {
        match *e {
            Effect::SetPiece(v, p) => state.contents[v as usize] = p,
            Effect::SetVar(i, x) => state.variables[i as usize] = x,
            Effect::PassControl(p) => state.mover = p,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StateDelta {
    pub cell_changes: Vec<(VertexId, PieceId)>,
    pub var_changes: Vec<(u16, u32)>,
    pub next_mover: PlayerId,
}

/// Net change a move makes. Later writes to the same cell win; writes that
/// leave a value unchanged vanish.
pub fn move_delta(before: &GameState, mv: &Move) -> StateDelta {
    let mut cells: Vec<(VertexId, PieceId)> = Vec::new();
    let mut vars: Vec<(u16, u32)> = Vec::new();
    let mut next_mover = before.mover;
    for e in &mv.effects {
        match *e {
            Effect::SetPiece(v, p) => match cells.iter_mut().find(|c| c.0 == v) {
                Some(c) => c.1 = p,
                None => cells.push((v, p)),
            },
            Effect::SetVar(i, x) => match vars.iter_mut().find(|c| c.0 == i) {
                Some(c) => c.1 = x,
                None => vars.push((i, x)),
            },
            Effect::PassControl(p) => next_mover = p,
        }
    }
    cells.retain(|&(v, p)| before.contents[v as usize] != p);
    vars.retain(|&(i, x)| before.variables[i as usize] != x);
    cells.sort_unstable();
    vars.sort_unstable();
    StateDelta {
        cell_changes: cells,
        var_changes: vars,
        next_mover,
    }
}

/// Names needed to print positions and deltas of one game.
#[derive(Debug, Clone)]
pub struct Vocabulary {
    pub labels: Vec<String>,
    pub pieces: PieceTable,
    pub players: Vec<String>,
    pub variables: Vec<String>,
    cell_entries: Vec<String>,
    neutral_entries: Vec<String>,
    /// Lexicographic rank of each cell entry.
    cell_rank: Vec<u32>,
    /// No entry is a proper prefix of another, so comparing rank lists
    /// reproduces the text order.
    rank_exact: bool,
}

impl Vocabulary {
    pub fn new(
        board: &BoardGraph,
        pieces: PieceTable,
        players: Vec<String>,
        variables: Vec<String>,
    ) -> Self {
        let labels = board.labels().to_vec();
        let np = pieces.len();
        let mut cell_entries = Vec::with_capacity(labels.len() * np);
        let mut neutral_entries = Vec::with_capacity(labels.len() * np);
        for l in &labels {
            for p in 0..np as PieceId {
                cell_entries.push(format!("cell:{l}={}", pieces.symbol(p)));
                neutral_entries.push(format!("cell:{l}={}", pieces.normalized(p)));
            }
        }
        let mut order: Vec<u32> = (0..cell_entries.len() as u32).collect();
        order.sort_by(|&a, &b| cell_entries[a as usize].cmp(&cell_entries[b as usize]));
        let mut cell_rank = vec![0; cell_entries.len()];
        for (r, &i) in order.iter().enumerate() {
            cell_rank[i as usize] = r as u32;
        }
        let rank_exact = order.windows(2).all(|w| {
            !cell_entries[w[1] as usize].starts_with(cell_entries[w[0] as usize].as_str())
        });
        Self {
            labels,
            pieces,
            players,
            variables,
            cell_entries,
            neutral_entries,
            cell_rank,
            rank_exact,
        }
    }

    /// Appends the sorted ranks of the cell entries of a move's delta.
    fn push_cell_ranks(&self, before: &GameState, mv: &Move, out: &mut Vec<u32>) {
        let start = out.len();
        let np = self.pieces.len();
        for (i, e) in mv.effects.iter().enumerate() {
            if let Effect::SetPiece(v, p) = *e {
                let overwritten = mv.effects[i + 1..]
                    .iter()
                    .any(|f| matches!(*f, Effect::SetPiece(w, _) if w == v));
                if !overwritten && before.contents[v as usize] != p {
                    out.push(self.cell_rank[v as usize * np + p as usize]);
                }
            }
        }
        out[start..].sort_unstable();
    }

    fn cell_entry(&self, v: VertexId, p: PieceId) -> &str {
        &self.cell_entries[v as usize * self.pieces.len() + p as usize]
    }

    /// `cell:<coord>=<piece>,...;var:<name>=<value>...;mover=<player>`
    pub fn encode_delta(&self, d: &StateDelta) -> String {
        let mut out = String::new();
        self.encode_delta_into(d, &mut out);
        out
    }

    pub fn encode_delta_into(&self, d: &StateDelta, out: &mut String) {
        let mut cells: Vec<&str> = d
            .cell_changes
            .iter()
            .map(|&(v, p)| self.cell_entry(v, p))
            .collect();
        cells.sort_unstable();
        out.push_str(&cells.join(","));
        self.encode_tail_into(d, out);
    }

    /// Everything after the cell entries.
    fn encode_tail_into(&self, d: &StateDelta, out: &mut String) {
        let mut vars: Vec<String> = d
            .var_changes
            .iter()
            .map(|&(i, x)| format!("var:{}={x}", self.variables[i as usize]))
            .collect();
        vars.sort_unstable();
        for v in vars {
            out.push(';');
            out.push_str(&v);
        }
        out.push_str(";mover=");
        out.push_str(&self.players[d.next_mover as usize]);
    }

    /// Dialect-neutral delta text: normalized piece names, player index,
    /// variables omitted.
    pub fn encode_neutral(&self, d: &StateDelta) -> String {
        let mut cells: Vec<&str> = d
            .cell_changes
            .iter()
            .map(|&(v, p)| {
                self.neutral_entries[v as usize * self.pieces.len() + p as usize].as_str()
            })
            .collect();
        cells.sort_unstable();
        format!("{};mover={}", cells.join(","), d.next_mover)
    }

    /// Human-readable dump of a position, one rank per line.
    pub fn render(&self, board: &BoardGraph, state: &GameState) -> String {
        let mut out = String::new();
        for r in 0..board.rows() {
            let row: Vec<&str> = (0..board.cols())
                .map(|c| self.pieces.symbol(state.contents[r * board.cols() + c]))
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out.push_str(&format!("mover={}", self.players[state.mover as usize]));
        out
    }
}

/// Sorts moves by delta text, then effect sequence, then continuation, and
/// merges moves with identical effect sequences (the first one survives).
pub fn canonical_order(vocab: &Vocabulary, before: &GameState, moves: Vec<Move>) -> Vec<Move> {
    if moves.len() <= 1 {
        return moves;
    }
    if !vocab.rank_exact {
        return canonical_order_by_text(vocab, before, moves);
    }
    let tail = |m: &Move| {
        let mut s = String::new();
        vocab.encode_tail_into(&move_delta(before, m), &mut s);
        s
    };
    let mut ranks: Vec<u32> = Vec::with_capacity(moves.len() * 2);
    let mut spans: Vec<(u32, u32)> = Vec::with_capacity(moves.len());
    for m in &moves {
        let s = ranks.len() as u32;
        vocab.push_cell_ranks(before, m, &mut ranks);
        spans.push((s, ranks.len() as u32));
    }
    let key = |i: usize| &ranks[spans[i].0 as usize..spans[i].1 as usize];
    let mut order: Vec<usize> = (0..moves.len()).collect();
    order.sort_unstable_by(|&a, &b| {
        let (ma, mb) = (&moves[a], &moves[b]);
        cmp_cell_ranks(key(a), key(b))
            .then_with(|| tail(ma).cmp(&tail(mb)))
            .then_with(|| ma.effects.cmp(&mb.effects))
            .then_with(|| ma.continuation.cmp(&mb.continuation))
            .then_with(|| ma.replay.cmp(&mb.replay))
    });
    order.dedup_by(|b, a| moves[*a].effects == moves[*b].effects);
    let mut slots: Vec<Option<Move>> = moves.into_iter().map(Some).collect();
    order
        .into_iter()
        .map(|i| slots[i].take().unwrap())
        .collect()
}

/// Order of two cell-entry lists as joined text. A list that runs out
/// is followed by `;`, which sorts after `,` and before `c`.
fn cmp_cell_ranks(a: &[u32], b: &[u32]) -> std::cmp::Ordering {
    use std::cmp::Ordering::*;
    for (x, y) in a.iter().zip(b) {
        if x != y {
            return x.cmp(y);
        }
    }
    match (a.len(), b.len()) {
        (x, y) if x == y => Equal,
        (0, _) => Less,
        (_, 0) => Greater,
        (x, y) => y.cmp(&x),
    }
}

fn canonical_order_by_text(vocab: &Vocabulary, before: &GameState, moves: Vec<Move>) -> Vec<Move> {
    let mut keyed: Vec<(String, Move)> = moves
        .into_iter()
        .map(|m| (vocab.encode_delta(&move_delta(before, &m)), m))
        .collect();
    keyed.sort_unstable_by(|a, b| {
        a.0.cmp(&b.0)
            .then_with(|| a.1.effects.cmp(&b.1.effects))
            .then_with(|| a.1.continuation.cmp(&b.1.continuation))
            .then_with(|| a.1.replay.cmp(&b.1.replay))
    });
    keyed.dedup_by(|b, a| a.1.effects == b.1.effects);
    keyed.into_iter().map(|(_, m)| m).collect()
}

/// Keeps one move per neutral delta key, preserving order. Returns
/// `(key, move)` pairs sorted by key.
pub fn dedup_by_neutral_delta(
    vocab: &Vocabulary,
    before: &GameState,
    moves: &[Move],
) -> Vec<(String, Move)> {
    let mut seen: HashMap<String, usize> = HashMap::new();
    let mut out: Vec<(String, Move)> = Vec::new();
    for m in moves {
        let k = vocab.encode_neutral(&move_delta(before, m));
        if !seen.contains_key(&k) {
            seen.insert(k.clone(), out.len());
            out.push((k, m.clone()));
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}
