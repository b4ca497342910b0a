//! Turns a parsed description into rule trees.

use super::sexpr::SExpr;
use super::LudemeError;
use crate::board::{BoardGraph, Side, VertexId};
use crate::state::{PieceId, PieceTable, PlayerId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Win,
    Loss,
    Draw,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Who {
    Mover,
    Next,
    LastMover,
    Player(PlayerId),
}

/// Test on the destination cell, relative to the mover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CellCond {
    Empty,
    Enemy,
    Friend,
    Not(Box<CellCond>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TurnCond {
    EvenTurn,
    Not(Box<TurnCond>),
}

/// Board direction, or one relative to the mover's forward direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DirSpec {
    Abs(u8),
    Forward,
    ForwardLeft,
    ForwardRight,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rule {
    ByPiece,
    If(TurnCond, Box<Rule>, Box<Rule>),
    Or(Vec<Rule>),
    /// First alternative with at least one move.
    Priority(Vec<Rule>),
    Pass,
    Slide {
        dirs: Option<Vec<DirSpec>>,
        cond: CellCond,
        replay: bool,
    },
    Step {
        dirs: Vec<DirSpec>,
        cond: CellCond,
        replay: bool,
    },
    Shoot {
        cond: CellCond,
        piece: PieceId,
    },
    /// `kind` indexes [`CompiledLudemicGame::kinds`]; the mover's instance is used.
    Place {
        kind: usize,
        cond: CellCond,
    },
    Drop {
        kind: usize,
    },
    CustodialFlip {
        kind: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EndCond {
    Stalemated(Who),
    Line(usize),
    Connected(Who, Side, Side),
    BoardFull,
    NoMovesAll,
    ReachedEdge,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResultRule {
    Result(Who, Outcome),
    ByCount,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PieceKind {
    /// Capitalised name without owner digit, e.g. `Queen`.
    pub name: String,
    pub each: bool,
    pub rule: Option<Rule>,
    /// Piece id per owner (one entry for neutral kinds).
    pub ids: Vec<PieceId>,
}

#[derive(Debug, Clone)]
pub struct CompiledLudemicGame {
    pub name: String,
    pub players: usize,
    pub board: BoardGraph,
    pub pieces: PieceTable,
    pub kinds: Vec<PieceKind>,
    /// Piece id to kind index; empty maps to `usize::MAX`.
    pub kind_of: Vec<usize>,
    pub start: Vec<(PieceId, Vec<VertexId>)>,
    pub play: Rule,
    pub end: Vec<(EndCond, ResultRule)>,
}

fn arity(e: &SExpr, expected: &str) -> LudemeError {
    LudemeError::ArityError {
        ludeme: e.head().unwrap_or("?").to_string(),
        expected: expected.to_string(),
        line: e.line,
        col: e.col,
    }
}

fn unknown(e: &SExpr) -> LudemeError {
    let name = e
        .head()
        .or(e.atom())
        .unwrap_or(if e.set().is_some() { "{…}" } else { "()" });
    LudemeError::UnknownLudeme {
        name: name.to_string(),
        line: e.line,
        col: e.col,
    }
}

/// Arguments after the head, checked against an allowed count range.
fn args<'a>(
    e: &'a SExpr,
    min: usize,
    max: usize,
    expected: &str,
) -> Result<&'a [SExpr], LudemeError> {
    let xs = &e.list().ok_or_else(|| unknown(e))?[1..];
    if xs.len() < min || xs.len() > max {
        return Err(arity(e, expected));
    }
    Ok(xs)
}

fn number(e: &SExpr, parent: &SExpr, expected: &str) -> Result<usize, LudemeError> {
    e.atom()
        .and_then(|a| a.parse().ok())
        .ok_or_else(|| arity(parent, expected))
}

/// `(x)` or bare `x` used for zero-argument ludemes such as `(mover)`.
fn nullary(e: &SExpr) -> Option<&str> {
    match e.list() {
        Some([h]) => h.atom(),
        _ => e.atom(),
    }
}

/// Items of a `{…}` set or a single expression.
fn items(e: &SExpr) -> &[SExpr] {
    e.set().unwrap_or(std::slice::from_ref(e))
}

fn capitalise(s: &str) -> String {
    let mut c = s.chars();
    match c.next() {
        Some(f) => f.to_uppercase().chain(c).collect(),
        None => String::new(),
    }
}

struct Ctx {
    players: usize,
    board: BoardGraph,
    pieces: PieceTable,
    kinds: Vec<PieceKind>,
}

impl Ctx {
    fn kind(&self, name: &str) -> Result<usize, LudemeError> {
        self.kinds
            .iter()
            .position(|k| k.name.eq_ignore_ascii_case(name))
            .ok_or_else(|| LudemeError::UnknownPiece(name.to_string()))
    }

    fn piece(&self, name: &str) -> Result<PieceId, LudemeError> {
        self.pieces
            .id_of(name)
            .filter(|&p| p != 0)
            .ok_or_else(|| LudemeError::UnknownPiece(name.to_string()))
    }

    fn who(&self, e: &SExpr, parent: &SExpr) -> Result<Who, LudemeError> {
        let bad = || arity(parent, "mover, next, lastMover or P<n>");
        match nullary(e).ok_or_else(bad)? {
            "mover" => Ok(Who::Mover),
            "next" => Ok(Who::Next),
            "lastMover" => Ok(Who::LastMover),
            p => {
                let n: usize = p
                    .strip_prefix('P')
                    .and_then(|d| d.parse().ok())
                    .ok_or_else(bad)?;
                if n == 0 || n > self.players {
                    return Err(bad());
                }
                Ok(Who::Player((n - 1) as PlayerId))
            }
        }
    }

    fn cell_cond(&self, e: &SExpr) -> Result<CellCond, LudemeError> {
        match e.head() {
            Some("in") => {
                let a = args(e, 2, 2, "(in (to) condition)")?;
                if nullary(&a[0]) != Some("to") {
                    return Err(arity(e, "(in (to) condition)"));
                }
                self.cell_cond(&a[1])
            }
            Some("not") => Ok(CellCond::Not(Box::new(
                self.cell_cond(&args(e, 1, 1, "one condition")?[0])?,
            ))),
            _ => match nullary(e) {
                Some("empty") => Ok(CellCond::Empty),
                Some("enemy") => Ok(CellCond::Enemy),
                Some("friend") => Ok(CellCond::Friend),
                _ => Err(unknown(e)),
            },
        }
    }

    fn turn_cond(&self, e: &SExpr) -> Result<TurnCond, LudemeError> {
        match e.head() {
            Some("even") => {
                let a = args(e, 1, 1, "(even (turn))")?;
                if nullary(&a[0]) != Some("turn") {
                    return Err(arity(e, "(even (turn))"));
                }
                Ok(TurnCond::EvenTurn)
            }
            Some("not") => Ok(TurnCond::Not(Box::new(
                self.turn_cond(&args(e, 1, 1, "one condition")?[0])?,
            ))),
            _ => Err(unknown(e)),
        }
    }

    fn dirs(&self, e: &SExpr, parent: &SExpr) -> Result<Vec<DirSpec>, LudemeError> {
        let list = e.set().ok_or_else(|| arity(parent, "a direction set"))?;
        list.iter()
            .map(|d| {
                let name = d.atom().ok_or_else(|| arity(parent, "direction names"))?;
                Ok(match name {
                    "Forward" => DirSpec::Forward,
                    "FL" => DirSpec::ForwardLeft,
                    "FR" => DirSpec::ForwardRight,
                    _ => DirSpec::Abs(
                        self.board
                            .direction_index(name)
                            .ok_or_else(|| arity(parent, "direction names"))?
                            as u8,
                    ),
                })
            })
            .collect()
    }

    /// `(then (replay))` as an optional trailing argument.
    fn then_replay(&self, e: &SExpr) -> Result<bool, LudemeError> {
        let a = args(e, 1, 1, "(then (replay))")?;
        match nullary(&a[0]) {
            Some("replay") => Ok(true),
            _ => Err(unknown(&a[0])),
        }
    }

    fn rule(&self, e: &SExpr, piece_context: bool) -> Result<Rule, LudemeError> {
        let head = e.head().or(e.atom()).ok_or_else(|| unknown(e))?;
        let piece_only = matches!(head, "slide" | "step");
        let play_only = matches!(
            head,
            "byPiece" | "shoot" | "place" | "drop" | "custodialFlip" | "if" | "priority" | "pass"
        );
        if (piece_only && !piece_context) || (play_only && piece_context) {
            return Err(unknown(e));
        }
        Ok(match head {
            "byPiece" => Rule::ByPiece,
            "pass" => Rule::Pass,
            "if" => {
                let a = args(e, 3, 3, "condition and two rules")?;
                Rule::If(
                    self.turn_cond(&a[0])?,
                    Box::new(self.rule(&a[1], piece_context)?),
                    Box::new(self.rule(&a[2], piece_context)?),
                )
            }
            "or" | "priority" => {
                let a = args(e, 1, usize::MAX, "one or more rules")?;
                let rs = a
                    .iter()
                    .map(|r| self.rule(r, piece_context))
                    .collect::<Result<_, _>>()?;
                if head == "or" {
                    Rule::Or(rs)
                } else {
                    Rule::Priority(rs)
                }
            }
            "slide" => {
                let a = args(e, 1, 3, "condition, optional direction set, optional then")?;
                let mut dirs = None;
                let mut replay = false;
                for x in &a[1..] {
                    if x.set().is_some() && dirs.is_none() {
                        dirs = Some(self.dirs(x, e)?);
                    } else if x.head() == Some("then") {
                        replay = self.then_replay(x)?;
                    } else {
                        return Err(arity(e, "condition, optional direction set, optional then"));
                    }
                }
                Rule::Slide {
                    dirs,
                    cond: self.cell_cond(&a[0])?,
                    replay,
                }
            }
            "step" => {
                let a = args(e, 2, 3, "direction set, condition, optional then")?;
                let replay = match a.get(2) {
                    Some(t) if t.head() == Some("then") => self.then_replay(t)?,
                    Some(_) => return Err(arity(e, "direction set, condition, optional then")),
                    None => false,
                };
                Rule::Step {
                    dirs: self.dirs(&a[0], e)?,
                    cond: self.cell_cond(&a[1])?,
                    replay,
                }
            }
            "shoot" => {
                let a = args(e, 2, 2, "condition and piece name")?;
                let name = a[1]
                    .quoted()
                    .ok_or_else(|| arity(e, "condition and piece name"))?;
                Rule::Shoot {
                    cond: self.cell_cond(&a[0])?,
                    piece: self.piece(name)?,
                }
            }
            "place" => {
                let a = args(e, 2, 2, "piece kind and condition")?;
                let name = a[0]
                    .quoted()
                    .ok_or_else(|| arity(e, "piece kind and condition"))?;
                Rule::Place {
                    kind: self.owned_kind(name)?,
                    cond: self.cell_cond(&a[1])?,
                }
            }
            "drop" | "custodialFlip" => {
                let a = args(e, 1, 1, "piece kind")?;
                let name = a[0].quoted().ok_or_else(|| arity(e, "piece kind"))?;
                let kind = self.owned_kind(name)?;
                if head == "drop" {
                    Rule::Drop { kind }
                } else {
                    Rule::CustodialFlip { kind }
                }
            }
            _ => return Err(unknown(e)),
        })
    }

    fn owned_kind(&self, name: &str) -> Result<usize, LudemeError> {
        let k = self.kind(name)?;
        if !self.kinds[k].each {
            return Err(LudemeError::UnknownPiece(name.to_string()));
        }
        Ok(k)
    }

    fn end_cond(&self, e: &SExpr) -> Result<EndCond, LudemeError> {
        let head = e.head().or(e.atom()).ok_or_else(|| unknown(e))?;
        Ok(match head {
            "stalemated" => EndCond::Stalemated(self.who(&args(e, 1, 1, "a player")?[0], e)?),
            "line" => EndCond::Line(number(&args(e, 1, 1, "a length")?[0], e, "a length")?),
            "connected" => {
                let a = args(e, 3, 3, "player and two sides")?;
                let side = |x: &SExpr| {
                    x.atom()
                        .and_then(Side::parse)
                        .ok_or_else(|| arity(e, "sides N, S, W or E"))
                };
                EndCond::Connected(self.who(&a[0], e)?, side(&a[1])?, side(&a[2])?)
            }
            "boardFull" => EndCond::BoardFull,
            "noMovesAll" => EndCond::NoMovesAll,
            "reachedEdge" => EndCond::ReachedEdge,
            _ => return Err(unknown(e)),
        })
    }

    fn result(&self, e: &SExpr) -> Result<ResultRule, LudemeError> {
        match e.head().or(e.atom()) {
            Some("result") => {
                let a = args(e, 2, 2, "player and outcome")?;
                let outcome = match a[1].atom() {
                    Some("Win") => Outcome::Win,
                    Some("Loss") => Outcome::Loss,
                    Some("Draw") => Outcome::Draw,
                    _ => return Err(arity(e, "Win, Loss or Draw")),
                };
                Ok(ResultRule::Result(self.who(&a[0], e)?, outcome))
            }
            Some("byCount") => {
                args(e, 0, 0, "no arguments")?;
                Ok(ResultRule::ByCount)
            }
            _ => Err(unknown(e)),
        }
    }

    /// `(end cond result)` or `(end {(if cond result) …})`.
    fn end(&self, e: &SExpr) -> Result<Vec<(EndCond, ResultRule)>, LudemeError> {
        let a = args(e, 1, 2, "condition and result, or a set of (if …)")?;
        if a.len() == 2 {
            return Ok(vec![(self.end_cond(&a[0])?, self.result(&a[1])?)]);
        }
        items(&a[0])
            .iter()
            .map(|x| {
                if x.head() != Some("if") {
                    return Err(unknown(x));
                }
                let b = args(x, 2, 2, "condition and result")?;
                Ok((self.end_cond(&b[0])?, self.result(&b[1])?))
            })
            .collect()
    }
}

fn board(e: &SExpr) -> Result<Option<BoardGraph>, LudemeError> {
    let rect = |r: usize, c: usize| BoardGraph::rectangle_named(r, c, ["N", "S", "W", "E"]);
    Ok(Some(match e.head() {
        Some("chessBoard") => {
            let n = number(&args(e, 1, 1, "a size")?[0], e, "a size")?;
            rect(n, n)
        }
        Some("board") => {
            let a = args(e, 1, 2, "rows and optional columns")?;
            let r = number(&a[0], e, "a size")?;
            let c = a
                .get(1)
                .map(|x| number(x, e, "a size"))
                .transpose()?
                .unwrap_or(r);
            rect(r, c)
        }
        Some("hexBoard") => {
            let n = number(&args(e, 1, 1, "a size")?[0], e, "a size")?;
            BoardGraph::hex_named(n, n, ["N", "S", "W", "E", "NE", "SW"])
        }
        _ => return Ok(None),
    }))
}

fn section<'a>(xs: &'a [SExpr], name: &str) -> Option<&'a SExpr> {
    xs.iter().find(|x| x.head() == Some(name))
}

/// Compiles a `(game …)` tree.
pub fn compile_ludemic(root: &SExpr) -> Result<CompiledLudemicGame, LudemeError> {
    if root.head() != Some("game") {
        return Err(unknown(root));
    }
    let top = args(root, 4, 4, "name, mode, equipment and rules")?;
    let name = top[0]
        .quoted()
        .ok_or_else(|| arity(root, "a quoted name"))?
        .to_string();
    let rest = &top[1..];
    for x in rest {
        if !matches!(x.head(), Some("mode" | "equipment" | "rules")) {
            return Err(unknown(x));
        }
    }
    let mode = section(rest, "mode").ok_or_else(|| arity(root, "(mode n)"))?;
    let players = number(
        &args(mode, 1, 1, "a player count")?[0],
        mode,
        "a player count",
    )?;
    if !(1..=9).contains(&players) {
        return Err(arity(mode, "1 to 9 players"));
    }

    let equipment = section(rest, "equipment").ok_or_else(|| arity(root, "(equipment …)"))?;
    let mut board_graph = None;
    let mut decls: Vec<(&SExpr, String, bool)> = Vec::new();
    for item in items(&args(equipment, 1, 1, "a set of items")?[0]) {
        if let Some(b) = board(item)? {
            if board_graph.replace(b).is_some() {
                return Err(arity(equipment, "a single board"));
            }
            continue;
        }
        let xs = item.list().ok_or_else(|| unknown(item))?;
        let kind_name = xs
            .first()
            .and_then(SExpr::atom)
            .ok_or_else(|| unknown(item))?;
        let each = match xs.get(1).and_then(SExpr::atom) {
            Some("Each") => true,
            Some("None") => false,
            _ => return Err(arity(item, "Each or None, then an optional rule")),
        };
        if xs.len() > 3 {
            return Err(arity(item, "Each or None, then an optional rule"));
        }
        decls.push((item, capitalise(kind_name), each));
    }
    let board_graph = board_graph.ok_or_else(|| arity(equipment, "a board"))?;

    let mut symbols = vec!["Empty".to_string()];
    let mut owners = vec![None];
    let mut kinds = Vec::new();
    let mut kind_of = vec![usize::MAX];
    for (k, (_, name, each)) in decls.iter().enumerate() {
        let mut ids = Vec::new();
        let instances: Vec<(String, Option<PlayerId>)> = if *each {
            (0..players)
                .map(|p| (format!("{name}{}", p + 1), Some(p as PlayerId)))
                .collect()
        } else {
            vec![(format!("{name}0"), None)]
        };
        for (sym, owner) in instances {
            ids.push(symbols.len() as PieceId);
            symbols.push(sym);
            owners.push(owner);
            kind_of.push(k);
        }
        kinds.push(PieceKind {
            name: name.clone(),
            each: *each,
            rule: None,
            ids,
        });
    }
    let pieces = PieceTable::new(symbols, 0, owners)
        .ok_or_else(|| arity(equipment, "distinct piece names"))?;
    let mut ctx = Ctx {
        players,
        board: board_graph,
        pieces,
        kinds,
    };
    for (k, (item, _, _)) in decls.iter().enumerate() {
        if let Some(r) = item.list().unwrap().get(2) {
            let rule = ctx.rule(r, true)?;
            ctx.kinds[k].rule = Some(rule);
        }
    }

    let rules = section(rest, "rules").ok_or_else(|| arity(root, "(rules …)"))?;
    let rs = args(rules, 1, 3, "start, play and end")?;
    for x in rs {
        if !matches!(x.head(), Some("start" | "play" | "end")) {
            return Err(unknown(x));
        }
    }
    let mut start = Vec::new();
    if let Some(s) = section(rs, "start") {
        let mut used = vec![false; ctx.board.vertex_count()];
        for p in items(&args(s, 1, 1, "placements")?[0]) {
            if p.head() != Some("place") {
                return Err(unknown(p));
            }
            let a = args(p, 2, 2, "piece name and sites")?;
            let piece = ctx.piece(
                a[0].quoted()
                    .ok_or_else(|| arity(p, "piece name and sites"))?,
            )?;
            let mut vs = Vec::new();
            for site in items(&a[1]) {
                let n = number(site, p, "site numbers")?;
                let v = ctx
                    .board
                    .site_to_vertex(n)
                    .ok_or_else(|| arity(p, "sites on the board"))?;
                if std::mem::replace(&mut used[v as usize], true) {
                    return Err(LudemeError::OverlappingPlacement(n));
                }
                vs.push(v);
            }
            start.push((piece, vs));
        }
    }
    let play = section(rs, "play").ok_or_else(|| arity(rules, "(play …)"))?;
    let play = ctx.rule(&args(play, 1, 1, "one rule")?[0], false)?;
    let end = section(rs, "end").ok_or_else(|| arity(rules, "(end …)"))?;
    let end = ctx.end(end)?;

    Ok(CompiledLudemicGame {
        name,
        players,
        board: ctx.board,
        pieces: ctx.pieces,
        kinds: ctx.kinds,
        kind_of,
        start,
        play,
        end,
    })
}
