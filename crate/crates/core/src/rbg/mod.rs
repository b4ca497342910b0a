//! Front-end for the regex-over-board-moves dialect: lexing, parsing, macro
//! expansion, Thompson automata and the interpreting executor.

pub mod ast;
pub mod game;
pub mod interp;
pub mod lexer;
pub mod macros;
pub mod nfa;
pub mod parser;
pub(crate) mod search;

use thiserror::Error;

pub use ast::{Action, PatternExpr, RbgGameDef};
pub use game::{Op, RbgGame, RbgMode};
pub use lexer::{tokenize_rbg, RbgToken, TokenKind};
pub use macros::expand_macros;
pub use nfa::{build_nfa, Label, Nfa};
pub use parser::{parse_pattern, parse_rbg, parse_rbg_source};

use crate::state::PieceId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RbgError {
    #[error("{line}:{col}: unexpected character `{snippet}`\n  | {excerpt}")]
    Lex {
        line: usize,
        col: usize,
        snippet: String,
        excerpt: String,
    },
    #[error("{line}:{col}: expected one of {expected:?}, found `{found}`\n  | {excerpt}")]
    Parse {
        line: usize,
        col: usize,
        expected: Vec<String>,
        found: String,
        excerpt: String,
    },
    #[error("line {line}: section `#{name}` appears more than once")]
    DuplicateSection { name: String, line: usize },
    #[error("missing section `#{0}`")]
    MissingSection(String),
    #[error("line {line}: board row has {found} cells, expected {expected}")]
    RaggedBoard {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("unknown macro `{0}`")]
    UnknownMacro(String),
    #[error("macro `{name}` takes {expected} arguments, got {found}")]
    ArityMismatch {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("macro expansion of `{0}` does not terminate")]
    RecursionDetected(String),
    #[error("rules must open with a player switch")]
    RulesMustOpenWithSwitch,
    #[error("{0}")]
    Validation(String),
    #[error("move is not legal in this position")]
    IllegalMove,
}

/// Bit set over piece ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct PieceSet(pub u64);

impl PieceSet {
    #[inline]
    pub fn contains(self, p: PieceId) -> bool {
        self.0 >> p & 1 == 1
    }

    pub fn insert(&mut self, p: PieceId) {
        self.0 |= 1 << p;
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = PieceId> {
        (0..64u8).filter(move |&p| self.contains(p))
    }
}
