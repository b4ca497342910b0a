//! The ludemic dialect: S-expression descriptions built from named game
//! concepts.

mod compile;
mod eval;
pub mod sexpr;

pub use compile::{
    compile_ludemic, CellCond, CompiledLudemicGame, DirSpec, EndCond, Outcome, PieceKind,
    ResultRule, Rule, TurnCond, Who,
};
pub use eval::{detect_line, region_connected, LudemicGame};
pub use sexpr::{parse_sexpr, SExpr, SExprKind};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LudemeError {
    #[error("{line}:{col}: unbalanced brackets")]
    Unbalanced { line: usize, col: usize },
    #[error("{line}:{col}: unterminated string")]
    UnterminatedString { line: usize, col: usize },
    #[error("{line}:{col}: unknown ludeme `{name}`")]
    UnknownLudeme {
        name: String,
        line: usize,
        col: usize,
    },
    #[error("{line}:{col}: wrong arguments for `{ludeme}`: expected {expected}")]
    ArityError {
        ludeme: String,
        expected: String,
        line: usize,
        col: usize,
    },
    #[error("unknown piece `{0}`")]
    UnknownPiece(String),
    #[error("site {0} is placed twice")]
    OverlappingPlacement(usize),
    #[error("shoot needs a previous destination")]
    ShootWithoutContext,
    #[error("move is not legal here")]
    IllegalMove,
}
