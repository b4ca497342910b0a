//! The bundled games, one description per dialect.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::ludeme::{LudemeError, LudemicGame};
use crate::playout::Game;
use crate::rbg::{RbgError, RbgGame, RbgMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dialect {
    Rbg,
    Ludemic,
}

impl Dialect {
    pub fn extension(self) -> &'static str {
        match self {
            Dialect::Rbg => "rbg",
            Dialect::Ludemic => "lud",
        }
    }
}

/// How a game's moves are produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Engine {
    Interpreter,
    Compiled,
    Ludemic,
}

impl Engine {
    pub const ALL: [Engine; 3] = [Engine::Interpreter, Engine::Compiled, Engine::Ludemic];

    pub fn dialect(self) -> Dialect {
        match self {
            Engine::Ludemic => Dialect::Ludemic,
            _ => Dialect::Rbg,
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Engine::Interpreter => "interp",
            Engine::Compiled => "compiled",
            Engine::Ludemic => "ludemic",
        })
    }
}

impl FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "interp" | "interpreter" => Ok(Engine::Interpreter),
            "compiled" => Ok(Engine::Compiled),
            "ludemic" | "lud" => Ok(Engine::Ludemic),
            _ => Err(format!("unknown mode `{s}` (interp, compiled or ludemic)")),
        }
    }
}

/// How a reference perft count was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GoldBasis {
    /// Follows from the rules by counting.
    Analytic,
    /// Checked by an independent enumerator in the test suite.
    Enumerated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gold {
    pub depth: u32,
    pub count: u64,
    pub basis: GoldBasis,
}

#[derive(Debug, Clone, Copy)]
pub struct GameEntry {
    /// Lookup key, also the asset file stem.
    pub name: &'static str,
    pub title: &'static str,
    pub perft_golds: &'static [Gold],
    pub notes: &'static str,
}

impl GameEntry {
    pub fn rbg_path(&self) -> String {
        format!("assets/{}.rbg", self.name)
    }

    pub fn lud_path(&self) -> String {
        format!("assets/{}.lud", self.name)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LoadError {
    #[error("unknown game `{0}`")]
    UnknownGame(String),
    #[error(transparent)]
    Rbg(#[from] RbgError),
    #[error(transparent)]
    Ludeme(#[from] LudemeError),
}

const fn a(depth: u32, count: u64) -> Gold {
    Gold {
        depth,
        count,
        basis: GoldBasis::Analytic,
    }
}

const fn e(depth: u32, count: u64) -> Gold {
    Gold {
        depth,
        count,
        basis: GoldBasis::Enumerated,
    }
}

static GAMES: [GameEntry; 7] = [
    GameEntry {
        name: "amazons",
        title: "Amazons",
        perft_golds: &[e(1, 80), e(2, 2176)],
        notes: "10x10, four queens each; a queen move and its arrow are separate plies",
    },
    GameEntry {
        name: "breakthrough",
        title: "Breakthrough",
        perft_golds: &[e(1, 22), e(2, 484)],
        notes: "8x8, two rows of pawns each",
    },
    GameEntry {
        name: "connect4",
        title: "Connect-4",
        perft_golds: &[a(1, 7), a(6, 117_649)],
        notes: "6 rows by 7 columns",
    },
    GameEntry {
        name: "gomoku",
        title: "Gomoku",
        perft_golds: &[a(1, 225), a(2, 50_400)],
        notes: "15x15, five or more in a row wins",
    },
    GameEntry {
        name: "hex",
        title: "Hex",
        perft_golds: &[a(1, 121), a(2, 14_520)],
        notes: "11x11 rhombus, no swap rule",
    },
    GameEntry {
        name: "reversi",
        title: "Reversi",
        perft_golds: &[
            e(1, 4),
            e(2, 12),
            e(3, 56),
            e(4, 244),
            e(5, 1396),
            e(6, 8200),
        ],
        notes: "8x8, pass when no placement exists",
    },
    GameEntry {
        name: "tictactoe",
        title: "Tic-Tac-Toe",
        perft_golds: &[a(1, 9), a(2, 72), e(9, 255_168)],
        notes: "3x3",
    },
];

/// All bundled games in a fixed order.
pub fn list_games() -> &'static [GameEntry] {
    &GAMES
}

pub fn find_game(name: &str) -> Result<&'static GameEntry, LoadError> {
    let key = name.to_ascii_lowercase();
    GAMES
        .iter()
        .find(|g| g.name == key || g.title.eq_ignore_ascii_case(name))
        .ok_or_else(|| LoadError::UnknownGame(name.to_string()))
}

macro_rules! assets {
    ($($name:literal),*) => {
        fn asset(name: &str, dialect: Dialect) -> Option<&'static str> {
            match (name, dialect) {
                $(
                    ($name, Dialect::Rbg) => Some(include_str!(concat!("../assets/", $name, ".rbg"))),
                    ($name, Dialect::Ludemic) => Some(include_str!(concat!("../assets/", $name, ".lud"))),
                )*
                _ => None,
            }
        }
    };
}

assets!(
    "amazons",
    "breakthrough",
    "connect4",
    "gomoku",
    "hex",
    "reversi",
    "tictactoe"
);

/// Byte-exact description text.
pub fn load_description(name: &str, dialect: Dialect) -> Result<&'static str, LoadError> {
    let entry = find_game(name)?;
    Ok(asset(entry.name, dialect).expect("every entry ships both dialects"))
}

/// Builds a runnable game from source text.
pub fn build_game(name: &str, src: &str, engine: Engine) -> Result<Box<dyn Game>, LoadError> {
    Ok(match engine {
        Engine::Interpreter => Box::new(RbgGame::from_source(name, src, RbgMode::Interpreter)?),
        Engine::Compiled => Box::new(RbgGame::from_source(name, src, RbgMode::Compiled)?),
        Engine::Ludemic => Box::new(LudemicGame::from_source(src)?),
    })
}

/// Builds a bundled game.
pub fn load_game(name: &str, engine: Engine) -> Result<Box<dyn Game>, LoadError> {
    let entry = find_game(name)?;
    build_game(
        entry.name,
        load_description(entry.name, engine.dialect())?,
        engine,
    )
}
