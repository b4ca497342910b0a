//! Compilation of the rules automaton into a flat instruction program.

mod epsilon;
pub(crate) mod exec;
mod lower;

pub use epsilon::{eliminate_epsilon, EpsilonFree};
pub use lower::lower;

use crate::board::VertexId;
use crate::rbg::PieceSet;
use crate::state::{PieceId, PlayerId};
use std::fmt::Write;

pub type Pc = u32;

/// One instruction. Shift-like instructions index a column of the
/// shift table; the first columns are the board directions, further
/// columns are composite paths discovered during lowering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instr {
    Shift(u16),
    On(PieceSet),
    GuardedShift(u16, PieceSet),
    SetHere(PieceId),
    AssignVars(Vec<(u16, u32)>),
    /// Ends a semi-move. `control` is the identifier stored in the state.
    Emit {
        control: u32,
        pass: Option<PlayerId>,
    },
    Fork(Vec<Pc>),
    /// Walks along `column` while the cells are in `pass`, running `cont`
    /// on each such cell.
    RayScan {
        column: u16,
        pass: PieceSet,
        cont: Pc,
    },
    Check {
        positive: bool,
        entry: Pc,
    },
    Accept,
    Jump(Pc),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoweredProgram {
    pub instructions: Vec<Instr>,
    /// `shift_table[column * vertex_count + v]`, `vertex_count` when off board.
    pub shift_table: Vec<VertexId>,
    pub column_names: Vec<String>,
    pub vertex_count: usize,
    /// Entry pc per control identifier, `Pc::MAX` where none exists.
    entry: Vec<Pc>,
}

impl LoweredProgram {
    pub fn entry_of(&self, control: u32) -> Pc {
        self.entry.get(control as usize).copied().unwrap_or(Pc::MAX)
    }

    pub fn entries(&self) -> impl Iterator<Item = (u32, Pc)> + '_ {
        self.entry
            .iter()
            .enumerate()
            .filter(|(_, &pc)| pc != Pc::MAX)
            .map(|(c, &pc)| (c as u32, pc))
    }

    pub fn count(&self, pred: impl Fn(&Instr) -> bool) -> usize {
        self.instructions.iter().filter(|i| pred(i)).count()
    }

    /// One line per instruction, prefixed by its index.
    pub fn listing(&self, piece_symbols: &[String], player_names: &[String]) -> String {
        let set = |s: &PieceSet| {
            let names: Vec<&str> = s
                .iter()
                .map(|p| piece_symbols[p as usize].as_str())
                .collect();
            format!("{{{}}}", names.join(","))
        };
        let col = |c: &u16| self.column_names[*c as usize].as_str();
        let mut out = String::new();
        for (pc, ins) in self.instructions.iter().enumerate() {
            let text = match ins {
                Instr::Shift(c) => format!("Shift {}", col(c)),
                Instr::On(s) => format!("On {}", set(s)),
                Instr::GuardedShift(c, s) => format!("GuardedShift {} {}", col(c), set(s)),
                Instr::SetHere(p) => format!("SetHere {}", piece_symbols[*p as usize]),
                Instr::AssignVars(list) => {
                    let parts: Vec<String> =
                        list.iter().map(|(k, v)| format!("#{k}={v}")).collect();
                    format!("AssignVars {}", parts.join(","))
                }
                Instr::Emit {
                    control,
                    pass: Some(p),
                } => {
                    format!("Emit {control} -> {}", player_names[*p as usize])
                }
                Instr::Emit {
                    control,
                    pass: None,
                } => format!("Emit {control} ->>"),
                Instr::Fork(ts) => {
                    let parts: Vec<String> = ts.iter().map(|t| t.to_string()).collect();
                    format!("Fork {}", parts.join(" "))
                }
                Instr::RayScan { column, pass, cont } => {
                    format!("RayScan {} {} -> {cont}", col(column), set(pass))
                }
                Instr::Check { positive, entry } => {
                    format!("Check {} {entry}", if *positive { "?" } else { "!" })
                }
                Instr::Accept => "Accept".to_string(),
                Instr::Jump(t) => format!("Jump {t}"),
            };
            let _ = writeln!(out, "{pc}: {text}");
        }
        out
    }
}
