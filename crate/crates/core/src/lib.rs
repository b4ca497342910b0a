//! A general game system with two description languages: a regular
//! language over board actions (interpreted or compiled) and a ludemic
//! S-expression language, plus benchmarking tools.

pub mod bench;
pub mod board;
pub mod cli;
pub mod compiler;
pub mod library;
pub mod ludeme;
pub mod playout;
pub mod prng;
pub mod rbg;
pub mod state;
