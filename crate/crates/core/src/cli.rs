//! Command-line front end. Machine-readable output goes to `out`,
//! diagnostics to `err`. Exit codes: 0 success, 1 validation or mismatch
//! failure, 2 usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bench::{
    bench_playouts, count_tokens, cross_validate_games, emit_table, measure_row, perft, Budget,
    TableFormat, DEFAULT_SECONDS,
};
use crate::library::{
    build_game, find_game, list_games, load_description, Dialect, Engine, GameEntry, LoadError,
};
use crate::playout::Game;
use crate::rbg::{RbgGame, RbgMode};
use crate::state::{move_delta, GameState, Move};

#[derive(Debug, Parser)]
#[command(
    name = "ggsys",
    version,
    about = "General game system with regex and ludemic description languages"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DialectArg {
    Rbg,
    Ludemic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    #[value(alias = "interpreter")]
    Interp,
    Compiled,
    Ludemic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Json,
    Markdown,
    Csv,
}

#[derive(Debug, Args)]
struct Target {
    /// Library game name, or a path to a description file.
    game: String,
    #[arg(long, value_enum)]
    dialect: Option<DialectArg>,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse and compile a description.
    Validate {
        file: String,
        #[arg(long, value_enum)]
        dialect: Option<DialectArg>,
    },
    /// Print the sorted canonical deltas of the legal moves.
    Moves {
        #[command(flatten)]
        target: Target,
        /// Whitespace-separated deltas of moves to play first.
        #[arg(long)]
        state: Option<String>,
    },
    /// Count move paths to a depth.
    Perft {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        depth: u32,
    },
    /// Measure random playout throughput.
    Bench {
        #[command(flatten)]
        target: Target,
        #[arg(long, conflicts_with = "count")]
        seconds: Option<f64>,
        #[arg(long)]
        count: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Count description tokens.
    Tokens {
        game: String,
        #[arg(long, value_enum)]
        dialect: Option<DialectArg>,
    },
    /// Cross-check all three engines on a library game.
    Xval {
        game: String,
        #[arg(long, default_value_t = 2)]
        depth: u32,
        #[arg(long, default_value_t = 100)]
        walks: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Token and throughput comparison over the library.
    Table {
        /// Library games to include.
        games: Vec<String>,
        /// Include every library game.
        #[arg(long)]
        all: bool,
        #[arg(long, value_enum, default_value = "markdown")]
        format: FormatArg,
        #[arg(long, conflicts_with = "count")]
        seconds: Option<f64>,
        #[arg(long)]
        count: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Print the compiled instruction listing of a regex-dialect game.
    DumpIr { game: String },
}

enum CliError {
    Usage(String),
    Failure(String),
}

impl From<LoadError> for CliError {
    fn from(e: LoadError) -> Self {
        match e {
            LoadError::UnknownGame(_) => CliError::Usage(e.to_string()),
            _ => CliError::Failure(e.to_string()),
        }
    }
}

fn io(e: std::io::Error) -> CliError {
    CliError::Failure(e.to_string())
}

/// Where a description comes from.
enum Source {
    Library(&'static GameEntry),
    File(PathBuf),
}

fn resolve(arg: &str) -> Result<Source, CliError> {
    let p = Path::new(arg);
    if arg.contains(['/', '\\']) || p.extension().is_some() {
        return Ok(Source::File(p.to_path_buf()));
    }
    Ok(Source::Library(find_game(arg)?))
}

impl Source {
    fn name(&self) -> String {
        match self {
            Source::Library(e) => e.name.to_string(),
            Source::File(p) => p
                .file_stem()
                .map_or("game".into(), |s| s.to_string_lossy().into_owned()),
        }
    }

    fn file_dialect(&self) -> Result<Option<Dialect>, CliError> {
        match self {
            Source::Library(_) => Ok(None),
            Source::File(p) => match p.extension().and_then(|e| e.to_str()) {
                Some("rbg") => Ok(Some(Dialect::Rbg)),
                Some("lud") => Ok(Some(Dialect::Ludemic)),
                _ => Ok(None),
            },
        }
    }

    fn text(&self, dialect: Dialect) -> Result<String, CliError> {
        match self {
            Source::Library(e) => Ok(load_description(e.name, dialect)?.to_string()),
            Source::File(p) => std::fs::read_to_string(p)
                .map_err(|e| CliError::Usage(format!("{}: {e}", p.display()))),
        }
    }
}

fn dialect_of(arg: Option<DialectArg>) -> Option<Dialect> {
    arg.map(|d| match d {
        DialectArg::Rbg => Dialect::Rbg,
        DialectArg::Ludemic => Dialect::Ludemic,
    })
}

/// The dialect of a file source, from the flag or else the extension.
fn source_dialect(src: &Source, flag: Option<DialectArg>) -> Result<Option<Dialect>, CliError> {
    let from_file = src.file_dialect()?;
    match (dialect_of(flag), from_file) {
        (Some(a), Some(b)) if a != b => Err(CliError::Usage(
            "--dialect contradicts the file extension".into(),
        )),
        (a, b) => {
            let d = a.or(b);
            if d.is_none() && matches!(src, Source::File(_)) {
                return Err(CliError::Usage(
                    "cannot tell the dialect; pass --dialect".into(),
                ));
            }
            Ok(d)
        }
    }
}

fn engine(src: &Source, t: &Target) -> Result<Engine, CliError> {
    let dialect = source_dialect(src, t.dialect)?;
    match (dialect, t.mode) {
        (Some(Dialect::Ludemic), None | Some(ModeArg::Ludemic))
        | (None, Some(ModeArg::Ludemic)) => Ok(Engine::Ludemic),
        (Some(Dialect::Ludemic), Some(_)) | (Some(Dialect::Rbg), Some(ModeArg::Ludemic)) => {
            Err(CliError::Usage("--mode does not match the dialect".into()))
        }
        (_, Some(ModeArg::Interp)) => Ok(Engine::Interpreter),
        (_, Some(ModeArg::Compiled) | None) => Ok(Engine::Compiled),
    }
}

fn load(t: &Target) -> Result<(Box<dyn Game>, Engine), CliError> {
    let src = resolve(&t.game)?;
    let e = engine(&src, t)?;
    Ok((build_game(&src.name(), &src.text(e.dialect())?, e)?, e))
}

fn budget(seconds: Option<f64>, count: Option<u64>) -> Result<Budget, CliError> {
    match (seconds, count) {
        (Some(s), _) if !(s > 0.0 && s.is_finite()) => {
            Err(CliError::Usage("--seconds must be positive".into()))
        }
        (Some(s), _) => Ok(Budget::FixedSeconds(s)),
        (None, Some(n)) => Ok(Budget::FixedCount(n)),
        (None, None) => Ok(Budget::FixedSeconds(DEFAULT_SECONDS)),
    }
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(io),
        None => out.write_all(text.as_bytes()).map_err(io),
    }
}

/// Plays the moves named by `script` (canonical or neutral deltas).
fn replay_script(game: &dyn Game, script: &str) -> Result<GameState, CliError> {
    let mut scratch = game.new_scratch();
    let mut state = game.initial_state();
    let v = game.vocabulary();
    for (i, want) in script.split_whitespace().enumerate() {
        let moves = game.legal_moves(&state, &mut scratch);
        let found: Option<&Move> = moves.iter().find(|m| {
            let d = move_delta(&state, m);
            v.encode_delta(&d) == want || v.encode_neutral(&d) == want
        });
        let m = found
            .ok_or_else(|| CliError::Failure(format!("move {} (`{want}`) is not legal", i + 1)))?;
        game.apply(&mut state, m);
    }
    Ok(state)
}

fn execute(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    match cmd {
        Command::Validate { file, dialect } => {
            let src = resolve(&file)?;
            let d = source_dialect(&src, dialect)?.unwrap_or(Dialect::Rbg);
            let text = src.text(d)?;
            let e = if d == Dialect::Ludemic {
                Engine::Ludemic
            } else {
                Engine::Compiled
            };
            match build_game(&src.name(), &text, e) {
                Ok(_) => writeln!(out, "OK").map_err(io)?,
                Err(e) => return Err(CliError::Failure(e.to_string())),
            }
        }
        Command::Moves { target, state } => {
            let (game, _) = load(&target)?;
            let state = replay_script(game.as_ref(), state.as_deref().unwrap_or(""))?;
            let v = game.vocabulary();
            for m in game.legal_moves(&state, &mut game.new_scratch()) {
                writeln!(out, "{}", v.encode_delta(&move_delta(&state, &m))).map_err(io)?;
            }
        }
        Command::Perft { target, depth } => {
            if depth == 0 {
                return Err(CliError::Usage("--depth must be at least 1".into()));
            }
            let (game, _) = load(&target)?;
            writeln!(out, "{}", perft(game.as_ref(), depth)).map_err(io)?;
        }
        Command::Bench {
            target,
            seconds,
            count,
            seed,
            format,
        } => {
            let budget = budget(seconds, count)?;
            let (game, e) = load(&target)?;
            let r = bench_playouts(game.as_ref(), e, budget, seed)
                .map_err(|e| CliError::Failure(e.to_string()))?;
            match format {
                FormatArg::Json => writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&r).expect("serializable")
                )
                .map_err(io)?,
                FormatArg::Text => {
                    let totals: Vec<String> = r.payoff_totals.iter().map(u64::to_string).collect();
                    writeln!(
                        out,
                        "game={}\nmode={}\nseed={}\nplayouts={}\navgPlayoutLength={:.4}\ntruncatedCount={}\npayoffTotals={}",
                        r.game,
                        r.mode,
                        r.seed,
                        r.playouts,
                        r.avg_playout_length,
                        r.truncated_count,
                        totals.join(",")
                    )
                    .map_err(io)?;
                    writeln!(
                        err,
                        "elapsed={:.3}s playoutsPerSec={:.2}",
                        r.elapsed, r.playouts_per_sec
                    )
                    .map_err(io)?;
                }
                _ => {
                    return Err(CliError::Usage(
                        "bench supports --format text or json".into(),
                    ))
                }
            }
        }
        Command::Tokens { game, dialect } => {
            let src = resolve(&game)?;
            match source_dialect(&src, dialect)? {
                Some(d) => writeln!(out, "{}", count_tokens(&src.text(d)?, d)?).map_err(io)?,
                None => {
                    let rbg = count_tokens(&src.text(Dialect::Rbg)?, Dialect::Rbg)?;
                    let lud = count_tokens(&src.text(Dialect::Ludemic)?, Dialect::Ludemic)?;
                    writeln!(
                        out,
                        "rbg={rbg}\nludemic={lud}\nrate={:.2}",
                        lud as f64 / rbg as f64
                    )
                    .map_err(io)?;
                }
            }
        }
        Command::Xval {
            game,
            depth,
            walks,
            seed,
            format,
            output,
        } => {
            let entry = find_game(&game)?;
            let games = Engine::ALL
                .iter()
                .map(|&e| Ok((e, crate::library::load_game(entry.name, e)?)))
                .collect::<Result<Vec<_>, LoadError>>()?;
            let refs: Vec<(Engine, &dyn Game)> =
                games.iter().map(|(e, g)| (*e, g.as_ref())).collect();
            let report = cross_validate_games(&refs, depth, walks, seed);
            let text = match format {
                FormatArg::Json => {
                    serde_json::to_string_pretty(&report).expect("serializable") + "\n"
                }
                FormatArg::Text => {
                    let mut s = String::new();
                    for p in &report.perft_agreement {
                        let counts: Vec<String> = p
                            .counts
                            .iter()
                            .map(|c| format!("{}={}", c.mode, c.count))
                            .collect();
                        s += &format!(
                            "perft d{} {} {}\n",
                            p.depth,
                            counts.join(" "),
                            if p.agree { "agree" } else { "DIFFER" }
                        );
                    }
                    s += &format!(
                        "deltaSetMismatches={} outcomeMismatches={}\n{}\n",
                        report.delta_set_mismatches.len(),
                        report.outcome_mismatches.len(),
                        if report.is_clean() { "OK" } else { "MISMATCH" }
                    );
                    s
                }
                _ => {
                    return Err(CliError::Usage(
                        "xval supports --format text or json".into(),
                    ))
                }
            };
            emit(out, output.as_deref(), &text)?;
            if !report.is_clean() {
                return Ok(1);
            }
        }
        Command::Table {
            games,
            all,
            format,
            seconds,
            count,
            seed,
            output,
        } => {
            let format = match format {
                FormatArg::Markdown => TableFormat::Markdown,
                FormatArg::Csv => TableFormat::Csv,
                _ => {
                    return Err(CliError::Usage(
                        "table supports --format markdown or csv".into(),
                    ))
                }
            };
            let entries: Vec<&GameEntry> = if all {
                list_games().iter().collect()
            } else {
                games
                    .iter()
                    .map(|g| find_game(g))
                    .collect::<Result<_, _>>()?
            };
            if entries.is_empty() {
                return Err(CliError::Usage("name some games or pass --all".into()));
            }
            let budget = budget(seconds, count)?;
            let mut rows = Vec::new();
            for entry in entries {
                writeln!(err, "measuring {}", entry.title).map_err(io)?;
                rows.push(
                    measure_row(entry, budget, seed)
                        .map_err(|e| CliError::Failure(e.to_string()))?,
                );
            }
            let text = emit_table(&rows, format).map_err(|e| CliError::Usage(e.to_string()))?;
            emit(out, output.as_deref(), &text)?;
        }
        Command::DumpIr { game } => {
            let src = resolve(&game)?;
            if source_dialect(&src, None)? == Some(Dialect::Ludemic) {
                return Err(CliError::Usage(
                    "dump-ir needs a regex-dialect description".into(),
                ));
            }
            let g = RbgGame::from_source(&src.name(), &src.text(Dialect::Rbg)?, RbgMode::Compiled)
                .map_err(|e| CliError::Failure(e.to_string()))?;
            let v = g.vocabulary();
            let program = g.program().expect("compiled mode lowers the program");
            out.write_all(program.listing(v.pieces.symbols(), &v.players).as_bytes())
                .map_err(io)?;
        }
    }
    Ok(0)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(CliError::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
        Err(CliError::Failure(m)) => {
            let _ = writeln!(err, "error: {m}");
            1
        }
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(
            std::iter::once("ggsys").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn perft_prints_the_count() {
        assert_eq!(
            call(&["perft", "tictactoe", "--depth", "2", "--dialect", "ludemic"]),
            (0, "72\n".into(), "".into())
        );
    }

    #[test]
    fn bad_mode_is_a_usage_error() {
        assert_eq!(call(&["bench", "amazons", "--mode", "nosuch"]).0, 2);
        assert_eq!(
            call(&[
                "perft",
                "tictactoe",
                "--depth",
                "1",
                "--dialect",
                "ludemic",
                "--mode",
                "interp"
            ])
            .0,
            2
        );
        assert_eq!(call(&["perft", "chess", "--depth", "1"]).0, 2);
        assert_eq!(call(&["table"]).0, 2);
    }

    #[test]
    fn moves_after_a_script() {
        let (code, out, _) = call(&["moves", "tictactoe"]);
        assert_eq!(code, 0);
        let first = out.lines().next().unwrap().to_string();
        let (code, after, _) = call(&["moves", "tictactoe", "--state", &first]);
        assert_eq!(code, 0);
        assert_eq!(after.lines().count(), 8);
        assert_eq!(call(&["moves", "tictactoe", "--state", "nonsense"]).0, 1);
    }

    #[test]
    fn dump_ir_lists_instructions() {
        let (code, out, _) = call(&["dump-ir", "amazons"]);
        assert_eq!(code, 0);
        assert!(out
            .lines()
            .all(|l| l.split(':').next().unwrap().parse::<usize>().is_ok()));
        assert!(out.contains("RayScan"));
    }
}
