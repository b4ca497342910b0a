//! The binary's output streams and exit codes.

use std::process::{Command, Output};

fn ggsys(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ggsys"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn perft_through_the_ludemic_dialect() {
    let o = ggsys(&["perft", "tictactoe", "--depth", "2", "--dialect", "ludemic"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "72\n");
}

#[test]
fn xval_reports_ok() {
    let o = ggsys(&[
        "xval", "amazons", "--depth", "2", "--walks", "100", "--seed", "0",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("OK\n"));
    let o = ggsys(&[
        "xval",
        "tictactoe",
        "--depth",
        "1",
        "--walks",
        "2",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["perftAgreement"][0]["agree"], true);
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["bench", "amazons", "--mode", "nosuch"][..],
        &["perft", "tictactoe"],
        &["frobnicate"],
        &["tokens", "chess"],
        &["table", "--format", "csv"],
    ] {
        let o = ggsys(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn validate_files() {
    assert_eq!(
        ggsys(&["validate", "assets/reversi.rbg"]).status.code(),
        Some(0)
    );
    assert_eq!(
        ggsys(&["validate", "assets/reversi.lud"]).status.code(),
        Some(0)
    );
    let bad = std::env::temp_dir().join(format!("ggsys-bad-{}.lud", std::process::id()));
    std::fs::write(
        &bad,
        "(game \"X\" (mode 2) (equipment { (board 3) }) (rules (play (frobnicate))))",
    )
    .unwrap();
    let o = ggsys(&["validate", bad.to_str().unwrap()]);
    std::fs::remove_file(&bad).unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("frobnicate"));
}

#[test]
fn bench_splits_streams() {
    let o = ggsys(&[
        "bench", "connect4", "--mode", "compiled", "--count", "50", "--seed", "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("playouts=50\n") && !out.contains("elapsed"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("playoutsPerSec="));
}

#[test]
fn tokens_moves_and_ir() {
    assert_eq!(
        stdout(&ggsys(&["tokens", "assets/tictactoe.lud"]))
            .trim()
            .parse::<usize>()
            .unwrap(),
        72
    );
    let moves = stdout(&ggsys(&["moves", "reversi", "--mode", "interp"]));
    assert_eq!(moves.lines().count(), 4);
    let ir = ggsys(&["dump-ir", "tictactoe"]);
    assert_eq!(ir.status.code(), Some(0));
    assert!(stdout(&ir).starts_with("0: "));
    assert_eq!(ggsys(&["dump-ir", "assets/hex.lud"]).status.code(), Some(2));
}

#[test]
fn table_writes_every_column() {
    let o = ggsys(&[
        "table",
        "tictactoe",
        "connect4",
        "--format",
        "csv",
        "--count",
        "20",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "game,tokensRbg,tokensLudemic,tokenRate,ppsInterp,ppsCompiled,ppsLudemic,rateVsInterp,rateVsCompiled");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("Tic-Tac-Toe,232,72,0.31,"));
}
