//! End-to-end tests of the script front end: execution semantics, exit
//! codes, printing round-trips, and golden-file determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

use finalg_cli::exec::{execute, ExecOptions};
use finalg_cli::script::{parse_script, ParseError};
use proptest::prelude::*;

fn run_exec(source: &str) -> finalg_cli::exec::Execution {
    let script = parse_script(source).expect("parse");
    execute(&script, &ExecOptions::default()).expect("execute")
}

fn workspace_root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .canonicalize()
        .unwrap()
}

fn run_binary(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_finalg"));
    cmd.args(args).current_dir(workspace_root());
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

#[test]
fn decide_commands_execute() {
    let exec = run_exec(
        "ring R = Z(6)\nset S in R = {1,3}\nmodule M over R = regular\n\
         decide s_secondary M S\ndecide second M\n",
    );
    assert_eq!(exec.commands.len(), 2);
    assert_eq!(exec.commands[0].json["verdict"], serde_json::json!(true));
    assert_eq!(
        exec.commands[0].json["witness"]["s"],
        serde_json::json!("3")
    );
    assert_eq!(exec.commands[1].json["verdict"], serde_json::json!(false));
}

#[test]
fn quotient_and_saturation_declarations() {
    let exec = run_exec(
        "ring R = Z(6)\nring Q = quotient(R, span{2})\nset S in R = {1,3}\n\
         set T in R = saturation(S)\nmodule M over Q = regular\ndecide secondary M\n",
    );
    assert_eq!(exec.declarations[1]["size"], serde_json::json!(2));
    assert_eq!(
        exec.declarations[3]["members"],
        serde_json::json!(["1", "3", "5"])
    );
    assert_eq!(exec.commands[0].json["verdict"], serde_json::json!(true));
}

#[test]
fn idealization_declarations_and_pairs() {
    let exec = run_exec(
        "ring R = Z(4)\n\
         module M2 over R = tables(add = [[0,1],[1,0]], act = [[0,0],[0,1],[0,0],[0,1]])\n\
         ring A = idealization(R, M2)\n\
         set S in A = {(1|0),(3|0)}\n\
         module RA over A = regular\n\
         submodule I of RA = span{(2|0)}\n\
         decide s_secondary I S\n",
    );
    assert_eq!(exec.commands[0].json["verdict"], serde_json::json!(true));
    // I(+)0 = {(0|0),(2|0)}
    assert_eq!(
        exec.declarations[5]["members"],
        serde_json::json!(["(0|0)", "(2|0)"])
    );
}

#[test]
fn invalid_set_is_an_execution_error() {
    let script = parse_script("ring R = Z(4)\nset S in R = {2}\n").unwrap();
    let err = execute(&script, &ExecOptions::default()).unwrap_err();
    assert_eq!(err.loc.line, 2);
    assert!(
        err.message.contains("multiplicatively closed"),
        "{}",
        err.message
    );
}

#[test]
fn nonunital_action_is_an_execution_error() {
    // 3·m = 0 cannot extend 1·m = m on a 3-element carrier over Z4
    let script = parse_script(
        "ring R = Z(4)\nmodule M over R = tables(add = [[0,1,2],[1,2,0],[2,0,1]], \
         act = [[0,0,0],[0,1,2],[0,2,1],[0,0,0]])\n",
    )
    .unwrap();
    let err = execute(&script, &ExecOptions::default()).unwrap_err();
    assert!(err.message.contains("axiom violation"), "{}", err.message);
}

#[test]
fn cap_is_enforced_at_declaration() {
    let script = parse_script("ring R = Z(12)\n").unwrap();
    let err = execute(
        &script,
        &ExecOptions {
            cap: 8,
            recheck: false,
        },
    )
    .unwrap_err();
    assert!(err.message.contains("cap"), "{}", err.message);
}

#[test]
fn unknown_law_is_an_execution_error() {
    let script = parse_script(
        "ring R = Z(4)\nset S in R = {1}\nmodule M over R = regular\nverify L99 R M S\n",
    )
    .unwrap();
    let err = execute(&script, &ExecOptions::default()).unwrap_err();
    assert!(err.message.contains("unknown law"), "{}", err.message);
}

#[test]
fn enumerate_submodules_of_z12() {
    let exec = run_exec("ring R = Z(12)\nmodule M over R = regular\nenumerate submodules M\n");
    assert_eq!(exec.commands[0].json["count"], serde_json::json!(6));
}

#[test]
fn exit_codes_through_the_binary() {
    let ok = run_binary(&["scripts/separation_z4.alg"], &[]);
    assert_eq!(ok.status.code(), Some(0));

    let input_error = run_binary(&["scripts/no-such-file.alg"], &[]);
    assert_eq!(input_error.status.code(), Some(2));

    let parse_error_file = workspace_root().join("target/test-parse-error.alg");
    std::fs::write(&parse_error_file, "ring R = W(4)\n").unwrap();
    let parse_error = run_binary(&[parse_error_file.to_str().unwrap()], &[]);
    assert_eq!(parse_error.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&parse_error.stderr).contains("syntax error"));
}

#[test]
fn golden_demo_report_is_reproduced() {
    let golden =
        std::fs::read(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/demo.json"))
            .expect("golden file");
    let out = run_binary(
        &["scripts/demo.alg", "--format", "structured", "--recheck"],
        &[],
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        out.stdout, golden,
        "structured demo report drifted from the golden file"
    );
}

#[test]
fn structured_output_is_stable_across_runs_and_thread_counts() {
    let first = run_binary(&["scripts/demo.alg", "--format", "structured"], &[]);
    let second = run_binary(&["scripts/demo.alg", "--format", "structured"], &[]);
    assert_eq!(first.stdout, second.stdout);
    let one = run_binary(
        &["scripts/demo.alg", "--format", "structured"],
        &[("RAYON_NUM_THREADS", "1")],
    );
    let four = run_binary(
        &["scripts/demo.alg", "--format", "structured"],
        &[("RAYON_NUM_THREADS", "4")],
    );
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(first.stdout, one.stdout);
}

#[test]
fn out_flag_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run_binary(
        &[
            "scripts/separation_z4.alg",
            "--format",
            "structured",
            "--out",
            path.to_str().unwrap(),
        ],
        &[],
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(doc["schema"], serde_json::json!("finalg/1"));
    assert_eq!(doc["exit_status"], serde_json::json!(0));
}

#[test]
fn battery_flag_runs_without_a_script() {
    let out = run_binary(&["--battery", "--format", "structured"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(doc["universes"].as_array().unwrap().len() >= 14);
    assert_eq!(doc["audit"]["routes_agree"], serde_json::json!(true));
}

// A deterministic script builder driven by seed bytes: declares a pool of
// objects and emits commands against them, always producing a valid
// script.
fn build_script(seed: &[u8]) -> String {
    let mut out = String::from(
        "ring R0 = Z(4)\nring R1 = Z(6)\nring P = product(R0, R1)\n\
         set S0 in R0 = {1,3}\nset S1 in R1 = closure{5}\n\
         module M0 over R0 = regular\nmodule M1 over R1 = regular\n\
         submodule N0 of M0 = span{2}\n",
    );
    for (i, b) in seed.iter().enumerate() {
        match b % 8 {
            0 => out.push_str("decide secondary M0\n"),
            1 => out.push_str("decide s_secondary:b N0 S0\n"),
            2 => out.push_str("decide s_prime N0 S0\n"),
            3 => out.push_str("enumerate ci M1\n"),
            4 => out.push_str("enumerate ideals P\n"),
            5 => out.push_str("verify L4 R0 M0 S0\n"),
            6 => out.push_str(&format!("submodule X{i} of M1 = span{{{}}}\n", b % 6)),
            _ => out.push_str("decide multiplication M1\n"),
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pretty_printing_round_trips(seed in proptest::collection::vec(any::<u8>(), 0..12)) {
        let source = build_script(&seed);
        let script = parse_script(&source).expect("generated scripts parse");
        let printed = script.to_string();
        let reparsed = parse_script(&printed).expect("printed scripts parse");
        prop_assert_eq!(script, reparsed);
        // printing is a fixpoint
        prop_assert_eq!(printed.clone(), parse_script(&printed).unwrap().to_string());
    }
}

#[test]
fn name_errors_report_position() {
    let err = parse_script("ring R = Z(4)\nset S in R2 = {1}\n").unwrap_err();
    match err {
        ParseError::Name { loc, .. } => {
            assert_eq!(loc.line, 2);
            assert_eq!(loc.col, 10);
        }
        other => panic!("expected a name error, got {other:?}"),
    }
}
