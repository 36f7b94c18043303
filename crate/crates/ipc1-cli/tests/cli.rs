//! End-to-end tests for the `ipc1` binary: exit-code discipline, output
//! shapes, and the reload/revalidate guarantees of the JSON formats.

use std::fs;
use std::path::Path;
use std::process::Command;

use ipc1::formula::{render, rn_formula};
use ipc1::kripke::{canonical, KripkeModel};
use ipc1::lattice::RNIndex;
use ipc1::reduction::{validate_slice_graph, SliceGraph};

/// Runs the binary and returns `(exit code, stdout, stderr)`.
fn ipc1(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ipc1"))
        .args(args)
        .output()
        .expect("the binary should run");
    (
        out.status
            .code()
            .expect("the binary should not be signalled"),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn write(path: &Path, text: &str) {
    fs::write(path, text).expect("temp files should be writable");
}

const SINGLE_EDGE: &str = r#"{"slices":[["t"],["s"]],"edges":[["s","t"]],"s":"s","t":"t"}"#;

/// Existential `s` reaches only the sink `w ≠ t`, so `apath(s, t)` fails.
const MISSED_TARGET: &str =
    r#"{"slices":[["t","w"],["s","u"]],"edges":[["s","w"],["u","t"]],"s":"s","t":"t"}"#;

#[test]
fn normalize_prints_class_names() {
    let (code, out, _) = ipc1(&["normalize", "~a | ~~a"]);
    assert_eq!((code, out.as_str()), (0, "psi3\n"));
    assert_eq!(ipc1(&["normalize", "a -> a"]).1, "top\n");
    assert_eq!(ipc1(&["normalize", "a & ~a"]).1, "bot\n");
    assert_eq!(ipc1(&["normalize", "~a"]).1, "phi1\n");
    assert_eq!(ipc1(&["normalize", "a"]).1, "psi1\n");
}

#[test]
fn bad_input_exits_two_with_a_message() {
    let (code, out, err) = ipc1(&["normalize", "(a"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.starts_with("error:"), "stderr was {err:?}");

    assert_eq!(ipc1(&[]).0, 2);
    assert_eq!(ipc1(&["frobnicate"]).0, 2);
    assert_eq!(ipc1(&["valid", "a", "--logic", "classical"]).0, 2);
    assert_eq!(ipc1(&["check", "a", "--state", "1"]).0, 2); // missing --model
}

#[test]
fn valid_mirrors_the_answer_in_the_exit_code() {
    let (code, out, _) = ipc1(&["valid", "a -> a"]);
    assert_eq!((code, out.as_str()), (0, "true\n"));

    let (code, out, _) = ipc1(&["valid", "a"]);
    assert_eq!((code, out.as_str()), (1, "false\n"));

    let (code, out, _) = ipc1(&["valid", "--logic", "kc", "~a | ~~a"]);
    assert_eq!((code, out.as_str()), (0, "true\n"));

    let (code, out, _) = ipc1(&["valid", "--logic", "ipc", "~a | ~~a"]);
    assert_eq!((code, out.as_str()), (1, "false\n"));

    let (code, out, _) = ipc1(&["valid", "--logic", "psi:1", "a"]);
    assert_eq!((code, out.as_str()), (0, "true\n"));
}

#[test]
fn check_runs_every_engine_against_a_model_file() {
    let dir = tempfile::tempdir().expect("temp dir");
    let model = dir.path().join("h4.json");
    write(&model, &canonical(4).to_json());
    let mp = model.to_str().expect("utf-8 path");

    for engine in ["fast", "brute", "both"] {
        let (code, out, _) = ipc1(&[
            "check", "a -> a", "--model", mp, "--state", "4", "--engine", engine,
        ]);
        assert_eq!((code, out.as_str()), (0, "true\n"), "engine {engine}");

        let (code, out, _) = ipc1(&[
            "check", "~a | ~~a", "--model", mp, "--state", "4", "--engine", engine,
        ]);
        assert_eq!((code, out.as_str()), (1, "false\n"), "engine {engine}");
    }

    let (code, _, err) = ipc1(&["check", "a", "--model", mp, "--state", "7"]);
    assert_eq!(code, 2);
    assert!(err.contains('7'), "stderr was {err:?}");

    let missing = dir.path().join("missing.json");
    let (code, _, _) = ipc1(&[
        "check",
        "a",
        "--model",
        missing.to_str().unwrap(),
        "--state",
        "1",
    ]);
    assert_eq!(code, 2);
}

#[test]
fn check_gates_on_logic_admissibility() {
    let dir = tempfile::tempdir().expect("temp dir");
    let h4 = dir.path().join("h4.json");
    let h3 = dir.path().join("h3.json");
    write(&h4, &canonical(4).to_json());
    write(&h3, &canonical(3).to_json());

    // Index 4 is outside the allowed set {1, 2, 3}.
    let (code, _, err) = ipc1(&[
        "check",
        "a",
        "--model",
        h4.to_str().unwrap(),
        "--state",
        "4",
        "--logic",
        "kc",
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("admissible"), "stderr was {err:?}");

    let (code, out, _) = ipc1(&[
        "check",
        "~a | ~~a",
        "--model",
        h3.to_str().unwrap(),
        "--state",
        "3",
        "--logic",
        "kc",
    ]);
    assert_eq!((code, out.as_str()), (0, "true\n"));
}

#[test]
fn canonical_json_reloads_and_revalidates() {
    let (code, out, _) = ipc1(&["canonical", "6", "--format", "json"]);
    assert_eq!(code, 0);
    let m = KripkeModel::from_json(&out).expect("the printed JSON should reload");
    assert!(m.validate().is_empty());
    assert_eq!(m.states(), canonical(6).states());

    let (code, dot, _) = ipc1(&["canonical", "6", "--format", "dot"]);
    assert_eq!(code, 0);
    assert!(dot.contains("digraph"));

    let (code, text, _) = ipc1(&["canonical", "5"]);
    assert_eq!(code, 0);
    assert!(text.contains("states: 1 2 3 5"));
    assert!(text.contains("a-states: 1"));

    assert_eq!(ipc1(&["canonical", "0"]).0, 2);
}

#[test]
fn model_index_prints_h() {
    let dir = tempfile::tempdir().expect("temp dir");
    let model = dir.path().join("h5.json");
    write(&model, &canonical(5).to_json());
    let mp = model.to_str().unwrap();

    let (code, out, _) = ipc1(&["model-index", "--model", mp, "--state", "3"]);
    assert_eq!((code, out.as_str()), (0, "3\n"));
    let (code, out, _) = ipc1(&["model-index", "--model", mp, "--state", "5"]);
    assert_eq!((code, out.as_str()), (0, "5\n"));
    assert_eq!(ipc1(&["model-index", "--model", mp, "--state", "4"]).0, 2);
}

#[test]
fn gen_slice_graph_is_deterministic_and_reloads() {
    let args = [
        "gen-slice-graph",
        "--slices",
        "4",
        "--width",
        "3",
        "--density",
        "0.5",
        "--seed",
        "9",
    ];
    let first = ipc1(&args);
    assert_eq!(first.0, 0);
    assert_eq!(first, ipc1(&args), "same seed, same output");

    let g = SliceGraph::from_json(&first.1).expect("the printed JSON should reload");
    assert!(validate_slice_graph(&g).is_empty());

    let (_, out, _) = ipc1(&[
        "gen-slice-graph",
        "--slices",
        "2",
        "--width",
        "1",
        "--density",
        "1.0",
        "--seed",
        "3",
    ]);
    let g = SliceGraph::from_json(&out).unwrap();
    assert_eq!(g.edges(), [("v1_0".to_string(), "v0_0".to_string())]);

    let (code, dot, _) = ipc1(&["gen-slice-graph", "--slices", "2", "--format", "dot"]);
    assert_eq!(code, 0);
    assert!(dot.contains("digraph"));

    let (code, text, _) = ipc1(&["gen-slice-graph", "--slices", "2", "--format", "text"]);
    assert_eq!(code, 0);
    assert!(text.contains("slice 1 (existential):"), "text was {text:?}");
    assert!(text.contains("slice 0 (universal):"));

    assert_eq!(ipc1(&["gen-slice-graph", "--slices", "3"]).0, 2);
    assert_eq!(
        ipc1(&["gen-slice-graph", "--slices", "2", "--density", "1.5"]).0,
        2
    );
    assert_eq!(
        ipc1(&["gen-slice-graph", "--slices", "2", "--width", "0"]).0,
        2
    );
}

#[test]
fn apath_answers_with_exit_codes() {
    let dir = tempfile::tempdir().expect("temp dir");
    let edge = dir.path().join("edge.json");
    let miss = dir.path().join("miss.json");
    write(&edge, SINGLE_EDGE);
    write(&miss, MISSED_TARGET);

    let (code, out, _) = ipc1(&["apath", "--graph", edge.to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (0, "true\n"));

    let (code, out, _) = ipc1(&["apath", "--graph", miss.to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (1, "false\n"));

    let bad = dir.path().join("bad.json");
    write(&bad, r#"{"slices":[["t"]],"edges":[],"s":"t","t":"t"}"#);
    assert_eq!(ipc1(&["apath", "--graph", bad.to_str().unwrap()]).0, 2);
}

#[test]
fn reduce_produces_a_checkable_instance() {
    let dir = tempfile::tempdir().expect("temp dir");
    let psi6 = render(&rn_formula(RNIndex::Psi(6)).unwrap());

    for (graph_text, expected_code, expected_answer) in
        [(SINGLE_EDGE, 0, "true\n"), (MISSED_TARGET, 1, "false\n")]
    {
        let graph = dir.path().join("graph.json");
        write(&graph, graph_text);
        let gp = graph.to_str().unwrap();

        let (code, out, _) = ipc1(&["reduce", "--graph", gp, "--format", "text"]);
        assert_eq!(code, 0);
        assert!(out.contains("formula: psi6"), "text was {out:?}");
        assert!(out.contains("state: s_in"));

        let (code, out, _) = ipc1(&["reduce", "--graph", gp, "--format", "json"]);
        assert_eq!(code, 0);
        let doc: serde_json::Value = serde_json::from_str(&out).expect("reduce JSON parses");
        assert_eq!(doc["formula"], "psi6");
        assert_eq!(doc["state"], "s_in");

        let model_json = serde_json::to_string(&doc["model"]).unwrap();
        let m = KripkeModel::from_json(&model_json).expect("embedded model reloads");
        assert!(m.validate().is_empty());

        // The reduced instance answers exactly the reachability question.
        let model = dir.path().join("model.json");
        write(&model, &model_json);
        let (code, out, _) = ipc1(&[
            "check",
            &psi6,
            "--model",
            model.to_str().unwrap(),
            "--state",
            "s_in",
            "--engine",
            "both",
        ]);
        assert_eq!((code, out.as_str()), (expected_code, expected_answer));
    }

    let (code, dot, _) = {
        let graph = dir.path().join("graph.json");
        write(&graph, SINGLE_EDGE);
        ipc1(&[
            "reduce",
            "--graph",
            graph.to_str().unwrap(),
            "--format",
            "dot",
        ])
    };
    assert_eq!(code, 0);
    assert!(dot.contains("digraph"));
}

#[test]
fn reduce_respects_the_rank_cap() {
    let dir = tempfile::tempdir().expect("temp dir");
    let (code, ladder, _) = ipc1(&[
        "gen-slice-graph",
        "--slices",
        "10",
        "--width",
        "1",
        "--density",
        "1.0",
        "--seed",
        "0",
    ]);
    assert_eq!(code, 0);
    let graph = dir.path().join("deep.json");
    write(&graph, &ladder);
    let gp = graph.to_str().unwrap();

    // 4 · 10 − 2 = 38 exceeds the default cap of 32.
    let (code, _, err) = ipc1(&["reduce", "--graph", gp]);
    assert_eq!(code, 2);
    assert!(err.contains("38"), "stderr was {err:?}");

    let (code, out, _) = ipc1(&["reduce", "--graph", gp, "--rank-cap", "64"]);
    assert_eq!(code, 0);
    assert!(out.contains("formula: psi38"));
    assert!(out.contains("states: 59")); // 2·10 + 4·10 − 1
}

#[test]
fn classes_lists_the_table() {
    let (code, out, _) = ipc1(&["classes", "--logic", "kc"]);
    assert_eq!(code, 0);
    assert!(out.contains("allowed indices: {1,2,3}"));
    assert!(out.contains("classes: 6"));
    assert!(
        out.contains("psi2 phi3"),
        "the merged class lists both members"
    );

    let (code, out, _) = ipc1(&["classes", "--logic", "psi:1"]);
    assert_eq!(code, 0);
    assert!(out.contains("classes: 2"));

    let (code, out, _) = ipc1(&["classes", "--logic", "psi:2"]);
    assert_eq!(code, 0);
    assert!(out.contains("classes: 4"));

    assert_eq!(ipc1(&["classes", "--logic", "ipc"]).0, 2);
}

#[test]
fn bench_reports_per_trial_rows_and_agreement() {
    let (code, out, _) = ipc1(&[
        "bench", "--slices", "2", "--width", "2", "--trials", "3", "--seed", "1",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("agreement: 3/3"), "output was {out:?}");
    let rows = out
        .lines()
        .filter(|line| line.trim_start().starts_with(|c: char| c.is_ascii_digit()))
        .count();
    assert_eq!(rows, 3, "one table row per trial");

    assert_eq!(ipc1(&["bench", "--slices", "3", "--trials", "1"]).0, 2);
    assert_eq!(ipc1(&["bench", "--slices", "2", "--trials", "0"]).0, 2);
}
