//! End-to-end tests driving the `lpa` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn test_data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn lpa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lpa"))
        .args(args)
        .env_remove("LPA_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf8 output")
}

#[test]
fn closed_sets_of_the_example_graphs_are_exact() {
    let out = lpa(&["topology", &fixture("fig1.graph"), "--closed-sets"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "{\"closed_sets\":[[],[\"v\"],[\"u\",\"v\"],[\"v\",\"w\"],[\"u\",\"v\",\"w\"]]}\n"
    );

    let out = lpa(&["topology", &fixture("shift_e.graph"), "--closed-sets"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "{\"closed_sets\":[[],[\"u1\"],[\"u1\",\"u2\"],[\"u1\",\"u2\",\"u3\"]]}\n"
    );
}

#[test]
fn functor_evaluates_the_star_example() {
    let out = lpa(&["functor", "star(closure(Pc),closure(Pl))", &fixture("mix.graph")]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "{\"set\":[\"v\",\"w\"]}\n");
}

#[test]
fn ann_reports_the_annihilator_calculus() {
    let out = lpa(&["ann", &fixture("fig1.graph"), "--set", "u"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "{\"hdoubleprime\":[\"u\"],\"hprime\":[\"w\"],\"regular\":true,\"warnings\":[]}\n"
    );
}

#[test]
fn show_summarizes_and_flags_emitters() {
    let out = lpa(&["show", &fixture("fig1.graph"), "--pretty"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("3 vertices, 3 edges\n"));
    assert!(text.contains("sinks: u w\n"));
    assert!(text.contains("initial(1): v\n"));
    assert!(text.contains("condition_L: true\n"));

    let out = lpa(&["show", &fixture("fiber.graph")]);
    assert!(stdout(&out).contains("\"infinite_emitters\":[\"u\"]"));

    let out = lpa(&["show", &fixture("empty.graph")]);
    assert!(stdout(&out).contains("\"vertex_count\":0"));
}

#[test]
fn emitter_graphs_carry_a_warning() {
    let out = lpa(&["lattice", &fixture("fiber.graph")]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("infinite-emitters: ideal correspondence not guaranteed"));
}

#[test]
fn series_cross_check_agrees_on_chain4() {
    let out = lpa(&[
        "series",
        &fixture("chain4.graph"),
        "--base",
        "pc",
        "--n",
        "4",
        "--cross-check",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("\"agree\":true"));
    assert!(text.contains("[\"v1\",\"v2\",\"v3\",\"v4\"]"));

    let pretty = lpa(&[
        "series",
        &fixture("chain4.graph"),
        "--base",
        "pc",
        "--n",
        "2",
        "--cross-check",
        "--pretty",
    ]);
    assert_eq!(
        stdout(&pretty),
        "n=1 direct={v1} quotient={v1} agree=yes\n\
         n=2 direct={v1,v2} quotient={v1,v2} agree=yes\n\
         agree: true\n"
    );
}

#[test]
fn quotient_text_round_trips_through_the_parser() {
    let out = lpa(&["quotient", &fixture("mix.graph"), "--set", "w", "--text"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "vertex u\nvertex v\nedge a u u\nedge b u v\nedge c v v\n");
}

#[test]
fn shift_applies_and_checks() {
    let out = lpa(&["shift", &fixture("fig1.graph"), "--shift", "u", "v", "--check"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("\"pairwise_ok\":true"));
    assert!(text.contains("\"closed_sets_ok\":true"));
    assert!(text.contains("[\"__shift\",\"v\",\"u\"]"));
}

#[test]
fn continuity_of_the_shift_example_maps() {
    let out = lpa(&[
        "topology",
        &fixture("shift_e.graph"),
        "--continuity",
        &fixture("shift_f.graph"),
        "--map",
        "u1:v1,u2:v2,u3:v3",
    ]);
    assert_eq!(stdout(&out), "{\"continuous\":true,\"witness\":null}\n");

    let out = lpa(&[
        "topology",
        &fixture("shift_f.graph"),
        "--continuity",
        &fixture("shift_e.graph"),
        "--map",
        "v1:u1,v2:u2,v3:u3",
    ]);
    assert_eq!(stdout(&out), "{\"continuous\":false,\"witness\":[\"u1\",\"u2\"]}\n");
}

#[test]
fn oracle_sweeps_a_directory() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    let out = lpa(&["oracle", &dir.to_string_lossy()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("\"all_agree\":true"));
    assert!(text.contains("\"skipped\":\"infinite emitters\""));
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = ["lattice", &fixture("chain4.graph")];
    let first = lpa(&args);
    let second = lpa(&args);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn exit_codes_distinguish_error_classes() {
    // Domain error: the set is not hereditary and saturated.
    let out = lpa(&["ann", &fixture("fig1.graph"), "--set", "v"]);
    assert_eq!(out.status.code(), Some(2));

    // Usage error: malformed expression.
    let out = lpa(&["functor", "closure(", &fixture("fig1.graph")]);
    assert_eq!(out.status.code(), Some(1));

    // Usage error: unreadable file.
    let out = lpa(&["show", &fixture("missing.graph")]);
    assert_eq!(out.status.code(), Some(1));

    // Usage error: malformed graph file reported with its line.
    let out = lpa(&["show", &test_data("broken.graph")]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2"), "stderr was: {err}");
}

#[test]
fn caps_are_enforced() {
    // The hard bound rejects oversized caps up front.
    let out = lpa(&["lattice", &fixture("fig1.graph"), "--cap", "99"]);
    assert_eq!(out.status.code(), Some(1));

    // A cap below the vertex count is a domain error.
    let out = lpa(&["lattice", &fixture("chain4.graph"), "--cap", "2"]);
    assert_eq!(out.status.code(), Some(2));

    // LPA_CAP applies when --cap is absent.
    let out = Command::new(env!("CARGO_BIN_EXE_lpa"))
        .args(["lattice", &fixture("chain4.graph")])
        .env("LPA_CAP", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // ... and --cap wins over LPA_CAP.
    let out = Command::new(env!("CARGO_BIN_EXE_lpa"))
        .args(["lattice", &fixture("chain4.graph"), "--cap", "16"])
        .env("LPA_CAP", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn dot_export_labels_bundles() {
    let out = lpa(&["show", &fixture("fiber.graph"), "--dot", "-"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("digraph G {"));
    assert!(text.contains("\"u\" -> \"v\" [label=\"∞\"];"));
}
