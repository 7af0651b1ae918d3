//! End-to-end checks of the `reeb` binary: verbs, exit codes, and
//! deterministic output.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_reeb"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("reeb-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write_file(name: &str, contents: &str) -> PathBuf {
    let path = scratch(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

const SINGLE_EDGE: &str = r#"{"kind":"graph","version":1,
  "vertices":[{"id":"u"},{"id":"v"}],
  "edges":[{"id":"e1","src":"u","dst":"v"}]}"#;

const PATH3: &str = r#"{"kind":"graph","version":1,
  "vertices":[{"id":"u"},{"id":"v"},{"id":"w"}],
  "edges":[{"id":"e1","src":"u","dst":"v"},{"id":"e2","src":"v","dst":"w"}]}"#;

const TWO_CYCLE: &str = r#"{"kind":"graph","version":1,
  "vertices":[{"id":"u"},{"id":"v"}],
  "edges":[{"id":"e1","src":"u","dst":"v"},{"id":"e2","src":"v","dst":"u"}]}"#;

#[test]
fn validate_exit_codes() {
    let good = write_file("good.reeb.json", SINGLE_EDGE);
    let bad = write_file("bad.reeb.json", TWO_CYCLE);
    let garbage = write_file("garbage.reeb.json", "{nope");
    assert_eq!(run(&["validate", good.to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(run(&["validate", bad.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(run(&["validate", garbage.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["validate", "/no/such/file.json"]).status.code(), Some(2));
}

#[test]
fn glue_two_edges_gives_the_x_graph() {
    let a = write_file("glue-a.reeb.json", SINGLE_EDGE);
    let b = write_file("glue-b.reeb.json", SINGLE_EDGE);
    let out = run(&[
        "glue",
        a.to_str().unwrap(),
        "e:e1@1/2",
        b.to_str().unwrap(),
        "e:e1@1/2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.matches("\"src\"").count(), 4);
    assert_eq!(text.matches("\"id\": \"w\"").count(), 1);
    // Deterministic output.
    let again = run(&[
        "glue",
        a.to_str().unwrap(),
        "e:e1@1/2",
        b.to_str().unwrap(),
        "e:e1@1/2",
    ]);
    assert_eq!(stdout(&again), text);
}

#[test]
fn glue_at_an_extremum_is_an_input_error() {
    let a = write_file("glue-ext.reeb.json", SINGLE_EDGE);
    let out = run(&[
        "glue",
        a.to_str().unwrap(),
        "v:v",
        a.to_str().unwrap(),
        "e:e1@1/2",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn count_prints_the_insertion_count() {
    let p = write_file("count.reeb.json", PATH3);
    let out = run(&["count", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "1");
}

#[test]
fn realize_then_sweep_round_trips() {
    let g = write_file("rt.reeb.json", PATH3);
    let mesh_path = scratch("rt.mesh.json");
    let out = run(&[
        "realize",
        g.to_str().unwrap(),
        "--out",
        mesh_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let swept = run(&["reeb", mesh_path.to_str().unwrap()]);
    assert_eq!(swept.status.code(), Some(0));
    let graph_path = write_file("rt-swept.reeb.json", &stdout(&swept));
    let iso = run(&["iso", g.to_str().unwrap(), graph_path.to_str().unwrap()]);
    assert_eq!(iso.status.code(), Some(0), "{}", String::from_utf8_lossy(&iso.stderr));
}

#[test]
fn iso_negative_verdict_is_exit_one() {
    let a = write_file("iso-a.reeb.json", SINGLE_EDGE);
    let b = write_file("iso-b.reeb.json", PATH3);
    assert_eq!(
        run(&["iso", a.to_str().unwrap(), b.to_str().unwrap()]).status.code(),
        Some(1)
    );
}

#[test]
fn export_dot_draws_arrows_and_ranks() {
    let p = write_file("dot.reeb.json", PATH3);
    let out = run(&["export", p.to_str().unwrap(), "--format", "dot"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.matches(" -> ").count(), 2);
}

#[test]
fn strict_parsing_rejects_unknown_fields_lax_allows() {
    let odd = write_file(
        "lax.reeb.json",
        r#"{"kind":"graph","version":1,"extra":true,
          "vertices":[{"id":"u"},{"id":"v"}],
          "edges":[{"id":"e1","src":"u","dst":"v"}]}"#,
    );
    assert_eq!(run(&["validate", odd.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(
        run(&["validate", odd.to_str().unwrap(), "--lax"]).status.code(),
        Some(0)
    );
}

#[test]
fn embed_check_and_augment_flow() {
    let fixtures = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    let host = fixtures.join("edge.reeb.json");
    let w = fixtures.join("path3.reeb.json");
    let emb = fixtures.join("path3-into-edge.emb.json");
    let check = run(&[
        "embed-check",
        w.to_str().unwrap(),
        host.to_str().unwrap(),
        emb.to_str().unwrap(),
    ]);
    assert_eq!(check.status.code(), Some(0), "{}", String::from_utf8_lossy(&check.stderr));
    let augmented = run(&[
        "augment",
        host.to_str().unwrap(),
        w.to_str().unwrap(),
        emb.to_str().unwrap(),
    ]);
    assert_eq!(augmented.status.code(), Some(0));
    let out_path = write_file("augmented.reeb.json", &stdout(&augmented));
    // One insertion: the result is a three-vertex path.
    let iso = run(&["iso", out_path.to_str().unwrap(), w.to_str().unwrap()]);
    assert_eq!(iso.status.code(), Some(0));
}

#[test]
fn gs_check_verdicts() {
    let fixtures = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    let x = fixtures.join("x.reeb.json");
    let good = fixtures.join("x.gs.json");
    let out = run(&["gs-check", x.to_str().unwrap(), good.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let bad = write_file(
        "bad.gs.json",
        r#"{"kind":"gs","version":1,"counts":{"w":3}}"#,
    );
    assert_eq!(
        run(&["gs-check", x.to_str().unwrap(), bad.to_str().unwrap()]).status.code(),
        Some(1)
    );
}

#[test]
fn consum_count_on_disjoint_embeddings() {
    let fixtures = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    let host = fixtures.join("htree.reeb.json");
    let edge = fixtures.join("edge.reeb.json");
    let left = fixtures.join("edge-into-htree-left.emb.json");
    let right = fixtures.join("edge-into-htree-right.emb.json");
    let out = run(&[
        "consum-count",
        host.to_str().unwrap(),
        edge.to_str().unwrap(),
        left.to_str().unwrap(),
        edge.to_str().unwrap(),
        right.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout(&out).trim(), "0");
    // Overlapping images are rejected.
    let overlap = run(&[
        "consum-count",
        host.to_str().unwrap(),
        edge.to_str().unwrap(),
        left.to_str().unwrap(),
        edge.to_str().unwrap(),
        left.to_str().unwrap(),
    ]);
    assert_eq!(overlap.status.code(), Some(2));
}

#[test]
fn consum_of_two_realized_spheres_sweeps_to_the_x_graph() {
    let g = write_file("consum-edge.reeb.json", SINGLE_EDGE);
    let m1 = scratch("consum-1.mesh.json");
    let m2 = scratch("consum-2.mesh.json");
    assert_eq!(
        run(&["realize", g.to_str().unwrap(), "--out", m1.to_str().unwrap()]).status.code(),
        Some(0)
    );
    assert_eq!(
        run(&["realize", g.to_str().unwrap(), "--out", m2.to_str().unwrap()]).status.code(),
        Some(0)
    );
    // The swept digraph of a realized single edge names its edge "a0".
    let glued = scratch("consum-out.mesh.json");
    let out = run(&[
        "consum",
        m1.to_str().unwrap(),
        "e:a0@1/2",
        m2.to_str().unwrap(),
        "e:a0@1/2",
        "--out",
        glued.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let swept = run(&["reeb", glued.to_str().unwrap()]);
    assert_eq!(swept.status.code(), Some(0));
    let swept_path = write_file("consum-swept.reeb.json", &stdout(&swept));
    let x = write_file(
        "x.reeb.json",
        r#"{"kind":"graph","version":1,
          "vertices":[{"id":"a"},{"id":"b"},{"id":"w"},{"id":"c"},{"id":"d"}],
          "edges":[{"id":"e1","src":"a","dst":"w"},{"id":"e2","src":"b","dst":"w"},
                   {"id":"e3","src":"w","dst":"c"},{"id":"e4","src":"w","dst":"d"}]}"#,
    );
    assert_eq!(
        run(&["iso", swept_path.to_str().unwrap(), x.to_str().unwrap()]).status.code(),
        Some(0)
    );
}
