//! The `robsub` binary end to end: exit codes, artifacts and certificate checks.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use robsub_core::constructions::{hypercube_colored, random_graph};
use robsub_core::io;
use robsub_core::{ColoredGraph, RGraph};
use serde_json::Value;

fn robsub(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_robsub")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

struct Scratch {
    dir: tempfile::TempDir,
}

impl Scratch {
    fn new() -> Self {
        Scratch { dir: tempfile::tempdir().unwrap() }
    }

    fn write(&self, name: &str, text: &str) -> PathBuf {
        let p = self.dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }
}

const K4: &str = "# vertices 4\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";

#[test]
fn extract_k4_keeps_everything() {
    let d = Scratch::new();
    let input = d.write("k4.txt", K4);
    let out_path = d.path("ext.json");
    let out = robsub(&["extract", "-i", s(&input), "--alpha", "0.5", "--mode", "exact", "-o", s(&out_path)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let doc = json(&out_path);
    assert_eq!(doc["subset"], serde_json::json!([0, 1, 2, 3]));
    assert_eq!(doc["score"].as_f64().unwrap(), 0.75);
    // Wall time goes to stderr, never into the artifact.
    assert!(String::from_utf8_lossy(&out.stderr).contains("wall time"));
    assert!(!std::fs::read_to_string(&out_path).unwrap().contains("wall"));
}

#[test]
fn extract_reads_relative_paths_from_data_dir() {
    let d = Scratch::new();
    d.write("k4.txt", K4);
    let out = Command::new(env!("CARGO_BIN_EXE_robsub"))
        .args(["extract", "-i", "k4.txt", "--alpha", "0.5", "-o", "nested/ext.json"])
        .env("ROBSUB_DATA_DIR", d.dir.path())
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    assert_eq!(json(&d.path("nested/ext.json"))["vertices"], 4);
}

#[test]
fn input_errors_exit_2() {
    let d = Scratch::new();
    let bad = d.write("bad.txt", "0 1\n1 1\n");
    let out = robsub(&["extract", "-i", s(&bad)]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert_eq!(code(&robsub(&["extract", "-i", s(&d.path("missing.txt"))])), 2);
    assert_eq!(code(&robsub(&["extract", "-i", s(&bad), "--alpha", "not-a-number"])), 2);
    assert_eq!(code(&robsub(&["no-such-command"])), 2);
    assert_eq!(code(&robsub(&["--help"])), 0);
}

#[test]
fn rainbow_cycle_on_coordinate_colored_cube_finds_nothing() {
    let d = Scratch::new();
    let q3 = d.write("q3.txt", &io::write_colored_edge_list(&hypercube_colored(3).unwrap()));
    for mode in ["exact", "heuristic"] {
        let out_path = d.path(&format!("{mode}.json"));
        let out = robsub(&["rainbow-cycle", "-i", s(&q3), "--mode", mode, "-o", s(&out_path)]);
        assert_eq!(code(&out), 1, "mode {mode}");
        let doc = json(&out_path);
        assert_eq!(doc["outcome"], "none_found");
        assert!(doc["certificate"].is_null());
    }
}

#[test]
fn certificates_validate_and_tampering_is_rejected() {
    let d = Scratch::new();
    let g = ColoredGraph::distinct_colors(random_graph(14, 0.5, 3).unwrap());
    let host = d.write("g.txt", &io::write_colored_edge_list(&g));
    let cert = d.path("cycle.json");
    assert_eq!(code(&robsub(&["rainbow-cycle", "-i", s(&host), "-o", s(&cert)])), 0);
    assert_eq!(code(&robsub(&["validate", s(&cert), "-i", s(&host)])), 0);

    // A different host breaks the digest.
    let other = d.write("other.txt", &io::write_colored_edge_list(&ColoredGraph::distinct_colors(random_graph(14, 0.5, 4).unwrap())));
    assert_eq!(code(&robsub(&["validate", s(&cert), "-i", s(&other)])), 2);

    // Reordering the cycle's vertices breaks the certificate itself.
    let mut doc = json(&cert);
    let verts = doc["certificate"]["vertices"].as_array_mut().unwrap();
    verts.swap(0, 1);
    let tampered = d.write("tampered.json", &serde_json::to_string(&doc).unwrap());
    assert_eq!(code(&robsub(&["validate", s(&tampered), "-i", s(&host)])), 2);
}

#[test]
fn face_cycles_validate_and_classify() {
    let d = Scratch::new();
    let host = d.write("k7.txt", &io::write_hyperedge_list(&RGraph::complete(3, 7)));
    let cert = d.path("hcycle.json");
    assert_eq!(code(&robsub(&["hcycle", "-i", s(&host), "--ell", "6", "-o", s(&cert)])), 0);
    assert_eq!(code(&robsub(&["validate", s(&cert), "-i", s(&host)])), 0);
    let class = d.path("class.json");
    assert_eq!(code(&robsub(&["classify", s(&cert), "-o", s(&class)])), 0);
    let doc = json(&class);
    assert_eq!(doc["euler_characteristic"], 0);
    assert!(matches!(doc["surface"].as_str(), Some("cylinder" | "moebius")), "{doc}");

    // No 3-graph has a face cycle of length 4: the tetrahedron is a sphere.
    let out_path = d.path("four.json");
    assert_eq!(code(&robsub(&["hcycle", "-i", s(&host), "--ell", "4", "-o", s(&out_path)])), 1);
}

#[test]
fn seeded_artifacts_are_byte_identical() {
    let d = Scratch::new();
    let runs: Vec<Vec<u8>> = (0..2)
        .map(|k| {
            let p = d.path(&format!("trends{k}.csv"));
            assert_eq!(code(&robsub(&["report", "mc-trends", "--seed", "5", "-o", s(&p)])), 0);
            std::fs::read(&p).unwrap()
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
    let text = String::from_utf8(runs[0].clone()).unwrap();
    assert!(text.starts_with("format_version,"));
}

#[test]
fn mc_rejects_missing_input() {
    assert_eq!(code(&robsub(&["mc", "reach", "--trials", "10"])), 2);
}
