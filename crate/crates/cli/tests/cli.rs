//! End-to-end tests of the `vebo` binary: pipelines, determinism, and error
//! signaling.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn vebo(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vebo"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_ok(dir: &Path, args: &[&str]) -> String {
    let out = vebo(dir, args);
    assert!(
        out.status.success(),
        "vebo {:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 stdout")
}

#[test]
fn generate_reorder_stats_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    run_ok(
        d,
        &[
            "generate", "--n", "225", "--N", "50", "--s", "1.0", "--seed", "7", "--out", "g.adj",
        ],
    );
    let stdout = run_ok(
        d,
        &[
            "reorder",
            "--parts",
            "4",
            "--in",
            "g.adj",
            "--out",
            "r.adj",
            "--emit-permutation",
            "perm.txt",
            "--report",
            "report.txt",
        ],
    );
    // This instance satisfies the balance preconditions, so both spreads
    // come out at most 1.
    let deltas: Vec<u64> = stdout
        .split_whitespace()
        .map(|kv| kv.split('=').nth(1).unwrap().parse().unwrap())
        .collect();
    assert!(deltas[0] <= 1, "{stdout}");
    assert!(deltas[1] <= 1, "{stdout}");

    let report = fs::read_to_string(d.join("report.txt")).unwrap();
    assert!(report.contains("parts=4\n"));
    assert!(report.contains("edges=")); // schema spot check
    let perm = fs::read_to_string(d.join("perm.txt")).unwrap();
    assert_eq!(perm.lines().count(), 225);

    let stats = run_ok(d, &["stats", "--in", "g.adj", "--parts", "4"]);
    let lines: Vec<&str> = stats.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("ordering=original "));
    assert!(lines[2].starts_with("ordering=vebo "));

    run_ok(
        d,
        &[
            "partition",
            "--parts",
            "4",
            "--in",
            "r.adj",
            "--report",
            "chunked.txt",
        ],
    );
    assert!(fs::read_to_string(d.join("chunked.txt"))
        .unwrap()
        .contains("delta_edges="));
}

#[test]
fn run_kernels_write_work_stats() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    run_ok(
        d,
        &[
            "generate", "--n", "120", "--N", "30", "--s", "1.0", "--seed", "3", "--out", "g.adj",
        ],
    );
    for (algo, marker) in [
        ("pr", "score_sum=1.000000"),
        ("bfs", "reached="),
        ("cc", "components="),
        ("spmv", "y_sum="),
    ] {
        let stdout = run_ok(
            d,
            &[
                "run",
                "--algo",
                algo,
                "--parts",
                "3",
                "--in",
                "g.adj",
                "--work-stats",
                "ws.txt",
            ],
        );
        assert!(stdout.contains(marker), "{algo}: {stdout}");
        let ws = fs::read_to_string(d.join("ws.txt")).unwrap();
        assert!(ws.starts_with("iterations="), "{algo}: {ws}");
        assert!(ws.contains("iter=0 part=0 active_edges="), "{algo}: {ws}");
    }
}

#[test]
fn same_seed_generates_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    for out in ["a.adj", "b.adj"] {
        run_ok(
            d,
            &[
                "generate", "--n", "100", "--N", "20", "--s", "0.5", "--seed", "11", "--out", out,
            ],
        );
    }
    assert_eq!(
        fs::read(d.join("a.adj")).unwrap(),
        fs::read(d.join("b.adj")).unwrap()
    );
}

#[test]
fn worked_example_reorders_to_zero_spread() {
    // In-degrees (5,4,2,1,1,1) over 6 vertices: two partitions of 3 vertices
    // and 7 edges each.
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let mut edge_list = String::from("# worked example\n");
    for (v, deg) in [(0u32, 5u32), (1, 4), (2, 2), (3, 1), (4, 1), (5, 1)] {
        for i in 0..deg {
            edge_list.push_str(&format!("{} {}\n", (v + i + 1) % 6, v));
        }
    }
    fs::write(d.join("six.txt"), edge_list).unwrap();
    let stdout = run_ok(
        d,
        &[
            "reorder", "--parts", "2", "--in", "six.txt", "--out", "six.adj",
        ],
    );
    assert_eq!(stdout, "delta_edges=0 delta_vertices=0\n");
    // Both placement flavors balance identically.
    let strict = run_ok(
        d,
        &[
            "reorder", "--parts", "2", "--mode", "strict", "--in", "six.txt", "--out", "s.adj",
        ],
    );
    assert_eq!(strict, stdout);
}

#[test]
fn undirected_flag_mirrors_arcs() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("pair.txt"), "0 1\n").unwrap();
    run_ok(
        d,
        &[
            "partition",
            "--parts",
            "1",
            "--in",
            "pair.txt",
            "--report",
            "directed.txt",
        ],
    );
    run_ok(
        d,
        &[
            "partition",
            "--parts",
            "1",
            "--in",
            "pair.txt",
            "--report",
            "mirrored.txt",
            "--undirected",
        ],
    );
    let directed = fs::read_to_string(d.join("directed.txt")).unwrap();
    let mirrored = fs::read_to_string(d.join("mirrored.txt")).unwrap();
    assert!(directed.contains("edges=1\n"), "{directed}");
    assert!(mirrored.contains("edges=2\n"), "{mirrored}");
}

#[test]
fn failures_exit_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    // Unknown subcommand.
    assert!(!vebo(d, &["frobnicate"]).status.success());
    // Missing input file.
    let missing = vebo(d, &["stats", "--in", "nope.adj", "--parts", "2"]);
    assert!(!missing.status.success());
    assert!(String::from_utf8_lossy(&missing.stderr).contains("nope.adj"));
    // Malformed graph file: bad header token.
    fs::write(d.join("bad.adj"), "AdjGraph\n2\n0\n0\n0\n").unwrap();
    let malformed = vebo(d, &["stats", "--in", "bad.adj", "--parts", "2"]);
    assert!(!malformed.status.success());
    // Edge-list fallback sees three fields on line 1.
    assert!(String::from_utf8_lossy(&malformed.stderr).contains("line 1"));
    // Invalid partition count.
    fs::write(d.join("tiny.txt"), "0 1\n").unwrap();
    let too_many = vebo(
        d,
        &[
            "reorder", "--parts", "5", "--in", "tiny.txt", "--out", "t.adj",
        ],
    );
    assert!(!too_many.status.success());
}
