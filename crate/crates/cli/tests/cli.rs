//! End-to-end tests against the compiled binary: output bytes, exit
//! codes, determinism, and the file sink.

use std::process::{Command, Output};

fn walk_zeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_walk-zeta"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = walk_zeta(args);
    assert!(
        out.status.success(),
        "`{}` failed: {}",
        args.join(" "),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

#[test]
fn zeros_text_for_the_triangle() {
    let text = stdout_of(&["zeros", "--graph", "cycle:3"]);
    assert_eq!(
        text,
        "case M_EQ_N\n\
         1/2 + i*inf (x2)\n\
         1/2 + i*2.88675134595e-1 (x2)\n\
         1/2 - i*2.88675134595e-1 (x2)\n"
    );
}

#[test]
fn zeros_json_uses_the_inf_sentinel() {
    let json = stdout_of(&["zeros", "--graph", "star:5", "--format", "json"]);
    assert!(json.contains(r#""case":"M_LT_N""#), "{json}");
    assert!(json.contains(r#""gamma":"inf""#), "{json}");
}

#[test]
fn zeros_csv_lists_finite_ordinates_only() {
    let csv = stdout_of(&["zeros", "--graph", "cycle:4", "--format", "csv"]);
    assert_eq!(csv, "re,gamma,mult\n0.5,0.5,2\n0.5,0,2\n0.5,-0.5,2\n");
}

#[test]
fn rw_spectrum_json_matches_the_library_encoding() {
    let json = stdout_of(&[
        "spectrum",
        "--graph",
        "complete:4",
        "--operator",
        "rw",
        "--format",
        "json",
    ]);
    assert!(json.starts_with(r#"{"entries":[{"re":-0.333"#), "{json}");
    assert!(json.contains(r#""mult":3"#));
    assert!(json.contains(r#""mult":1"#));
}

#[test]
fn grover_spectrum_text_is_sorted_and_formatted() {
    let text = stdout_of(&["spectrum", "--graph", "cycle:4", "--operator", "grover"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4, "four distinct eigenvalues: {text}");
    // Sorted by (re, im): -1, +-i (i last of the two), +1.
    assert!(lines[0].starts_with("-1.00000000000e0 (x2)"), "{text}");
    assert!(lines[3].starts_with("1.00000000000e0 (x2)"), "{text}");
}

#[test]
fn zeta_point_values_agree_across_all_four_routes() {
    let text = stdout_of(&["zeta", "--graph", "cycle:3", "--u", "0.5,0"]);
    let value_lines: Vec<&str> = text.lines().filter(|l| !l.starts_with("u =")).collect();
    assert_eq!(value_lines.len(), 4);
    for line in value_lines {
        assert!(
            line.ends_with("= 7.65625000000e-1"),
            "route disagrees: {line}"
        );
    }
}

#[test]
fn completed_zeta_at_the_center() {
    let text = stdout_of(&["zeta", "--graph", "cycle:3", "--s", "0.5,0"]);
    // (1/3 - 1/4)^2 = 1/144 with one infinite factor set aside.
    assert!(text.contains("completed = 6.94444444444e-3"), "{text}");
    assert!(text.contains("infinite-factors = 1"), "{text}");
}

#[test]
fn verify_all_passes_and_exits_zero() {
    let out = walk_zeta(&["verify", "--graph", "cycle:4", "--identity", "all"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let names: Vec<&str> = text.lines().map(|l| l.split(':').next().unwrap()).collect();
    assert_eq!(
        names,
        [
            "konno-sato",
            "ihara-bass",
            "spectral-map",
            "functional-eq",
            "rh"
        ]
    );
    assert_eq!(text.matches("PASS").count(), 5);
}

#[test]
fn verify_output_is_byte_deterministic() {
    let args = [
        "verify",
        "--graph",
        "complete:5",
        "--identity",
        "konno-sato",
        "--seed",
        "7",
        "--format",
        "json",
    ];
    assert_eq!(stdout_of(&args), stdout_of(&args));
}

#[test]
fn gen_writes_a_reloadable_edge_list() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("wheel.txt");
    let out = walk_zeta(&[
        "gen",
        "--graph",
        "complete:4",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty(), "file sink should silence stdout");

    // The written file round-trips as a --graph argument.
    let text = stdout_of(&[
        "spectrum",
        "--graph",
        path.to_str().unwrap(),
        "--operator",
        "rw",
    ]);
    assert!(text.contains("(x3)"), "K_4 transition spectrum: {text}");
}

#[test]
fn export_grover_matrix_of_a_single_edge() {
    let csv = stdout_of(&[
        "export",
        "--graph",
        "complete:2",
        "--operator",
        "grover",
        "--format",
        "csv",
    ]);
    assert_eq!(csv, "0,1\n1,0\n");
    let text = stdout_of(&["export", "--graph", "complete:2", "--operator", "grover"]);
    assert_eq!(text, "0 1.00000000000e0\n1.00000000000e0 0\n");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["spectra", "--graph", "cycle:3"] as &[&str],
        &["spectrum", "--graph", "cycle:3", "--operator", "fourier"],
        &["zeros", "--graph", "moebius:4"],
        &["zeros", "--graph", "cycle:two"],
        &["zeros", "--graph", "cycle:2"],
        &["zeta", "--graph", "cycle:3", "--u", "0.5,0", "--s", "0.5,0"],
        &["zeta", "--graph", "cycle:3"],
        &["zeros", "--graph", "/nonexistent/edges.txt"],
        &["verify", "--graph", "cycle:3", "--samples", "0"],
        &["zeros", "--graph", "cycle:3", "--tol", "-1"],
    ] {
        let out = walk_zeta(args);
        assert_eq!(
            out.status.code(),
            Some(2),
            "`{}` should be a usage error, stderr: {}",
            args.join(" "),
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

#[test]
fn help_and_version_exit_zero() {
    for args in [&["--help"] as &[&str], &["--version"], &["zeros", "--help"]] {
        let out = walk_zeta(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
    }
}

#[test]
fn tree_pole_is_an_input_error() {
    // u = 1 is a pole of the reduction on trees.
    let out = walk_zeta(&["zeta", "--graph", "star:4", "--u", "1,0"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("pole"), "{err}");
}

#[test]
fn edge_list_with_comments_loads() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("triangle.txt");
    std::fs::write(&path, "# a triangle\n0 1\n1 2\n2 0\n").unwrap();
    let text = stdout_of(&["zeros", "--graph", path.to_str().unwrap()]);
    assert!(text.contains("1/2 + i*inf (x2)"), "{text}");
}
