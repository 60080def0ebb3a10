//! End-to-end behavior of the binary: formats, verdicts, exit codes.
//!
//! Exit code contract: 0 = all verifications pass, 1 = a verification
//! failed, 2 = malformed input.

use murthy::files;
use murthy::homotopy::elementary_homotopy;
use murthy::quadric::ElementaryOp;
use murthy::samples::{random_quadric_point, Sampler};
use murthy::{Polynomial, Ring};
use std::path::{Path, PathBuf};
use std::process::Output;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_murthy")
}

fn run(args: &[&str]) -> Output {
    std::process::Command::new(bin())
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn gb_prints_the_reduced_basis_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(
        dir.path(),
        "i.ideal",
        "ring: Q[x,y]\nx*y - 1\ny^2 - 1\n",
    );
    let out = run(&["gb", file.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "y^2 - 1\nx - y\n");

    // Twice, bit-identical.
    let again = run(&["gb", file.to_str().unwrap()]);
    assert_eq!(out.stdout, again.stdout);

    // Header-only file: the zero ideal, empty basis, still exit 0.
    let empty = write(dir.path(), "z.ideal", "ring: Q[x,y]\n# nothing\n");
    let out = run(&["gb", empty.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
}

#[test]
fn gb_rejects_malformed_files_with_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "bad.ideal", "ring: Q[x,y]\nx\nz + 1\n");
    let out = run(&["gb", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("line 3"), "stderr was: {}", stderr);

    let out = run(&["gb", "/nonexistent/path.ideal"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn segre_pipeline_worked_example() {
    let dir = tempfile::tempdir().unwrap();
    let ideal = write(dir.path(), "max.ideal", "ring: Q[x,y]\nx\ny\n");
    let lifts = write(dir.path(), "lifts.txt", "ring: Q[x,y]\nx + x^2\ny\n");
    let out = run(&[
        "segre",
        "--ideal",
        ideal.to_str().unwrap(),
        "--lifts",
        lifts.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("generators: [x, y]"), "stdout: {}", stdout);
    assert!(stdout.contains("result: pass"));

    // Non-surjective lifts: reported verdict, exit 1, no exception.
    let bad = write(dir.path(), "bad.txt", "ring: Q[x,y]\nx\n");
    let out = run(&[
        "segre",
        "--ideal",
        ideal.to_str().unwrap(),
        "--lifts",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("not surjective"), "stdout: {}", stdout);

    // Mismatched rings are an input error.
    let other = write(dir.path(), "other.txt", "ring: Q[x,z]\nx\nz\n");
    let out = run(&[
        "segre",
        "--ideal",
        ideal.to_str().unwrap(),
        "--lifts",
        other.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn segre_json_is_stable() {
    let dir = tempfile::tempdir().unwrap();
    let ideal = write(dir.path(), "max.ideal", "ring: Q[x,y]\nx\ny\n");
    let lifts = write(dir.path(), "lifts.txt", "ring: Q[x,y]\nx + x^2\ny\n");
    let args = [
        "segre",
        "--ideal",
        ideal.to_str().unwrap(),
        "--lifts",
        lifts.to_str().unwrap(),
        "--budget-degree",
        "1",
        "--budget-coeffs",
        "-1,0,1",
        "--json",
    ];
    let out = run(&args);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["all_pass"], true);
    assert_eq!(json["certificate"][0], "-1");
    assert_eq!(json["generators"], serde_json::json!(["x", "y"]));
    // Key order and content are stable run to run (timings aside).
    let again = run(&args);
    let json2: serde_json::Value = serde_json::from_slice(&again.stdout).unwrap();
    assert_eq!(json["verdicts"], json2["verdicts"]);
    assert_eq!(json["point"], json2["point"]);
}

#[test]
fn reduce_handles_the_base_point_and_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let v0 = write(
        dir.path(),
        "v0.point",
        "ring: Q[]\nn: 2\ns = 0\na1 = 0\na2 = 0\nb1 = 0\nb2 = 0\n",
    );
    let out = run(&["reduce", v0.to_str().unwrap()]);
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("empty"), "stdout: {}", stdout);
    assert!(stdout.contains("verified: true"));

    // The ring can come from the flag instead of the file.
    let pt = write(
        dir.path(),
        "pt.point",
        "n: 1\ns = 1\na1 = 0\nb1 = 0\n",
    );
    let out = run(&["reduce", pt.to_str().unwrap(), "--ring", "F5[]"]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));

    // A tuple off the quadric is an input error.
    let bad = write(
        dir.path(),
        "bad.point",
        "ring: Q[]\nn: 1\ns = 1\na1 = 1\nb1 = 1\n",
    );
    let out = run(&["reduce", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn enumerate_emits_the_tsv_row() {
    let out = run(&["enumerate", "1", "3"]);
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    let mut lines = stdout.lines();
    assert_eq!(lines.next().unwrap(), "n\tq\tpoints\torbits\tmax_word\twall_ms");
    let row: Vec<&str> = lines.next().unwrap().split('\t').collect();
    assert_eq!(&row[..5], &["1", "3", "12", "1", "3"]);

    // Out-of-range parameters are input errors.
    assert_eq!(run(&["enumerate", "1", "4"]).status.code(), Some(2));
    assert_eq!(run(&["enumerate", "9", "3"]).status.code(), Some(2));
}

#[test]
fn homotopy_check_accepts_valid_files_and_rejects_tampering() {
    let ring = Ring::rationals(&["x", "y"]).unwrap();
    let mut rng = Sampler::new(99);
    let v = random_quadric_point(&mut rng, &ring, 2, 1, 1, 0);
    let op = ElementaryOp::new(1, 0, None, Polynomial::parse(&ring, "y - 1").unwrap()).unwrap();
    let w = elementary_homotopy(&v, &op).unwrap();
    let json = files::witness_to_json(&w);

    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "w.json", &json);
    let out = run(&["homotopy-check", good.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("ok: 1 witness"));

    // Tampered endpoint: verification failure, exit 1.
    let mut value: serde_json::Value = serde_json::from_str(&json).unwrap();
    value["end"]["s"] = serde_json::Value::String("x".to_string());
    let bad = write(dir.path(), "bad.json", &value.to_string());
    let out = run(&["homotopy-check", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));

    // Garbage JSON: input error, exit 2.
    let garbage = write(dir.path(), "garbage.json", "{ not json");
    let out = run(&["homotopy-check", garbage.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn selftest_passes_with_a_fixed_seed() {
    let out = run(&["selftest", "--seed", "7"]);
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("seed: 7"));
    assert!(stdout.contains("suite certificate-search: PASS"));
    assert!(!stdout.contains("FAIL"));
}
