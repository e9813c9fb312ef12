//! End-to-end tests of the binary: file handling, exit codes, determinism.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_assocgeo"))
}

fn write_sub(dir: &std::path::Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

#[test]
fn gamma_prints_z_for_torsor_unit_quintuple() {
    // x = y ∈ C_ab: Γ(x,a,x,b,z) = z
    let dir = std::env::temp_dir().join("assocgeo_cli_gamma");
    fs::create_dir_all(&dir).unwrap();
    let x = write_sub(&dir, "x.sub", "field p=2\nambient 2\n1 1\n");
    let a = write_sub(&dir, "a.sub", "field p=2\nambient 2\n1 0\n");
    let b = write_sub(&dir, "b.sub", "field p=2\nambient 2\n0 1\n");
    let z = write_sub(&dir, "z.sub", "field p=2\nambient 2\n1 0\n");
    for form in ["extended", "operator", "bruteforce"] {
        let out = run(&[
            "gamma",
            x.to_str().unwrap(),
            a.to_str().unwrap(),
            x.to_str().unwrap(),
            b.to_str().unwrap(),
            z.to_str().unwrap(),
            "--form",
            form,
        ]);
        assert!(out.status.success(), "form {form} failed");
        let stdout = String::from_utf8(out.stdout).unwrap();
        assert_eq!(stdout, "field p=2\nambient 2\n1 0\n", "form {form}");
    }
}

#[test]
fn malformed_file_exits_2_with_line_number() {
    let dir = std::env::temp_dir().join("assocgeo_cli_bad");
    fs::create_dir_all(&dir).unwrap();
    let good = write_sub(&dir, "good.sub", "field p=2\nambient 2\n1 0\n");
    let bad = write_sub(&dir, "bad.sub", "field p=2\nambient 2\n1 0 1\n");
    let out = run(&[
        "gamma",
        good.to_str().unwrap(),
        bad.to_str().unwrap(),
        good.to_str().unwrap(),
        good.to_str().unwrap(),
        good.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("line 3"), "stderr: {stderr}");
}

#[test]
fn ambient_mismatch_exits_2() {
    let dir = std::env::temp_dir().join("assocgeo_cli_mismatch");
    fs::create_dir_all(&dir).unwrap();
    let s2 = write_sub(&dir, "s2.sub", "field p=2\nambient 2\n1 0\n");
    let s3 = write_sub(&dir, "s3.sub", "field p=2\nambient 3\n1 0 0\n");
    let out = run(&[
        "gamma",
        s2.to_str().unwrap(),
        s3.to_str().unwrap(),
        s2.to_str().unwrap(),
        s2.to_str().unwrap(),
        s2.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gamma_over_rationals_round_trips() {
    let dir = std::env::temp_dir().join("assocgeo_cli_q");
    fs::create_dir_all(&dir).unwrap();
    // x = y = graph of 1/2 over the second coordinate, a = first axis,
    // b = second axis: Γ(x,a,x,b,z) = z since x is a common complement
    let x = write_sub(&dir, "x.sub", "field q\nambient 2\n1 1/2\n");
    let a = write_sub(&dir, "a.sub", "field q\nambient 2\n1 0\n");
    let b = write_sub(&dir, "b.sub", "field q\nambient 2\n0 1\n");
    let z = write_sub(&dir, "z.sub", "field q\nambient 2\n1 -2/3\n");
    let out = run(&[
        "gamma",
        x.to_str().unwrap(),
        a.to_str().unwrap(),
        x.to_str().unwrap(),
        b.to_str().unwrap(),
        z.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout, "field q\nambient 2\n1 -2/3\n");
}

#[test]
fn enumerate_counts_lines() {
    let out = run(&["enumerate", "--field", "p=2", "--n", "3", "--dim", "1"]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.lines().count(), 7);

    let out = run(&["enumerate", "--field", "p=3", "--n", "2", "--dim", "1"]);
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.lines().count(), 4);
}

#[test]
fn group_table_gf5_axes_is_cyclic_of_order_4() {
    let out = run(&["group-table", "--field", "p=5", "--n", "2", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["order"], 4);
    assert_eq!(v["cyclic"], true);
}

#[test]
fn verify_small_suite_passes() {
    let out = run(&[
        "verify",
        "lattice-diagonals",
        "--field",
        "p=2",
        "--n",
        "3",
        "--budget",
        "30",
        "--seed",
        "5",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("result: PASS"));
}

#[test]
fn verify_torsor_exhaustive_gf3_passes() {
    let out = run(&[
        "verify", "torsor", "--exhaustive", "--field", "p=3", "--n", "2",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn verify_is_byte_deterministic() {
    let args = [
        "verify",
        "all",
        "--field",
        "p=3",
        "--n",
        "2",
        "--budget",
        "25",
        "--seed",
        "7",
    ];
    let out1 = run(&args);
    let out2 = run(&args);
    assert!(out1.status.success());
    assert_eq!(out1.stdout, out2.stdout);
    // JSON mirror is deterministic too
    let mut jargs = args.to_vec();
    jargs.push("--json");
    let j1 = run(&jargs);
    let j2 = run(&jargs);
    assert_eq!(j1.stdout, j2.stdout);
}

#[test]
fn verify_all_gf2_n4_budget_1000_passes() {
    let out = run(&[
        "verify", "all", "--field", "p=2", "--n", "4", "--budget", "1000", "--seed", "7",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.matches("result: PASS").count(), 9);
    assert_eq!(stdout.matches("result: FAIL").count(), 0);
}

#[test]
fn corrupted_gamma_self_test_fails_with_witness() {
    let out = run(&[
        "verify",
        "axioms",
        "--field",
        "p=3",
        "--n",
        "2",
        "--corrupt-gamma",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("FAIL"));
    assert!(stdout.contains("counterexample"), "{stdout}");
}

#[test]
fn exhaustive_over_rationals_is_a_usage_error() {
    let out = run(&[
        "verify", "semitorsor", "--field", "q", "--n", "2", "--exhaustive",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let out = run(&["verify", "nonsense", "--field", "p=2", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn imbed_preset_reports_peirce_dims() {
    let out = run(&["imbed", "--pair", "scalar-gf2"]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("algebra dim=4 field p=2"));
    assert!(stdout.contains("peirce dims: a00=1 a01=1 a10=1 a11=1"));
}

#[test]
fn pair_command_prints_products() {
    let out = run(&["pair", "--field", "p=2", "--n", "2"]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    // scalar pair: <e0 f0 e0>+ = 1·1·1 = 1
    assert!(stdout.contains("<e0 f0 e0>+ = 1"), "{stdout}");
}
