use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn qsr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsr")).args(args).env_remove("QSR_CACHE_DIR").output().unwrap()
}

fn qsr_cached(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsr")).args(args).env("QSR_CACHE_DIR", dir).output().unwrap()
}

fn json_ok(args: &[&str]) -> Value {
    let out = qsr(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stdout));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn text_ok(args: &[&str]) -> String {
    let out = qsr(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}");
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn variety_jordan2_alpha3() {
    let v = json_ok(&["variety", "--quiver", "jordan2", "--alpha", "3"]);
    assert_eq!(v["dimension"], 20);
    assert_eq!(v["resolvable"], false);
    assert_eq!(v["parts"][0]["method"], "obstructed");
}

#[test]
fn canon_affa1_twice_delta() {
    let v = json_ok(&["canon", "--quiver", "affa1", "--alpha", "2,2"]);
    let parts = v["parts"].as_array().unwrap();
    assert_eq!(parts.len(), 1);
    assert_eq!(parts[0]["mult"], 2);
    assert_eq!(parts[0]["root"], serde_json::json!([1, 1]));
}

#[test]
fn char_sl_two_two_is_blowup() {
    let v = json_ok(&["char", "--n", "2", "--g", "2", "--group", "sl"]);
    assert_eq!(v["resolvable"], true);
    assert_eq!(v["method"], "blowup");
    assert_eq!(v["dimension"], 6);
}

#[test]
fn char_gl_strata_dims() {
    let v = json_ok(&["char", "--n", "2", "--g", "2"]);
    let mut dims: Vec<i64> = v["strata"].as_array().unwrap().iter().map(|s| s["dim"].as_i64().unwrap()).collect();
    dims.sort_unstable();
    assert_eq!(dims, vec![4, 8, 10]);
}

#[test]
fn empty_variety_is_not_an_error() {
    let v = json_ok(&["variety", "--quiver", "a3", "--alpha", "1,0,1", "--lambda", "1,0,-1"]);
    assert_eq!(v["empty"], true);
}

#[test]
fn input_errors_exit_1() {
    for args in [
        &["canon", "--quiver", "nosuch", "--alpha", "1"][..],
        &["canon", "--quiver", "affa1", "--alpha", "1,x"],
        &["canon", "--quiver", "affa1", "--alpha", "1,1,1"],
        &["roots", "--quiver", "affa1"],
        &["frobnicate"],
        &["char", "--table", "--nmax", "0"],
    ] {
        assert_eq!(qsr(args).status.code(), Some(1), "{args:?}");
    }
    let out = qsr(&["canon", "--quiver", "affa1", "--alpha", "1,x"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["kind"], "input");
}

#[test]
fn domain_errors_exit_2() {
    for args in [
        &["leaves", "--quiver", "affa1", "--alpha", "2,2"][..],
        &["canon", "--quiver", "affa1", "--alpha", "1,1", "--lambda", "1,0"],
    ] {
        let out = qsr(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let v: Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(v["error"]["kind"], "domain");
    }
}

#[test]
fn strict_leaves_warn_about_repeated_parts() {
    let out = qsr(&["leaves", "--quiver", "jordan2", "--alpha", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["leaves"].as_array().unwrap().len(), 0);
    assert!(String::from_utf8_lossy(&out.stderr).contains("permissive"));
    let v = json_ok(&["leaves", "--quiver", "jordan2", "--alpha", "2", "--mode", "permissive"]);
    assert_eq!(v["leaves"].as_array().unwrap().len(), 1);
    assert_eq!(v["leaves"][0]["weyl"], "A1");
}

#[test]
fn affd4_leaf() {
    let v = json_ok(&["leaves", "--quiver", "star5", "--alpha", "2,1,1,1,1,1"]);
    assert!(!v["leaves"].as_array().unwrap().is_empty());
    assert!(v["caveat"].is_string());
}

#[test]
fn cache_hit_matches_and_corruption_rebuilds() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["variety", "--quiver", "jordan2", "--alpha", "3"];
    let fresh = qsr(&args).stdout;
    let first = qsr_cached(dir.path(), &args);
    assert_eq!(first.stdout, fresh);
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(files.len(), 1);
    let file = &files[0];
    assert_eq!(file.extension().unwrap(), "qsrc");
    let good = std::fs::read(file).unwrap();
    assert_eq!(qsr_cached(dir.path(), &args).stdout, fresh);

    let mut bad = good.clone();
    let mid = bad.len() / 2;
    bad[mid] ^= 0xff;
    std::fs::write(file, &bad).unwrap();
    let rebuilt = qsr_cached(dir.path(), &args);
    assert_eq!(rebuilt.status.code(), Some(0));
    assert_eq!(rebuilt.stdout, fresh);
    assert_eq!(std::fs::read(file).unwrap(), good);

    std::fs::write(file, b"QSRC").unwrap();
    assert_eq!(qsr_cached(dir.path(), &args).stdout, fresh);
    assert_eq!(std::fs::read(file).unwrap(), good);
}

#[test]
fn sweeps_are_deterministic() {
    for grid in ["char", "char-sl", "char-gl", "affine"] {
        for format in ["csv", "markdown"] {
            let args = ["sweep", "--grid", grid, "--format", format];
            assert_eq!(text_ok(&args), text_ok(&args), "{grid} {format}");
        }
    }
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines().skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

#[test]
fn char_grid_verdicts() {
    let rows = csv_rows(&text_ok(&["sweep", "--grid", "char", "--nmax", "5", "--dmax", "5"]));
    assert_eq!(rows.len(), 25);
    for r in rows {
        let (n, d): (i64, i64) = (r[0].parse().unwrap(), r[1].parse().unwrap());
        let expected = n == 1 || d == 1 || (n, d) == (2, 2);
        assert_eq!(r[4], expected.to_string(), "n={n} d={d}");
    }
}

#[test]
fn sl_grid_verdicts() {
    let rows = csv_rows(&text_ok(&["sweep", "--grid", "char-sl", "--nmax", "5", "--gmax", "5"]));
    assert_eq!(rows.len(), 25);
    for r in rows {
        let (n, g): (i64, i64) = (r[0].parse().unwrap(), r[1].parse().unwrap());
        let expected = n == 1 || g == 1 || (n, g) == (2, 2);
        assert_eq!(r[4], expected.to_string(), "n={n} g={g}");
    }
}

#[test]
fn affine_multiples_resolvable_but_singular() {
    let text = text_ok(&["sweep", "--grid", "affine", "--mmax", "3"]);
    let lines: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(lines.len(), 9);
    for l in lines {
        assert!(l.ends_with(",false,true,framing-symmetric-power"), "{l}");
    }
}

#[test]
fn char_table_is_markdown_grid() {
    let text = text_ok(&["char", "--table", "--nmax", "3", "--gmax", "2", "--group", "sl"]);
    assert!(text.starts_with("| n | g |"));
    assert_eq!(text.lines().count(), 2 + 6);
}

#[test]
fn quiver_json_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let builtin = json_ok(&["roots", "--quiver", "affd4", "--bound", "2,1,1,1,1"]);
    let path = dir.path().join("affd4.json");
    std::fs::write(&path, serde_json::to_string(&builtin["quiver"]).unwrap()).unwrap();
    let from_file = json_ok(&["roots", "--quiver", path.to_str().unwrap(), "--bound", "2,1,1,1,1"]);
    assert_eq!(builtin, from_file);
}

#[test]
fn table_format_renders() {
    let text = text_ok(&["strata", "--quiver", "affa1", "--alpha", "2,2", "--format", "table"]);
    assert!(text.starts_with("alpha: (2,2)\ndimension: 4\nstrata:\n"));
}
