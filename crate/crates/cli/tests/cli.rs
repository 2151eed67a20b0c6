use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bianchi(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bianchi"))
        .arg("--cache-dir")
        .arg(cache)
        .args(args)
        .env_remove("BIANCHI_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout_ok(cache: &Path, args: &[&str]) -> String {
    let out = bianchi(cache, args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn shapes(first_line: &str) -> (usize, Vec<String>) {
    let (count, rest) = first_line.split_once(" classes: ").expect("class summary line");
    let mut s: Vec<String> = rest.split(", ").map(str::to_string).collect();
    s.sort();
    (count.parse().unwrap(), s)
}

fn sorted(v: &[&str]) -> Vec<String> {
    let mut s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    s.sort();
    s
}

#[test]
fn perfect_forms_d43_text() {
    let dir = tempfile::tempdir().unwrap();
    let out = stdout_ok(dir.path(), &["perfect-forms", "--d", "-43"]);
    let (n, s) = shapes(out.lines().next().unwrap());
    assert_eq!(n, 4);
    assert_eq!(s, sorted(&["triangular prism", "triangular prism", "hexagonal cap", "truncated tetrahedron"]));
    assert!(dir.path().join("d43").join("perfect_forms.json").exists());
}

#[test]
fn perfect_forms_d67_text() {
    let dir = tempfile::tempdir().unwrap();
    let out = stdout_ok(dir.path(), &["perfect-forms", "--d", "-67"]);
    let (n, s) = shapes(out.lines().next().unwrap());
    assert_eq!(n, 7);
    let expected = [
        "octahedron",
        "triangular prism",
        "triangular prism",
        "hexagonal cap",
        "square pyramid",
        "square pyramid",
        "truncated tetrahedron",
    ];
    assert_eq!(s, sorted(&expected));
}

#[test]
fn perfect_forms_json_has_schema() {
    let dir = tempfile::tempdir().unwrap();
    let out = stdout_ok(dir.path(), &["--format", "json", "perfect-forms", "--d", "-43"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["d"], -43);
    let classes = v["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 4);
    for c in classes {
        for key in ["label", "form", "min_vectors", "shape", "face_counts", "facets", "neighbors"] {
            assert!(c.get(key).is_some(), "missing {key}");
        }
        assert_eq!(c["form"].as_array().unwrap().len(), 4);
        assert!(c["form"][0].is_string());
        assert_eq!(c["neighbors"].as_array().unwrap().len(), c["facets"].as_array().unwrap().len());
    }
}

#[test]
fn homology_examples() {
    let dir = tempfile::tempdir().unwrap();
    let h = |d: &str, k: &str| stdout_ok(dir.path(), &["voronoi-homology", "--d", d, "--degree", k]);
    assert_eq!(h("-43", "1").trim(), "Z/2");
    assert_eq!(h("-67", "2").trim(), "Z/2");
    assert_eq!(h("-163", "1").trim(), "(Z/2)^6");
}

#[test]
fn cached_and_cold_json_are_identical() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = ["--format", "json", "voronoi-homology", "--d", "-43"];
    let cold = stdout_ok(a.path(), &args);
    let files: Vec<_> = ["perfect_forms.json", "orbits.json", "complex.json"]
        .iter()
        .map(|f| std::fs::read(a.path().join("d43").join(f)).unwrap())
        .collect();
    let warm = stdout_ok(a.path(), &args);
    assert_eq!(cold, warm);

    // only the first stage cached: later stages are rebuilt from it
    std::fs::create_dir_all(b.path().join("d43")).unwrap();
    std::fs::write(b.path().join("d43/perfect_forms.json"), &files[0]).unwrap();
    let partial = stdout_ok(b.path(), &args);
    assert_eq!(cold, partial);
    for (f, bytes) in ["perfect_forms.json", "orbits.json", "complex.json"].iter().zip(&files) {
        assert_eq!(&std::fs::read(b.path().join("d43").join(f)).unwrap(), bytes, "{f}");
    }

    let pf = ["--format", "json", "perfect-forms", "--d", "-43"];
    assert_eq!(stdout_ok(a.path(), &pf).as_bytes(), files[0].as_slice());
}

#[test]
fn stale_schema_is_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().join("d43");
    std::fs::create_dir_all(&d).unwrap();
    std::fs::write(d.join("perfect_forms.json"), r#"{"schema_version": 0, "d": -43, "classes": []}"#).unwrap();
    let out = stdout_ok(dir.path(), &["perfect-forms", "--d", "-43"]);
    assert!(out.starts_with("4 classes"));
}

#[test]
fn cache_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_bianchi"))
        .args(["perfect-forms", "--d", "-43"])
        .env("BIANCHI_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(dir.path().join("d43/perfect_forms.json").exists());
}

#[test]
fn building_examples() {
    let dir = tempfile::tempdir().unwrap();
    let first = |args: &[&str]| stdout_ok(dir.path(), args).lines().next().unwrap().to_string();
    assert_eq!(first(&["building", "--n", "3", "--q", "2", "--what", "steinberg-rank"]), "8");
    assert_eq!(first(&["building", "--n", "2", "--q", "3", "--what", "alpha-rank"]), "3");
    assert_eq!(first(&["building", "--what", "lemma-oracle", "--trials", "50"]), "50/50 agree");
}

#[test]
fn building_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = stdout_ok(dir.path(), &["--format", "json", "building", "--n", "3", "--q", "2", "--what", "steinberg-rank"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["steinberg_rank"], 8);
    assert_eq!(v["reduced_homology"], serde_json::json!(["0", "Z^8", "0"]));
}

#[test]
fn building_bounds_are_explained() {
    let dir = tempfile::tempdir().unwrap();
    let out = bianchi(dir.path(), &["building", "--n", "6", "--q", "2", "--what", "steinberg-rank"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("limited to"));
    let out = bianchi(dir.path(), &["building", "--what", "alpha-rank"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("--n"));
}

#[test]
fn explore_b2_examples() {
    let dir = tempfile::tempdir().unwrap();
    let g = stdout_ok(dir.path(), &["explore-b2", "--d", "-1", "--radius", "5"]);
    assert!(g.contains("evidence, not proof"));
    assert!(g.contains("\n1 components"), "{g}");
    let c = stdout_ok(dir.path(), &["--format", "json", "explore-b2", "--d", "-43", "--radius", "5"]);
    let v: Value = serde_json::from_str(&c).unwrap();
    assert!(!v["component_sizes"].as_array().unwrap().is_empty());
    assert!(v["banner"].as_str().unwrap().contains("evidence, not proof"));
    let z = stdout_ok(dir.path(), &["explore-b2", "--radius", "0"]);
    assert!(z.contains("0 vertices") && z.contains("evidence, not proof"));
}

#[test]
fn bad_discriminant_fails() {
    let dir = tempfile::tempdir().unwrap();
    for d in ["-4", "5", "0"] {
        let out = bianchi(dir.path(), &["perfect-forms", "--d", d]);
        assert!(!out.status.success(), "d = {d}");
    }
}

#[test]
fn thread_budget_does_not_change_output() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = ["--format", "json", "perfect-forms", "--d", "-67"];
    let one = stdout_ok(a.path(), &[&["--threads", "1"], &args[..]].concat());
    let four = stdout_ok(b.path(), &[&["--threads", "4"], &args[..]].concat());
    assert_eq!(one, four);
}
