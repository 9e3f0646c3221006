use std::path::PathBuf;
use std::process::Command;

use simpgd::cert::Certificate;
use simpgd::fixtures::corpus;

fn root() -> PathBuf {
  PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn run(args: &[&str]) -> (i32, String) {
  let out = Command::new(env!("CARGO_BIN_EXE_simpgd")).args(args).current_dir(root()).output().unwrap();
  (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn certificates(stdout: &str) -> Vec<Certificate> {
  stdout.lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn shipped_fixtures_match_the_corpus() {
  for f in corpus() {
    let on_disk = std::fs::read_to_string(root().join("fixtures").join(f.file)).unwrap();
    assert_eq!(on_disk, f.json, "{}", f.file);
  }
}

#[test]
fn wbar_level_table() {
  let (code, out) = run(&["wbar", "fixtures/z2const.json", "--trunc", "4"]);
  assert_eq!(code, 0);
  let counts: Vec<&str> = out.lines().skip(1).take(5).map(|l| l.split_whitespace().last().unwrap()).collect();
  assert_eq!(counts, ["1", "2", "4", "8", "16"]);
  let (_, json) = run(&["wbar", "fixtures/z2const.json", "--trunc", "4", "--format", "json"]);
  let c = &certificates(&json)[0];
  assert_eq!(c.witnesses["counts"], serde_json::json!([1, 2, 4, 8, 16]));
  assert_eq!(c.parameters.trunc, 4);
}

#[test]
fn j_weq_passes() {
  let (code, out) = run(&["check", "j-weq", "fixtures/z2const.json"]);
  assert_eq!(code, 0);
  assert!(out.contains("PASS check.j-weq"));
}

#[test]
fn sgpd_classification_on_the_point() {
  let (code, out) = run(&[
    "torsor",
    "classify",
    "--kind",
    "sgpd",
    "--site",
    "fixtures/pt.json",
    "fixtures/twocomp.json",
    "--format",
    "json",
  ]);
  assert_eq!(code, 0);
  let c = &certificates(&out)[0];
  assert_eq!(c.witnesses["torsor_classes"], 2);
  assert_eq!(c.witnesses["homotopy_classes"], 2);
  assert_eq!(c.parameters.family.as_deref(), Some(&["*".to_string()][..]));
}

#[test]
fn exceeded_bounds_fail_with_a_witness() {
  let (code, out) =
    run(&["h1", "--site", "fixtures/s1cov.json", "fixtures/z2const.json", "--format", "json", "--bound", "1"]);
  assert_eq!(code, 1, "{out}");
  let c = &certificates(&out)[0];
  assert!(!c.is_pass());
  assert!(c.witnesses["exceeded"].is_string());
  assert_eq!(c.parameters.bound, 1);
}

#[test]
fn comma_over_each_object_is_contractible() {
  for object in ["0", "1"] {
    let (code, out) = run(&["comma", "fixtures/interval.json", "--object", object]);
    assert_eq!(code, 0, "{out}");
  }
}

#[test]
fn invalid_input_exits_two() {
  assert_eq!(run(&["wbar", "fixtures/pt.json"]).0, 2);
  assert_eq!(run(&["wbar", "fixtures/z2const.json", "--trunc", "1"]).0, 2);
  assert_eq!(run(&["wbar", "fixtures/missing.json"]).0, 2);
  assert_eq!(
    run(&["torsor", "classify", "--kind", "group", "--site", "fixtures/s1.json", "fixtures/interval.json"]).0,
    2
  );
  assert_eq!(
    run(&["torsor", "classify", "--kind", "torus", "--site", "fixtures/s1.json", "fixtures/z2const.json"]).0,
    2
  );
}
