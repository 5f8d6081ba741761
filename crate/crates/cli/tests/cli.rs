use std::path::PathBuf;
use std::process::{Command, Output};

fn fqp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fqp"))
        .args(args)
        .env_remove("FQP_CONFIG")
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fqp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn records(o: &Output) -> Vec<serde_json::Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn classify_fixture_by_spec() {
    let o = fqp(&["--format", "machine", "classify", "Poly(2,[x,y],[x^2,x*y,y^2])"]);
    assert_eq!(code(&o), 0);
    let r = &records(&o)[0];
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["record"], "classify");
    assert_eq!(r["flags"]["fqp"], true);
    assert_eq!(r["flags"]["arithmetical"], false);
    assert_eq!(r["flags"]["gaussian"], true);
    assert_eq!(r["wdim"], "infinite");
}

#[test]
fn classify_by_corpus_name_and_zero_ring() {
    let o = fqp(&["--format", "machine", "classify", "ex4.5", "Z(1)"]);
    assert_eq!(code(&o), 0);
    let rs = records(&o);
    assert_eq!(rs[0]["name"], "ex4.5");
    assert_eq!(rs[0]["flags"]["fqp"], false);
    assert_eq!(rs[0]["flags"]["gaussian"], true);
    for f in ["chained", "arithmetical", "fqp", "gaussian", "prufer"] {
        assert_eq!(rs[1]["flags"][f], true, "{f}");
    }
    assert_eq!(rs[1]["wdim"], "zero");
}

#[test]
fn machine_output_is_byte_identical() {
    let args = ["--format", "machine", "classify", "ex3.3", "ex4.6", "Z(12)"];
    let a = fqp(&args);
    let b = fqp(&args);
    assert_eq!(a.stdout, b.stdout);
    let first = stdout(&a).lines().next().unwrap().to_string();
    assert!(first.starts_with(r#"{"schema_version":1,"record":"classify","name":"ex3.3","spec":"#));
}

#[test]
fn human_output_lists_flags() {
    let o = fqp(&["classify", "ex3.3"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("not quasi-projective"));
    assert!(text.contains("elapsed"));
}

#[test]
fn parse_errors_exit_2() {
    let o = fqp(&["classify", "Poly(2,[x],[x^2"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("position"));
    assert_eq!(code(&fqp(&["classify", "Poly(4,[x],[x^2])"])), 2);
    assert_eq!(code(&fqp(&["search", "fqp &&& "])), 2);
    assert_eq!(code(&fqp(&["verify", "nonsense"])), 2);
    assert_eq!(code(&fqp(&["--caps", "bogus=1", "classify", "Z(2)"])), 2);
    assert_eq!(code(&fqp(&["frobnicate"])), 2);
}

#[test]
fn caps_exit_3() {
    assert_eq!(code(&fqp(&["--caps", "ring_size=4", "classify", "Z(8)"])), 3);
    let capped = ["--caps", "oracle_module_size=2", "classify", "ex3.3"];
    assert_eq!(code(&fqp(&capped)), 0);
    let strict: Vec<&str> = std::iter::once("--strict").chain(capped).collect();
    assert_eq!(code(&fqp(&strict)), 3);
    assert_eq!(code(&fqp(&["--strict", "--no-oracle", "classify", "ex3.3"])), 0);
}

#[test]
fn inverted_expectation_exits_1() {
    let corpus = scratch("inverted.corpus", "ex3.2: Poly(2,[x,y],[x^2,x*y,y^2]) expect{arithmetical, !fqp}\n");
    let path = corpus.to_str().unwrap();
    let o = fqp(&["verify", "chain", "--corpus", path]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL"));
    let o = fqp(&["classify", "ex3.2", "--corpus", path]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("MISMATCH"));
}

#[test]
fn corrected_expectation_passes() {
    let corpus = scratch("fine.corpus", "ex3.2: Poly(2,[x,y],[x^2,x*y,y^2]) expect{!arithmetical, fqp}\n");
    let o = fqp(&["--format", "machine", "verify", "chain", "oracle", "--corpus", corpus.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let rs = records(&o);
    let suites: Vec<&str> = rs.iter().filter(|r| r["record"] == "verify").map(|r| r["suite"].as_str().unwrap()).collect();
    assert_eq!(suites, ["axioms", "chain", "oracle"]);
    assert_eq!(rs.last().unwrap()["record"], "verify_summary");
    assert_eq!(rs.last().unwrap()["passed"], true);
}

#[test]
fn bad_corpus_file_exits_2() {
    let corpus = scratch("broken.corpus", "a: Z(\n");
    assert_eq!(code(&fqp(&["corpus", "list", "--corpus", corpus.to_str().unwrap()])), 2);
    assert_eq!(code(&fqp(&["corpus", "list", "--corpus", "/nonexistent/file"])), 2);
}

#[test]
fn searches() {
    let o = fqp(&["--format", "machine", "search", "gaussian & !fqp", "--size-max", "16"]);
    assert_eq!(code(&o), 0);
    let r = &records(&o)[0];
    let specs: Vec<&str> = r["hits"].as_array().unwrap().iter().map(|h| h["spec"].as_str().unwrap()).collect();
    assert!(specs.contains(&"TrivExt(Z(8),[2],1)"), "{specs:?}");

    let o = fqp(&["--format", "machine", "search", "arithmetical ∧ ¬fqp", "--size-max", "16"]);
    assert_eq!(code(&o), 0);
    let r = &records(&o)[0];
    assert_eq!(r["forbidden"], true);
    assert!(r["hits"].as_array().unwrap().is_empty());
}

#[test]
fn corpus_list() {
    let o = fqp(&["--format", "machine", "corpus", "list"]);
    assert_eq!(code(&o), 0);
    let rs = records(&o);
    assert!(rs.len() >= 100);
    assert_eq!(rs[0]["record"], "corpus_entry");
    assert_eq!(rs[0]["name"], "ex3.2");
    let o = fqp(&["corpus", "list"]);
    assert!(stdout(&o).lines().any(|l| l.starts_with("zmod64")));
}

#[test]
fn config_file_from_the_environment() {
    let cfg = scratch("fqp.toml", "format = \"machine\"\noracle = false\n[caps]\nring_size = 4\n");
    let o = Command::new(env!("CARGO_BIN_EXE_fqp"))
        .args(["classify", "Z(4)"])
        .env("FQP_CONFIG", &cfg)
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    let r = &records(&o)[0];
    assert_eq!(r["oracle_verified"], false);
    let o = Command::new(env!("CARGO_BIN_EXE_fqp"))
        .args(["classify", "Z(8)"])
        .env("FQP_CONFIG", &cfg)
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
    let bad = scratch("bad.toml", "colour = 1\n");
    assert_eq!(code(&fqp(&["--config", bad.to_str().unwrap(), "classify", "Z(2)"])), 2);
}

#[test]
fn verify_all_on_the_default_corpus() {
    let o = fqp(&["--format", "machine", "verify", "all"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let rs = records(&o);
    assert_eq!(rs.iter().filter(|r| r["record"] == "verify").count(), 15);
    assert_eq!(rs.last().unwrap()["failures"], 0);
}
