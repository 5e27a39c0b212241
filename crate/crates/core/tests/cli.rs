use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use carc::io::parse_model;
use carc::model::equal_models;

fn carc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_carc")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn generated_models_parse_back() {
    let o = carc(&["generate", "ci", "3", "1", "--as", "model"]);
    assert_eq!(o.status.code(), Some(0));
    let m = parse_model(&stdout(&o)).unwrap();
    assert_eq!(m.n(), 6);
    let again = parse_model(&format!("{}\n{}\n", m.n(), m)).unwrap();
    assert!(equal_models(&m, &again));
}

#[test]
fn recognize_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let hole = stdout(&carc(&["generate", "hole", "6"]));
    let hole = write(dir.path(), "hole6.cam", &hole);
    let o = carc(&["recognize", "--class", "nhca", &hole]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("verdict=positive\n"));

    let claw = write(dir.path(), "k13.cam", &stdout(&carc(&["generate", "k13"])));
    let o = carc(&["recognize", "--class", "phca", &claw]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("certificate=K13 arcs="));

    let bad = write(dir.path(), "bad.cam", "2\ns0 t0 s0 t1\n");
    let o = carc(&["recognize", "--class", "nhca", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));

    assert_eq!(carc(&["recognize", &hole]).status.code(), Some(2));
}

#[test]
fn uhca_routes_and_emitted_models() {
    let dir = tempfile::tempdir().unwrap();
    let ci = write(dir.path(), "ci.cam", &stdout(&carc(&["generate", "ci", "4", "1"])));
    let o = carc(&["recognize", "--class", "uhca", &ci]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("certificate=CI(4,1)"));

    let hole = write(dir.path(), "h.cam", &stdout(&carc(&["generate", "hole", "5"])));
    let emitted = dir.path().join("out.cam");
    let o = carc(&["recognize", "--class", "uhca", "--emit-model", emitted.to_str().unwrap(), &hole]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let witness = text.lines().find_map(|l| l.strip_prefix("witness=")).unwrap();
    let w = write(dir.path(), "w.json", witness);
    let out = fs::read_to_string(&emitted).unwrap();
    assert!(parse_model(&out).is_ok());
    let o = carc(&["recognize", "--class", "uhca", "--unit-witness", &w, emitted.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn batch_and_trace() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "a.cam", &stdout(&carc(&["generate", "hole", "4"])));
    write(dir.path(), "b.cam", &stdout(&carc(&["generate", "tent"])));
    let o = carc(&["--trace", "recognize", "--class", "nhca", "--batch", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert_eq!(text.matches("file=").count(), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("trace input="));
    let again = carc(&["--trace", "recognize", "--class", "nhca", "--batch", dir.path().to_str().unwrap()]);
    assert_eq!(stdout(&again), text);
}

#[test]
fn other_verbs() {
    let dir = tempfile::tempdir().unwrap();
    let hole = write(dir.path(), "h.cam", &stdout(&carc(&["generate", "hole", "5"])));
    let o = carc(&["check", &hole]);
    assert!(stdout(&o).contains("nhca=true"));
    let o = carc(&["cliques", &hole]);
    assert!(stdout(&o).contains("phca=true"));
    let o = carc(&["orient", &hole, "--flavor", "round"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("locally_straight=true"));
    let path = write(dir.path(), "p.g", &stdout(&carc(&["generate", "path", "4", "--as", "graph"])));
    let o = carc(&["enumerate", &path, "--filter", "nphca"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("count="));
    let w = write(dir.path(), "w.g", &stdout(&carc(&["generate", "wheel", "4", "--as", "graph"])));
    assert!(stdout(&carc(&["cliques", &w])).contains("phca=false"));
}

#[test]
fn seeded_random_models_are_reproducible() {
    let run = |seed: &str| {
        Command::new(env!("CARGO_BIN_EXE_carc")).args(["generate", "random", "8"]).env("CARC_SEED", seed).output().unwrap()
    };
    assert_eq!(run("5").stdout, run("5").stdout);
    assert_eq!(run("x").status.code(), Some(2));
}
