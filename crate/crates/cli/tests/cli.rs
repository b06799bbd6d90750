use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn maxsur(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_maxsur"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn gallery_file(dir: &Path, name: &str) -> String {
    let out = maxsur(&["gallery", name]);
    assert_eq!(out.status.code(), Some(0));
    write(dir, &format!("{name}.json"), std::str::from_utf8(&out.stdout).unwrap())
}

#[test]
fn exact_sur_on_asym_cut_triangle() {
    let dir = tempfile::tempdir().unwrap();
    let file = gallery_file(dir.path(), "asym-cut");
    let out = maxsur(&["solve", &file, "--mode", "exact-sur"]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_eq!(report["value"], 1);
    assert_eq!(report["mode"], "exact-sur");
    assert_eq!(report["assignment"].as_array().unwrap().len(), 3);
}

#[test]
fn classify_hard_ptas() {
    let out = maxsur(&["classify", "--gallery", "hard-ptas"]);
    assert_eq!(out.status.code(), Some(0));
    let class = stdout_json(&out);
    assert_eq!(class["zero_valid"], true);
    assert_eq!(class["one_valid"], false);
    assert_eq!(class["two_monotone"], false);
}

#[test]
fn reduce_adds_template_size_elements() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["asym-cut", "c6", "no-rainbow"] {
        let file = gallery_file(dir.path(), name);
        let padded_path = dir.path().join(format!("{name}.padded.json"));
        let out = maxsur(&["reduce", &file, "--output", padded_path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        let before: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
        let after: Value = serde_json::from_str(&std::fs::read_to_string(&padded_path).unwrap()).unwrap();
        let b = before["template"]["size"].as_u64().unwrap();
        assert_eq!(
            after["instance"]["size"].as_u64().unwrap(),
            before["instance"]["size"].as_u64().unwrap() + b
        );
        assert_eq!(after["instance"]["relations"], before["instance"]["relations"]);
    }
}

#[test]
fn gallery_files_are_canonical() {
    let dir = tempfile::tempdir().unwrap();
    let list = maxsur(&["gallery"]);
    let names: Vec<String> = String::from_utf8(list.stdout)
        .unwrap()
        .lines()
        .map(str::to_string)
        .collect();
    assert_eq!(names.len(), 6);
    for name in &names {
        let file = gallery_file(dir.path(), name);
        let out = maxsur(&["solve", &file, "--mode", "approx-seeded", "--deterministic"]);
        assert_eq!(out.status.code(), Some(0), "{name}");
    }
}

#[test]
fn exit_code_table() {
    let dir = tempfile::tempdir().unwrap();
    let asym = gallery_file(dir.path(), "asym-cut");
    let c6 = gallery_file(dir.path(), "c6");
    let small = write(
        dir.path(),
        "small.json",
        r#"{"signature": [{"name": "R", "arity": 2}],
            "template": {"size": 3, "relations": {"R": [[0, 1]]}},
            "instance": {"size": 2, "relations": {"R": [[0, 1]]}}}"#,
    );
    let out_of_range = write(
        dir.path(),
        "range.json",
        r#"{"signature": [{"name": "R", "arity": 2}],
            "template": {"size": 2, "relations": {"R": [[0, 1]]}},
            "instance": {"size": 2, "relations": {"R": [[0, 2]]}}}"#,
    );
    let lonely = write(
        dir.path(),
        "lonely.json",
        r#"{"signature": [{"name": "R", "arity": 1}],
            "template": {"size": 2, "relations": {"R": [[1]]}},
            "instance": {"size": 2, "relations": {"R": [[0]]}}}"#,
    );
    let missing = dir.path().join("missing.json");
    let missing = missing.to_str().unwrap();

    let cases: Vec<(Vec<&str>, i32)> = vec![
        (vec!["solve", &asym], 0),
        (vec!["--help"], 0),
        (vec!["solve", "--help"], 0),
        (vec![], 1),
        (vec!["frobnicate"], 1),
        (vec!["solve"], 1),
        (vec!["solve", &asym, "--mode", "fastest"], 1),
        (vec!["solve", &asym, "--epsilon", "zero"], 1),
        (vec!["solve", &asym, "--epsilon", "-0.5"], 1),
        (vec!["solve", &asym, "--seed", "-3"], 1),
        (vec!["solve", missing], 1),
        (vec!["solve", &out_of_range], 1),
        (vec!["solve", &asym, "--mode", "mincut"], 1),
        (vec!["classify", &c6], 1),
        (vec!["gallery", "c7x"], 1),
        (vec!["gen", "--template", "c6", "--elements", "5", "--tuples", "30"], 1),
        (vec!["solve", &small, "--mode", "exact-sur"], 2),
        (vec!["solve", &small, "--mode", "approx2"], 2),
        (vec!["solve", &lonely, "--mode", "mincut", "--paper-anchors"], 2),
        (vec!["solve", &lonely, "--mode", "mincut", "--constraint-anchors"], 2),
        (vec!["solve", &lonely, "--mode", "mincut"], 0),
        (vec!["solve", &c6, "--mode", "exact-sur", "--cap", "100"], 3),
        (vec!["solve", &c6, "--mode", "ptas", "--cap", "100"], 3),
    ];
    for (args, code) in cases {
        let out = maxsur(&args);
        assert_eq!(out.status.code(), Some(code), "maxsur {args:?}: {}", String::from_utf8_lossy(&out.stderr));
        if code != 0 {
            assert!(!out.stderr.is_empty(), "maxsur {args:?} printed no diagnostic");
        }
    }
}

#[test]
fn range_error_names_path() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(
        dir.path(),
        "bad.json",
        r#"{"signature": [{"name": "R", "arity": 2}],
            "template": {"size": 2, "relations": {"R": [[0, 1]]}},
            "instance": {"size": 2, "relations": {"R": [[0, 1], [1, 0], [1, 1], [1, 2]]}}}"#,
    );
    let out = maxsur(&["solve", &file]);
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("instance.relations.R[3][1]"), "{stderr}");
}

#[test]
fn seeded_runs_repeat() {
    let dir = tempfile::tempdir().unwrap();
    let gen = maxsur(&["gen", "--template", "no-rainbow", "--elements", "9", "--tuples", "12", "--seed", "5"]);
    assert_eq!(gen.status.code(), Some(0));
    let again = maxsur(&["gen", "--template", "no-rainbow", "--elements", "9", "--tuples", "12", "--seed", "5"]);
    assert_eq!(gen.stdout, again.stdout);
    let file = write(dir.path(), "gen.json", std::str::from_utf8(&gen.stdout).unwrap());
    let a = maxsur(&["solve", &file, "--mode", "approx2", "--seed", "11"]);
    let b = maxsur(&["solve", &file, "--mode", "approx2", "--seed", "11"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout_json(&a)["seed"], 11);
}

#[test]
fn stdin_input() {
    use std::io::Write;
    let problem = maxsur(&["gallery", "c4ref"]).stdout;
    let mut child = Command::new(env!("CARGO_BIN_EXE_maxsur"))
        .args(["solve", "-", "--mode", "exact"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(&problem).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["value"], 8);
}

#[test]
fn bench_csv() {
    let out = maxsur(&[
        "bench", "--template", "asym-cut", "--elements", "6", "--tuples", "4", "--instances", "5",
        "--modes", "exact-sur,mincut", "--oracle",
    ]);
    // asym-cut is not 2-monotone: the mincut rows carry no value but the run succeeds.
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("instance_id,mode,value,opt,ratio,bound,seed,wall_ms"));
    assert_eq!(text.lines().count(), 1 + 10 + 4);
    assert!(text.contains("summary-min,exact-sur,,,1.000000"));
}
