use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("examples/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn fprect(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fprect"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("JSON report")
}

#[test]
fn rectangular_failure_lists_the_separating_quadruple() {
    let o = fprect(&[
        "verify-space",
        "--space",
        &data("main_space.json"),
        "--axiom",
        "rectangular",
        "--all-witnesses",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("1/5 -> 1/16 -> 0 -> 1/9"), "{}", stdout(&o));
}

#[test]
fn b_rectangular_passes_on_both_example_spaces() {
    for f in ["main_space.json", "ex2_space.json"] {
        let o = fprect(&[
            "verify-space",
            "--space",
            &data(f),
            "--axiom",
            "b-rectangular",
            "--s",
            "3",
        ]);
        assert_eq!(o.status.code(), Some(0), "{f}: {}", stdout(&o));
    }
}

#[test]
fn step_override_changes_the_sample() {
    let o = fprect(&[
        "verify-space",
        "--space",
        &data("main_space.json"),
        "--axiom",
        "triangle",
        "--step",
        "1/4",
        "--format",
        "json",
    ]);
    assert_eq!(json(&o)["points"], 7);
}

#[test]
fn minimal_s_reports_the_coefficient() {
    let o = fprect(&[
        "minimal-s",
        "--space",
        &data("ex2_space.json"),
        "--step",
        "1/2",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["coefficient"]["s"], "3/1");
}

#[test]
fn solve_from_one_half() {
    let o = fprect(&["solve", "--instance", &data("main_instance.json"), "--from", "1/2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("FIXED_POINT 0"), "{}", stdout(&o));
    let j = json(&fprect(&[
        "solve",
        "--instance",
        &data("main_instance.json"),
        "--from",
        "1/2",
        "--format",
        "json",
    ]));
    assert_eq!(
        j["runs"][0]["result"]["trace"]["orbit"],
        serde_json::json!(["1/2", "1/16", "0", "0", "0"])
    );
    assert_eq!(j["uniqueness"]["fixed_points"], serde_json::json!(["0"]));
}

#[test]
fn solve_exit_statuses() {
    let periodic = fprect(&["solve", "--instance", &data("periodic_instance.json")]);
    assert_eq!(periodic.status.code(), Some(1));
    assert!(stdout(&periodic).contains("PERIODIC"));
    let budget = fprect(&[
        "solve",
        "--instance",
        &data("main_instance.json"),
        "--from",
        "1",
        "--max-iter",
        "1",
    ]);
    assert_eq!(budget.status.code(), Some(3), "{}", stdout(&budget));
}

#[test]
fn contraction_checks() {
    for (f, code) in [
        ("main_instance.json", 0),
        ("cho_instance.json", 0),
        ("preset_instance.json", 0),
    ] {
        let o = fprect(&["check-contraction", "--instance", &data(f)]);
        assert_eq!(o.status.code(), Some(code), "{f}: {}", stdout(&o));
    }
}

#[test]
fn function_checks() {
    let o = fprect(&["check-functions", "--function", &data("log_fn.json")]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = fprect(&[
        "check-functions",
        "--tripled",
        &data("non_monotone_tripled.json"),
        "--max",
        "4",
        "--step",
        "1/16",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let o = fprect(&[
        "check-functions",
        "--tripled",
        &data("monotone_tripled.json"),
        "--max",
        "4",
        "--step",
        "1/16",
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn replicate_cases() {
    let o = fprect(&["replicate", "EX2_SPACE"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = fprect(&["replicate", "main-contraction", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let j = json(&o);
    for c in j["cases"][0]["checks"].as_array().unwrap() {
        assert!(!c["location"].as_str().unwrap().is_empty());
    }
    assert_eq!(fprect(&["replicate", "NOPE"]).status.code(), Some(2));
}

#[test]
fn json_reports_round_trip_byte_identical() {
    for args in [
        vec![
            "verify-space",
            "--space",
            &data("main_space.json"),
            "--axiom",
            "b-triangle",
            "--s",
            "3",
        ],
        vec!["check-contraction", "--instance", &data("main_instance.json")],
        vec!["replicate", "MONOTONE_TRIPLED"],
    ] {
        let mut args = args.clone();
        args.extend(["--format", "json"]);
        let o = fprect(&args);
        let text = stdout(&o);
        let reparsed: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string_pretty(&reparsed).unwrap(), text.trim_end());
        // Two runs agree byte for byte.
        assert_eq!(stdout(&fprect(&args)), text);
    }
}

#[test]
fn text_and_json_agree_on_verdicts() {
    let space = data("main_space.json");
    let text = stdout(&fprect(&["verify-space", "--space", &space]));
    let j = json(&fprect(&["verify-space", "--space", &space, "--format", "json"]));
    for r in j["reports"].as_array().unwrap() {
        let axiom = r["axiom"].as_str().unwrap().replace('_', "-");
        let verdict = if r["verdict"].as_bool().unwrap() {
            "PASS"
        } else {
            "FAIL"
        };
        let line = text
            .lines()
            .find(|l| l.starts_with(&format!("{axiom} ")))
            .expect("axiom line");
        assert!(line.contains(verdict), "{line}");
        assert!(line.contains(&format!("({} violations", r["violations"])), "{line}");
    }
}

#[test]
fn input_errors_exit_two_with_diagnostics() {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let bad = dir.join("bad_space.json");
    std::fs::write(
        &bad,
        "{\n  \"points\": [\n    {\"label\": \"a\", \"value\": \"1/0\"}\n  ]\n}\n",
    )
    .unwrap();
    let o = fprect(&["verify-space", "--space", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("points[0].value"));

    let broken = dir.join("broken.json");
    std::fs::write(&broken, "{\n  \"points\": [,]\n}\n").unwrap();
    let o = fprect(&["verify-space", "--space", broken.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(
        String::from_utf8_lossy(&o.stderr).contains("line 2"),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );

    let conflict = dir.join("conflict.json");
    let text = std::fs::read_to_string(data("preset_instance.json")).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["space"] = serde_json::Value::String(data("main_space.json"));
    v["F"] = serde_json::json!({"catalog": "cclass_1"});
    std::fs::write(&conflict, v.to_string()).unwrap();
    assert_eq!(
        fprect(&["check-contraction", "--instance", conflict.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );

    assert_eq!(
        fprect(&["verify-space", "--space", "/nonexistent.json"]).status.code(),
        Some(2)
    );
    assert_eq!(
        fprect(&["verify-space", "--space", &data("main_space.json"), "--s", "x"])
            .status
            .code(),
        Some(2)
    );
}
