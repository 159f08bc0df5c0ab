use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_bunch-surface");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(BIN)
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn write_example(dir: &Path, name: &str) -> String {
    let out = run(&["generate", "--example", name]);
    assert!(out.status.success());
    let path = dir.join(format!("{name}.json"));
    std::fs::write(&path, &out.stdout).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn validate_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let f1 = write_example(dir.path(), "f1");
    let out = run(&["validate", &f1]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["valid"], true);

    let attractors_only = dir.path().join("attractors-only.json");
    std::fs::write(
        &attractors_only,
        r#"{"basic_sets":[{"id":"A1","kind":"attractor","bunches":[{"id":"a","degree":2}]},
                          {"id":"A2","kind":"attractor","bunches":[{"id":"b","degree":2}]}],
            "complement_components":[{"id":"V1","attractor_bunch":"a","repeller_bunch":"b"}]}"#,
    )
    .unwrap();
    let out = run(&["validate", attractors_only.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let report = json(&out);
    assert_eq!(report["valid"], false);
    let codes: Vec<&str> = report["violations"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v["rule_code"].as_str().unwrap())
        .collect();
    assert!(codes.contains(&"V1"), "{codes:?}");

    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "not json at all").unwrap();
    let out = run(&["validate", garbage.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}

#[test]
fn decompose_named_examples() {
    let dir = tempfile::tempdir().unwrap();
    for (name, genus, tori) in [("f1", 3, 0), ("f2", 3, 1), ("pretzel", 2, 0)] {
        let path = write_example(dir.path(), name);
        let out = run(&["decompose", &path]);
        assert_eq!(out.status.code(), Some(0));
        let d = json(&out);
        assert_eq!(d["total_genus"], genus, "{name}");
        assert_eq!(d["torus_count"], tori, "{name}");
        assert!(d.get("trace").is_none());
    }
}

#[test]
fn decompose_trace_and_dot() {
    let dir = tempfile::tempdir().unwrap();
    let f2 = write_example(dir.path(), "f2");
    let out = run_in(dir.path(), &["decompose", &f2, "--trace", "--dot", "pairing.dot"]);
    assert_eq!(out.status.code(), Some(0));
    let d = json(&out);
    let steps: Vec<&str> = d["trace"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["step"].as_str().unwrap())
        .collect();
    assert_eq!(steps, ["torus_summand", "split"]);
    let dot = std::fs::read_to_string(dir.path().join("pairing.dot")).unwrap();
    assert!(dot.starts_with("graph pairing {"));
    assert_eq!(dot.matches(" -- ").count(), 2);
}

#[test]
fn stability_commands() {
    let dir = tempfile::tempdir().unwrap();
    let f1 = write_example(dir.path(), "f1");
    let v = json(&run(&["stability", &f1]));
    assert_eq!(v["omega_stable"], true);
    let f2 = write_example(dir.path(), "f2");
    let out = run_in(dir.path(), &["stability", &f2, "--dot", "prec.dot"]);
    assert_eq!(json(&out)["structurally_stable"], false);
    assert!(std::fs::read_to_string(dir.path().join("prec.dot"))
        .unwrap()
        .starts_with("digraph prec {"));

    let invalid = dir.path().join("invalid.json");
    std::fs::write(
        &invalid,
        r#"{"basic_sets":[{"id":"A1","kind":"attractor","bunches":[{"id":"a","degree":1}]},
                          {"id":"R1","kind":"repeller","bunches":[{"id":"r","degree":1}]}],
            "complement_components":[{"id":"V1","attractor_bunch":"a","repeller_bunch":"r"}]}"#,
    )
    .unwrap();
    let out = run(&["stability", invalid.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["valid"], false);
    assert_eq!(run(&["decompose", invalid.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn generate_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["generate", "--genus", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let g4 = dir.path().join("g4.json");
    std::fs::write(&g4, &out.stdout).unwrap();
    let g4 = g4.to_str().unwrap();
    assert_eq!(run(&["validate", g4]).status.code(), Some(0));
    assert_eq!(json(&run(&["decompose", g4]))["total_genus"], 4);
    assert_eq!(json(&run(&["stability", g4]))["omega_stable"], true);

    let out = run(&["generate", "--genus", "1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());

    let out = run(&["generate", "--random", "--seed", "42"]);
    assert_eq!(out.status.code(), Some(0));
    let r = dir.path().join("r.json");
    std::fs::write(&r, &out.stdout).unwrap();
    assert_eq!(run(&["validate", r.to_str().unwrap()]).status.code(), Some(0));

    // exactly one mode
    assert_eq!(run(&["generate"]).status.code(), Some(3));
    assert_eq!(
        run(&["generate", "--genus", "3", "--random", "--seed", "1"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        run(&["generate", "--random", "--seed", "1", "--max-degree", "1"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn generate_example_f1_content() {
    let spec = json(&run(&["generate", "--example", "f1"]));
    let sets = spec["basic_sets"].as_array().unwrap();
    assert_eq!(sets.len(), 3);
    assert_eq!(spec["complement_components"].as_array().unwrap().len(), 2);
}

#[test]
fn simulate_census_and_svg() {
    let out = run(&["simulate"]);
    assert_eq!(out.status.code(), Some(0));
    let census = json(&out);
    let kinds: Vec<&str> = census["fixed_points"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["kind"].as_str().unwrap())
        .collect();
    assert_eq!(kinds.len(), 3);
    assert_eq!(kinds.iter().filter(|k| **k == "saddle").count(), 2);
    assert_eq!(kinds.iter().filter(|k| **k == "source").count(), 1);

    let flat = json(&run(&["simulate", "--k", "0"]));
    let fps = flat["fixed_points"].as_array().unwrap();
    assert_eq!(fps.len(), 1);
    assert_eq!(fps[0]["kind"], "saddle");

    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &[
            "simulate",
            "--samples",
            "2000",
            "--out-svg",
            "portrait.svg",
            "--out-census",
            "census.json",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let svg = std::fs::read_to_string(dir.path().join("portrait.svg")).unwrap();
    assert!(svg.starts_with("<?xml"));
    assert!(svg.contains(r#"version="1.1""#));
    assert!(svg.trim_end().ends_with("</svg>"));
    assert_eq!(svg.matches(r#"class="fixed-point"#).count(), 3);
    let census: Value = serde_json::from_slice(&std::fs::read(dir.path().join("census.json")).unwrap()).unwrap();
    assert_eq!(census["fixed_points"].as_array().unwrap().len(), 3);
}

#[test]
fn simulate_bad_ranges_exit_3() {
    for args in [
        &["simulate", "--grid", "10"][..],
        &["simulate", "--r0", "0"],
        &["simulate", "--r0", "0.5"],
        &["simulate", "--transient", "99"],
        &["simulate", "--newton-tol", "0"],
        &["simulate", "--k", "nan"],
        &["simulate", "--k", "50"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(3), "{args:?}");
        assert!(out.stdout.is_empty());
    }
    let out = run(&["simulate", "--out-svg", "/nonexistent-dir/p.svg", "--samples", "10"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn help_goes_to_stdout() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    for cmd in ["validate", "decompose", "stability", "generate", "simulate"] {
        assert!(String::from_utf8_lossy(&out.stdout).contains(cmd));
    }
    assert_eq!(run(&["bogus"]).status.code(), Some(3));
}
