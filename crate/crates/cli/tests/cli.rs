use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_supervar"));
    c.env_remove("SUPERVAR_PRIME");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn supervar")
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("supervar-cli-{}-{name}", std::process::id()));
    let _ = fs::remove_dir_all(&d);
    fs::create_dir_all(&d).unwrap();
    d
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn build_and_validate() {
    let o = run(&["build", "--family", "gl", "--m", "1", "--n", "1"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["parity"], serde_json::json!([0, 0, 1, 1]));
    assert_eq!(v["reference"], "GL(1,1)");
    let o = run(&["validate", "--algebra", "OSP(3,2)"]);
    assert!(o.status.success());
    assert_eq!(json(&o)["ok"], true);
}

#[test]
fn invalid_parameters_fail_with_code_one() {
    let o = run(&["build", "--family", "gl", "--m", "0", "--n", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["tables", "--table", "2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn table_three_matches() {
    let o = run(&["tables", "--table", "3", "--max-size", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("MATCH"));
    assert!(!s.contains("MISMATCH"));
}

#[test]
fn table_one_row_for_gl22() {
    let o = run(&[
        "tables",
        "--table",
        "1",
        "--family",
        "gl",
        "--m",
        "2",
        "--n",
        "2",
        "--max-degree",
        "8",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("[1, 0, 1, 0, 2, 0, 2, 0, 3]"));
}

#[test]
fn table_four_psl() {
    let d = scratch("t4");
    let o = run(&[
        "tables",
        "--table",
        "4",
        "--family",
        "psl",
        "--n",
        "2",
        "--out",
        d.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(d.join("table4.json")).unwrap()).unwrap();
    assert_eq!(v["rows"][0]["computed"], 1);
    assert_eq!(v["rows"][0]["status"], "MATCH");
    assert!(d.join("table4.txt").exists());
}

#[test]
fn invariants_report_shape() {
    let o = run(&[
        "invariants",
        "--family",
        "sl",
        "--m",
        "2",
        "--n",
        "1",
        "--max-degree",
        "4",
    ]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["computed"], serde_json::json!([1, 0, 1, 0, 1]));
    assert_eq!(v["match"], true);
    assert_eq!(v["D"], 4);
}

#[test]
fn prime_from_environment() {
    let a = bin()
        .args([
            "invariants",
            "--family",
            "gl",
            "--m",
            "1",
            "--n",
            "2",
            "--max-degree",
            "4",
        ])
        .env("SUPERVAR_PRIME", "1000003")
        .output()
        .unwrap();
    assert!(a.status.success());
    let bad = bin()
        .args(["invariants", "--family", "gl", "--m", "1", "--n", "1"])
        .env("SUPERVAR_PRIME", "12")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn module_files_round_trip_through_commands() {
    let d = scratch("module");
    let m = d.join("nat.json");
    let o = run(&[
        "module",
        "make",
        "--family",
        "gl",
        "--m",
        "2",
        "--n",
        "1",
        "--kind",
        "natural",
        "--out",
        m.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let o = run(&["module", "validate", "--file", m.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(json(&o)["ok"], true);
    let o = run(&[
        "cohom",
        "--family",
        "gl",
        "--m",
        "2",
        "--n",
        "1",
        "--coeff",
        m.to_str().unwrap(),
        "--max-degree",
        "4",
    ]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["cohomology"]["d_squared_zero"], true);
    assert_eq!(
        v["cohomology"]["dims"]["dims"],
        serde_json::json!([0, 0, 0, 0, 0])
    );

    // a broken action is reported, not accepted
    let mut j: serde_json::Value = serde_json::from_str(&fs::read_to_string(&m).unwrap()).unwrap();
    j["action"][0][3] = serde_json::json!("5");
    let bad = d.join("bad.json");
    fs::write(&bad, j.to_string()).unwrap();
    let o = run(&["module", "validate", "--file", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["ok"], false);
}

#[test]
fn cohom_over_e_reports_ideal() {
    let o = run(&[
        "cohom",
        "--family",
        "gl",
        "--m",
        "1",
        "--n",
        "1",
        "--pair",
        "e",
        "--max-degree",
        "4",
    ]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["algebra"], "E[GL(1,1)]");
    assert_eq!(
        v["cohomology"]["dims"]["dims"],
        serde_json::json!([1, 1, 1, 1, 1])
    );
    assert!(v["ideal"]["graded"].as_array().unwrap().is_empty());
}

#[test]
fn pipeline_gl11_writes_six_artifacts() {
    let d = scratch("pipe-gl");
    let o = run(&[
        "pipeline",
        "--family",
        "gl",
        "--m",
        "1",
        "--n",
        "1",
        "--out",
        d.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let man: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(d.join("manifest.json")).unwrap()).unwrap();
    let stages = man["stages"].as_array().unwrap();
    assert_eq!(stages.len(), 6);
    for s in stages {
        assert!(d.join(s["artifact"].as_str().unwrap()).exists());
    }
}

#[test]
fn pipeline_psl_skips_polar_stages() {
    let d = scratch("pipe-psl");
    let o = run(&[
        "pipeline",
        "--family",
        "psl",
        "--n",
        "2",
        "--out",
        d.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let man: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(d.join("manifest.json")).unwrap()).unwrap();
    let names: Vec<&str> = man["stages"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["stage"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["invariants", "detect"]);
}

#[test]
fn pipeline_invalid_params_fail_at_build() {
    let d = scratch("pipe-bad");
    let o = run(&[
        "pipeline",
        "--family",
        "osp",
        "--m",
        "2",
        "--n",
        "3",
        "--out",
        d.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("stage build"));
}

fn dir_bytes(d: &Path) -> Vec<(String, Vec<u8>)> {
    let mut v: Vec<(String, Vec<u8>)> = fs::read_dir(d)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (
                e.file_name().to_string_lossy().into_owned(),
                fs::read(e.path()).unwrap(),
            )
        })
        .collect();
    v.sort();
    v
}

#[test]
fn every_command_is_deterministic() {
    let d = scratch("det");
    let module = d.join("reg.json");
    assert!(run(&[
        "module",
        "make",
        "--family",
        "gl",
        "--m",
        "1",
        "--n",
        "1",
        "--pair",
        "e",
        "--kind",
        "regular",
        "--out",
        module.to_str().unwrap()
    ])
    .status
    .success());
    let m = module.to_str().unwrap();
    let stdout_cmds: Vec<Vec<&str>> = vec![
        vec!["build", "--family", "osp", "--m", "3", "--n", "2"],
        vec!["validate", "--family", "q", "--n", "3"],
        vec![
            "invariants",
            "--family",
            "gl",
            "--m",
            "2",
            "--n",
            "1",
            "--max-degree",
            "5",
        ],
        vec!["detect", "--family", "gl", "--m", "2", "--n", "2"],
        vec![
            "cohom",
            "--family",
            "gl",
            "--m",
            "1",
            "--n",
            "1",
            "--pair",
            "e",
            "--coeff",
            m,
            "--max-degree",
            "4",
        ],
        vec!["module", "validate", "--file", m],
        vec![
            "module", "make", "--family", "gl", "--m", "2", "--n", "2", "--kind", "adjoint",
        ],
        vec![
            "rankvar",
            "--family",
            "gl",
            "--m",
            "2",
            "--n",
            "2",
            "--samples",
            "4",
            "--seed",
            "17",
        ],
        vec!["rankvar", "--module", m, "--samples", "6", "--seed", "3"],
        vec![
            "atyp", "--family", "gl", "--m", "2", "--n", "2", "--lambda", "1,0,0,-1",
        ],
        vec!["tables", "--table", "3", "--max-size", "4"],
    ];
    for args in &stdout_cmds {
        let a = run(args);
        let b = run(args);
        assert!(
            a.status.success(),
            "{args:?}: {}",
            String::from_utf8_lossy(&a.stderr)
        );
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let (p1, p2) = (d.join("p1"), d.join("p2"));
    for p in [&p1, &p2] {
        let o = run(&[
            "pipeline",
            "--family",
            "gl",
            "--m",
            "2",
            "--n",
            "1",
            "--seed",
            "5",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert!(o.status.success());
    }
    assert_eq!(dir_bytes(&p1), dir_bytes(&p2));
    let (t1, t2) = (d.join("t1"), d.join("t2"));
    for t in [&t1, &t2] {
        assert!(run(&[
            "tables",
            "--table",
            "4",
            "--max-size",
            "4",
            "--out",
            t.to_str().unwrap()
        ])
        .status
        .success());
    }
    assert_eq!(dir_bytes(&t1), dir_bytes(&t2));
}

#[test]
fn seeds_change_samples() {
    let a = run(&[
        "rankvar",
        "--family",
        "gl",
        "--m",
        "1",
        "--n",
        "1",
        "--samples",
        "4",
        "--seed",
        "1",
    ]);
    let b = run(&[
        "rankvar",
        "--family",
        "gl",
        "--m",
        "1",
        "--n",
        "1",
        "--samples",
        "4",
        "--seed",
        "2",
    ]);
    assert_ne!(a.stdout, b.stdout);
}
