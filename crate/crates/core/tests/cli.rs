use std::path::Path;
use std::process::{Command, Output};
use std::time::Instant;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unruh-cv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data_lines(text: &str) -> Vec<&str> {
    text.lines().filter(|l| !l.starts_with('#')).collect()
}

fn column(text: &str, name: &str) -> Vec<String> {
    let lines = data_lines(text);
    let k = lines[0]
        .split(',')
        .position(|c| c == name)
        .expect("column present");
    lines[1..]
        .iter()
        .map(|l| l.split(',').nth(k).unwrap().to_owned())
        .collect()
}

#[test]
fn point_single_reports_inertial_values() {
    let o = run(&[
        "point", "single", "--s", "1", "--r", "0", "--format", "json",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert!((v["tau_AR"].as_f64().unwrap() - 4.0).abs() < 1e-12);
    assert_eq!(v["residual_tripartite"].as_f64().unwrap(), 0.0);
    assert_eq!(v["tau_max"], "inf");

    let text = stdout(&run(&["point", "single", "--s", "2", "--r", "0.5"]));
    let line = text.lines().find(|l| l.starts_with("tau_max")).unwrap();
    let t: f64 = line.split_whitespace().nth(1).unwrap().parse().unwrap();
    assert!((7.85..8.0).contains(&t));
}

#[test]
fn point_double_four_partite_benchmark() {
    let o = run(&[
        "point", "double", "--s", "2", "--a", "7", "--format", "json",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert!((v["residual_multipartite"].as_f64().unwrap() - 81.2).abs() < 0.05);
}

#[test]
fn point_accepts_kinematic_parameters() {
    let o = run(&[
        "point",
        "single",
        "--s",
        "1",
        "--aleph",
        "6.283185307179586",
        "--omega",
        "1",
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    let r = v["r"].as_f64().unwrap();
    assert!((r.tanh() - (-0.5f64).exp()).abs() < 1e-12);
}

#[test]
fn sweep_rows_and_monotone_column() {
    let o = run(&[
        "sweep",
        "--scenario",
        "single",
        "--axis",
        "r=0:3:13",
        "--fix",
        "s=1",
        "--quantity",
        "tau_AR",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(data_lines(&text).len(), 14);
    let tau: Vec<f64> = column(&text, "tau_AR")
        .iter()
        .map(|v| v.parse().unwrap())
        .collect();
    assert!(tau.windows(2).all(|w| w[1] <= w[0]));
}

#[test]
fn two_axis_sweep_cardinality() {
    let o = run(&[
        "sweep",
        "--scenario",
        "double",
        "--axis",
        "s=0.5:3:6",
        "--axis",
        "a=0:3:7",
    ]);
    assert!(o.status.success());
    assert_eq!(data_lines(&stdout(&o)).len(), 1 + 6 * 7);
}

#[test]
fn frequency_sweep_flips_on_diagonal() {
    let o = run(&[
        "sweep",
        "--scenario",
        "frequency",
        "--axis",
        "lambda=0.6931,0.6932",
        "--fix",
        "nu=0.6931471805599453",
        "--fix",
        "aleph=6.283185307179586",
        "--quantity",
        "separable",
    ]);
    assert!(o.status.success());
    assert_eq!(column(&stdout(&o), "separable"), vec!["true", "false"]);
}

#[test]
fn sweep_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for (p, threads) in [(&a, "1"), (&b, "4")] {
        let o = run(&[
            "sweep",
            "--scenario",
            "double",
            "--axis",
            "s=0:3:9",
            "--axis",
            "a=0:3:9",
            "--threads",
            threads,
            "--out",
            p.to_str().unwrap(),
        ]);
        assert!(o.status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn json_lines_round_trip() {
    let o = run(&[
        "sweep",
        "--scenario",
        "single",
        "--axis",
        "r=0:2:5",
        "--axis",
        "s=0,1",
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with('#'));
    let rows = data_lines(&text);
    assert_eq!(rows.len(), 10);
    for line in rows {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(serde_json::to_string(&v).unwrap(), line);
    }
}

#[test]
fn figure_writes_data_and_script() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    for id in ["fig3", "fig6", "fig7", "fig10"] {
        let o = run(&["figure", id, "--quick", "--plot-script", "--out", out]);
        assert!(o.status.success(), "{id}");
    }
    for f in [
        "fig3.csv",
        "fig3.gp",
        "fig6_a.csv",
        "fig6_b.csv",
        "fig7.csv",
        "fig10.csv",
    ] {
        assert!(dir.path().join(f).exists(), "{f}");
    }
    let script = std::fs::read_to_string(dir.path().join("fig3.gp")).unwrap();
    assert!(script.contains("'fig3.csv'"));
    let text = std::fs::read_to_string(dir.path().join("fig10.csv")).unwrap();
    for v in column(&text, "deficit") {
        assert!(v.parse::<f64>().unwrap() <= 1.0 + 1e-9);
    }
    let text = std::fs::read_to_string(dir.path().join("fig3.csv")).unwrap();
    assert!(column(&text, "tau_AR_normalized").contains(&"NaN".to_owned()));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["figure", "fig1"]).status.code(), Some(2));
    assert_eq!(
        run(&["point", "single", "--s", "-1", "--r", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&[
            "sweep",
            "--scenario",
            "single",
            "--axis",
            "r=0:1:1",
            "--fix",
            "s=1"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    let missing = Path::new("/nonexistent-dir/out.csv");
    let o = run(&[
        "sweep",
        "--scenario",
        "single",
        "--axis",
        "r=0:1:3",
        "--fix",
        "s=1",
        "--out",
        missing.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn selftest_passes_and_fails_on_impossible_tolerance() {
    let start = Instant::now();
    let o = run(&["selftest", "--quick"]);
    assert!(start.elapsed().as_secs_f64() < 5.0);
    assert!(o.status.success(), "{}", stdout(&o));
    assert_eq!(
        run(&["selftest", "--quick", "--tol", "1e-16"])
            .status
            .code(),
        Some(5)
    );
    assert!(run(&["selftest"]).status.success());
}
