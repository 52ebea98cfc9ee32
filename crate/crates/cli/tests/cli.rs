use std::process::{Command, Output};

use tduality::oracle::{residual_report, Method, SystemId};
use tduality::phase::{momentum_tb, momentum_tsu2, R2Params, TBPt, TSU2Pt};
use tduality::{BCov, BEl, SU2El, Su2Cov, C64};
use tduality_cli::output::read_csv;

fn tduality(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tduality")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn column(csv: &str, name: &str) -> Vec<f64> {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let k = header.iter().position(|h| *h == name).unwrap();
    lines.map(|l| l.split(',').nth(k).unwrap().parse().unwrap()).collect()
}

fn list(v: &[f64]) -> String {
    v.iter().map(|x| format!("{x:.17e}")).collect::<Vec<_>>().join(",")
}

#[test]
fn toda_exact_and_rk4_agree() {
    let out = tduality(&[
        "simulate", "--system", "toda", "--q0", "-0.3466", "--p0", "0", "--t-end", "2", "--samples", "200", "--method",
        "both",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let dev = column(&text, "deviation");
    assert_eq!(dev.len(), 200);
    assert!(dev.iter().all(|d| *d < 1e-6));
    let t = column(&text, "t");
    assert_eq!((t[0], t[199]), (0.0, 2.0));
}

#[test]
fn orbit_fixed_point_stays_put() {
    let out = tduality(&["simulate", "--system", "orbit", "--x0", "0,0,1", "--t-end", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("t,j1,j2,j3,energy\n"));
    for (name, value) in [("j1", 0.0), ("j2", 0.0), ("j3", 1.0), ("energy", 0.5)] {
        let col = column(&text, name);
        assert_eq!(col.len(), 101);
        assert!(col.iter().all(|x| *x == value), "{name}");
    }
}

#[test]
fn unnormalized_toda_start_is_rejected() {
    let out = tduality(&["simulate", "--system", "toda", "--q0", "0", "--p0", "0"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("p0^2 + 2 exp(2 q0) = 1"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn parse_errors_exit_with_two() {
    for args in [
        &["simulate", "--system", "toda", "--q0", "x", "--p0", "0"][..],
        &["simulate", "--system", "nowhere"],
        &["simulate", "--system", "tb", "--bel", "1,0"],
        &["simulate", "--system", "toda", "--q0", "0"],
        &["factorize", "--matrix", "2,0,0,1"],
        &["factorize", "--matrix", "1,2,3"],
        &["verify", "--suite", "nonsense"],
        &["bogus"],
    ] {
        assert_eq!(tduality(args).status.code(), Some(2), "{args:?}");
    }
    assert_eq!(tduality(&["--help"]).status.code(), Some(0));
}

#[test]
fn factorize_matrix_and_curve() {
    let out = tduality(&["factorize", "--matrix", "1,0,0,1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("a = 1.0000000000000000e0\n"));
    assert!(text.contains("b = 0.0000000000000000e0\n"));

    let out = tduality(&["factorize", "--matrix", "1,0,1,1", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let s = 0.5f64.sqrt();
    assert!((doc["a"].as_f64().unwrap() - 2.0f64.sqrt()).abs() < 1e-15);
    assert!((doc["b"].as_f64().unwrap() - s).abs() < 1e-15);
    assert!((doc["alpha"][0].as_f64().unwrap() - s).abs() < 1e-15);
    assert!((doc["beta"][0].as_f64().unwrap() + s).abs() < 1e-15);

    let out = tduality(&["factorize", "--curve", "--x", "1,0,0", "--t", "1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["path"], "closed_form");
    assert!((doc["alpha"][0].as_f64().unwrap() - 0.5f64.cosh() / 1.0f64.cosh().sqrt()).abs() < 1e-14);
    assert!((doc["beta"][0].as_f64().unwrap() - 0.5f64.sinh() / 1.0f64.cosh().sqrt()).abs() < 1e-14);
    assert!(doc["closed_form_vs_generic"].as_f64().unwrap() < 1e-11);
    assert!(doc["reconstruction_error"].as_f64().unwrap() < 1e-12);
}

#[test]
fn every_system_simulates_and_round_trips() {
    let bel = BEl::new(1.1, 0.4, -0.3).unwrap();
    let eta = BCov::new(0.2, 0.4, -0.5);
    let scale = 1.0 / momentum_tb(&TBPt { bel, eta }).det().sqrt();
    let tb_eta = [eta.ce * scale, eta.cet * scale, eta.ch * scale];

    let g = SU2El::new(C64::new(0.6, 0.0), C64::new(0.0, 0.8)).unwrap();
    let eta = Su2Cov::new(0.3, -0.2, 1.0);
    let scale = 1.0 / momentum_tsu2(&TSU2Pt { g, eta }).det().sqrt();
    let tsu2_eta = [eta.c1 * scale, eta.c2 * scale, eta.c3 * scale];

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("traj.csv");
    let path = path.to_str().unwrap();
    let cases: Vec<(Vec<String>, &str)> = vec![
        (
            ["--system", "r2", "--mu", "0.8", "--eps", "-1.5", "--theta", "0.7", "--q0", "-0.3", "--p0"]
                .iter()
                .map(|s| s.to_string())
                .chain([format!("{:.17e}", 2.0 * 0.8 * (1.0 - (1.5f64 * (2.0f64 * 0.8 * -0.3).exp()).powi(2)).sqrt())])
                .collect(),
            "r2",
        ),
        (
            vec!["--system".into(), "tb".into(), "--bel".into(), "1.1,0.4,-0.3".into(), "--eta".into(), list(&tb_eta)],
            "tb",
        ),
        (
            vec![
                "--system".into(),
                "tsu2".into(),
                "--alpha".into(),
                "0.6,0".into(),
                "--beta".into(),
                "0,0.8".into(),
                "--eta".into(),
                list(&tsu2_eta),
            ],
            "tsu2",
        ),
        (vec!["--system".into(), "orbit".into(), "--x0".into(), "0.6,0,0.8".into()], "orbit"),
    ];
    for (flags, name) in cases {
        let mut args = vec!["simulate".to_string()];
        args.extend(flags);
        args.extend(["--t-end", "-1.5", "--samples", "61", "--method", "both", "--output", path].map(String::from));
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = tduality(&argv);
        assert_eq!(out.status.code(), Some(0), "{name}: {}", String::from_utf8_lossy(&out.stderr));
        let text = std::fs::read_to_string(path).unwrap();
        assert!(column(&text, "deviation").iter().all(|d| *d < 1e-6), "{name}");
        let t = column(&text, "t");
        assert_eq!((t[0], t[60]), (-1.5, 0.0));

        let system = match name {
            "r2" => SystemId::R2(R2Params::new(0.8, -1.5, 0.7).unwrap()),
            "tb" => SystemId::TB,
            "tsu2" => SystemId::TSU2 { theta: 0.0 },
            _ => SystemId::Orbit { theta: 0.0 },
        };
        let traj = read_csv(&system, Method::Rk4, text.as_bytes()).unwrap();
        let report = residual_report(&traj, &system).unwrap();
        assert!(report.max_lax_residual < 1e-3, "{name}: {report:?}");
        assert!(report.max_energy_drift < 1e-9, "{name}: {report:?}");
    }
}

#[test]
fn json_output_mirrors_csv() {
    let base = ["simulate", "--system", "toda", "--q0", "-0.3466", "--p0", "0", "--samples", "5"];
    let csv = stdout(&tduality(&base));
    let mut json_args = base.to_vec();
    json_args.extend(["--format", "json"]);
    let doc: serde_json::Value = serde_json::from_slice(&tduality(&json_args).stdout).unwrap();
    assert_eq!(doc["system"], "toda");
    assert_eq!(doc["method"], "exact");
    let q = column(&csv, "q");
    let samples = doc["samples"].as_array().unwrap();
    assert_eq!(samples.len(), 5);
    for (s, q) in samples.iter().zip(q) {
        assert_eq!(s["q"].as_f64().unwrap(), q);
    }
}

#[test]
fn simulate_writes_a_residual_report() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let out = tduality(&[
        "simulate",
        "--system",
        "toda",
        "--q0",
        "-0.34657359027997264",
        "--p0",
        "0",
        "--t-end",
        "3",
        "--samples",
        "30001",
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&std::fs::read(&report).unwrap()).unwrap();
    assert!(doc["max_hamilton_residual"].as_f64().unwrap() < 1e-6);
    assert!(doc["max_energy_drift"].as_f64().unwrap() < 1e-10);
}

#[test]
fn verify_reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let out = tduality(&["verify", "--seed", "42", "--samples", "5", "--output", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let (a, b) = (std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
    assert_eq!(a, b);
    let doc: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["seed"], 42);
}

#[test]
fn verify_tduality_suite() {
    let out = tduality(&["verify", "--suite", "tduality", "--samples", "100"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let props = doc["properties"].as_array().unwrap();
    assert!(!props.is_empty());
    for p in props {
        assert_eq!(p["suite"], "tduality");
        assert_eq!(p["samples"], 100);
    }
    let agreement = props.iter().find(|p| p["name"] == "tduality_agreement").unwrap();
    assert!(agreement["max_defect"].as_f64().unwrap() < 1e-9);
}
