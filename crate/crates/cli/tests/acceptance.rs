//! Acceptance criteria, one line each, with pinned sample counts and
//! tolerances. Runs without the libtest harness so the lines always print.

use std::process::{Command, ExitCode};

use tduality::aks::solve_r2;
use tduality::groups::iwasawa_factorize;
use tduality::oracle::{exact_trajectory, rk4_sampled, uniform_grid, vector_field, PhasePoint, SystemId};
use tduality::phase::{R2Params, R2Pt};
use tduality::sampling::random_sl2;
use tduality::verify::{find_property, rk4_order_ratio, run_property, sample_rng};
use tduality::C64;

const SEED: u64 = 20_240_601;

struct Check {
    label: String,
    defect: f64,
    tolerance: f64,
}

impl Check {
    fn passed(&self) -> bool {
        self.defect < self.tolerance
    }
}

/// Runs a named property with a pinned count and tolerance.
fn property(name: &str, samples: usize, tolerance: f64) -> Check {
    let p = find_property(name).unwrap_or_else(|| panic!("unknown property {name}"));
    let r = run_property(p, SEED, Some(samples));
    let defect = if r.error.is_some() { f64::INFINITY } else { r.max_defect };
    Check { label: format!("{name} x{samples}"), defect, tolerance }
}

fn direct(label: &str, defect: f64, tolerance: f64) -> Check {
    Check { label: label.to_string(), defect: if defect.is_nan() { f64::INFINITY } else { defect }, tolerance }
}

fn iwasawa_invariants() -> Check {
    let mut rng = sample_rng(SEED);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let m = random_sl2(&mut rng);
        let Ok((g, b)) = iwasawa_factorize(&m) else { return direct("iwasawa invariants x1000", f64::INFINITY, 1.0) };
        let positive = if b.a > 0.0 { 0.0 } else { f64::INFINITY };
        let det = (g.to_matrix().det() - C64::new(1.0, 0.0)).norm();
        worst = worst.max(g.unitarity_defect()).max(det).max(positive);
    }
    direct("iwasawa invariants x1000", worst, 1e-12)
}

fn toda_checks() -> Vec<Check> {
    let toda = SystemId::R2(R2Params::toda());
    let q0 = -0.5 * std::f64::consts::LN_2;
    let start = PhasePoint::R2(R2Pt::new(q0, 0.0));

    let mut curve: f64 = 0.0;
    for t in uniform_grid(-3.0, 3.0, 600) {
        let pt = solve_r2(&R2Params::toda(), q0, 0.0, t).expect("normalized start");
        curve = curve.max((pt.q - (q0 - t.cosh().ln())).abs()).max((pt.p + t.tanh()).abs());
    }

    let h = 1e-4;
    let mut hamilton: f64 = 0.0;
    let mut energy: f64 = 0.0;
    for t in uniform_grid(0.0, 3.0, 300) {
        let at = |s: f64| solve_r2(&R2Params::toda(), q0, 0.0, s).expect("normalized start");
        let (prev, cur, next) = (at(t - h), at(t), at(t + h));
        let field = vector_field(&toda, &PhasePoint::R2(cur)).expect("toda field");
        let qdot = (next.q - prev.q) / (2.0 * h);
        let pdot = (next.p - prev.p) / (2.0 * h);
        hamilton = hamilton.max((qdot - cur.p).abs()).max((pdot + 2.0 * (2.0 * cur.q).exp()).abs());
        hamilton = hamilton.max((qdot - field[0]).abs()).max((pdot - field[1]).abs());
        energy = energy.max((0.5 * cur.p * cur.p + (2.0 * cur.q).exp() - 0.5).abs());
    }

    let times = uniform_grid(0.0, 3.0, 300);
    let exact = exact_trajectory(&toda, &start, &times).expect("exact toda");
    let rk4 = rk4_sampled(&toda, &start, &times, 1e-3).expect("rk4 toda");
    let mut rk4_dev: f64 = 0.0;
    for (a, b) in exact.samples.iter().zip(&rk4.samples) {
        let (a, b) = (a.state.coords(), b.state.coords());
        rk4_dev = rk4_dev.max((a[0] - b[0]).abs()).max((a[1] - b[1]).abs());
    }

    vec![
        direct("closed curve q = -ln2/2 - ln cosh t, p = -tanh t", curve, 1e-12),
        direct("centered-difference Hamilton residual, h = 1e-4", hamilton, 1e-6),
        direct("RK4 h = 1e-3 vs exact on [0, 3]", rk4_dev, 1e-6),
        direct("energy 1/2 drift", energy, 1e-10),
        property("toda_hamilton_residual", 5, 1e-6),
        property("toda_rk4", 5, 1e-6),
        property("toda_energy", 20, 1e-10),
    ]
}

fn rk4_order() -> Check {
    match rk4_order_ratio() {
        Ok(ratio) => Check {
            label: format!("endpoint error ratio {ratio:.4} in [12, 20]"),
            defect: (ratio - 16.0).abs(),
            tolerance: 4.0 + f64::EPSILON,
        },
        Err(_) => direct("endpoint error ratio", f64::INFINITY, 4.0),
    }
}

fn determinism() -> Check {
    let dir = tempfile::tempdir().expect("temp dir");
    let mut reports = Vec::new();
    for name in ["first.json", "second.json"] {
        let path = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_tduality"))
            .args(["verify", "--seed", "42", "--output"])
            .arg(&path)
            .status()
            .expect("binary runs");
        if !status.success() {
            return direct("verify --seed 42 twice", f64::INFINITY, 0.5);
        }
        reports.push(std::fs::read(&path).expect("report written"));
    }
    let differ = if reports[0] == reports[1] { 0.0 } else { 1.0 };
    direct("verify --seed 42 twice, bytes differ", differ, 0.5)
}

fn main() -> ExitCode {
    let criteria: Vec<(&str, Vec<Check>)> = vec![
        ("Iwasawa round-trip", vec![property("iwasawa_round_trip", 1000, 1e-12), iwasawa_invariants()]),
        (
            "closed-form AKS factors",
            vec![property("closed_form_vs_generic", 200, 1e-11), property("aks_reconstruction", 200, 1e-12)],
        ),
        ("Toda exactness", toda_checks()),
        (
            "equivariance",
            vec![
                property("equivariance_r2", 500, 1e-10),
                property("equivariance_tb", 500, 1e-10),
                property("equivariance_tsu2", 500, 1e-10),
            ],
        ),
        ("T-duality agreement", vec![property("tduality_agreement", 50, 1e-9)]),
        (
            "Lax and coadjoint consistency",
            vec![property("lax_residual", 200, 1e-6), property("b_factor_ode", 200, 1e-6)],
        ),
        (
            "T*SU(2) reduction",
            vec![
                property("arg_beta_drift", 50, 1e-10),
                property("pi_hat_constraint", 50, 1e-8),
                property("reduced_hamilton", 50, 1e-6),
            ],
        ),
        (
            "Lagrangian identities",
            vec![
                property("lagrangian_tb_forms", 500, 1e-12),
                property("legendre_r2", 50, 1e-8),
                property("legendre_tb", 50, 1e-8),
                property("legendre_tsu2", 50, 1e-8),
            ],
        ),
        ("RK4 order", vec![rk4_order()]),
        ("determinism", vec![determinism()]),
    ];

    let mut failed = 0;
    for (index, (name, checks)) in criteria.iter().enumerate() {
        let ok = checks.iter().all(Check::passed);
        if !ok {
            failed += 1;
        }
        println!("criterion {:>2} {} {name}", index + 1, if ok { "PASS" } else { "FAIL" });
        for c in checks {
            println!(
                "    {} {}: defect {:.3e} < {:.0e}",
                if c.passed() { "ok  " } else { "FAIL" },
                c.label,
                c.defect,
                c.tolerance
            );
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
