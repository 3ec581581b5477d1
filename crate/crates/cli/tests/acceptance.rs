//! The ten acceptance criteria, one line each. Exits non-zero when any fails.

use std::process::Command;
use std::time::{Duration, Instant};

use desitter_core::algebra::{self, Representation};
use desitter_core::desitter::{self, DeSitter};
use desitter_core::komar::{self, QuadratureSpec, SpacetimeModel, Surface};
use desitter_core::suites::{run_suite, Suite, SuiteConfig};
use desitter_core::{rng, CheckReport, Result, Status};
use num_rational::Rational64;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

/// Pass iff every named report exists and passed; the detail lists the failures.
fn require(reports: &[CheckReport], names: &[&str]) -> Outcome {
    let mut bad = Vec::new();
    for n in names {
        match reports.iter().find(|r| r.name == *n) {
            Some(r) if r.status == Status::Pass => {}
            Some(r) => bad.push(format!("{} residual {:.3e} > {:.0e}", r.name, r.residual, r.tolerance)),
            None => bad.push(format!("{n} missing")),
        }
    }
    if bad.is_empty() {
        outcome(true, format!("{} checks within tolerance", names.len()))
    } else {
        outcome(false, bad.join("; "))
    }
}

fn within(elapsed: Duration, limit: f64) -> (bool, String) {
    let s = elapsed.as_secs_f64();
    (s < limit, format!("{s:.2} s of {limit} s"))
}

fn komar_mass() -> Result<Outcome> {
    let start = Instant::now();
    let model = SpacetimeModel::schwarzschild(1.0);
    let quad = QuadratureSpec::new(64)?;
    let e10 = komar::komar_surface_energy(&model, &Surface::SchwarzschildSphere { t: 0.0, r: 10.0 }, quad)?.energy;
    let e20 = komar::komar_surface_energy(&model, &Surface::SchwarzschildSphere { t: 0.0, r: 20.0 }, quad)?.energy;
    let (fast, time) = within(start.elapsed(), 5.0);
    let (d1, d2) = ((e10 - 1.0).abs(), (e10 - e20).abs());
    Ok(outcome(d1 < 1e-6 && d2 < 1e-6 && fast, format!("|E(10) - 1| = {d1:.2e}, |E(10) - E(20)| = {d2:.2e}, {time}")))
}

fn killing_determinant() -> Result<Outcome> {
    let start = Instant::now();
    let ds = DeSitter::new(1.0)?;
    let rows = desitter::det_map(&ds, (-3.0, 3.0), (-3.0, 3.0), 121, 121)?;
    let (reduced, factorised) = desitter::det_map_gaps(&rows);
    let roots = desitter::det_zero_loci(&ds, 3.0, 121)?;
    let errs = desitter::root_errors(&roots, &[4.0, -2.0, -4.0]);
    let root_err = errs.iter().fold(0.0f64, |m, e| m.max(*e));
    let (fast, time) = within(start.elapsed(), 2.0);
    let found: Vec<String> = roots.iter().map(|r| format!("{:.6}", r.sigma2)).collect();
    Ok(outcome(
        reduced < 1e-12 && root_err < 1e-10 && fast,
        format!(
            "max |det - reduced form| = {reduced:.3e} (factorised form {factorised:.1e}), zeros at sigma2 = [{}], root error {root_err:.1e}, {time}",
            found.join(", ")
        ),
    ))
}

fn structure() -> Result<Outcome> {
    let start = Instant::now();
    let table = algebra::commutator_table();
    let matching = table.iter().filter(|r| r.exact_match).count();
    let q = Rational64::from_integer;
    let translations_ok = [q(1), q(2), q(3)].iter().all(|l| algebra::translation_brackets(*l).iter().all(|r| r.exact_match));
    let casimirs_ok = [Representation::Defining, Representation::Adjoint]
        .iter()
        .all(|rep| [q(1), q(10), q(100)].iter().all(|l| {
            let c = algebra::casimir_check(*rep, *l);
            c.i1_central && c.i2_central
        }));
    let c = algebra::contraction_scaling(&[q(1), q(10), q(100)]);
    let contraction_ok = c.inverse_square_exact && c.consecutive_exact && c.rotations_ell_independent;
    let (fast, time) = within(start.elapsed(), 1.0);
    Ok(outcome(
        matching == 45 && translations_ok && casimirs_ok && contraction_ok && fast,
        format!(
            "{matching}/45 commutators match the table, translation brackets {}, Casimirs central {}, contraction exact {}, {time}",
            translations_ok, casimirs_ok, contraction_ok
        ),
    ))
}

fn pushforward() -> Result<Outcome> {
    let mut worst = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for (k, ell) in [1.0, 3.0].into_iter().enumerate() {
        let ds = DeSitter::new(ell)?;
        let pts = rng::desitter_points(500 + k as u64, 50, ell, 0.8, 2.0);
        let r = algebra::appendix_pushforward_check(&ds, &pts)?;
        worst = (worst.0.max(r.rotations), worst.1.max(r.boosts), worst.2.max(r.tangency), worst.3.max(r.boosts_opposite_x_mu));
    }
    let pass = worst.0 < 1e-10 && worst.1 < 1e-10 && worst.2 < 1e-10;
    Ok(outcome(
        pass,
        format!(
            "rotations {:.1e}, boosts {:.3e}, tangency {:.1e}; boosts with X_mu sign reversed {:.1e}",
            worst.0, worst.1, worst.2, worst.3
        ),
    ))
}

fn quick_suite(s: Suite) -> Vec<CheckReport> {
    run_suite(s, &SuiteConfig::default())
}

fn clifford() -> Result<Outcome> {
    Ok(require(
        &quick_suite(Suite::Clifford),
        &[
            "generator-relation",
            "associativity",
            "decomposition-contraction",
            "decomposition-wedge",
            "contraction-of-wedge",
            "contraction-composition",
            "reversion-signs",
            "hodge-roundtrip",
            "hodge-roundtrip-basis",
            "hodge-wedge-symmetry",
            "hodge-dot-symmetry",
            "hodge-wedge-contraction",
            "hodge-contraction-wedge",
            "hodge-units",
        ],
    ))
}

fn geometry() -> Result<Outcome> {
    let reps = quick_suite(Suite::Geometry);
    let mut names = vec![
        "desitter-scalar-curvature",
        "desitter-scalar-curvature-spread",
        "einstein-divergence",
        "divergence-identity-random",
        "killing-current-codiff",
    ];
    let killing: Vec<String> = reps.iter().filter(|r| r.name.starts_with("killing-") && r.name != "killing-current-codiff").map(|r| r.name.clone()).collect();
    if killing.len() != 10 {
        return Ok(outcome(false, format!("expected ten Killing reports, found {}", killing.len())));
    }
    names.extend(killing.iter().map(String::as_str));
    Ok(require(&reps, &names))
}

fn komar_currents() -> Result<Outcome> {
    let ds = DeSitter::new(1.0)?;
    let pts = rng::desitter_points(700, 20, 1.0, 0.8, 2.0);
    let mut dual = 0.0f64;
    let mut maxwell = 0.0f64;
    for (i, p) in pts.iter().enumerate() {
        let model = SpacetimeModel::desitter(&ds, i % 4);
        dual = dual.max(komar::komar_current(&model, p)?.gap);
        maxwell = maxwell.max(komar::maxwell_residual(&model, p)?.full);
    }
    Ok(outcome(dual < 1e-5 && maxwell < 1e-5, format!("dual path {dual:.2e}, Maxwell residual {maxwell:.2e} at 20 points")))
}

fn dynamics() -> Result<Outcome> {
    Ok(require(
        &quick_suite(Suite::Dynamics),
        &[
            "geodesic-norm-drift",
            "geodesic-charge-drift-C_0",
            "geodesic-charge-drift-C_1",
            "geodesic-charge-drift-C_2",
            "geodesic-charge-drift-C_3",
            "geodesic-rk4-order",
            "papapetrou-mass-drift",
            "papapetrou-coefficient-identity",
            "constrained-separation",
            "hybrid-curve-separation",
            "hybrid-velocity-equation",
            "hybrid-momentum-equation",
        ],
    ))
}

fn teleparallel() -> Result<Outcome> {
    Ok(require(
        &quick_suite(Suite::Desitter),
        &["teleparallel-connection-relation", "teleparallel-divergence", "density-divergence-equivalence"],
    ))
}

fn end_to_end() -> Result<Outcome> {
    let bin = env!("CARGO_BIN_EXE_desitter-lab");
    let run = || {
        let start = Instant::now();
        let out = Command::new(bin).args(["verify", "--all"]).output().expect("binary runs");
        (out, start.elapsed())
    };
    let (a, ta) = run();
    let (b, _) = run();
    let lines: Vec<&str> = std::str::from_utf8(&a.stdout).unwrap_or("").lines().collect();
    let failing: Vec<String> = lines
        .iter()
        .filter_map(|l| serde_json::from_str::<serde_json::Value>(l).ok())
        .filter(|v| v["status"] == "fail")
        .map(|v| format!("{}/{}", v["suite"].as_str().unwrap_or("?"), v["name"].as_str().unwrap_or("?")))
        .collect();
    let identical = a.stdout == b.stdout;
    let (fast, time) = within(ta, 60.0);
    let code = a.status.code().unwrap_or(-1);
    let mut detail = format!("{} reports, {} failing, exit {code}, rerun identical {identical}, {time}", lines.len(), failing.len());
    if !failing.is_empty() {
        detail.push_str(&format!(" [{}]", failing.join(", ")));
    }
    Ok(outcome(code == 0 && failing.is_empty() && identical && fast && !lines.is_empty(), detail))
}

fn main() {
    let criteria: [(&str, fn() -> Result<Outcome>); 10] = [
        ("komar mass", komar_mass),
        ("killing determinant", killing_determinant),
        ("so(1,4) structure", structure),
        ("ambient pushforward", pushforward),
        ("clifford kernel", clifford),
        ("geometry and currents", geometry),
        ("komar current equivalence", komar_currents),
        ("dynamics", dynamics),
        ("teleparallel structure", teleparallel),
        ("end to end", end_to_end),
    ];
    let mut passed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f().unwrap_or_else(|e| outcome(false, format!("error: {e}")));
        passed += o.pass as usize;
        println!("criterion {:>2} {:<26} {}  {}", i + 1, name, if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("{passed}/{} criteria pass", criteria.len());
    if passed != criteria.len() {
        std::process::exit(1);
    }
}
