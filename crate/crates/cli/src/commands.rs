//! The subcommands. Each writes its primary output to the supplied writer and
//! returns whether every check it ran passed.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::Path;

use desitter_core::algebra::{self, Representation};
use desitter_core::chart::{Chart, ChartParams};
use desitter_core::desitter::{self, DeSitter};
use desitter_core::dynamics::{self, CurveState, ExitInfo, IntegratorConfig, Trajectory};
use desitter_core::komar::{self, QuadratureSpec, SpacetimeModel, Surface};
use desitter_core::suites::{self, Suite};
use desitter_core::{CheckReport, Error, Result, Status};
use num_rational::Rational64;
use serde::Serialize;

use crate::config::RunConfig;

fn io(e: impl std::fmt::Display) -> Error {
    Error::InvalidInput(format!("i/o: {e}"))
}

fn json_line<W: Write, T: Serialize>(out: &mut W, value: &T) -> Result<()> {
    serde_json::to_writer(&mut *out, value).map_err(io)?;
    writeln!(out).map_err(io)
}

#[derive(Serialize)]
struct ReportLine<'a> {
    suite: Suite,
    #[serde(flatten)]
    report: &'a CheckReport,
}

/// One JSON line per report in (suite, name) order.
pub fn verify<W: Write>(cfg: &RunConfig, list: &[Suite], out: &mut W) -> Result<bool> {
    let sc = cfg.suite_config();
    sc.validate()?;
    let reports = suites::run_suites(list, &sc);
    for (suite, report) in &reports {
        json_line(out, &ReportLine { suite: *suite, report })?;
    }
    out.flush().map_err(io)?;
    Ok(reports.iter().all(|(_, r)| r.status != Status::Fail))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurveRun {
    Geodesic { compare_constrained: bool },
    Constrained,
}

#[derive(Serialize)]
struct CurveSummary {
    kind: &'static str,
    file: String,
    steps: usize,
    s_final: f64,
    norm_drift: f64,
    charge_drift: f64,
    charge_drifts: [f64; 4],
    #[serde(skip_serializing_if = "Option::is_none")]
    final_separation: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    straight_line_error: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    exit: Option<ExitInfo>,
}

#[derive(Serialize)]
struct RunSummary {
    chart: String,
    ell: f64,
    h: f64,
    s_max: f64,
    x0: [f64; 4],
    u0: [f64; 4],
    status: Status,
    curves: Vec<CurveSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    separation_file: Option<String>,
}

fn write_trajectory(t: &Trajectory, path: &Path) -> Result<()> {
    t.write_csv(BufWriter::new(File::create(path).map_err(io)?))
}

fn write_separation(t: &Trajectory, path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_writer(BufWriter::new(File::create(path).map_err(io)?));
    w.write_record(["s", "separation"]).map_err(io)?;
    for r in &t.rows {
        if let Some(d) = r.separation {
            w.write_record([format!("{:.17e}", r.state.s), format!("{d:.17e}")]).map_err(io)?;
        }
    }
    w.flush().map_err(io)
}

fn straight_line_error(t: &Trajectory, s0: &CurveState) -> f64 {
    t.rows.iter().fold(0.0f64, |m, r| (0..4).fold(m, |m, k| m.max((r.state.x[k] - (s0.x[k] + (r.state.s - s0.s) * s0.u[k])).abs())))
}

fn summarize(t: &Trajectory, file: &str, s0: &CurveState, flat: bool) -> CurveSummary {
    CurveSummary {
        kind: match t.kind {
            dynamics::CurveKind::Geodesic => "geodesic",
            dynamics::CurveKind::Hybrid => "hybrid",
            dynamics::CurveKind::Constrained => "constrained",
        },
        file: file.to_string(),
        steps: t.rows.len().saturating_sub(1),
        s_final: t.last().state.s,
        norm_drift: t.norm_drift(),
        charge_drift: t.charge_drift(),
        charge_drifts: t.charge_drifts(),
        final_separation: t.final_separation(),
        straight_line_error: flat.then(|| straight_line_error(t, s0)),
        exit: t.exit.clone(),
    }
}

/// Integrates the requested curves, writes their CSVs into `out_dir` and a
/// JSON summary to `out`. Leaving the chart early is reported as a warning.
pub fn trajectories<W: Write>(cfg: &RunConfig, run: CurveRun, out: &mut W) -> Result<bool> {
    let params = ChartParams { ell: cfg.ell, m: cfg.m, interior: cfg.interior, ..Default::default() };
    let chart = Chart::from_registry(&cfg.chart, &params)?;
    let is_ds = matches!(cfg.chart.as_str(), "desitter" | "desitter-conformal");
    let ds = is_ds.then(|| DeSitter::new(cfg.ell).map(|d| d.with_interior(cfg.interior))).transpose()?;
    let needs_ds = matches!(run, CurveRun::Constrained | CurveRun::Geodesic { compare_constrained: true });
    if needs_ds && ds.is_none() {
        return Err(Error::InvalidInput(format!("the constrained curve needs the de Sitter chart, not {:?}", cfg.chart)));
    }
    let icfg = IntegratorConfig::new(cfg.h, cfg.s_max);
    icfg.validate()?;
    let default_x0 = match run {
        CurveRun::Constrained | CurveRun::Geodesic { compare_constrained: true } => [0.0, 0.5, 0.0, 0.0],
        CurveRun::Geodesic { .. } if cfg.chart == "schwarzschild" => [0.0, 10.0 * cfg.m, std::f64::consts::FRAC_PI_2, 0.0],
        CurveRun::Geodesic { .. } => [0.0; 4],
    };
    let x0 = cfg.x0.unwrap_or(default_x0);
    let u0 = cfg.u0.unwrap_or([1.0, 0.0, 0.0, 0.0]);
    let state = CurveState::new(x0, u0).normalized(&chart)?;
    fs::create_dir_all(&cfg.out_dir).map_err(io)?;
    let flat = cfg.chart == "minkowski";

    let mut curves = Vec::new();
    let mut separation_file = None;
    if let CurveRun::Geodesic { .. } = run {
        let t = match &ds {
            Some(d) => dynamics::desitter_geodesic(d, &state, &icfg)?,
            None => dynamics::geodesic_integrate(&chart, &state, &icfg)?,
        };
        write_trajectory(&t, &cfg.out_dir.join("geodesic.csv"))?;
        curves.push(summarize(&t, "geodesic.csv", &state, flat));
    }
    if needs_ds {
        let d = ds.as_ref().expect("checked above");
        let t = dynamics::constrained_curve_integrate(d, &state, &icfg, 1.0)?;
        write_trajectory(&t, &cfg.out_dir.join("constrained.csv"))?;
        write_separation(&t, &cfg.out_dir.join("separation.csv"))?;
        separation_file = Some("separation.csv".to_string());
        curves.push(summarize(&t, "constrained.csv", &state, false));
    }
    let status = if curves.iter().any(|c| c.exit.is_some()) { Status::Warn } else { Status::Pass };
    let summary = RunSummary {
        chart: chart.name().to_string(),
        ell: cfg.ell,
        h: cfg.h,
        s_max: cfg.s_max,
        x0: state.x,
        u0: state.u,
        status,
        curves,
        separation_file,
    };
    json_line(out, &summary)?;
    Ok(true)
}

#[derive(Serialize)]
struct KomarRecord {
    metric: String,
    m: f64,
    radius: f64,
    grid: usize,
    energy: f64,
    refinement_error: f64,
    convergence_ratio: f64,
    orientation: String,
}

pub fn komar_mass<W: Write>(cfg: &RunConfig, metric: &str, out: &mut W) -> Result<bool> {
    if metric != "schwarzschild" {
        return Err(Error::InvalidInput(format!("komar-mass supports --metric schwarzschild, not {metric:?}")));
    }
    if cfg.radius <= 2.0 * cfg.m {
        return Err(Error::InvalidInput(format!("radius {} is inside the horizon r = 2m", cfg.radius)));
    }
    let quad = QuadratureSpec::new(cfg.grid)?;
    let e = komar::komar_surface_energy(
        &SpacetimeModel::schwarzschild(cfg.m),
        &Surface::SchwarzschildSphere { t: 0.0, r: cfg.radius },
        quad,
    )?;
    json_line(
        out,
        &KomarRecord {
            metric: metric.to_string(),
            m: cfg.m,
            radius: cfg.radius,
            grid: cfg.grid,
            energy: e.energy,
            refinement_error: e.refinement_error,
            convergence_ratio: e.convergence_ratio,
            orientation: e.orientation,
        },
    )?;
    Ok(true)
}

/// CSV grid of det ξ over y = z = 0 with the two closed forms alongside.
pub fn det_map<W: Write>(cfg: &RunConfig, out: &mut W) -> Result<bool> {
    let ds = DeSitter::new(cfg.ell)?;
    let rows = desitter::det_map(&ds, (cfg.t_min, cfg.t_max), (cfg.x_min, cfg.x_max), cfg.nt, cfg.nx)?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(desitter::DET_MAP_COLUMNS).map_err(io)?;
    for r in &rows {
        let rec = [r.t, r.x1, r.det, r.reduced, r.factorised].map(|v| format!("{v:.17e}"));
        w.write_record(&rec).map_err(io)?;
    }
    w.flush().map_err(io)?;
    Ok(true)
}

#[derive(Serialize)]
struct AlgebraReport {
    commutators: Vec<algebra::CommutatorReport>,
    commutators_matching: usize,
    translations: Vec<algebra::CommutatorReport>,
    jacobi_defect_printed: String,
    jacobi_defect_uniform: String,
    casimirs: Vec<algebra::CasimirReport>,
    w4: Vec<algebra::W4Report>,
    contraction: algebra::ContractionReport,
}

pub fn algebra_report<W: Write>(cfg: &RunConfig, out: &mut W) -> Result<bool> {
    let ell = Rational64::approximate_float(cfg.ell)
        .filter(|q| *q.denom() <= 1_000_000)
        .ok_or_else(|| Error::InvalidInput(format!("ell = {} has no small rational form", cfg.ell)))?;
    let commutators = algebra::commutator_table();
    let matching = commutators.iter().filter(|r| r.exact_match).count();
    let reps = [Representation::Defining, Representation::Adjoint];
    let report = AlgebraReport {
        commutators_matching: matching,
        translations: algebra::translation_brackets(ell),
        jacobi_defect_printed: algebra::jacobi_defect(algebra::printed_rule).to_string(),
        jacobi_defect_uniform: algebra::jacobi_defect(algebra::uniform_rule).to_string(),
        casimirs: reps.iter().map(|r| algebra::casimir_check(*r, ell)).collect(),
        w4: reps.iter().map(|r| algebra::w4_check(*r, ell)).collect(),
        contraction: algebra::contraction_scaling(&[Rational64::from_integer(1), Rational64::from_integer(10), Rational64::from_integer(100)]),
        commutators,
    };
    serde_json::to_writer_pretty(&mut *out, &report).map_err(io)?;
    writeln!(out).map_err(io)?;
    let ok = matching == report.commutators.len()
        && report.translations.iter().all(|r| r.exact_match)
        && report.casimirs.iter().all(|c| c.i1_central && c.i2_central);
    Ok(ok)
}
