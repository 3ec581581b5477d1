//! Curve integration on charts.
//!
//! Fixed-step RK4 for the Levi-Civita geodesic, the Killing-basis (hybrid)
//! form of the same equation, and the constrained-variation curve
//! dπ_ρ/ds − u^γπ_βΓ^β_{γρ} = 0. The single-pole Papapetrou checks work on
//! logged geodesic states.

use std::io::Write;

use nalgebra::Matrix4;
use serde::{Deserialize, Serialize};

use crate::chart::{det4, inverse, mat_vec, Chart, Gamma, Mat4, Point};
use crate::desitter::DeSitter;
use crate::error::{Error, Result};

/// Largest acceptable condition number of the π → u map.
pub const MAX_CONDITION: f64 = 1e8;

/// One point of a curve.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveState {
    pub s: f64,
    pub x: Point,
    pub u: [f64; 4],
    /// π_ρ for the constrained-variation form.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub aux: Option<[f64; 4]>,
}

impl CurveState {
    pub fn new(x: Point, u: [f64; 4]) -> Self {
        CurveState { s: 0.0, x, u, aux: None }
    }

    /// Rescales u so that g(u, u) = 1; fails unless u is timelike.
    pub fn normalized(mut self, chart: &Chart) -> Result<Self> {
        let n = norm(&chart.metric(&self.x)?, &self.u);
        if !(n > 0.0) {
            return Err(Error::InvalidInput(format!("velocity {:?} is not timelike (g(u,u) = {n})", self.u)));
        }
        let k = 1.0 / n.sqrt();
        self.u = self.u.map(|c| c * k);
        Ok(self)
    }
}

/// Step size, range and logging stride.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntegratorConfig {
    pub h: f64,
    pub s_max: f64,
    pub log_every: usize,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        IntegratorConfig { h: 1e-3, s_max: 2.0, log_every: 1 }
    }
}

impl IntegratorConfig {
    pub fn new(h: f64, s_max: f64) -> Self {
        IntegratorConfig { h, s_max, log_every: 1 }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.h > 0.0) || !self.h.is_finite() {
            return Err(Error::InvalidInput(format!("step h = {} must be positive", self.h)));
        }
        if !(self.s_max > 0.0) || !self.s_max.is_finite() {
            return Err(Error::InvalidInput(format!("s_max = {} must be positive", self.s_max)));
        }
        if self.log_every == 0 {
            return Err(Error::InvalidInput("log_every must be at least 1".into()));
        }
        Ok(())
    }

    fn steps(&self) -> usize {
        ((self.s_max / self.h) - 1e-9).ceil().max(1.0) as usize
    }
}

/// Which ODE produced a trajectory.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CurveKind {
    Geodesic,
    Hybrid,
    Constrained,
}

/// A logged point with its diagnostics.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LogRow {
    pub state: CurveState,
    /// g(u, u).
    pub norm: f64,
    /// Killing charges C_α = g(u, Π_α) on de Sitter charts.
    pub charges: Option<[f64; 4]>,
    /// Coordinate distance to a reference curve at the same s.
    pub separation: Option<f64>,
    /// Condition number of the π → u reconstruction.
    pub condition: Option<f64>,
}

/// Where integration stopped early.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExitInfo {
    pub s: f64,
    pub point: Point,
    pub reason: String,
}

/// Discretized curve with per-row logs.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Trajectory {
    pub kind: CurveKind,
    pub chart: String,
    pub config: IntegratorConfig,
    pub rows: Vec<LogRow>,
    pub exit: Option<ExitInfo>,
}

impl Trajectory {
    pub fn last(&self) -> &LogRow {
        self.rows.last().expect("trajectory has its initial row")
    }

    /// max |g(u,u) − g(u₀,u₀)|.
    pub fn norm_drift(&self) -> f64 {
        let n0 = self.rows[0].norm;
        self.rows.iter().map(|r| (r.norm - n0).abs()).fold(0.0, f64::max)
    }

    /// Per-α max |C_α − C_α(0)|, zero when no charges were logged.
    pub fn charge_drifts(&self) -> [f64; 4] {
        let mut out = [0.0; 4];
        if let Some(c0) = self.rows[0].charges {
            for r in &self.rows {
                if let Some(c) = r.charges {
                    for a in 0..4 {
                        out[a] = f64::max(out[a], (c[a] - c0[a]).abs());
                    }
                }
            }
        }
        out
    }

    pub fn charge_drift(&self) -> f64 {
        self.charge_drifts().into_iter().fold(0.0, f64::max)
    }

    pub fn final_separation(&self) -> Option<f64> {
        self.last().separation
    }

    /// Fill the charge column from a de Sitter model.
    pub fn attach_charges(&mut self, ds: &DeSitter) -> Result<()> {
        for r in &mut self.rows {
            r.charges = Some(killing_charges(ds, &r.state.x, &r.state.u)?);
        }
        Ok(())
    }

    /// Fill the separation column against another trajectory logged on the same grid.
    pub fn attach_separation(&mut self, reference: &Trajectory) {
        for (r, q) in self.rows.iter_mut().zip(&reference.rows) {
            if (r.state.s - q.state.s).abs() <= 1e-9 * r.state.s.abs().max(1.0) {
                r.separation = Some(distance(&r.state.x, &q.state.x));
            }
        }
    }

    /// CSV with columns s, x0..x3, u0..u3, norm, C_0..C_3, separation.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let io = |e: csv::Error| Error::InvalidInput(format!("csv: {e}"));
        let mut out = csv::Writer::from_writer(w);
        out.write_record(TRAJECTORY_COLUMNS).map_err(io)?;
        for r in &self.rows {
            let mut rec = vec![fmt(r.state.s)];
            rec.extend(r.state.x.iter().map(|v| fmt(*v)));
            rec.extend(r.state.u.iter().map(|v| fmt(*v)));
            rec.push(fmt(r.norm));
            match r.charges {
                Some(c) => rec.extend(c.iter().map(|v| fmt(*v))),
                None => rec.extend(std::iter::repeat_n(String::new(), 4)),
            }
            rec.push(r.separation.map(fmt).unwrap_or_default());
            out.write_record(&rec).map_err(io)?;
        }
        out.flush().map_err(|e| Error::InvalidInput(format!("csv: {e}")))?;
        Ok(())
    }
}

pub const TRAJECTORY_COLUMNS: [&str; 15] =
    ["s", "x0", "x1", "x2", "x3", "u0", "u1", "u2", "u3", "norm", "C_0", "C_1", "C_2", "C_3", "separation"];

fn fmt(v: f64) -> String {
    format!("{v:.17e}")
}

fn distance(a: &Point, b: &Point) -> f64 {
    (0..4).map(|i| (a[i] - b[i]).powi(2)).sum::<f64>().sqrt()
}

/// g(u, u).
pub fn norm(g: &Mat4, u: &[f64; 4]) -> f64 {
    (0..4).map(|m| (0..4).map(|n| g[m][n] * u[m] * u[n]).sum::<f64>()).sum()
}

fn lower(g: &Mat4, u: &[f64; 4]) -> [f64; 4] {
    mat_vec(g, u)
}

/// C_α = g(u, Π_α).
pub fn killing_charges(ds: &DeSitter, x: &Point, u: &[f64; 4]) -> Result<[f64; 4]> {
    let xi = ds.killing_translations(x)?;
    let ul = lower(&ds.metric(x)?, u);
    Ok(std::array::from_fn(|a| (0..4).map(|m| xi[a][m] * ul[m]).sum()))
}

/// −Γ^μ_{νρ}u^νu^ρ.
pub fn geodesic_acceleration(gam: &Gamma, u: &[f64; 4]) -> [f64; 4] {
    std::array::from_fn(|m| -(0..4).map(|n| (0..4).map(|r| gam[m][n][r] * u[n] * u[r]).sum::<f64>()).sum::<f64>())
}

type Rhs<'a> = dyn Fn(&Point, &[f64; 4]) -> Result<([f64; 4], [f64; 4])> + 'a;

fn axpy(y: &[f64; 4], k: f64, d: &[f64; 4]) -> [f64; 4] {
    std::array::from_fn(|i| y[i] + k * d[i])
}

/// Increments (Δx, Δw) of one RK4 step of the pair (x, w) with dx/ds, dw/ds given by `rhs`.
fn rk4_increment(rhs: &Rhs, x: &Point, w: &[f64; 4], h: f64) -> Result<([f64; 4], [f64; 4])> {
    let (k1x, k1w) = rhs(x, w)?;
    let (k2x, k2w) = rhs(&axpy(x, h / 2.0, &k1x), &axpy(w, h / 2.0, &k1w))?;
    let (k3x, k3w) = rhs(&axpy(x, h / 2.0, &k2x), &axpy(w, h / 2.0, &k2w))?;
    let (k4x, k4w) = rhs(&axpy(x, h, &k3x), &axpy(w, h, &k3w))?;
    let inc = |a: &[f64; 4], b: &[f64; 4], c: &[f64; 4], d: &[f64; 4]| -> [f64; 4] {
        std::array::from_fn(|i| h / 6.0 * (a[i] + 2.0 * b[i] + 2.0 * c[i] + d[i]))
    };
    Ok((inc(&k1x, &k2x, &k3x, &k4x), inc(&k1w, &k2w, &k3w, &k4w)))
}

/// Running sum with Kahan compensation, so that thousands of small
/// increments do not accumulate rounding in the state.
#[derive(Clone, Copy)]
struct Compensated {
    sum: [f64; 4],
    carry: [f64; 4],
}

impl Compensated {
    fn new(v: [f64; 4]) -> Self {
        Compensated { sum: v, carry: [0.0; 4] }
    }

    fn added(mut self, d: &[f64; 4]) -> Self {
        for i in 0..4 {
            let y = d[i] - self.carry[i];
            let t = self.sum[i] + y;
            self.carry[i] = (t - self.sum[i]) - y;
            self.sum[i] = t;
        }
        self
    }
}

/// Drive RK4 over (x, w); `row` turns (s, x, w) into a logged row.
fn integrate(
    kind: CurveKind,
    chart: &Chart,
    x0: Point,
    w0: [f64; 4],
    cfg: &IntegratorConfig,
    rhs: &Rhs,
    row: &dyn Fn(f64, &Point, &[f64; 4]) -> Result<LogRow>,
) -> Result<Trajectory> {
    cfg.validate()?;
    chart.check_domain(&x0)?;
    let mut rows = vec![row(0.0, &x0, &w0)?];
    let n = cfg.steps();
    let (mut cx, mut cw) = (Compensated::new(x0), Compensated::new(w0));
    let (mut x, mut w) = (x0, w0);
    let mut exit = None;
    for i in 1..=n {
        let s_prev = (i - 1) as f64 * cfg.h;
        let h = if i == n { cfg.s_max - s_prev } else { cfg.h };
        let s = if i == n { cfg.s_max } else { i as f64 * cfg.h };
        let stepped = rk4_increment(rhs, &x, &w, h).and_then(|(dx, dw)| {
            let (nx, nw) = (cx.added(&dx), cw.added(&dw));
            if nx.sum.iter().chain(nw.sum.iter()).all(|v| v.is_finite()) {
                chart.check_domain(&nx.sum).map(|_| (nx, nw))
            } else {
                Err(Error::Degenerate(format!("non-finite state at s = {s}")))
            }
        });
        match stepped {
            Ok((nx, nw)) => {
                cx = nx;
                cw = nw;
                x = nx.sum;
                w = nw.sum;
            }
            Err(e) => {
                exit = Some(ExitInfo { s: s_prev, point: x, reason: e.to_string() });
                break;
            }
        }
        if i % cfg.log_every == 0 || i == n {
            match row(s, &x, &w) {
                Ok(r) => rows.push(r),
                Err(e) => {
                    exit = Some(ExitInfo { s, point: x, reason: e.to_string() });
                    break;
                }
            }
        }
    }
    Ok(Trajectory { kind, chart: chart.name().to_string(), config: *cfg, rows, exit })
}

/// Integrate du^μ/ds = −Γ^μ_{νρ}u^νu^ρ, dx^μ/ds = u^μ.
pub fn geodesic_integrate(chart: &Chart, state0: &CurveState, cfg: &IntegratorConfig) -> Result<Trajectory> {
    let rhs = |x: &Point, u: &[f64; 4]| -> Result<([f64; 4], [f64; 4])> {
        Ok((*u, geodesic_acceleration(&chart.christoffel(x)?, u)))
    };
    let row = |s: f64, x: &Point, u: &[f64; 4]| -> Result<LogRow> {
        Ok(LogRow {
            state: CurveState { s: state0.s + s, x: *x, u: *u, aux: None },
            norm: norm(&chart.metric(x)?, u),
            charges: None,
            separation: None,
            condition: None,
        })
    };
    integrate(CurveKind::Geodesic, chart, state0.x, state0.u, cfg, &rhs, &row)
}

/// Geodesic on a de Sitter chart with the Killing charges logged.
pub fn desitter_geodesic(ds: &DeSitter, state0: &CurveState, cfg: &IntegratorConfig) -> Result<Trajectory> {
    let mut t = geodesic_integrate(&ds.chart(), state0, cfg)?;
    t.attach_charges(ds)?;
    Ok(t)
}

/// Integrate to `s_max`, then back from the end point with −u; returns the
/// coordinate distance between the start and the returned point.
pub fn time_reversal_error(chart: &Chart, state0: &CurveState, cfg: &IntegratorConfig) -> Result<f64> {
    let fwd = geodesic_integrate(chart, state0, cfg)?;
    if let Some(e) = &fwd.exit {
        return Err(Error::DomainExit { s: e.s, point: e.point });
    }
    let end = fwd.last().state;
    let back = CurveState::new(end.x, end.u.map(|c| -c));
    let rev = geodesic_integrate(chart, &back, cfg)?;
    if let Some(e) = &rev.exit {
        return Err(Error::DomainExit { s: e.s, point: e.point });
    }
    Ok(distance(&rev.last().state.x, &state0.x))
}

/// Convergence of the norm error under step halving.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrderReport {
    pub h: f64,
    /// |g(u,u) − g(u₀,u₀)| at s_max for steps h and h/2.
    pub final_drift: f64,
    pub final_drift_half: f64,
    /// final_drift / final_drift_half, about 16 for RK4.
    pub ratio: f64,
    /// Same ratio built from the largest drift over the whole run.
    pub max_ratio: f64,
}

pub fn rk4_order(chart: &Chart, state0: &CurveState, cfg: &IntegratorConfig) -> Result<OrderReport> {
    let coarse = geodesic_integrate(chart, state0, cfg)?;
    let fine = geodesic_integrate(chart, state0, &IntegratorConfig { h: cfg.h / 2.0, ..*cfg })?;
    let end = |t: &Trajectory| (t.last().norm - t.rows[0].norm).abs();
    let (a, b) = (end(&coarse), end(&fine));
    Ok(OrderReport {
        h: cfg.h,
        final_drift: a,
        final_drift_half: b,
        ratio: a / b,
        max_ratio: coarse.norm_drift() / fine.norm_drift(),
    })
}

/// U = (ξᵀ)⁻¹u, the components of u on the Killing translations.
pub fn killing_components(ds: &DeSitter, x: &Point, u: &[f64; 4]) -> Result<[f64; 4]> {
    let xi = ds.killing_translations(x)?;
    let det = det4(&xi);
    if det.abs() < crate::desitter::BASIS_DET_TOL {
        return Err(Error::BasisDegenerate { point: *x, det });
    }
    let xt: Mat4 = std::array::from_fn(|m| std::array::from_fn(|a| xi[a][m]));
    Ok(mat_vec(&inverse(&xt, x)?, u))
}

/// u^μ = U^α ξ_α^μ.
pub fn velocity_from_components(xi: &Mat4, big_u: &[f64; 4]) -> [f64; 4] {
    std::array::from_fn(|m| (0..4).map(|a| big_u[a] * xi[a][m]).sum())
}

/// −u^μU^α𝚪^β_{μα}.
pub fn hybrid_rate(hyb: &Gamma, u: &[f64; 4], big_u: &[f64; 4]) -> [f64; 4] {
    std::array::from_fn(|b| -(0..4).map(|m| (0..4).map(|a| u[m] * big_u[a] * hyb[b][m][a]).sum::<f64>()).sum::<f64>())
}

/// Integrate the hybrid form dU^β/ds = −u^μU^α𝚪^β_{μα} with u = U^αΠ_α.
pub fn hybrid_integrate(ds: &DeSitter, state0: &CurveState, cfg: &IntegratorConfig) -> Result<Trajectory> {
    let chart = ds.chart();
    let big_u0 = killing_components(ds, &state0.x, &state0.u)?;
    let rhs = |x: &Point, big_u: &[f64; 4]| -> Result<([f64; 4], [f64; 4])> {
        let u = velocity_from_components(&ds.killing_translations(x)?, big_u);
        Ok((u, hybrid_rate(&ds.hybrid_connection(x)?, &u, big_u)))
    };
    let row = |s: f64, x: &Point, big_u: &[f64; 4]| -> Result<LogRow> {
        let u = velocity_from_components(&ds.killing_translations(x)?, big_u);
        Ok(LogRow {
            state: CurveState { s: state0.s + s, x: *x, u, aux: Some(*big_u) },
            norm: norm(&ds.metric(x)?, &u),
            charges: Some(killing_charges(ds, x, &u)?),
            separation: None,
            condition: None,
        })
    };
    integrate(CurveKind::Hybrid, &chart, state0.x, big_u0, cfg, &rhs, &row)
}

/// Five-point centred derivative of logged samples at index i.
fn stencil(vals: &[[f64; 4]], i: usize, d: f64) -> [f64; 4] {
    std::array::from_fn(|k| {
        (vals[i - 2][k] - 8.0 * vals[i - 1][k] + 8.0 * vals[i + 1][k] - vals[i + 2][k]) / (12.0 * d)
    })
}

/// Indices of rows that have two equally spaced neighbours on each side.
fn interior(rows: &[LogRow]) -> (Vec<usize>, f64) {
    if rows.len() < 5 {
        return (Vec::new(), 0.0);
    }
    let d = rows[1].state.s - rows[0].state.s;
    let same = |a: usize, b: usize| ((rows[b].state.s - rows[a].state.s) - d).abs() <= 1e-9 * d.abs().max(1e-300);
    let idx = (2..rows.len() - 2).filter(|&i| (i - 2..i + 2).all(|j| same(j, j + 1))).collect();
    (idx, d)
}

/// Residuals of the Killing-basis geodesic equations along a logged curve.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HybridReport {
    /// max |dU^β/ds + u^μU^α𝚪^β_{μα}|.
    pub k12_residual: f64,
    /// max |dπ_ρ/ds − 𝚪^β_{μρ}u^μπ_β| with π_ρ = m g(u, Π_ρ).
    pub k13_residual: f64,
    /// Same with π_ρ = m g_{ρβ}U^β, the chart metric contracted with U.
    pub k13_chart_metric_residual: f64,
    /// max |𝚪 − Γ| along the curve.
    pub connection_gap: f64,
    pub points: usize,
}

/// Check Eqs. for U^β and π_ρ on states logged by [`geodesic_integrate`], with
/// derivatives from five-point stencils over the logged rows.
pub fn hybrid_geodesic_check(ds: &DeSitter, traj: &Trajectory, m: f64) -> Result<HybridReport> {
    let rows = &traj.rows;
    let chart = ds.chart();
    for r in rows {
        let n = norm(&chart.metric(&r.state.x)?, &r.state.u);
        if !(n > 0.0) {
            return Err(Error::InvalidInput(format!("velocity at s = {} is not timelike", r.state.s)));
        }
    }
    let big_u: Vec<[f64; 4]> = rows.iter().map(|r| killing_components(ds, &r.state.x, &r.state.u)).collect::<Result<_>>()?;
    let pi: Vec<[f64; 4]> =
        rows.iter().map(|r| Ok(killing_charges(ds, &r.state.x, &r.state.u)?.map(|c| m * c))).collect::<Result<_>>()?;
    let pi_chart: Vec<[f64; 4]> = rows
        .iter()
        .zip(&big_u)
        .map(|(r, bu)| Ok(mat_vec(&ds.metric(&r.state.x)?, bu).map(|c| m * c)))
        .collect::<Result<_>>()?;
    let (idx, d) = interior(rows);
    let mut rep =
        HybridReport { k12_residual: 0.0, k13_residual: 0.0, k13_chart_metric_residual: 0.0, connection_gap: 0.0, points: idx.len() };
    for i in idx {
        let x = rows[i].state.x;
        let u = rows[i].state.u;
        let hyb = ds.hybrid_connection(&x)?;
        let gam = chart.christoffel(&x)?;
        let du = stencil(&big_u, i, d);
        let rate = hybrid_rate(&hyb, &u, &big_u[i]);
        let lowered = |p: &[f64; 4], rho: usize| -> f64 {
            (0..4).map(|b| (0..4).map(|mu| hyb[b][mu][rho] * u[mu] * p[b]).sum::<f64>()).sum()
        };
        let dpi = stencil(&pi, i, d);
        let dpc = stencil(&pi_chart, i, d);
        for k in 0..4 {
            rep.k12_residual = rep.k12_residual.max((du[k] - rate[k]).abs());
            rep.k13_residual = rep.k13_residual.max((dpi[k] - lowered(&pi[i], k)).abs());
            rep.k13_chart_metric_residual = rep.k13_chart_metric_residual.max((dpc[k] - lowered(&pi_chart[i], k)).abs());
        }
        for b in 0..4 {
            for mu in 0..4 {
                for a in 0..4 {
                    rep.connection_gap = rep.connection_gap.max((hyb[b][mu][a] - gam[b][mu][a]).abs());
                }
            }
        }
    }
    Ok(rep)
}

/// max coordinate distance between two trajectories at shared logged s.
pub fn max_separation(a: &Trajectory, b: &Trajectory) -> f64 {
    a.rows
        .iter()
        .zip(&b.rows)
        .filter(|(p, q)| (p.state.s - q.state.s).abs() <= 1e-9 * p.state.s.abs().max(1.0))
        .map(|(p, q)| distance(&p.state.x, &q.state.x))
        .fold(0.0, f64::max)
}

/// A_{ρν} = ξ_ρ^μ g_{μν}, so that π = m A u.
pub fn momentum_map(ds: &DeSitter, x: &Point) -> Result<Mat4> {
    let xi = ds.killing_translations(x)?;
    let g = ds.metric(x)?;
    Ok(std::array::from_fn(|r| std::array::from_fn(|n| (0..4).map(|m| xi[r][m] * g[m][n]).sum())))
}

/// Ratio of extreme singular values.
pub fn condition_number(a: &Mat4) -> f64 {
    let m = Matrix4::from_fn(|i, j| a[i][j]);
    let sv = m.singular_values();
    let (mx, mn) = (sv.max(), sv.min());
    if mn == 0.0 {
        f64::INFINITY
    } else {
        mx / mn
    }
}

/// u from π through A u = π/m; fails above [`MAX_CONDITION`].
pub fn reconstruct_velocity(ds: &DeSitter, x: &Point, pi: &[f64; 4], m: f64) -> Result<([f64; 4], f64)> {
    let a = momentum_map(ds, x)?;
    let cond = condition_number(&a);
    if !(cond <= MAX_CONDITION) {
        return Err(Error::Reconstruction(format!("condition number {cond:e} at {x:?} exceeds {MAX_CONDITION:e}")));
    }
    let ainv = inverse(&a, x)?;
    Ok((mat_vec(&ainv, &pi.map(|p| p / m)), cond))
}

/// u^γπ_βΓ^β_{γρ} with the Levi-Civita coefficients.
pub fn constrained_rate(gam: &Gamma, u: &[f64; 4], pi: &[f64; 4]) -> [f64; 4] {
    std::array::from_fn(|r| (0..4).map(|g| (0..4).map(|b| u[g] * pi[b] * gam[b][g][r]).sum::<f64>()).sum())
}

/// Integrate dπ_ρ/ds = u^γπ_βΓ^β_{γρ}, dx/ds = u with π_ρ(0) = m g(u₀, Π_ρ).
/// The separation column is filled against the geodesic from the same state.
pub fn constrained_curve_integrate(ds: &DeSitter, state0: &CurveState, cfg: &IntegratorConfig, m: f64) -> Result<Trajectory> {
    if !(m > 0.0) {
        return Err(Error::InvalidInput(format!("mass {m} must be positive")));
    }
    let chart = ds.chart();
    let pi0 = killing_charges(ds, &state0.x, &state0.u)?.map(|c| m * c);
    let rhs = |x: &Point, pi: &[f64; 4]| -> Result<([f64; 4], [f64; 4])> {
        let (u, _) = reconstruct_velocity(ds, x, pi, m)?;
        Ok((u, constrained_rate(&chart.christoffel(x)?, &u, pi)))
    };
    let row = |s: f64, x: &Point, pi: &[f64; 4]| -> Result<LogRow> {
        let (u, cond) = reconstruct_velocity(ds, x, pi, m)?;
        Ok(LogRow {
            state: CurveState { s: state0.s + s, x: *x, u, aux: Some(*pi) },
            norm: norm(&ds.metric(x)?, &u),
            charges: Some(killing_charges(ds, x, &u)?),
            separation: None,
            condition: Some(cond),
        })
    };
    let mut t = integrate(CurveKind::Constrained, &chart, state0.x, pi0, cfg, &rhs, &row)?;
    let geo = geodesic_integrate(&chart, state0, cfg)?;
    t.attach_separation(&geo);
    Ok(t)
}

/// Pointwise gap between the two π-equations at one state:
/// max_ρ |u^μπ_β(𝚪^β_{μρ} − Γ^β_{μρ})| with π_ρ = m g(u, Π_ρ).
pub fn constrained_rhs_gap(ds: &DeSitter, x: &Point, u: &[f64; 4], m: f64) -> Result<f64> {
    let pi = killing_charges(ds, x, u)?.map(|c| m * c);
    let hyb = ds.hybrid_connection(x)?;
    let gam = ds.chart().christoffel(x)?;
    let a = constrained_rate(&hyb, u, &pi);
    let b = constrained_rate(&gam, u, &pi);
    Ok((0..4).map(|k| (a[k] - b[k]).abs()).fold(0.0, f64::max))
}

/// Single-pole reduction residuals along a logged geodesic.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PapapetrouReport {
    /// max |m(s) − m(0)| with dm/ds = −m u_μa^μ / g(u,u) integrated along the rows.
    pub m_drift: f64,
    /// max |d(mu^μ)/ds + Γ^μ_{να}mu^νu^α|.
    pub geodesic_residual: f64,
    /// max |u_μa^μ|, the orthogonality of acceleration and velocity.
    pub orthogonality: f64,
    /// max over rows of |du^μ/ds from N^{μα} − du^μ/ds of the geodesic equation|.
    pub eq20_coefficient_gap: f64,
    pub points: usize,
}

/// Check the single-pole chain with M^{μα} = m u^μu^α on a trajectory from
/// [`geodesic_integrate`], with rows logged on a uniform grid.
pub fn papapetrou_singlepole_check(chart: &Chart, traj: &Trajectory, m: f64) -> Result<PapapetrouReport> {
    let rows = &traj.rows;
    let us: Vec<[f64; 4]> = rows.iter().map(|r| r.state.u).collect();
    let (idx, d) = interior(rows);
    let mut rep = PapapetrouReport { m_drift: 0.0, geodesic_residual: 0.0, orthogonality: 0.0, eq20_coefficient_gap: 0.0, points: idx.len() };
    let mut mass = m;
    let mut prev: Option<(f64, f64)> = None;
    for &i in &idx {
        let (x, u) = (rows[i].state.x, rows[i].state.u);
        let g = chart.metric(&x)?;
        let gam = chart.christoffel(&x)?;
        let du = stencil(&us, i, d);
        let acc = geodesic_acceleration(&gam, &u);
        let a: [f64; 4] = std::array::from_fn(|k| du[k] - acc[k]);
        let ul = lower(&g, &u);
        let ua: f64 = (0..4).map(|k| ul[k] * a[k]).sum();
        let dm = -mass * ua / norm(&g, &u);
        if let Some((s0, dm0)) = prev {
            mass += 0.5 * (dm0 + dm) * (rows[i].state.s - s0);
        }
        prev = Some((rows[i].state.s, dm));
        rep.m_drift = rep.m_drift.max((mass - m).abs());
        rep.orthogonality = rep.orthogonality.max(ua.abs());
        for k in 0..4 {
            rep.geodesic_residual = rep.geodesic_residual.max((dm * u[k] + mass * a[k]).abs());
        }
        // N^{μα} = m u^μu^α with m = N^{00}/(u^0)², solved for du^μ/ds.
        let n: Mat4 = std::array::from_fn(|p| std::array::from_fn(|q| mass * u[p] * u[q]));
        let m_n = n[0][0] / (u[0] * u[0]);
        let from_n: [f64; 4] = std::array::from_fn(|mu| {
            -(0..4).map(|nu| (0..4).map(|al| gam[mu][nu][al] * n[al][nu]).sum::<f64>()).sum::<f64>() / m_n
        });
        for k in 0..4 {
            rep.eq20_coefficient_gap = rep.eq20_coefficient_gap.max((from_n[k] - acc[k]).abs());
        }
    }
    Ok(rep)
}

/// Circular equatorial geodesic in Schwarzschild (t, r, θ, φ) at radius r.
pub fn schwarzschild_circular_state(m: f64, r: f64) -> Result<CurveState> {
    if !(r > 3.0 * m) || !(m > 0.0) {
        return Err(Error::InvalidInput(format!("no timelike circular orbit at r = {r} for m = {m}")));
    }
    let k = (1.0 - 3.0 * m / r).sqrt();
    let ut = 1.0 / k;
    let uphi = (m / (r * r * r)).sqrt() / k;
    Ok(CurveState::new([0.0, r, std::f64::consts::FRAC_PI_2, 0.0], [ut, 0.0, 0.0, uphi]))
}

/// Proper time of one revolution of the circular orbit.
pub fn schwarzschild_orbital_period(m: f64, r: f64) -> f64 {
    let k = (1.0 - 3.0 * m / r).sqrt();
    2.0 * std::f64::consts::PI * k / (m / (r * r * r)).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minkowski_straight_line() {
        let chart = Chart::minkowski();
        let s0 = CurveState::new([0.1, 0.2, -0.3, 0.0], [1.0, 0.0, 0.0, 0.0]);
        let t = geodesic_integrate(&chart, &s0, &IntegratorConfig::new(1e-2, 1.0)).unwrap();
        for r in &t.rows {
            for k in 0..4 {
                assert!((r.state.x[k] - (s0.x[k] + r.state.s * s0.u[k])).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn config_rejects_bad_step() {
        assert!(IntegratorConfig::new(0.0, 1.0).validate().is_err());
        assert!(IntegratorConfig::new(1e-3, -1.0).validate().is_err());
    }

    #[test]
    fn spacelike_velocity_rejected() {
        let chart = Chart::minkowski();
        assert!(CurveState::new([0.0; 4], [0.0, 1.0, 0.0, 0.0]).normalized(&chart).is_err());
        assert!(CurveState::new([0.0; 4], [0.0; 4]).normalized(&chart).is_err());
    }

    #[test]
    fn circular_orbit_is_normalized() {
        let s = schwarzschild_circular_state(1.0, 10.0).unwrap();
        let g = Chart::schwarzschild(1.0).metric(&s.x).unwrap();
        assert!((norm(&g, &s.u) - 1.0).abs() < 1e-14);
        let acc = geodesic_acceleration(&Chart::schwarzschild(1.0).christoffel(&s.x).unwrap(), &s.u);
        assert!(acc.iter().all(|a| a.abs() < 1e-14));
    }

    #[test]
    fn csv_header() {
        let chart = Chart::minkowski();
        let t = geodesic_integrate(&chart, &CurveState::new([0.0; 4], [1.0, 0.0, 0.0, 0.0]), &IntegratorConfig::new(0.5, 1.0)).unwrap();
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("s,x0,x1,x2,x3,u0,u1,u2,u3,norm,C_0,C_1,C_2,C_3,separation\n"));
        assert_eq!(text.lines().count(), 4);
    }
}
