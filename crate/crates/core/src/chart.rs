//! Coordinate charts: metric, domain guard, differentiation and the
//! Levi-Civita connection with its curvature.
//!
//! Index layout of the arrays returned here:
//!
//! * `christoffel[r][m][n]` is Γ^r_{mn}.
//! * `riemann[r][s][m][n]` is R^r_{smn} = ∂_mΓ^r_{ns} − ∂_nΓ^r_{ms} + Γ^r_{ml}Γ^l_{ns} − Γ^r_{nl}Γ^l_{ms}.
//! * `ricci[n][s]` is R_{ns} = R^m_{nsm}, the contraction of the first index
//!   with the last. For signature (+,−,−,−) this makes the scalar curvature of
//!   de Sitter space positive, R = 12/ℓ².

use std::sync::Arc;

use nalgebra::Matrix4;

use crate::clifford::Signature;
use crate::error::{Error, Result};

/// Coordinates of a point.
pub type Point = [f64; 4];
/// 4×4 real matrix, row major.
pub type Mat4 = [[f64; 4]; 4];
/// Γ^r_{mn}.
pub type Gamma = [[[f64; 4]; 4]; 4];
/// R^r_{smn}.
pub type Riemann = [[[[f64; 4]; 4]; 4]; 4];

/// Minkowski form diag(1,−1,−1,−1).
pub const ETA: Mat4 = [[1.0, 0.0, 0.0, 0.0], [0.0, -1.0, 0.0, 0.0], [0.0, 0.0, -1.0, 0.0], [0.0, 0.0, 0.0, -1.0]];

/// Values that finite-difference stencils can combine linearly.
pub trait Linear: Clone {
    /// self += a·x
    fn axpy(&mut self, a: f64, x: &Self);
    /// self *= a
    fn scale(&mut self, a: f64);
}

impl Linear for f64 {
    fn axpy(&mut self, a: f64, x: &Self) {
        *self += a * x;
    }
    fn scale(&mut self, a: f64) {
        *self *= a;
    }
}

impl<T: Linear, const N: usize> Linear for [T; N] {
    fn axpy(&mut self, a: f64, x: &Self) {
        for (s, v) in self.iter_mut().zip(x.iter()) {
            s.axpy(a, v);
        }
    }
    fn scale(&mut self, a: f64) {
        for s in self.iter_mut() {
            s.scale(a);
        }
    }
}

impl Linear for Vec<f64> {
    fn axpy(&mut self, a: f64, x: &Self) {
        for (s, v) in self.iter_mut().zip(x.iter()) {
            *s += a * v;
        }
    }
    fn scale(&mut self, a: f64) {
        for s in self.iter_mut() {
            *s *= a;
        }
    }
}

/// Finite-difference stencil.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FdScheme {
    /// Two-point central difference, error O(h²).
    Central,
    /// Four-point Richardson-extrapolated central difference, error O(h⁴).
    Richardson,
}

/// Differentiation strategy for fields without analytic partials.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FdConfig {
    pub scheme: FdScheme,
    pub h: f64,
}

impl Default for FdConfig {
    fn default() -> Self {
        FdConfig { scheme: FdScheme::Richardson, h: 1e-3 }
    }
}

impl FdConfig {
    /// Plain central differences with step h.
    pub fn central(h: f64) -> Self {
        FdConfig { scheme: FdScheme::Central, h }
    }

    fn stencil(&self) -> &'static [(f64, f64)] {
        match self.scheme {
            FdScheme::Central => &[(1.0, 0.5), (-1.0, -0.5)],
            FdScheme::Richardson => {
                &[(2.0, -1.0 / 12.0), (1.0, 8.0 / 12.0), (-1.0, -8.0 / 12.0), (-2.0, 1.0 / 12.0)]
            }
        }
    }
}

type MetricFn = Arc<dyn Fn(&Point) -> Mat4 + Send + Sync>;
type PartialsFn = Arc<dyn Fn(&Point) -> [Mat4; 4] + Send + Sync>;
type DomainFn = Arc<dyn Fn(&Point) -> Option<String> + Send + Sync>;

/// Parameters for the named built-in charts.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChartParams {
    /// Pseudo-sphere radius ℓ of de Sitter space.
    pub ell: f64,
    /// Schwarzschild mass parameter.
    pub m: f64,
    /// Restrict de Sitter to the Cayley–Klein interior t² − |x|² < 4ℓ².
    pub interior: bool,
    pub fd: FdConfig,
}

impl Default for ChartParams {
    fn default() -> Self {
        ChartParams { ell: 1.0, m: 1.0, interior: true, fd: FdConfig::default() }
    }
}

/// A coordinate patch with its metric g_{μν}(x).
#[derive(Clone)]
pub struct Chart {
    name: String,
    metric_fn: MetricFn,
    partials_fn: Option<PartialsFn>,
    domain_fn: DomainFn,
    fd: FdConfig,
}

impl std::fmt::Debug for Chart {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Chart")
            .field("name", &self.name)
            .field("analytic_partials", &self.partials_fn.is_some())
            .field("fd", &self.fd)
            .finish()
    }
}

impl Chart {
    /// A chart from a metric function and a domain predicate returning
    /// `None` on admitted points and a reason otherwise.
    pub fn new(
        name: &str,
        metric: impl Fn(&Point) -> Mat4 + Send + Sync + 'static,
        domain: impl Fn(&Point) -> Option<String> + Send + Sync + 'static,
    ) -> Self {
        Chart {
            name: name.to_string(),
            metric_fn: Arc::new(metric),
            partials_fn: None,
            domain_fn: Arc::new(domain),
            fd: FdConfig::default(),
        }
    }

    /// Attach analytic metric partials, `p[r][m][n]` = ∂_r g_{mn}.
    pub fn with_partials(mut self, p: impl Fn(&Point) -> [Mat4; 4] + Send + Sync + 'static) -> Self {
        self.partials_fn = Some(Arc::new(p));
        self
    }

    /// Drop analytic partials so every derivative goes through finite differences.
    pub fn without_partials(mut self) -> Self {
        self.partials_fn = None;
        self
    }

    pub fn with_fd(mut self, fd: FdConfig) -> Self {
        self.fd = fd;
        self
    }

    /// Flat space in inertial coordinates.
    pub fn minkowski() -> Self {
        Chart::new("minkowski", |_| ETA, |_| None).with_partials(|_| [[[0.0; 4]; 4]; 4])
    }

    /// Schwarzschild exterior in (t, r, θ, φ).
    pub fn schwarzschild(m: f64) -> Self {
        let metric = move |x: &Point| {
            let (r, th) = (x[1], x[2]);
            let f = 1.0 - 2.0 * m / r;
            let s = th.sin();
            diag([f, -1.0 / f, -r * r, -r * r * s * s])
        };
        let partials = move |x: &Point| {
            let (r, th) = (x[1], x[2]);
            let f = 1.0 - 2.0 * m / r;
            let df = 2.0 * m / (r * r);
            let (s, c) = th.sin_cos();
            let mut p = [[[0.0; 4]; 4]; 4];
            p[1] = diag([df, df / (f * f), -2.0 * r, -2.0 * r * s * s]);
            p[2][3][3] = -2.0 * r * r * s * c;
            p
        };
        let domain = move |x: &Point| {
            if !(x[1] > 2.0 * m) {
                Some(format!("r = {} not outside the horizon 2m = {}", x[1], 2.0 * m))
            } else if x[2].sin().abs() < 1e-12 {
                Some(format!("theta = {} on the polar axis", x[2]))
            } else {
                None
            }
        };
        Chart::new("schwarzschild", metric, domain).with_partials(partials)
    }

    /// Named built-in: "minkowski", "desitter-conformal" or "schwarzschild".
    pub fn from_registry(name: &str, params: &ChartParams) -> Result<Self> {
        let chart = match name {
            "minkowski" => Chart::minkowski(),
            "desitter-conformal" | "desitter" => {
                crate::desitter::DeSitter::new(params.ell)?.with_interior(params.interior).chart()
            }
            "schwarzschild" => {
                if !(params.m > 0.0) {
                    return Err(Error::InvalidInput(format!("mass {} must be positive", params.m)));
                }
                Chart::schwarzschild(params.m)
            }
            other => return Err(Error::InvalidInput(format!("unknown chart {other:?}"))),
        };
        Ok(chart.with_fd(params.fd))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn fd(&self) -> FdConfig {
        self.fd
    }

    pub fn has_analytic_partials(&self) -> bool {
        self.partials_fn.is_some()
    }

    /// Domain guard; every metric evaluation passes through it.
    pub fn check_domain(&self, x: &Point) -> Result<()> {
        if x.iter().any(|c| !c.is_finite()) {
            return Err(Error::Domain { point: *x, reason: "non-finite coordinate".into() });
        }
        match (self.domain_fn)(x) {
            None => Ok(()),
            Some(reason) => Err(Error::Domain { point: *x, reason }),
        }
    }

    pub fn in_domain(&self, x: &Point) -> bool {
        self.check_domain(x).is_ok()
    }

    /// g_{μν}(x).
    pub fn metric(&self, x: &Point) -> Result<Mat4> {
        self.check_domain(x)?;
        Ok((self.metric_fn)(x))
    }

    /// g^{μν}(x).
    pub fn metric_inv(&self, x: &Point) -> Result<Mat4> {
        invert(&self.metric(x)?, x)
    }

    /// Clifford signature of the cotangent space at x (form g^{μν}).
    pub fn cotangent_signature(&self, x: &Point) -> Result<Signature> {
        Signature::from_mat4(&self.metric_inv(x)?)
    }

    /// √|det g|.
    pub fn volume_factor(&self, x: &Point) -> Result<f64> {
        Ok(det4(&self.metric(x)?).abs().sqrt())
    }

    /// ∂_μ f at x by the chart's stencil. Every stencil point is checked
    /// against the domain first; there is no one-sided fallback.
    pub fn partial<T: Linear>(&self, x: &Point, mu: usize, f: impl Fn(&Point) -> Result<T>) -> Result<T> {
        self.partial_with(self.fd, x, mu, f)
    }

    /// As [`Chart::partial`] with an explicit stencil.
    pub fn partial_with<T: Linear>(
        &self,
        fd: FdConfig,
        x: &Point,
        mu: usize,
        f: impl Fn(&Point) -> Result<T>,
    ) -> Result<T> {
        let stencil = fd.stencil();
        let mut points = Vec::with_capacity(stencil.len());
        for &(k, _) in stencil {
            let mut y = *x;
            y[mu] += k * fd.h;
            self.check_domain(&y)?;
            points.push(y);
        }
        let mut acc: Option<T> = None;
        for (y, &(_, w)) in points.iter().zip(stencil) {
            let v = f(y)?;
            match acc.as_mut() {
                None => {
                    let mut first = v;
                    first.scale(w);
                    acc = Some(first);
                }
                Some(a) => a.axpy(w, &v),
            }
        }
        let mut out = acc.expect("nonempty stencil");
        out.scale(1.0 / fd.h);
        Ok(out)
    }

    /// ∂_r g_{mn}, analytic when available.
    pub fn metric_partials(&self, x: &Point) -> Result<[Mat4; 4]> {
        match &self.partials_fn {
            Some(p) => {
                self.check_domain(x)?;
                Ok(p(x))
            }
            None => self.metric_partials_fd(x),
        }
    }

    /// ∂_r g_{mn} by finite differences regardless of analytic availability.
    pub fn metric_partials_fd(&self, x: &Point) -> Result<[Mat4; 4]> {
        let mut out = [[[0.0; 4]; 4]; 4];
        for (r, slot) in out.iter_mut().enumerate() {
            *slot = self.partial(x, r, |y| self.metric(y))?;
        }
        Ok(out)
    }

    /// Levi-Civita coefficients Γ^r_{mn}.
    pub fn christoffel(&self, x: &Point) -> Result<Gamma> {
        let ginv = self.metric_inv(x)?;
        Ok(christoffel_from(&ginv, &self.metric_partials(x)?))
    }

    /// Γ^r_{mn} from finite-difference metric partials.
    pub fn christoffel_fd(&self, x: &Point) -> Result<Gamma> {
        let ginv = self.metric_inv(x)?;
        Ok(christoffel_from(&ginv, &self.metric_partials_fd(x)?))
    }

    /// ∂_k Γ^r_{mn}, indexed `[k][r][m][n]`.
    pub fn christoffel_partials(&self, x: &Point) -> Result<[Gamma; 4]> {
        let mut out = [[[[0.0; 4]; 4]; 4]; 4];
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = self.partial(x, k, |y| self.christoffel(y))?;
        }
        Ok(out)
    }

    /// Riemann tensor R^r_{smn}.
    pub fn riemann(&self, x: &Point) -> Result<Riemann> {
        let gam = self.christoffel(x)?;
        let dgam = self.christoffel_partials(x)?;
        Ok(riemann_from(&gam, &dgam))
    }

    /// Metric, inverse, volume factor, connection and curvature at x.
    pub fn geometry(&self, x: &Point) -> Result<GeometryAtPoint> {
        let g = self.metric(x)?;
        let g_inv = invert(&g, x)?;
        let christoffel = christoffel_from(&g_inv, &self.metric_partials(x)?);
        let riemann = riemann_from(&christoffel, &self.christoffel_partials(x)?);
        let mut ricci = [[0.0; 4]; 4];
        for n in 0..4 {
            for s in 0..4 {
                ricci[n][s] = (0..4).map(|m| riemann[m][n][s][m]).sum();
            }
        }
        let scalar = (0..4).flat_map(|a| (0..4).map(move |b| (a, b))).map(|(a, b)| g_inv[a][b] * ricci[a][b]).sum();
        Ok(GeometryAtPoint {
            point: *x,
            sqrt_neg_det: det4(&g).abs().sqrt(),
            g,
            g_inv,
            christoffel,
            riemann: Some(riemann),
            ricci,
            scalar,
        })
    }
}

/// Everything the calculus needs at one point.
#[derive(Clone, Debug)]
pub struct GeometryAtPoint {
    pub point: Point,
    pub g: Mat4,
    pub g_inv: Mat4,
    /// √|det g|.
    pub sqrt_neg_det: f64,
    pub christoffel: Gamma,
    pub riemann: Option<Riemann>,
    /// R_{ns} = R^m_{nsm}.
    pub ricci: Mat4,
    pub scalar: f64,
}

impl GeometryAtPoint {
    /// R^μ_ν = g^{μσ}R_{σν}.
    pub fn ricci_mixed(&self) -> Mat4 {
        matmul(&self.g_inv, &self.ricci)
    }

    /// G^μ_ν = R^μ_ν − ½δ^μ_ν R.
    pub fn einstein_mixed(&self) -> Mat4 {
        let mut e = self.ricci_mixed();
        for (i, row) in e.iter_mut().enumerate() {
            row[i] -= 0.5 * self.scalar;
        }
        e
    }
}

pub(crate) fn christoffel_from(ginv: &Mat4, dg: &[Mat4; 4]) -> Gamma {
    let mut gam = [[[0.0; 4]; 4]; 4];
    for r in 0..4 {
        for m in 0..4 {
            for n in m..4 {
                let mut s = 0.0;
                for l in 0..4 {
                    if ginv[r][l] != 0.0 {
                        s += ginv[r][l] * (dg[m][l][n] + dg[n][l][m] - dg[l][m][n]);
                    }
                }
                gam[r][m][n] = 0.5 * s;
                gam[r][n][m] = 0.5 * s;
            }
        }
    }
    gam
}

pub(crate) fn riemann_from(gam: &Gamma, dgam: &[Gamma; 4]) -> Riemann {
    let mut r = [[[[0.0; 4]; 4]; 4]; 4];
    for a in 0..4 {
        for s in 0..4 {
            for m in 0..4 {
                for n in 0..4 {
                    let mut v = dgam[m][a][n][s] - dgam[n][a][m][s];
                    for l in 0..4 {
                        v += gam[a][m][l] * gam[l][n][s] - gam[a][n][l] * gam[l][m][s];
                    }
                    r[a][s][m][n] = v;
                }
            }
        }
    }
    r
}

/// Diagonal matrix.
pub fn diag(d: [f64; 4]) -> Mat4 {
    let mut m = [[0.0; 4]; 4];
    for i in 0..4 {
        m[i][i] = d[i];
    }
    m
}

pub fn matmul(a: &Mat4, b: &Mat4) -> Mat4 {
    let mut c = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            c[i][j] = (0..4).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    c
}

pub fn mat_vec(a: &Mat4, v: &[f64; 4]) -> [f64; 4] {
    let mut out = [0.0; 4];
    for i in 0..4 {
        out[i] = (0..4).map(|k| a[i][k] * v[k]).sum();
    }
    out
}

pub fn det4(m: &Mat4) -> f64 {
    to_na(m).determinant()
}

pub(crate) fn to_na(m: &Mat4) -> Matrix4<f64> {
    Matrix4::from_fn(|i, j| m[i][j])
}

pub(crate) fn from_na(m: &Matrix4<f64>) -> Mat4 {
    let mut out = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = m[(i, j)];
        }
    }
    out
}

fn is_diag(m: &Mat4) -> bool {
    (0..4).all(|i| (0..4).all(|j| i == j || m[i][j] == 0.0))
}

/// Inverse of a general 4×4 matrix.
pub fn inverse(m: &Mat4, x: &Point) -> Result<Mat4> {
    let det = det4(m);
    if !(det.abs() > 1e-12) {
        return Err(Error::Degenerate(format!("matrix determinant {det:e} at {x:?}")));
    }
    to_na(m)
        .try_inverse()
        .map(|i| from_na(&i))
        .ok_or_else(|| Error::Degenerate(format!("singular matrix at {x:?}")))
}

/// Inverse of a symmetric metric, symmetrized; diagonal input stays exactly diagonal.
pub fn invert(g: &Mat4, x: &Point) -> Result<Mat4> {
    if is_diag(g) {
        let mut out = [[0.0; 4]; 4];
        let mut det = 1.0;
        for i in 0..4 {
            det *= g[i][i];
            out[i][i] = 1.0 / g[i][i];
        }
        if !(det.abs() > 1e-12) {
            return Err(Error::Degenerate(format!("metric determinant {det:e} at {x:?}")));
        }
        return Ok(out);
    }
    let det = det4(g);
    if !(det.abs() > 1e-12) {
        return Err(Error::Degenerate(format!("metric determinant {det:e} at {x:?}")));
    }
    let inv = to_na(g)
        .try_inverse()
        .ok_or_else(|| Error::Degenerate(format!("singular metric at {x:?}")))?;
    let mut out = from_na(&inv);
    for i in 0..4 {
        for j in i + 1..4 {
            let s = 0.5 * (out[i][j] + out[j][i]);
            out[i][j] = s;
            out[j][i] = s;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minkowski_is_flat() {
        let geo = Chart::minkowski().geometry(&[0.3, -1.0, 2.0, 0.5]).unwrap();
        assert!(geo.christoffel.iter().flatten().flatten().all(|&c| c == 0.0));
        assert_eq!(geo.scalar, 0.0);
    }

    #[test]
    fn richardson_is_exact_on_quartics() {
        let c = Chart::minkowski();
        let d = c.partial(&[0.7, 0.0, 0.0, 0.0], 0, |y| Ok(y[0].powi(4))).unwrap();
        assert!((d - 4.0 * 0.7f64.powi(3)).abs() < 1e-10);
    }

    #[test]
    fn stencil_leaving_domain_is_an_error() {
        let c = Chart::schwarzschild(1.0);
        let x = [0.0, 2.0 + 1e-4, 1.0, 0.0];
        assert!(matches!(c.metric_partials_fd(&x), Err(Error::Domain { .. })));
    }

    #[test]
    fn schwarzschild_partials_match_fd() {
        let c = Chart::schwarzschild(1.0);
        let x = [0.0, 7.0, 1.1, 0.3];
        let a = c.christoffel(&x).unwrap();
        let b = c.christoffel_fd(&x).unwrap();
        for r in 0..4 {
            for m in 0..4 {
                for n in 0..4 {
                    assert!((a[r][m][n] - b[r][m][n]).abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn schwarzschild_is_ricci_flat() {
        let geo = Chart::schwarzschild(1.0).geometry(&[0.0, 6.0, 0.9, 0.0]).unwrap();
        for row in geo.ricci {
            for v in row {
                assert!(v.abs() < 1e-8, "{v}");
            }
        }
    }

    #[test]
    fn registry_rejects_unknown() {
        assert!(Chart::from_registry("kerr", &ChartParams::default()).is_err());
    }
}
