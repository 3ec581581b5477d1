//! Vector fields, mixed (1,1) tensor fields and the conserved-current
//! identities built from them.

use std::sync::Arc;

use crate::chart::{Chart, Mat4, Point};
use crate::clifford::{Multivector, MAX_BLADES};
use crate::error::{Error, Result};
use crate::forms::FormField;

type VecFn = Arc<dyn Fn(&Point) -> Result<[f64; 4]> + Send + Sync>;
type MatFn = Arc<dyn Fn(&Point) -> Result<Mat4> + Send + Sync>;

/// Vector field V^μ(x) in the coordinate basis ∂_μ.
#[derive(Clone)]
pub struct VectorField {
    f: VecFn,
}

impl std::fmt::Debug for VectorField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("VectorField")
    }
}

impl VectorField {
    pub fn new(f: impl Fn(&Point) -> Result<[f64; 4]> + Send + Sync + 'static) -> Self {
        VectorField { f: Arc::new(f) }
    }

    pub fn from_fn(f: impl Fn(&Point) -> [f64; 4] + Send + Sync + 'static) -> Self {
        Self::new(move |x| Ok(f(x)))
    }

    pub fn constant(v: [f64; 4]) -> Self {
        Self::from_fn(move |_| v)
    }

    pub fn zero() -> Self {
        Self::constant([0.0; 4])
    }

    pub fn eval(&self, x: &Point) -> Result<[f64; 4]> {
        (self.f)(x)
    }

    pub fn scale(&self, k: f64) -> Self {
        let f = self.clone();
        Self::new(move |x| Ok(f.eval(x)?.map(|v| v * k)))
    }

    /// The metric-equivalent 1-form V_μ = g_{μν}V^ν.
    pub fn flat(&self, chart: &Chart) -> FormField {
        let (f, c) = (self.clone(), chart.clone());
        FormField::from_coeffs(chart, Some(1), move |x| {
            let v = f.eval(x)?;
            let g = c.metric(x)?;
            let mut out = [0.0; MAX_BLADES];
            for mu in 0..4 {
                out[1 << mu] = (0..4).map(|n| g[mu][n] * v[n]).sum();
            }
            Ok(out)
        })
    }

    /// ∂_μ V^ν, indexed `[μ][ν]`.
    pub fn jacobian(&self, chart: &Chart, x: &Point) -> Result<Mat4> {
        let mut out = [[0.0; 4]; 4];
        for (mu, row) in out.iter_mut().enumerate() {
            *row = chart.partial(x, mu, |y| self.eval(y))?;
        }
        Ok(out)
    }

    /// Lie bracket [V, W]^μ = V^ν∂_νW^μ − W^ν∂_νV^μ.
    pub fn bracket(&self, other: &VectorField, chart: &Chart) -> VectorField {
        let (a, b, c) = (self.clone(), other.clone(), chart.clone());
        VectorField::new(move |x| {
            let (va, vb) = (a.eval(x)?, b.eval(x)?);
            let (ja, jb) = (a.jacobian(&c, x)?, b.jacobian(&c, x)?);
            let mut out = [0.0; 4];
            for (mu, o) in out.iter_mut().enumerate() {
                *o = (0..4).map(|n| va[n] * jb[n][mu] - vb[n] * ja[n][mu]).sum();
            }
            Ok(out)
        })
    }
}

/// (£_ξ g)_{μν} = D_μξ_ν + D_νξ_μ.
pub fn lie_derivative_metric(xi: &VectorField, chart: &Chart, x: &Point) -> Result<Mat4> {
    let lower = |y: &Point| -> Result<[f64; 4]> {
        let v = xi.eval(y)?;
        let g = chart.metric(y)?;
        let mut out = [0.0; 4];
        for (mu, o) in out.iter_mut().enumerate() {
            *o = (0..4).map(|n| g[mu][n] * v[n]).sum();
        }
        Ok(out)
    };
    let low = lower(x)?;
    let gam = chart.christoffel(x)?;
    let mut dlow = [[0.0; 4]; 4];
    for (mu, row) in dlow.iter_mut().enumerate() {
        *row = chart.partial(x, mu, lower)?;
    }
    let mut out = [[0.0; 4]; 4];
    for mu in 0..4 {
        for nu in 0..4 {
            let conn: f64 = (0..4).map(|r| 2.0 * gam[r][mu][nu] * low[r]).sum();
            out[mu][nu] = dlow[mu][nu] + dlow[nu][mu] - conn;
        }
    }
    Ok(out)
}

/// Largest |(£_ξ g)_{μν}| at x.
pub fn killing_residual(xi: &VectorField, chart: &Chart, x: &Point) -> Result<f64> {
    Ok(max_abs(&lie_derivative_metric(xi, chart, x)?))
}

pub(crate) fn max_abs(m: &Mat4) -> f64 {
    m.iter().flatten().fold(0.0f64, |a, v| a.max(v.abs()))
}

/// Mixed tensor field W^α_β(x), stored `[α][β]`.
#[derive(Clone)]
pub struct MixedTensorField {
    f: MatFn,
    symmetric: bool,
}

impl std::fmt::Debug for MixedTensorField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MixedTensorField").field("symmetric", &self.symmetric).finish()
    }
}

impl MixedTensorField {
    /// `symmetric` declares W^{αβ} = W^{βα}.
    pub fn new(symmetric: bool, f: impl Fn(&Point) -> Result<Mat4> + Send + Sync + 'static) -> Self {
        MixedTensorField { f: Arc::new(f), symmetric }
    }

    pub fn zero() -> Self {
        Self::new(true, |_| Ok([[0.0; 4]; 4]))
    }

    /// δ^α_β.
    pub fn identity() -> Self {
        Self::new(true, |_| Ok(crate::chart::diag([1.0; 4])))
    }

    /// Einstein tensor G^μ_ν = R^μ_ν − ½δR of the chart.
    pub fn einstein(chart: &Chart) -> Self {
        let c = chart.clone();
        Self::new(true, move |x| Ok(c.geometry(x)?.einstein_mixed()))
    }

    /// Matter tensor T = −G of the chart (Einstein equations G = −T).
    pub fn matter(chart: &Chart) -> Self {
        Self::einstein(chart).scale(-1.0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn eval(&self, x: &Point) -> Result<Mat4> {
        (self.f)(x)
    }

    pub fn scale(&self, k: f64) -> Self {
        let f = self.clone();
        Self::new(self.symmetric, move |x| Ok(f.eval(x)?.map(|r| r.map(|v| v * k))))
    }

    /// W^{αβ} = W^α_γ g^{γβ}.
    pub fn raised(&self, chart: &Chart, x: &Point) -> Result<Mat4> {
        Ok(crate::chart::matmul(&self.eval(x)?, &chart.metric_inv(x)?))
    }

    /// W_{αβ} = g_{αγ}W^γ_β.
    pub fn lowered(&self, chart: &Chart, x: &Point) -> Result<Mat4> {
        Ok(crate::chart::matmul(&chart.metric(x)?, &self.eval(x)?))
    }

    /// trace W^α_α.
    pub fn trace(&self, x: &Point) -> Result<f64> {
        let w = self.eval(x)?;
        Ok((0..4).map(|i| w[i][i]).sum())
    }

    /// Largest asymmetry of the raised components.
    pub fn symmetry_defect(&self, chart: &Chart, x: &Point) -> Result<f64> {
        let r = self.raised(chart, x)?;
        let mut m = 0.0f64;
        for a in 0..4 {
            for b in 0..4 {
                m = m.max((r[a][b] - r[b][a]).abs());
            }
        }
        Ok(m)
    }
}

/// D_αW^α_β = ∂_αW^α_β + Γ^α_{αι}W^ι_β − Γ^ι_{αβ}W^α_ι.
pub fn divergence_components(w: &MixedTensorField, chart: &Chart, x: &Point) -> Result<[f64; 4]> {
    let wx = w.eval(x)?;
    let gam = chart.christoffel(x)?;
    let mut out = [0.0; 4];
    for a in 0..4 {
        let dw = chart.partial(x, a, |y| w.eval(y))?;
        for b in 0..4 {
            out[b] += dw[a][b];
        }
    }
    for (b, o) in out.iter_mut().enumerate() {
        for a in 0..4 {
            for i in 0..4 {
                *o += gam[a][a][i] * wx[i][b] - gam[i][a][b] * wx[a][i];
            }
        }
    }
    Ok(out)
}

/// (D_αW^α_β) dx^β as a grade-1 multivector.
pub fn divergence_mixed(w: &MixedTensorField, chart: &Chart, x: &Point) -> Result<Multivector> {
    let d = divergence_components(w, chart, x)?;
    Ok(Multivector::vector(&chart.cotangent_signature(x)?, &d))
}

/// Current 𝒥_V with components 𝒥_β = V^α W_{αβ}.
pub fn current_from_tensor(v: &VectorField, w: &MixedTensorField, chart: &Chart) -> FormField {
    let (v, w, c) = (v.clone(), w.clone(), chart.clone());
    FormField::from_coeffs(chart, Some(1), move |x| {
        let vx = v.eval(x)?;
        let wl = w.lowered(&c, x)?;
        let mut out = [0.0; MAX_BLADES];
        for b in 0..4 {
            out[1 << b] = (0..4).map(|a| vx[a] * wl[a][b]).sum();
        }
        Ok(out)
    })
}

/// Both sides of the identity
/// (£_V g)_{αβ}W^{αβ} τ = 2 d⋆𝒥_V − 2 ⋆[(D•W)(V)], in units of τ.
#[derive(Clone, Debug, PartialEq)]
pub struct DivergenceRelation {
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    /// |λ tr W − (d⋆𝒥_V − ⋆[(D•W)(V)])/τ| when a conformal factor λ was supplied.
    pub conformal_residual: Option<f64>,
}

/// Evaluate the current/divergence identity at x. `lambda` is the conformal
/// factor in £_V g = 2λg when V is conformal Killing.
pub fn divergence_relation_check(
    v: &VectorField,
    w: &MixedTensorField,
    chart: &Chart,
    x: &Point,
    lambda: Option<f64>,
) -> Result<DivergenceRelation> {
    if !w.is_symmetric() {
        return Err(Error::InvalidInput("identity requires a symmetric tensor".into()));
    }
    let lie = lie_derivative_metric(v, chart, x)?;
    let raised = w.raised(chart, x)?;
    let mut lhs = 0.0;
    for a in 0..4 {
        for b in 0..4 {
            lhs += lie[a][b] * raised[a][b];
        }
    }
    let current = current_from_tensor(v, w, chart);
    let dstar = current.hodge().d().eval(x)?;
    let tau = Multivector::pseudoscalar(dstar.signature());
    let div_j = dstar.get(0b1111) / tau.get(0b1111);
    let dw = divergence_components(w, chart, x)?;
    let vx = v.eval(x)?;
    let dwv: f64 = (0..4).map(|b| vx[b] * dw[b]).sum();
    let rhs = 2.0 * div_j - 2.0 * dwv;
    let conformal_residual = match lambda {
        Some(l) => Some((l * w.trace(x)? - (div_j - dwv)).abs()),
        None => None,
    };
    Ok(DivergenceRelation { lhs, rhs, residual: (lhs - rhs).abs(), conformal_residual })
}

/// Relative tensor 𝔄 of weight w with `upper` contravariant and `lower`
/// covariant indices; components are flattened with the upper indices first,
/// most significant first.
#[derive(Clone)]
pub struct RelativeTensor {
    pub upper: usize,
    pub lower: usize,
    pub weight: i32,
    f: Arc<dyn Fn(&Point) -> Result<Vec<f64>> + Send + Sync>,
}

impl RelativeTensor {
    pub fn new(
        upper: usize,
        lower: usize,
        weight: i32,
        f: impl Fn(&Point) -> Result<Vec<f64>> + Send + Sync + 'static,
    ) -> Self {
        RelativeTensor { upper, lower, weight, f: Arc::new(f) }
    }

    /// √|det g| as a weight-1 scalar density.
    pub fn volume_density(chart: &Chart) -> Self {
        let c = chart.clone();
        Self::new(0, 0, 1, move |x| Ok(vec![c.volume_factor(x)?]))
    }

    /// √|det g| T^{μν} from a mixed tensor.
    pub fn density_of(chart: &Chart, t: &MixedTensorField) -> Self {
        let (c, t) = (chart.clone(), t.clone());
        Self::new(2, 0, 1, move |x| {
            let r = t.raised(&c, x)?;
            let s = c.volume_factor(x)?;
            Ok(r.iter().flatten().map(|v| v * s).collect())
        })
    }

    pub fn rank(&self) -> usize {
        self.upper + self.lower
    }

    pub fn eval(&self, x: &Point) -> Result<Vec<f64>> {
        let v = (self.f)(x)?;
        if v.len() != 4usize.pow(self.rank() as u32) {
            return Err(Error::InvalidInput(format!("expected {} components", 4usize.pow(self.rank() as u32))));
        }
        Ok(v)
    }
}

fn digits(mut idx: usize, rank: usize) -> Vec<usize> {
    let mut d = vec![0; rank];
    for k in (0..rank).rev() {
        d[k] = idx % 4;
        idx /= 4;
    }
    d
}

fn undigits(d: &[usize]) -> usize {
    d.iter().fold(0, |acc, &v| acc * 4 + v)
}

/// ∇_κ𝔄 = ∂_κ𝔄 + Σ_upper Γ^μ_{ικ}𝔄^{…ι…} − Σ_lower Γ^ι_{νκ}𝔄_{…ι…} − wΓ^σ_{κσ}𝔄.
pub fn relative_covderiv(a: &RelativeTensor, kappa: usize, chart: &Chart, x: &Point) -> Result<Vec<f64>> {
    let rank = a.rank();
    let vals = a.eval(x)?;
    let mut out = chart.partial(x, kappa, |y| a.eval(y))?;
    let gam = chart.christoffel(x)?;
    let trace: f64 = (0..4).map(|s| gam[s][kappa][s]).sum();
    for (idx, o) in out.iter_mut().enumerate() {
        let d = digits(idx, rank);
        let mut extra = -(a.weight as f64) * trace * vals[idx];
        for slot in 0..rank {
            for i in 0..4 {
                let mut e = d.clone();
                e[slot] = i;
                let v = vals[undigits(&e)];
                if slot < a.upper {
                    extra += gam[d[slot]][i][kappa] * v;
                } else {
                    extra -= gam[i][d[slot]][kappa] * v;
                }
            }
        }
        *o += extra;
    }
    Ok(out)
}

/// ∂_ν𝔗^{μν} + Γ^μ_{να}𝔗^{αν} for a weight-1 density 𝔗^{μν}.
pub fn density_conservation_residual(t: &RelativeTensor, chart: &Chart, x: &Point) -> Result<[f64; 4]> {
    if t.upper != 2 || t.lower != 0 || t.weight != 1 {
        return Err(Error::InvalidInput("expected a weight-1 (2,0) density".into()));
    }
    let vals = t.eval(x)?;
    let gam = chart.christoffel(x)?;
    let mut out = [0.0; 4];
    for nu in 0..4 {
        let d = chart.partial(x, nu, |y| t.eval(y))?;
        for (mu, o) in out.iter_mut().enumerate() {
            *o += d[mu * 4 + nu];
        }
    }
    for (mu, o) in out.iter_mut().enumerate() {
        for nu in 0..4 {
            for al in 0..4 {
                *o += gam[mu][nu][al] * vals[al * 4 + nu];
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_divergence_of_t_component() {
        let c = Chart::minkowski();
        let w = MixedTensorField::new(false, |x| {
            let mut m = [[0.0; 4]; 4];
            m[0][0] = x[0];
            Ok(m)
        });
        let d = divergence_mixed(&w, &c, &[0.2, 0.1, 0.0, 0.0]).unwrap();
        assert!((d.get(1) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn current_of_dust() {
        let c = Chart::minkowski();
        let w = MixedTensorField::new(true, |_| Ok(crate::chart::diag([2.5, 0.0, 0.0, 0.0])));
        let j = current_from_tensor(&VectorField::constant([1.0, 0.0, 0.0, 0.0]), &w, &c);
        let v = j.eval(&[0.0; 4]).unwrap();
        assert_eq!(v.get(1), 2.5);
    }

    #[test]
    fn relation_trivial_for_zero_field() {
        let c = Chart::minkowski();
        let r =
            divergence_relation_check(&VectorField::zero(), &MixedTensorField::identity(), &c, &[0.0; 4], None).unwrap();
        assert_eq!(r.residual, 0.0);
    }

    #[test]
    fn dilation_is_conformal_killing() {
        let c = Chart::minkowski();
        let v = VectorField::from_fn(|x| *x);
        let w = MixedTensorField::new(true, |x| {
            let mut m = crate::chart::diag([1.0 + x[1], 0.5, 0.5, 0.5]);
            m[0][1] = x[2];
            m[1][0] = -x[2];
            Ok(m)
        });
        let r = divergence_relation_check(&v, &w, &c, &[0.3, 0.2, -0.1, 0.4], Some(1.0)).unwrap();
        assert!(r.residual < 1e-8, "{r:?}");
        assert!(r.conformal_residual.unwrap() < 1e-8, "{r:?}");
    }
}
