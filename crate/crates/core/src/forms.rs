//! Differential forms on a chart, valued in the Clifford bundle.
//!
//! A [`FormField`] returns coefficients in the coordinate cobasis dx^μ; when
//! evaluated it is wrapped over the cotangent signature g^{μν}(x). All the
//! operators here build new fields lazily, so they nest: `f.d().codiff()` is
//! a field whose evaluation differentiates `f.d()` numerically, which in
//! turn differentiates `f`.

use std::sync::Arc;

use crate::chart::{Chart, Gamma, Point};
use crate::clifford::{blade_grade, reorder_sign, Coeffs, Multivector, MAX_BLADES};
use crate::error::{Error, Result};
use crate::tensors::VectorField;

type CoeffFn = Arc<dyn Fn(&Point) -> Result<Coeffs> + Send + Sync>;

const FULL: usize = 16;

/// A (possibly inhomogeneous) form field on a 4-dimensional chart.
#[derive(Clone)]
pub struct FormField {
    chart: Chart,
    grade: Option<usize>,
    f: CoeffFn,
}

impl std::fmt::Debug for FormField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FormField").field("chart", &self.chart.name()).field("grade", &self.grade).finish()
    }
}

impl FormField {
    /// A field from blade coefficients in the dx^μ cobasis. `grade` is the
    /// declared grade (`None` for mixed fields); evaluation rejects values
    /// with components outside it.
    pub fn from_coeffs(
        chart: &Chart,
        grade: Option<usize>,
        f: impl Fn(&Point) -> Result<Coeffs> + Send + Sync + 'static,
    ) -> Self {
        FormField { chart: chart.clone(), grade, f: Arc::new(f) }
    }

    /// A 0-form.
    pub fn scalar(chart: &Chart, f: impl Fn(&Point) -> f64 + Send + Sync + 'static) -> Self {
        Self::from_coeffs(chart, Some(0), move |x| {
            let mut c = [0.0; MAX_BLADES];
            c[0] = f(x);
            Ok(c)
        })
    }

    /// A 1-form A_μ dx^μ.
    pub fn one_form(chart: &Chart, f: impl Fn(&Point) -> [f64; 4] + Send + Sync + 'static) -> Self {
        Self::from_coeffs(chart, Some(1), move |x| {
            let a = f(x);
            let mut c = [0.0; MAX_BLADES];
            for (mu, v) in a.iter().enumerate() {
                c[1 << mu] = *v;
            }
            Ok(c)
        })
    }

    /// A 2-form ½F_{μν} dx^μ∧dx^ν from an antisymmetric component matrix.
    pub fn two_form(chart: &Chart, f: impl Fn(&Point) -> [[f64; 4]; 4] + Send + Sync + 'static) -> Self {
        Self::from_coeffs(chart, Some(2), move |x| {
            let m = f(x);
            let mut c = [0.0; MAX_BLADES];
            for mu in 0..4 {
                for nu in mu + 1..4 {
                    c[(1 << mu) | (1 << nu)] = m[mu][nu];
                }
            }
            Ok(c)
        })
    }

    /// The zero field of a given grade.
    pub fn zero(chart: &Chart, grade: usize) -> Self {
        Self::from_coeffs(chart, Some(grade), |_| Ok([0.0; MAX_BLADES]))
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn grade(&self) -> Option<usize> {
        self.grade
    }

    /// Raw coefficients at x.
    pub fn coeffs(&self, x: &Point) -> Result<Coeffs> {
        let c = (self.f)(x)?;
        if let Some(k) = self.grade {
            for (m, &v) in c.iter().enumerate() {
                if v != 0.0 && (m >= FULL || blade_grade(m) != k) {
                    return Err(Error::InvalidInput(format!(
                        "form field declared grade {k} has a component on blade {m:#06b}"
                    )));
                }
            }
        }
        Ok(c)
    }

    /// Value at x over the cotangent signature there.
    pub fn eval(&self, x: &Point) -> Result<Multivector> {
        let c = self.coeffs(x)?;
        Multivector::from_coeffs(&self.chart.cotangent_signature(x)?, &c)
    }

    /// A field computed pointwise from the value of this one.
    pub fn map(
        &self,
        grade: Option<usize>,
        op: impl Fn(&Point, Multivector) -> Result<Multivector> + Send + Sync + 'static,
    ) -> Self {
        let src = self.clone();
        Self::from_coeffs(&self.chart, grade, move |x| Ok(*op(x, src.eval(x)?)?.coeffs()))
    }

    /// Pointwise combination of two fields.
    pub fn zip(
        &self,
        other: &FormField,
        grade: Option<usize>,
        op: impl Fn(&Point, Multivector, Multivector) -> Result<Multivector> + Send + Sync + 'static,
    ) -> Self {
        let (a, b) = (self.clone(), other.clone());
        Self::from_coeffs(&self.chart, grade, move |x| Ok(*op(x, a.eval(x)?, b.eval(x)?)?.coeffs()))
    }

    fn same_grade(&self, other: &FormField) -> Option<usize> {
        if self.grade == other.grade {
            self.grade
        } else {
            None
        }
    }

    pub fn add(&self, other: &FormField) -> Self {
        self.zip(other, self.same_grade(other), |_, a, b| Ok(a + b))
    }

    pub fn sub(&self, other: &FormField) -> Self {
        self.zip(other, self.same_grade(other), |_, a, b| Ok(a - b))
    }

    pub fn scale(&self, k: f64) -> Self {
        self.map(self.grade, move |_, a| Ok(a * k))
    }

    /// Pointwise multiplication by a scalar function.
    pub fn scale_by(&self, k: impl Fn(&Point) -> Result<f64> + Send + Sync + 'static) -> Self {
        self.map(self.grade, move |x, a| Ok(a * k(x)?))
    }

    /// Grade projection.
    pub fn grade_part(&self, k: usize) -> Self {
        self.map(Some(k), move |_, a| Ok(a.grade(k)))
    }

    pub fn wedge(&self, other: &FormField) -> Self {
        let grade = match (self.grade, other.grade) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        self.zip(other, grade, |_, a, b| a.wedge(&b))
    }

    /// Pointwise Clifford product.
    pub fn gp(&self, other: &FormField) -> Self {
        self.zip(other, None, |_, a, b| a.gp(&b))
    }

    /// Pointwise left contraction.
    pub fn lc(&self, other: &FormField) -> Self {
        let grade = match (self.grade, other.grade) {
            (Some(a), Some(b)) if a <= b => Some(b - a),
            _ => None,
        };
        self.zip(other, grade, |_, a, b| a.lc(&b))
    }

    /// Pointwise Hodge dual.
    pub fn hodge(&self) -> Self {
        self.map(self.grade.map(|k| 4 - k), |_, a| Ok(a.hodge()))
    }

    /// Pointwise inverse Hodge dual.
    pub fn hodge_inv(&self) -> Self {
        self.map(self.grade.map(|k| 4 - k), |_, a| Ok(a.hodge_inv()))
    }

    /// ∂_μ of the coefficients (not a covariant object).
    pub fn partial(&self, mu: usize) -> Self {
        let src = self.clone();
        Self::from_coeffs(&self.chart, self.grade, move |x| src.chart.partial(x, mu, |y| src.coeffs(y)))
    }

    /// Exterior derivative dA = dx^μ ∧ ∂_μA.
    pub fn d(&self) -> Self {
        let src = self.clone();
        let grade = self.grade.map(|k| k + 1);
        Self::from_coeffs(&self.chart, grade, move |x| {
            let mut out = [0.0; MAX_BLADES];
            for mu in 0..4 {
                let dc = src.chart.partial(x, mu, |y| src.coeffs(y))?;
                let bit = 1 << mu;
                for (m, &v) in dc.iter().enumerate().take(FULL) {
                    if v != 0.0 && m & bit == 0 {
                        out[m | bit] += reorder_sign(bit, m) * v;
                    }
                }
            }
            Ok(out)
        })
    }

    /// Codifferential δA_p = (−1)^p ⋆⁻¹ d ⋆ A_p, applied grade by grade.
    pub fn codiff(&self) -> Self {
        let grades: Vec<usize> = match self.grade {
            Some(k) => vec![k],
            None => (0..=4).collect(),
        };
        let mut acc: Option<FormField> = None;
        for p in grades {
            let part = if self.grade.is_some() { self.clone() } else { self.grade_part(p) };
            let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
            let term = if p == 0 {
                FormField::zero(&self.chart, 0).retag(None)
            } else {
                part.hodge().d().hodge_inv().scale(sign)
            };
            acc = Some(match acc {
                None => term,
                Some(a) => a.add(&term),
            });
        }
        let out = acc.expect("at least one grade");
        match self.grade {
            Some(0) => FormField::zero(&self.chart, 0),
            Some(k) => out.retag(Some(k - 1)),
            None => out.retag(None),
        }
    }

    fn retag(mut self, grade: Option<usize>) -> Self {
        self.grade = grade;
        self
    }

    /// Levi-Civita covariant derivative D_{∂β} of the form, using
    /// D_β dx^ν = −Γ^ν_{βρ} dx^ρ extended as a derivation.
    pub fn cov_deriv(&self, beta: usize) -> Self {
        let src = self.clone();
        Self::from_coeffs(&self.chart, self.grade, move |x| {
            let mut out = src.chart.partial(x, beta, |y| src.coeffs(y))?;
            let gam = src.chart.christoffel(x)?;
            let c = src.coeffs(x)?;
            connection_action(&gam, beta, &c, &mut out);
            Ok(out)
        })
    }

    /// Dirac operator ∂A = dx^α (D_α A), Clifford product.
    pub fn dirac(&self) -> Self {
        let src = self.clone();
        let derivs: Vec<FormField> = (0..4).map(|a| self.cov_deriv(a)).collect();
        Self::from_coeffs(&self.chart, None, move |x| {
            let sig = src.chart.cotangent_signature(x)?;
            let mut acc = Multivector::zero(&sig);
            for (a, da) in derivs.iter().enumerate() {
                let v = Multivector::from_coeffs(&sig, &da.coeffs(x)?)?;
                acc += &Multivector::basis_vector(&sig, a).gp(&v)?;
            }
            Ok(*acc.coeffs())
        })
    }

    /// dA − δA, the Dirac operator assembled from its two pieces.
    pub fn dirac_split(&self) -> (FormField, FormField) {
        (self.d(), self.codiff())
    }

    /// Covariant D'Alembertian g^{αβ}(D_αD_β − Γ^ρ_{αβ}D_ρ)A.
    pub fn dalembertian(&self) -> Self {
        let first: Vec<FormField> = (0..4).map(|b| self.cov_deriv(b)).collect();
        let second: Vec<Vec<FormField>> =
            (0..4).map(|a| (0..4).map(|b| first[b].cov_deriv(a)).collect()).collect();
        let chart = self.chart.clone();
        Self::from_coeffs(&self.chart, self.grade, move |x| {
            let ginv = chart.metric_inv(x)?;
            let gam = chart.christoffel(x)?;
            let mut firsts = Vec::with_capacity(4);
            for f in &first {
                firsts.push(f.coeffs(x)?);
            }
            let mut out = [0.0; MAX_BLADES];
            for a in 0..4 {
                for b in 0..4 {
                    if ginv[a][b] == 0.0 {
                        continue;
                    }
                    let dd = second[a][b].coeffs(x)?;
                    for m in 0..FULL {
                        let mut v = dd[m];
                        for (r, fr) in firsts.iter().enumerate() {
                            v -= gam[r][a][b] * fr[m];
                        }
                        out[m] += ginv[a][b] * v;
                    }
                }
            }
            Ok(out)
        })
    }

    /// Ricci operator ½ (dx^α∧dx^β)([D_α, D_β]A), Clifford product.
    pub fn ricci_op(&self) -> Self {
        let first: Vec<FormField> = (0..4).map(|b| self.cov_deriv(b)).collect();
        let second: Vec<Vec<FormField>> =
            (0..4).map(|a| (0..4).map(|b| first[b].cov_deriv(a)).collect()).collect();
        let chart = self.chart.clone();
        Self::from_coeffs(&self.chart, None, move |x| {
            let sig = chart.cotangent_signature(x)?;
            let mut acc = Multivector::zero(&sig);
            for a in 0..4 {
                for b in a + 1..4 {
                    let ab = second[a][b].coeffs(x)?;
                    let ba = second[b][a].coeffs(x)?;
                    let mut comm = [0.0; MAX_BLADES];
                    for m in 0..FULL {
                        comm[m] = ab[m] - ba[m];
                    }
                    let biv = Multivector::blade(&sig, (1 << a) | (1 << b), 1.0);
                    // the a<b and b>a terms of the ½ Σ are equal
                    acc += &biv.gp(&Multivector::from_coeffs(&sig, &comm)?)?;
                }
            }
            Ok(*acc.coeffs())
        })
    }

    /// Interior product with a vector field, ξ⌟A with ξ lowered by the metric.
    pub fn interior(&self, xi: &VectorField) -> Self {
        let flat = xi.flat(&self.chart);
        flat.lc(self)
    }

    /// Lie derivative by Cartan's formula £_ξA = ξ⌟dA + d(ξ⌟A).
    pub fn lie_derivative(&self, xi: &VectorField) -> Self {
        self.d().interior(xi).add(&self.interior(xi).d())
    }
}

/// Adds −Σ Γ^ν_{βρ} (dx^ν → dx^ρ) to `out` for the coefficients `c`.
pub(crate) fn connection_action(gam: &Gamma, beta: usize, c: &Coeffs, out: &mut Coeffs) {
    for (m, &v) in c.iter().enumerate().take(FULL) {
        if v == 0.0 {
            continue;
        }
        for nu in 0..4 {
            let nb = 1 << nu;
            if m & nb == 0 {
                continue;
            }
            let rest = m ^ nb;
            // move dx^ν to the front, then put dx^ρ back in order
            let s1 = reorder_sign(nb, rest);
            for (rho, gamma_row) in gam[nu][beta].iter().enumerate() {
                let rb = 1 << rho;
                if *gamma_row == 0.0 || rest & rb != 0 {
                    continue;
                }
                let s2 = reorder_sign(rb, rest);
                out[rest | rb] -= s1 * s2 * gamma_row * v;
            }
        }
    }
}

/// dA at x.
pub fn exterior_derivative(f: &FormField, x: &Point) -> Result<Multivector> {
    check_grade(f, |k| k <= 3, "exterior derivative needs grade <= 3")?;
    f.d().eval(x)
}

/// δA at x.
pub fn codifferential(f: &FormField, x: &Point) -> Result<Multivector> {
    check_grade(f, |k| k >= 1, "codifferential needs grade >= 1")?;
    f.codiff().eval(x)
}

/// Pieces of the Dirac operator at x.
#[derive(Clone, Debug)]
pub struct DiracParts {
    /// ∂A.
    pub total: Multivector,
    /// dA.
    pub d: Multivector,
    /// δA.
    pub delta: Multivector,
}

/// ∂A at x together with dA and δA.
pub fn dirac_apply(f: &FormField, x: &Point) -> Result<DiracParts> {
    let d = f.d().eval(x)?;
    let delta = if f.grade() == Some(0) { Multivector::zero(d.signature()) } else { f.codiff().eval(x)? };
    Ok(DiracParts { total: &d - &delta, d, delta })
}

/// ∂·∂A at x.
pub fn dalembertian_apply(f: &FormField, x: &Point) -> Result<Multivector> {
    f.dalembertian().eval(x)
}

/// ∂∧∂ dx^μ at x.
pub fn ricci_operator_apply(chart: &Chart, mu: usize, x: &Point) -> Result<Multivector> {
    FormField::one_form(chart, move |_| {
        let mut a = [0.0; 4];
        a[mu] = 1.0;
        a
    })
    .ricci_op()
    .eval(x)
}

/// £_ξA at x.
pub fn lie_derivative(xi: &VectorField, f: &FormField, x: &Point) -> Result<Multivector> {
    f.lie_derivative(xi).eval(x)
}

fn check_grade(f: &FormField, ok: impl Fn(usize) -> bool, msg: &str) -> Result<()> {
    match f.grade() {
        Some(k) if !ok(k) => Err(Error::InvalidInput(msg.into())),
        _ => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d_of_linear_coefficient() {
        let c = Chart::minkowski();
        let a = FormField::one_form(&c, |x| [x[1], 0.0, 0.0, 0.0]);
        let da = a.d().eval(&[0.1, 0.2, 0.3, 0.4]).unwrap();
        // dx¹∧dx⁰ = −dx⁰∧dx¹
        assert!((da.get(0b11) + 1.0).abs() < 1e-12);
    }

    #[test]
    fn dirac_of_t_dt() {
        let c = Chart::minkowski();
        let a = FormField::one_form(&c, |x| [x[0], 0.0, 0.0, 0.0]);
        let parts = dirac_apply(&a, &[0.5, 0.0, 0.0, 0.0]).unwrap();
        // dx^μ ∂_μ (t dx⁰) = dx⁰dx⁰ = g^{00}, so δ(t dt) = −1.
        assert!((parts.total.scalar_part() - 1.0).abs() < 1e-10);
        assert!(parts.total.grade(2).norm_inf() < 1e-10);
        assert!((parts.delta.scalar_part() + 1.0).abs() < 1e-10);
    }

    #[test]
    fn dalembertian_of_t_squared() {
        let c = Chart::minkowski();
        let f = FormField::scalar(&c, |x| x[0] * x[0]);
        let v = dalembertian_apply(&f, &[0.3, 0.1, 0.0, 0.0]).unwrap();
        assert!((v.scalar_part() - 2.0).abs() < 1e-8);
    }

    #[test]
    fn declared_grade_is_enforced() {
        let c = Chart::minkowski();
        let bad = FormField::from_coeffs(&c, Some(1), |_| {
            let mut k = [0.0; MAX_BLADES];
            k[0] = 1.0;
            Ok(k)
        });
        assert!(bad.eval(&[0.0; 4]).is_err());
    }

    #[test]
    fn codifferential_of_scalar_rejected() {
        let c = Chart::minkowski();
        assert!(codifferential(&FormField::scalar(&c, |_| 1.0), &[0.0; 4]).is_err());
    }
}
