//! de Sitter space in projective conformal coordinates.
//!
//! With σ² = η_{μν}x^μx^ν and Ω = (1 − σ²/4ℓ²)⁻¹ the metric is g = Ω²η. The
//! chart is singular on the Cayley–Klein absolute σ² = 4ℓ².
//!
//! Killing fields: the four "translations" Π_α with components
//! ξ_α^μ = δ_α^μ − (2x_αx^μ − σ²δ_α^μ)/4ℓ², and the six rotations
//! J_{μν} = x_μ∂_ν − x_ν∂_μ. The translations equal J_{α4}/ℓ.

use crate::chart::{det4, inverse, invert, mat_vec, Chart, Gamma, Mat4, Point, ETA};
use crate::clifford::MAX_BLADES;
use crate::error::{Error, Result};
use crate::forms::FormField;
use crate::tensors::{MixedTensorField, VectorField};

/// Five-dimensional ambient form diag(1,−1,−1,−1,−1).
pub const ETA5: [f64; 5] = [1.0, -1.0, -1.0, -1.0, -1.0];

/// Threshold on |det ξ| below which the Killing basis counts as degenerate.
pub const BASIS_DET_TOL: f64 = 1e-10;

/// Width of the excluded band around the absolute σ² = 4ℓ².
pub const ABSOLUTE_BAND: f64 = 1e-9;

/// σ² = t² − x² − y² − z².
pub fn sigma2(x: &Point) -> f64 {
    x[0] * x[0] - x[1] * x[1] - x[2] * x[2] - x[3] * x[3]
}

/// x_μ = η_{μν}x^ν.
pub fn lower_eta(x: &Point) -> Point {
    [x[0], -x[1], -x[2], -x[3]]
}

/// The conformal chart of de Sitter space with radius ℓ.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DeSitter {
    ell: f64,
    interior: bool,
}

/// Ω, σ², metric and its analytic partials at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct OmegaMetric {
    pub omega: f64,
    pub sigma2: f64,
    pub g: Mat4,
    /// `partials[r]` = ∂_r g.
    pub partials: [Mat4; 4],
}

/// Translation and rotation Killing components at a point.
#[derive(Clone, Debug, PartialEq)]
pub struct KillingBasisSample {
    pub point: Point,
    /// `xi[α][μ]` = ξ_α^μ.
    pub xi: Mat4,
    /// `jmat[μ][ν]` = components of J_{μν}.
    pub jmat: [[[f64; 4]; 4]; 4],
    pub det_xi: f64,
}

impl DeSitter {
    pub fn new(ell: f64) -> Result<Self> {
        if !(ell.is_finite() && ell > 0.0) {
            return Err(Error::InvalidInput(format!("radius ell = {ell} must be positive")));
        }
        Ok(DeSitter { ell, interior: true })
    }

    /// Toggle the Cayley–Klein interior restriction t² − |x|² < 4ℓ².
    pub fn with_interior(mut self, interior: bool) -> Self {
        self.interior = interior;
        self
    }

    pub fn ell(&self) -> f64 {
        self.ell
    }

    pub fn interior(&self) -> bool {
        self.interior
    }

    /// `None` when x is admitted, otherwise the reason it is not.
    pub fn domain_reason(&self, x: &Point) -> Option<String> {
        let s2 = sigma2(x);
        let abs = 4.0 * self.ell * self.ell;
        if (s2 - abs).abs() < ABSOLUTE_BAND {
            Some(format!("sigma^2 = {s2} on the absolute 4 ell^2 = {abs}"))
        } else if self.interior && s2 >= abs {
            Some(format!("sigma^2 = {s2} outside the interior region"))
        } else {
            None
        }
    }

    fn check(&self, x: &Point) -> Result<()> {
        if x.iter().any(|c| !c.is_finite()) {
            return Err(Error::Domain { point: *x, reason: "non-finite coordinate".into() });
        }
        match self.domain_reason(x) {
            None => Ok(()),
            Some(reason) => Err(Error::Domain { point: *x, reason }),
        }
    }

    fn omega_raw(&self, x: &Point) -> f64 {
        1.0 / (1.0 - sigma2(x) / (4.0 * self.ell * self.ell))
    }

    pub fn omega(&self, x: &Point) -> Result<f64> {
        self.check(x)?;
        Ok(self.omega_raw(x))
    }

    fn metric_raw(&self, x: &Point) -> Mat4 {
        let o2 = self.omega_raw(x).powi(2);
        let mut g = ETA;
        for (i, row) in g.iter_mut().enumerate() {
            row[i] *= o2;
        }
        g
    }

    /// ∂_r g = 2Ω ∂_rΩ η with ∂_rΩ = Ω²x_r/2ℓ².
    fn partials_raw(&self, x: &Point) -> [Mat4; 4] {
        let om = self.omega_raw(x);
        let xl = lower_eta(x);
        let mut out = [[[0.0; 4]; 4]; 4];
        for (r, p) in out.iter_mut().enumerate() {
            let d_om = om * om * xl[r] / (2.0 * self.ell * self.ell);
            for i in 0..4 {
                p[i][i] = 2.0 * om * d_om * ETA[i][i];
            }
        }
        out
    }

    pub fn metric(&self, x: &Point) -> Result<Mat4> {
        self.check(x)?;
        Ok(self.metric_raw(x))
    }

    pub fn omega_and_metric(&self, x: &Point) -> Result<OmegaMetric> {
        self.check(x)?;
        Ok(OmegaMetric {
            omega: self.omega_raw(x),
            sigma2: sigma2(x),
            g: self.metric_raw(x),
            partials: self.partials_raw(x),
        })
    }

    /// The chart with analytic metric partials and this domain guard.
    pub fn chart(&self) -> Chart {
        let (a, b, c) = (*self, *self, *self);
        Chart::new("desitter-conformal", move |x| a.metric_raw(x), move |x| b.domain_reason(x))
            .with_partials(move |x| c.partials_raw(x))
    }

    /// Embedding into ℝ^{1,4}: X^μ = Ωx^μ, X⁴ = −ℓΩ(1 + σ²/4ℓ²).
    pub fn embed(&self, x: &Point) -> Result<[f64; 5]> {
        self.check(x)?;
        Ok(self.embed_raw(x))
    }

    fn embed_raw(&self, x: &Point) -> [f64; 5] {
        let om = self.omega_raw(x);
        let l = self.ell;
        [om * x[0], om * x[1], om * x[2], om * x[3], -l * om * (1.0 + sigma2(x) / (4.0 * l * l))]
    }

    /// |η̊(X,X) + ℓ²|, zero on the pseudo-sphere.
    pub fn embedding_constraint(&self, big_x: &[f64; 5]) -> f64 {
        let q: f64 = (0..5).map(|a| ETA5[a] * big_x[a] * big_x[a]).sum();
        (q + self.ell * self.ell).abs()
    }

    /// ∂X^κ/∂x^α indexed `[κ][α]`:
    /// ∂X^κ/∂x^α = (Ω²/2ℓ²)x_αx^κ + Ωδ, ∂X⁴/∂x^α = −Ω²x_α/ℓ.
    pub fn embedding_jacobian(&self, x: &Point) -> Result<[[f64; 4]; 5]> {
        self.check(x)?;
        let om = self.omega_raw(x);
        let l = self.ell;
        let xl = lower_eta(x);
        let mut j = [[0.0; 4]; 5];
        for k in 0..4 {
            for a in 0..4 {
                j[k][a] = om * om / (2.0 * l * l) * xl[a] * x[k] + if k == a { om } else { 0.0 };
            }
        }
        for a in 0..4 {
            j[4][a] = -om * om * xl[a] / l;
        }
        Ok(j)
    }

    /// Jacobian of [`embed`](Self::embed) by finite differences on the chart.
    pub fn embedding_jacobian_fd(&self, x: &Point) -> Result<[[f64; 4]; 5]> {
        let chart = self.chart();
        let mut j = [[0.0; 4]; 5];
        for a in 0..4 {
            let col = chart.partial(x, a, |y| self.embed(y))?;
            for k in 0..5 {
                j[k][a] = col[k];
            }
        }
        Ok(j)
    }

    /// Pullback of η̊ through a 5×4 Jacobian.
    pub fn pullback_metric(jac: &[[f64; 4]; 5]) -> Mat4 {
        let mut g = [[0.0; 4]; 4];
        for m in 0..4 {
            for n in 0..4 {
                g[m][n] = (0..5).map(|k| ETA5[k] * jac[k][m] * jac[k][n]).sum();
            }
        }
        g
    }

    /// Push a chart vector forward to ℝ^{1,4}.
    pub fn pushforward(&self, x: &Point, v: &[f64; 4]) -> Result<[f64; 5]> {
        let j = self.embedding_jacobian(x)?;
        let mut out = [0.0; 5];
        for (k, o) in out.iter_mut().enumerate() {
            *o = (0..4).map(|a| j[k][a] * v[a]).sum();
        }
        Ok(out)
    }

    /// ξ_α^μ without any domain check (a polynomial in x).
    pub fn killing_translations_raw(&self, x: &Point) -> Mat4 {
        let s2 = sigma2(x);
        let xl = lower_eta(x);
        let k = 1.0 / (4.0 * self.ell * self.ell);
        let mut xi = [[0.0; 4]; 4];
        for a in 0..4 {
            for m in 0..4 {
                let d = if a == m { 1.0 } else { 0.0 };
                xi[a][m] = d - k * (2.0 * xl[a] * x[m] - s2 * d);
            }
        }
        xi
    }

    /// ξ_α^μ, row α holds the components of Π_α.
    pub fn killing_translations(&self, x: &Point) -> Result<Mat4> {
        self.check(x)?;
        Ok(self.killing_translations_raw(x))
    }

    /// ∂_μξ_α^ν indexed `[α][μ][ν]`.
    pub fn killing_translation_partials(&self, x: &Point) -> [[[f64; 4]; 4]; 4] {
        let xl = lower_eta(x);
        let k = 1.0 / (4.0 * self.ell * self.ell);
        let mut out = [[[0.0; 4]; 4]; 4];
        for a in 0..4 {
            for m in 0..4 {
                for n in 0..4 {
                    let d_am = if a == m { ETA[a][a] } else { 0.0 };
                    let d_mn = if m == n { 1.0 } else { 0.0 };
                    let d_an = if a == n { 1.0 } else { 0.0 };
                    out[a][m][n] = -k * (2.0 * d_am * x[n] + 2.0 * xl[a] * d_mn - 2.0 * xl[m] * d_an);
                }
            }
        }
        out
    }

    /// Components of J_{μν} indexed `[μ][ν][λ]`; antisymmetric in μν.
    pub fn killing_rotations(&self, x: &Point) -> Result<[[[f64; 4]; 4]; 4]> {
        self.check(x)?;
        Ok(rotation_components(x))
    }

    /// Π_α as a vector field.
    pub fn translation_field(&self, alpha: usize) -> VectorField {
        let ds = *self;
        VectorField::new(move |x| Ok(ds.killing_translations(x)?[alpha]))
    }

    /// J_{μ4} = ℓΠ_μ as a vector field on the chart.
    pub fn boost_field(&self, mu: usize) -> VectorField {
        self.translation_field(mu).scale(self.ell)
    }

    /// J_{μν} as a vector field.
    pub fn rotation_field(&self, mu: usize, nu: usize) -> VectorField {
        let ds = *self;
        VectorField::new(move |x| Ok(ds.killing_rotations(x)?[mu][nu]))
    }

    /// All ten Killing fields, labelled.
    pub fn killing_fields(&self) -> Vec<(String, VectorField)> {
        let mut out: Vec<(String, VectorField)> =
            (0..4).map(|a| (format!("Pi_{a}"), self.translation_field(a))).collect();
        for m in 0..4 {
            for n in (m + 1)..4 {
                out.push((format!("J_{m}{n}"), self.rotation_field(m, n)));
            }
        }
        out
    }

    pub fn killing_basis_sample(&self, x: &Point) -> Result<KillingBasisSample> {
        let xi = self.killing_translations(x)?;
        Ok(KillingBasisSample { point: *x, xi, jmat: rotation_components(x), det_xi: det4(&xi) })
    }

    /// det ξ computed from the matrix. Defined everywhere, including the absolute.
    pub fn killing_det(&self, x: &Point) -> f64 {
        det4(&self.killing_translations_raw(x))
    }

    /// Factorised determinant of ξ: (1+s)³(1−s) with s = σ²/4ℓ².
    pub fn killing_det_closed_form(&self, x: &Point) -> f64 {
        let s = sigma2(x) / (4.0 * self.ell * self.ell);
        (1.0 + s).powi(3) * (1.0 - s)
    }

    /// Coefficients 𝚪^β_{μα} of D_{∂_μ}Π_α in the basis Π_β, indexed `[β][μ][α]`.
    pub fn hybrid_connection(&self, x: &Point) -> Result<Gamma> {
        let xi = self.killing_translations(x)?;
        let det = det4(&xi);
        if det.abs() < BASIS_DET_TOL {
            return Err(Error::BasisDegenerate { point: *x, det });
        }
        let gam = self.chart().christoffel(x)?;
        let dxi = self.killing_translation_partials(x);
        let xit = transpose(&xi);
        let xit_inv = inverse(&xit, x)?;
        let mut out = [[[0.0; 4]; 4]; 4];
        for m in 0..4 {
            for a in 0..4 {
                let mut v = [0.0; 4];
                for (n, vn) in v.iter_mut().enumerate() {
                    *vn = dxi[a][m][n] + (0..4).map(|l| gam[n][m][l] * xi[a][l]).sum::<f64>();
                }
                let c = mat_vec(&xit_inv, &v);
                for b in 0..4 {
                    out[b][m][a] = c[b];
                }
            }
        }
        Ok(out)
    }

    /// Frame vectors built from the Killing translations.
    pub fn frame(&self, x: &Point, mode: FrameMode) -> Result<Mat4> {
        let xi = self.killing_translations(x)?;
        let g = self.metric_raw(x);
        frame_from_vectors(&xi, &g, mode, x)
    }

    /// [`frame`](Self::frame) tagged with its mode and Gram matrix.
    pub fn tetrad_from_killing(&self, x: &Point, mode: FrameMode) -> Result<Tetrad> {
        let e = self.frame(x, mode)?;
        let g = self.metric_raw(x);
        let gram = gram(&e, &g);
        let mut defect = 0.0f64;
        for a in 0..4 {
            for b in 0..4 {
                defect = defect.max((gram[a][b] - ETA[a][b]).abs());
            }
        }
        Ok(Tetrad { mode, vectors: e, gram, orthonormality_defect: defect })
    }

    /// Torsion, contorsion and the frame Levi-Civita coefficients of the
    /// teleparallel connection that keeps the chosen Killing frame parallel.
    pub fn teleparallel(&self, x: &Point, mode: FrameMode) -> Result<Teleparallel> {
        let ds = *self;
        teleparallel_torsion_contorsion(&self.chart(), move |y| ds.frame(y, mode), x)
    }

    /// The four currents J_{Π_α} = W(Π_α, ·) for a mixed tensor W.
    pub fn killing_currents(&self, w: &MixedTensorField) -> [FormField; 4] {
        let chart = self.chart();
        std::array::from_fn(|a| crate::tensors::current_from_tensor(&self.translation_field(a), w, &chart))
    }
}

/// J_{μν}^λ = x_μδ^λ_ν − x_νδ^λ_μ.
pub fn rotation_components(x: &Point) -> [[[f64; 4]; 4]; 4] {
    let xl = lower_eta(x);
    let mut j = [[[0.0; 4]; 4]; 4];
    for m in 0..4 {
        for n in 0..4 {
            j[m][n][n] += xl[m];
            j[m][n][m] -= xl[n];
        }
    }
    j
}

/// The reduced determinant printed for y = z = 0 with ℓ = 1:
/// (σ²+4)³(−σ⁴+2σ²+8)/512.
pub fn killing_det_reduced(t: f64, x1: f64) -> f64 {
    let s2 = t * t - x1 * x1;
    (s2 + 4.0).powi(3) * (-s2 * s2 + 2.0 * s2 + 8.0) / 512.0
}

/// The component matrix with the extra σ²/4 factors,
/// δ_α^μ − ((σ²/4)(x_αx^μ)/2 − (σ²/4)δ_α^μ), at ℓ = 1.
pub fn killing_matrix_with_sigma_factors(x: &Point) -> Mat4 {
    let s2 = sigma2(x);
    let xl = lower_eta(x);
    let mut m = [[0.0; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            let d = if a == b { 1.0 } else { 0.0 };
            m[a][b] = d - (s2 / 4.0 * xl[a] * x[b] / 2.0 - s2 / 4.0 * d);
        }
    }
    m
}

/// The expanded determinant polynomial as printed, at ℓ = 1.
pub fn killing_det_expanded(x: &Point) -> f64 {
    let s = sigma2(x);
    let (t2, x2, y2, z2) = (x[0] * x[0], x[1] * x[1], x[2] * x[2], x[3] * x[3]);
    let yz = y2 * z2;
    -s.powi(5) / 512.0 - 3.0 / 32.0 * s.powi(3) + s.powi(3) / 16.0 + s + 1.0 - 3.0 / 128.0 * s.powi(4)
        - s * s / 8.0
        + s.powi(4) / 1024.0 * (3.0 * t2 * x2 * yz + t2 * yz - x2 * yz + yz)
        + s.powi(4) / 512.0 * (t2 * x2 * y2 + t2 * x2 * z2)
        + s.powi(3) / 128.0 * t2 * x2 * (y2 + z2)
        + s.powi(3) / 256.0 * (t2 * yz - x2 * yz + 2.0 * yz)
        + s * s / 64.0 * (t2 * x2 * yz + yz - x2 * yz)
        + s / 16.0 * (t2 * yz - x2 * yz - 2.0 * yz)
        + 3.0 / 8.0 * s * s
        - yz / 4.0
        + s.powi(4) / 256.0
}

/// How the frame vectors are normalised.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FrameMode {
    /// The Killing fields themselves.
    Killing,
    /// e_α = Π_α / g(Π_α, Π_α).
    Literal,
    /// e_α = Π_α / √|g(Π_α, Π_α)|.
    Unit,
}

impl FrameMode {
    pub fn name(&self) -> &'static str {
        match self {
            FrameMode::Killing => "killing",
            FrameMode::Literal => "literal",
            FrameMode::Unit => "unit",
        }
    }
}

/// Frame vectors with their Gram matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Tetrad {
    pub mode: FrameMode,
    /// `vectors[α][μ]` = e_α^μ.
    pub vectors: Mat4,
    pub gram: Mat4,
    /// max |g(e_α, e_β) − η_{αβ}|.
    pub orthonormality_defect: f64,
}

fn transpose(m: &Mat4) -> Mat4 {
    let mut t = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            t[i][j] = m[j][i];
        }
    }
    t
}

fn dot(g: &Mat4, u: &[f64; 4], v: &[f64; 4]) -> f64 {
    let mut s = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            s += g[i][j] * u[i] * v[j];
        }
    }
    s
}

/// G_{αβ} = g(e_α, e_β).
pub fn gram(e: &Mat4, g: &Mat4) -> Mat4 {
    let mut out = [[0.0; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            out[a][b] = dot(g, &e[a], &e[b]);
        }
    }
    out
}

fn frame_from_vectors(xi: &Mat4, g: &Mat4, mode: FrameMode, x: &Point) -> Result<Mat4> {
    let null = |a: usize, n: f64| Error::Degenerate(format!("Pi_{a} is null at {x:?} (g = {n:e})"));
    let mut e = *xi;
    match mode {
        FrameMode::Killing => {}
        FrameMode::Literal | FrameMode::Unit => {
            for (a, row) in e.iter_mut().enumerate() {
                let n = dot(g, &xi[a], &xi[a]);
                if n.abs() < 1e-14 {
                    return Err(null(a, n));
                }
                let k = if mode == FrameMode::Literal { n } else { n.abs().sqrt() };
                row.iter_mut().for_each(|c| *c /= k);
            }
        }
    }
    if det4(&e).abs() < BASIS_DET_TOL {
        return Err(Error::BasisDegenerate { point: *x, det: det4(&e) });
    }
    Ok(e)
}

/// Teleparallel data in a frame, all indices frame indices.
#[derive(Clone, Debug, PartialEq)]
pub struct Teleparallel {
    pub point: Point,
    /// `frame[α][μ]` = e_α^μ.
    pub frame: Mat4,
    pub gram: Mat4,
    /// `structure[κ][α][β]`: [e_α, e_β] = c^κ_{αβ} e_κ.
    pub structure: Gamma,
    /// `torsion[κ][α][β]` = T^κ_{αβ} of the connection with ∇e = 0.
    pub torsion: Gamma,
    /// `contorsion[κ][α][β]` = Δ^κ_{αβ}.
    pub contorsion: Gamma,
    /// `levi_civita[κ][α][β]`: D_{e_α}e_β = Γ^κ_{αβ} e_κ.
    pub levi_civita: Gamma,
    /// max |Γ^κ_{αβ} + Δ^κ_{αβ}|, zero when the teleparallel coefficients vanish.
    pub rel_residual: f64,
    /// max |T^κ_{αβ} + T^κ_{βα}|.
    pub antisymmetry_defect: f64,
}

/// Teleparallel structure of an arbitrary frame field on a chart.
///
/// The connection ∇ declares the frame parallel, so its frame coefficients
/// vanish and its torsion is T(e_α, e_β) = −[e_α, e_β]. The contorsion is
///
///   Δ^κ_{αβ} = −½(T_α{}^κ{}_β + T_β{}^κ{}_α − T^κ_{αβ}),
///
/// with T_α{}^κ{}_β = G_{αλ}G^{κμ}T^λ_{μβ} and G_{αβ} = g(e_α, e_β). The
/// first lower index of Γ^κ_{αβ} is the direction of differentiation, as in
/// ∇_{e_α}e_β = 0. For a frame of Killing fields the metric derivatives
/// e_α(G_{βκ}) are themselves structure constants and Γ = −Δ holds exactly;
/// rescaling the frame by non-constant factors breaks it.
pub fn teleparallel_torsion_contorsion(
    chart: &Chart,
    frame: impl Fn(&Point) -> Result<Mat4>,
    x: &Point,
) -> Result<Teleparallel> {
    let e = frame(x)?;
    let det = det4(&e);
    if det.abs() < BASIS_DET_TOL {
        return Err(Error::BasisDegenerate { point: *x, det });
    }
    // coframe[κ][μ] with Σ_μ coframe[κ][μ] e[α][μ] = δ.
    let coframe = transpose(&inverse(&e, x)?);
    let g = chart.metric(x)?;
    let gm = gram(&e, &g);
    let gm_inv = invert(&gm, x)?;
    let gam = chart.christoffel(x)?;
    // de[μ][β][ν] = ∂_μ e_β^ν
    let mut de = [[[0.0; 4]; 4]; 4];
    for (mu, d) in de.iter_mut().enumerate() {
        *d = chart.partial(x, mu, &frame)?;
    }
    let to_frame = |v: &[f64; 4]| -> [f64; 4] { std::array::from_fn(|k| (0..4).map(|m| coframe[k][m] * v[m]).sum()) };
    let mut c = [[[0.0; 4]; 4]; 4];
    let mut lc = [[[0.0; 4]; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            // [e_a, e_b] and D_{e_a} e_b in coordinates
            let mut comm = [0.0; 4];
            let mut cov = [0.0; 4];
            for n in 0..4 {
                let mut s = 0.0;
                let mut t = 0.0;
                for m in 0..4 {
                    s += e[a][m] * de[m][b][n] - e[b][m] * de[m][a][n];
                    t += e[a][m] * (de[m][b][n] + (0..4).map(|l| gam[n][m][l] * e[b][l]).sum::<f64>());
                }
                comm[n] = s;
                cov[n] = t;
            }
            let cf = to_frame(&comm);
            let lf = to_frame(&cov);
            for k in 0..4 {
                c[k][a][b] = cf[k];
                lc[k][a][b] = lf[k];
            }
        }
    }
    let mut tor = [[[0.0; 4]; 4]; 4];
    for k in 0..4 {
        for a in 0..4 {
            for b in 0..4 {
                tor[k][a][b] = -c[k][a][b];
            }
        }
    }
    // T_α^κ_β = G_{αλ} G^{κμ} T^λ_{μβ}
    let mixed = |a: usize, k: usize, b: usize| -> f64 {
        let mut s = 0.0;
        for l in 0..4 {
            for m in 0..4 {
                s += gm[a][l] * gm_inv[k][m] * tor[l][m][b];
            }
        }
        s
    };
    let mut con = [[[0.0; 4]; 4]; 4];
    for k in 0..4 {
        for a in 0..4 {
            for b in 0..4 {
                con[k][a][b] = -0.5 * (mixed(a, k, b) + mixed(b, k, a) - tor[k][a][b]);
            }
        }
    }
    let mut rel: f64 = 0.0;
    let mut anti: f64 = 0.0;
    for k in 0..4 {
        for a in 0..4 {
            for b in 0..4 {
                rel = rel.max((lc[k][a][b] + con[k][a][b]).abs());
                anti = anti.max((tor[k][a][b] + tor[k][b][a]).abs());
            }
        }
    }
    Ok(Teleparallel {
        point: *x,
        frame: e,
        gram: gm,
        structure: c,
        torsion: tor,
        contorsion: con,
        levi_civita: lc,
        rel_residual: rel,
        antisymmetry_defect: anti,
    })
}

/// Θ^μ_ν = Σ_α J_α^μ ε^α_ν where ε is the coframe dual to `frame` and J_α^μ
/// are the raised current components. The first index is the one a
/// divergence contracts.
pub fn assemble_theta(
    chart: &Chart,
    currents: &[FormField; 4],
    frame: impl Fn(&Point) -> Result<Mat4> + Send + Sync + 'static,
) -> MixedTensorField {
    let (chart, currents) = (chart.clone(), currents.clone());
    MixedTensorField::new(false, move |x| {
        let e = frame(x)?;
        let coframe = transpose(&inverse(&e, x)?);
        let raised = raised_currents(&chart, &currents, x)?;
        let mut th = [[0.0; 4]; 4];
        for m in 0..4 {
            for n in 0..4 {
                th[m][n] = (0..4).map(|a| raised[a][m] * coframe[a][n]).sum();
            }
        }
        Ok(th)
    })
}

/// `out[α][μ]` = J_α^μ = g^{μν}(J_α)_ν.
pub fn raised_currents(chart: &Chart, currents: &[FormField; 4], x: &Point) -> Result<Mat4> {
    let gi = chart.metric_inv(x)?;
    let mut out = [[0.0; 4]; 4];
    for (a, j) in currents.iter().enumerate() {
        let c = j.coeffs(x)?;
        let low: [f64; 4] = std::array::from_fn(|n| c[1 << n]);
        out[a] = mat_vec(&gi, &low);
    }
    Ok(out)
}

/// Both sides of the teleparallel divergence identity in a frame.
#[derive(Clone, Debug, PartialEq)]
pub struct TeleparallelDivergence {
    /// ∇_αΘ^α_β = e_α(Θ^α_β).
    pub lhs: [f64; 4],
    /// −Δ^α_{αι}Θ^ι_β + Δ^ι_{αβ}Θ^α_ι.
    pub rhs: [f64; 4],
    pub residual: f64,
    /// max_β |e_α(Θ^α_β) − Δ^α_{αι}Θ^ι_β + Δ^ι_{αβ}Θ^α_ι|, which is the frame
    /// form of D_αΘ^α_β once Γ = −Δ is substituted.
    pub frame_divergence: f64,
    /// max_β |D_αΘ^α_β| in coordinates.
    pub covariant_divergence: f64,
}

/// Evaluate ∇_αΘ^α_β = −Δ^α_{αι}Θ^ι_β + Δ^ι_{αβ}Θ^α_ι in the given frame.
pub fn teleparallel_divergence_check(
    chart: &Chart,
    theta: &MixedTensorField,
    frame: impl Fn(&Point) -> Result<Mat4> + Clone,
    x: &Point,
) -> Result<TeleparallelDivergence> {
    let tp = teleparallel_torsion_contorsion(chart, frame.clone(), x)?;
    let to_frame = |y: &Point| -> Result<Mat4> {
        let e = frame(y)?;
        let coframe = transpose(&inverse(&e, y)?);
        let th = theta.eval(y)?;
        let mut out = [[0.0; 4]; 4];
        for a in 0..4 {
            for b in 0..4 {
                let mut s = 0.0;
                for m in 0..4 {
                    for n in 0..4 {
                        s += coframe[a][m] * th[m][n] * e[b][n];
                    }
                }
                out[a][b] = s;
            }
        }
        Ok(out)
    };
    let thf = to_frame(x)?;
    let mut dth = [[[0.0; 4]; 4]; 4];
    for (mu, d) in dth.iter_mut().enumerate() {
        *d = chart.partial(x, mu, to_frame)?;
    }
    let e = tp.frame;
    let del = tp.contorsion;
    let mut lhs = [0.0; 4];
    let mut rhs = [0.0; 4];
    for b in 0..4 {
        for a in 0..4 {
            lhs[b] += (0..4).map(|m| e[a][m] * dth[m][a][b]).sum::<f64>();
            for i in 0..4 {
                rhs[b] += -del[a][a][i] * thf[i][b] + del[i][a][b] * thf[a][i];
            }
        }
    }
    let residual = (0..4).fold(0.0f64, |m, b| m.max((lhs[b] - rhs[b]).abs()));
    let frame_divergence = (0..4).fold(0.0f64, |m, b| m.max((lhs[b] + rhs[b]).abs()));
    let div = crate::tensors::divergence_components(theta, chart, x)?;
    let covariant_divergence = div.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    Ok(TeleparallelDivergence { lhs, rhs, residual, frame_divergence, covariant_divergence })
}

/// For each current, |∂_μ(√−g J^μ)| and |D_μJ^μ| evaluated independently.
pub fn density_divergence_pair(chart: &Chart, currents: &[FormField; 4], x: &Point) -> Result<([f64; 4], [f64; 4])> {
    let gam = chart.christoffel(x)?;
    let raised = raised_currents(chart, currents, x)?;
    let mut dens = [0.0; 4];
    let mut cov = [0.0; 4];
    for mu in 0..4 {
        let dd = chart.partial(x, mu, |y| {
            let r = raised_currents(chart, currents, y)?;
            let v = chart.volume_factor(y)?;
            Ok(std::array::from_fn::<f64, 4, _>(|a| v * r[a][mu]))
        })?;
        let dr = chart.partial(x, mu, |y| {
            let r = raised_currents(chart, currents, y)?;
            Ok(std::array::from_fn::<f64, 4, _>(|a| r[a][mu]))
        })?;
        for a in 0..4 {
            dens[a] += dd[a];
            cov[a] += dr[a];
        }
    }
    for a in 0..4 {
        for m in 0..4 {
            for l in 0..4 {
                cov[a] += gam[m][m][l] * raised[a][l];
            }
        }
    }
    Ok((dens.map(f64::abs), cov.map(f64::abs)))
}

/// The energy-momentum covector P = P_α E^α in the identified cotangent space.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Covector {
    pub components: [f64; 4],
    pub basis: [String; 4],
}

/// Assemble four conserved charges into a covector on the basis E^α.
pub fn covector_assemble(charges: [f64; 4]) -> Covector {
    Covector { components: charges, basis: std::array::from_fn(|a| format!("E^{a}")) }
}

/// One-form with components g(Π_α, ·) for the translation α.
pub fn killing_one_form(ds: &DeSitter, alpha: usize) -> FormField {
    let ds = *ds;
    FormField::from_coeffs(&ds.chart(), Some(1), move |x| {
        let xi = ds.killing_translations(x)?;
        let g = ds.metric_raw(x);
        let low = mat_vec(&g, &xi[alpha]);
        let mut out = [0.0; MAX_BLADES];
        for n in 0..4 {
            out[1 << n] = low[n];
        }
        Ok(out)
    })
}

/// One sample of the determinant map on the y = z = 0 plane.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct DetMapRow {
    pub t: f64,
    pub x1: f64,
    pub det: f64,
    /// (σ²/ℓ² + 4)³(−σ⁴/ℓ⁴ + 2σ²/ℓ² + 8)/512
    pub reduced: f64,
    /// (1+s)³(1−s), s = σ²/4ℓ²
    pub factorised: f64,
}

pub const DET_MAP_COLUMNS: [&str; 5] = ["t", "x1", "det", "reduced", "factorised"];

/// Reduced determinant with σ² measured in units of ℓ².
pub fn killing_det_reduced_ell(ell: f64, t: f64, x1: f64) -> f64 {
    killing_det_reduced(t / ell, x1 / ell)
}

fn check_range(name: &str, r: (f64, f64), n: usize) -> Result<()> {
    if !(r.0.is_finite() && r.1.is_finite()) || r.0 >= r.1 {
        return Err(Error::InvalidInput(format!("empty {name} range [{}, {}]", r.0, r.1)));
    }
    if n < 2 {
        return Err(Error::InvalidInput(format!("{name} grid needs at least 2 samples, got {n}")));
    }
    Ok(())
}

fn grid(r: (f64, f64), n: usize, i: usize) -> f64 {
    r.0 + (r.1 - r.0) * i as f64 / (n - 1) as f64
}

/// Samples det ξ over a (t, x1) grid at y = z = 0, row-major in t.
pub fn det_map(
    ds: &DeSitter,
    t_range: (f64, f64),
    x_range: (f64, f64),
    n_t: usize,
    n_x: usize,
) -> Result<Vec<DetMapRow>> {
    check_range("t", t_range, n_t)?;
    check_range("x1", x_range, n_x)?;
    let mut rows = Vec::with_capacity(n_t * n_x);
    for i in 0..n_t {
        let t = grid(t_range, n_t, i);
        for j in 0..n_x {
            let x1 = grid(x_range, n_x, j);
            let p = [t, x1, 0.0, 0.0];
            rows.push(DetMapRow {
                t,
                x1,
                det: ds.killing_det(&p),
                reduced: killing_det_reduced_ell(ds.ell(), t, x1),
                factorised: ds.killing_det_closed_form(&p),
            });
        }
    }
    Ok(rows)
}

/// Largest |det − reduced| and |det − factorised| over a map.
pub fn det_map_gaps(rows: &[DetMapRow]) -> (f64, f64) {
    rows.iter().fold((0.0_f64, 0.0_f64), |(a, b), r| {
        (a.max((r.det - r.reduced).abs()), b.max((r.det - r.factorised).abs()))
    })
}

/// Which half-axis of the (t, x1) plane a root was found on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RootAxis {
    /// x1 = 0, σ² = t²
    Time,
    /// t = 0, σ² = −x1²
    Space,
}

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct DetRoot {
    pub axis: RootAxis,
    /// Coordinate along the axis where det ξ changes sign.
    pub coordinate: f64,
    pub sigma2: f64,
}

fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let mut fa = f(a);
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if (fm > 0.0) == (fa > 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Sign changes of det ξ along the positive t and x1 axes up to `extent`,
/// bracketed on `n` samples and bisected to machine precision.
pub fn det_zero_loci(ds: &DeSitter, extent: f64, n: usize) -> Result<Vec<DetRoot>> {
    det_zero_loci_of(|p| ds.killing_det(p), extent, n)
}

/// Sign changes of `det` along the positive t and x1 axes, refined by bisection.
pub fn det_zero_loci_of(det: impl Fn(&Point) -> f64, extent: f64, n: usize) -> Result<Vec<DetRoot>> {
    check_range("axis", (0.0, extent), n)?;
    let mut roots = Vec::new();
    for axis in [RootAxis::Time, RootAxis::Space] {
        let f = |c: f64| {
            let p = match axis {
                RootAxis::Time => [c, 0.0, 0.0, 0.0],
                RootAxis::Space => [0.0, c, 0.0, 0.0],
            };
            det(&p)
        };
        let mut prev = (0.0, f(0.0));
        for i in 1..n {
            let c = grid((0.0, extent), n, i);
            let v = f(c);
            let root = if v == 0.0 {
                Some(c)
            } else if prev.1 != 0.0 && (v > 0.0) != (prev.1 > 0.0) {
                Some(bisect(f, prev.0, c))
            } else {
                None
            };
            if let Some(c) = root {
                let sigma2 = match axis {
                    RootAxis::Time => c * c,
                    RootAxis::Space => -c * c,
                };
                roots.push(DetRoot { axis, coordinate: c, sigma2 });
            }
            prev = (c, v);
        }
    }
    Ok(roots)
}

/// For each wanted σ², the distance to the nearest detected root (∞ if none).
pub fn root_errors(roots: &[DetRoot], wanted: &[f64]) -> Vec<f64> {
    wanted
        .iter()
        .map(|w| roots.iter().map(|r| (r.sigma2 - w).abs()).fold(f64::INFINITY, f64::min))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ds() -> DeSitter {
        DeSitter::new(1.0).unwrap()
    }

    #[test]
    fn omega_examples() {
        let d = ds();
        assert_eq!(d.omega(&[0.0; 4]).unwrap(), 1.0);
        assert!((d.omega(&[1.0, 0.0, 0.0, 0.0]).unwrap() - 4.0 / 3.0).abs() < 1e-15);
        assert!(d.omega(&[2.0, 0.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn embedding_at_origin() {
        assert_eq!(ds().embed(&[0.0; 4]).unwrap(), [0.0, 0.0, 0.0, 0.0, -1.0]);
        let d2 = DeSitter::new(2.0).unwrap();
        assert_eq!(d2.embed(&[0.0; 4]).unwrap()[4], -2.0);
    }

    #[test]
    fn translations_examples() {
        let d = ds();
        let xi = d.killing_translations(&[0.0; 4]).unwrap();
        assert_eq!(xi, ETA.map(|r| r.map(f64::abs)));
        let xi = d.killing_translations(&[1.0, 0.0, 0.0, 0.0]).unwrap();
        assert!((xi[0][0] - 0.75).abs() < 1e-15);
    }

    #[test]
    fn rotation_at_unit_x() {
        let j = ds().killing_rotations(&[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert_eq!(j[0][1], [1.0, 0.0, 0.0, 0.0]);
        assert_eq!(j[1][0], [-1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn determinant_closed_form() {
        let d = ds();
        for x in [[0.3, 0.5, -0.2, 0.4], [1.1, 0.2, 0.0, 0.0], [0.0, 2.5, 0.1, 0.0]] {
            assert!((d.killing_det(&x) - d.killing_det_closed_form(&x)).abs() < 1e-12);
        }
        assert!((killing_det_reduced(0.0, 0.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn sigma_factor_matrix_reproduces_reduced_determinant() {
        for (t, x1) in [(0.3, 0.7), (1.5, -0.4), (2.2, 2.9)] {
            let m = killing_matrix_with_sigma_factors(&[t, x1, 0.0, 0.0]);
            assert!((det4(&m) - killing_det_reduced(t, x1)).abs() < 1e-10);
        }
    }

    #[test]
    fn literal_frame_flips_spatial_vectors_at_origin() {
        let t = ds().tetrad_from_killing(&[0.0; 4], FrameMode::Literal).unwrap();
        assert_eq!(t.vectors[0], [1.0, 0.0, 0.0, 0.0]);
        assert_eq!(t.vectors[1], [0.0, -1.0, 0.0, 0.0]);
        let u = ds().tetrad_from_killing(&[0.0; 4], FrameMode::Unit).unwrap();
        assert_eq!(u.vectors[1], [0.0, 1.0, 0.0, 0.0]);
    }

    #[test]
    fn hybrid_connection_degenerate_on_zero_set() {
        let d = ds().with_interior(false);
        assert!(matches!(d.hybrid_connection(&[0.0, 2.0, 0.0, 0.0]), Err(Error::BasisDegenerate { .. })));
    }

    #[test]
    fn det_map_rejects_empty_bounds() {
        assert!(det_map(&ds(), (1.0, 1.0), (-3.0, 3.0), 11, 11).is_err());
        assert!(det_map(&ds(), (-3.0, 3.0), (-3.0, 3.0), 1, 11).is_err());
        let rows = det_map(&ds(), (-3.0, 3.0), (-3.0, 3.0), 5, 7).unwrap();
        assert_eq!(rows.len(), 35);
        assert_eq!((rows[0].t, rows[0].x1), (-3.0, -3.0));
        let (_, fact) = det_map_gaps(&rows);
        assert!(fact < 1e-12, "{fact}");
    }

    #[test]
    fn zero_loci_of_the_matrix_det() {
        let roots = det_zero_loci(&ds(), 3.0, 121).unwrap();
        let errs = root_errors(&roots, &[4.0, -4.0]);
        assert!(errs.iter().all(|e| *e < 1e-10), "{errs:?} {roots:?}");
        assert_eq!(roots.len(), 2);
    }
}
