//! Clifford algebra of a real quadratic space of dimension 4 or 5.
//!
//! Multivectors are stored densely: one coefficient per basis blade, the
//! blade being the bitmask of the generators it contains (ascending order).
//! Products are evaluated in an orthogonal internal frame. When the bilinear
//! form handed to [`Signature::new`] is already diagonal that frame is the
//! user frame and no conversion happens.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Arc, OnceLock};

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};

/// Largest supported dimension.
pub const MAX_DIM: usize = 5;
/// Number of blade slots for [`MAX_DIM`].
pub const MAX_BLADES: usize = 1 << MAX_DIM;
/// Default per-coefficient tolerance for multivector comparison.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Coefficient storage for one multivector.
pub type Coeffs = [f64; MAX_BLADES];

/// Grade of a blade bitmask.
#[inline]
pub fn blade_grade(mask: usize) -> usize {
    mask.count_ones() as usize
}

/// Sign from reordering the concatenation of two ascending blades into
/// ascending order (metric independent).
#[inline]
pub fn reorder_sign(a: usize, b: usize) -> f64 {
    let table = reorder_table();
    table[a * MAX_BLADES + b] as f64
}

fn reorder_table() -> &'static [i8; MAX_BLADES * MAX_BLADES] {
    static TABLE: OnceLock<[i8; MAX_BLADES * MAX_BLADES]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [0i8; MAX_BLADES * MAX_BLADES];
        for a in 0..MAX_BLADES {
            for b in 0..MAX_BLADES {
                let mut swaps = 0u32;
                let mut shifted = a >> 1;
                while shifted != 0 {
                    swaps += (shifted & b).count_ones();
                    shifted >>= 1;
                }
                t[a * MAX_BLADES + b] = if swaps % 2 == 0 { 1 } else { -1 };
            }
        }
        t
    })
}

#[inline]
fn reversion_sign(grade: usize) -> f64 {
    if (grade * grade.saturating_sub(1) / 2) % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

#[derive(Debug)]
struct Frame {
    // Column b holds the internal-frame coefficients of user blade b.
    to_internal: Vec<f64>,
    from_internal: Vec<f64>,
}

#[derive(Debug)]
struct SigData {
    dim: usize,
    metric: [[f64; MAX_DIM]; MAX_DIM],
    orientation: i8,
    det: f64,
    squares: [f64; MAX_DIM],
    frame: Option<Frame>,
}

/// A nondegenerate symmetric bilinear form on the grade-1 generators together
/// with an orientation for the volume element.
#[derive(Clone, Debug)]
pub struct Signature(Arc<SigData>);

impl Signature {
    /// Build a signature from a symmetric matrix, given row by row.
    pub fn new(rows: &[Vec<f64>], orientation: i8) -> Result<Self> {
        let dim = rows.len();
        if dim != 4 && dim != 5 {
            return Err(Error::InvalidInput(format!("dimension {dim} not in {{4,5}}")));
        }
        let mut metric = [[0.0; MAX_DIM]; MAX_DIM];
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::InvalidInput("metric matrix is not square".into()));
            }
            metric[i][..dim].copy_from_slice(row);
        }
        Self::from_array(dim, metric, orientation)
    }

    /// Build from a fixed-size 4×4 matrix (the common case for chart fields).
    pub fn from_mat4(m: &[[f64; 4]; 4]) -> Result<Self> {
        let mut metric = [[0.0; MAX_DIM]; MAX_DIM];
        for i in 0..4 {
            metric[i][..4].copy_from_slice(&m[i]);
        }
        Self::from_array(4, metric, 1)
    }

    /// Diagonal form with the given entries.
    pub fn diagonal(entries: &[f64]) -> Result<Self> {
        let dim = entries.len();
        let rows: Vec<Vec<f64>> = (0..dim)
            .map(|i| (0..dim).map(|j| if i == j { entries[i] } else { 0.0 }).collect())
            .collect();
        Self::new(&rows, 1)
    }

    /// diag(1,−1,−1,−1).
    pub fn lorentz4() -> Self {
        Self::diagonal(&[1.0, -1.0, -1.0, -1.0]).expect("valid signature")
    }

    /// diag(1,−1,−1,−1,−1).
    pub fn lorentz5() -> Self {
        Self::diagonal(&[1.0, -1.0, -1.0, -1.0, -1.0]).expect("valid signature")
    }

    /// Same form, other orientation.
    pub fn with_orientation(&self, orientation: i8) -> Result<Self> {
        Self::from_array(self.0.dim, self.0.metric, orientation)
    }

    fn from_array(dim: usize, metric: [[f64; MAX_DIM]; MAX_DIM], orientation: i8) -> Result<Self> {
        if orientation != 1 && orientation != -1 {
            return Err(Error::InvalidInput(format!("orientation {orientation} must be +1 or -1")));
        }
        let mut diagonal = true;
        for i in 0..dim {
            for j in 0..dim {
                if metric[i][j] != metric[j][i] {
                    return Err(Error::InvalidInput("metric matrix is not symmetric".into()));
                }
                if i != j && metric[i][j] != 0.0 {
                    diagonal = false;
                }
            }
        }
        let mut squares = [0.0; MAX_DIM];
        let (det, frame) = if diagonal {
            let mut det = 1.0;
            for i in 0..dim {
                squares[i] = metric[i][i];
                det *= metric[i][i];
            }
            (det, None)
        } else {
            let m = DMatrix::from_fn(dim, dim, |i, j| metric[i][j]);
            let det = m.determinant();
            let eig = SymmetricEigen::new(m);
            for a in 0..dim {
                squares[a] = eig.eigenvalues[a];
            }
            let v = &eig.eigenvectors;
            // e_i = Σ_a V_ia f_a  and  f_a = Σ_i V_ia e_i.
            let to_vecs: Vec<Vec<f64>> =
                (0..dim).map(|i| (0..dim).map(|a| v[(i, a)]).collect()).collect();
            let from_vecs: Vec<Vec<f64>> =
                (0..dim).map(|a| (0..dim).map(|i| v[(i, a)]).collect()).collect();
            let frame = Frame {
                to_internal: outermorphism(dim, &to_vecs),
                from_internal: outermorphism(dim, &from_vecs),
            };
            (det, Some(frame))
        };
        if !(det.abs() > 1e-12) {
            return Err(Error::Degenerate(format!("metric determinant {det:e}")));
        }
        Ok(Signature(Arc::new(SigData { dim, metric, orientation, det, squares, frame })))
    }

    /// Dimension of the generating space.
    pub fn dim(&self) -> usize {
        self.0.dim
    }

    /// Number of basis blades, 2^dim.
    pub fn blades(&self) -> usize {
        1 << self.0.dim
    }

    /// Bilinear form entry B(γ^i, γ^j).
    pub fn metric(&self, i: usize, j: usize) -> f64 {
        self.0.metric[i][j]
    }

    /// Orientation flag.
    pub fn orientation(&self) -> i8 {
        self.0.orientation
    }

    /// Determinant of the bilinear form.
    pub fn det(&self) -> f64 {
        self.0.det
    }

    /// Sign of the determinant.
    pub fn det_sign(&self) -> f64 {
        self.0.det.signum()
    }

    /// True when the form was given in diagonal shape.
    pub fn is_diagonal(&self) -> bool {
        self.0.frame.is_none()
    }

    /// Structural equality: same object, or same dimension, form and orientation.
    pub fn same_as(&self, other: &Signature) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        let (a, b) = (&*self.0, &*other.0);
        a.dim == b.dim && a.orientation == b.orientation && a.metric == b.metric
    }

    fn check(&self, other: &Signature) -> Result<()> {
        if self.same_as(other) {
            Ok(())
        } else {
            Err(Error::SignatureMismatch)
        }
    }

    fn to_internal(&self, c: &Coeffs) -> Coeffs {
        match &self.0.frame {
            None => *c,
            Some(f) => apply(self.blades(), &f.to_internal, c),
        }
    }

    fn from_internal(&self, c: &Coeffs) -> Coeffs {
        match &self.0.frame {
            None => *c,
            Some(f) => apply(self.blades(), &f.from_internal, c),
        }
    }

    /// Metric factor of the product of two blades in the internal frame.
    #[inline]
    fn square_factor(&self, common: usize) -> f64 {
        let mut f = 1.0;
        let mut bits = common;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            f *= self.0.squares[i];
            bits &= bits - 1;
        }
        f
    }
}

fn apply(n: usize, mat: &[f64], c: &Coeffs) -> Coeffs {
    let mut out = [0.0; MAX_BLADES];
    for (b, &cb) in c.iter().enumerate().take(n) {
        if cb == 0.0 {
            continue;
        }
        for (r, o) in out.iter_mut().enumerate().take(n) {
            *o += mat[r * n + b] * cb;
        }
    }
    out
}

/// Matrix (row = target blade, column = source blade) of the outermorphism
/// induced by sending generator i to the vector `images[i]`.
fn outermorphism(dim: usize, images: &[Vec<f64>]) -> Vec<f64> {
    let n = 1 << dim;
    let mut mat = vec![0.0; n * n];
    for b in 0..n {
        let mut acc = [0.0; MAX_BLADES];
        acc[0] = 1.0;
        for i in 0..dim {
            if b & (1 << i) == 0 {
                continue;
            }
            let mut v = [0.0; MAX_BLADES];
            for (a, &x) in images[i].iter().enumerate() {
                v[1 << a] = x;
            }
            acc = outer_raw(n, &acc, &v);
        }
        for r in 0..n {
            mat[r * n + b] = acc[r];
        }
    }
    mat
}

fn outer_raw(n: usize, a: &Coeffs, b: &Coeffs) -> Coeffs {
    let mut out = [0.0; MAX_BLADES];
    for (i, &ai) in a.iter().enumerate().take(n) {
        if ai == 0.0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate().take(n) {
            if bj == 0.0 || i & j != 0 {
                continue;
            }
            out[i | j] += reorder_sign(i, j) * ai * bj;
        }
    }
    out
}

/// Element of the Clifford algebra over a [`Signature`].
#[derive(Clone)]
pub struct Multivector {
    sig: Signature,
    coeffs: Coeffs,
}

#[derive(Clone, Copy)]
enum Kind {
    Geometric,
    Left,
    Right,
}

impl Multivector {
    /// The zero element.
    pub fn zero(sig: &Signature) -> Self {
        Multivector { sig: sig.clone(), coeffs: [0.0; MAX_BLADES] }
    }

    /// A scalar.
    pub fn scalar(sig: &Signature, value: f64) -> Self {
        Self::blade(sig, 0, value)
    }

    /// The generator γ^i.
    pub fn basis_vector(sig: &Signature, i: usize) -> Self {
        assert!(i < sig.dim(), "generator index {i} out of range");
        Self::blade(sig, 1 << i, 1.0)
    }

    /// `value` times the basis blade with bitmask `mask`.
    pub fn blade(sig: &Signature, mask: usize, value: f64) -> Self {
        assert!(mask < sig.blades(), "blade index {mask} out of range");
        let mut m = Self::zero(sig);
        m.coeffs[mask] = value;
        m
    }

    /// A grade-1 element from its components.
    pub fn vector(sig: &Signature, comps: &[f64]) -> Self {
        let mut m = Self::zero(sig);
        for (i, &c) in comps.iter().enumerate().take(sig.dim()) {
            m.coeffs[1 << i] = c;
        }
        m
    }

    /// From a coefficient slice (entries beyond 2^dim must be zero).
    pub fn from_coeffs(sig: &Signature, coeffs: &[f64]) -> Result<Self> {
        let mut m = Self::zero(sig);
        for (i, &c) in coeffs.iter().enumerate() {
            if i >= sig.blades() {
                if c != 0.0 {
                    return Err(Error::InvalidInput(format!("blade index {i} exceeds 2^dim")));
                }
                continue;
            }
            m.coeffs[i] = c;
        }
        Ok(m)
    }

    /// The volume element τ = orientation · |det|^{-1/2} γ^0∧…∧γ^{n−1}.
    pub fn pseudoscalar(sig: &Signature) -> Self {
        let value = sig.orientation() as f64 / sig.det().abs().sqrt();
        Self::blade(sig, sig.blades() - 1, value)
    }

    /// Signature this element lives over.
    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    /// All coefficients (slots beyond 2^dim are zero).
    pub fn coeffs(&self) -> &Coeffs {
        &self.coeffs
    }

    /// Coefficient of one blade.
    pub fn get(&self, mask: usize) -> f64 {
        self.coeffs[mask]
    }

    /// Set the coefficient of one blade.
    pub fn set(&mut self, mask: usize, value: f64) {
        assert!(mask < self.sig.blades(), "blade index {mask} out of range");
        self.coeffs[mask] = value;
    }

    /// Scalar part.
    pub fn scalar_part(&self) -> f64 {
        self.coeffs[0]
    }

    /// Same coefficients reinterpreted over another signature of equal dimension.
    pub fn with_signature(&self, sig: &Signature) -> Self {
        assert_eq!(sig.dim(), self.sig.dim());
        Multivector { sig: sig.clone(), coeffs: self.coeffs }
    }

    fn binary(&self, other: &Self, kind: Kind) -> Result<Self> {
        self.sig.check(&other.sig)?;
        let n = self.sig.blades();
        let a = self.sig.to_internal(&self.coeffs);
        let b = self.sig.to_internal(&other.coeffs);
        let mut out = [0.0; MAX_BLADES];
        for (i, &ai) in a.iter().enumerate().take(n) {
            if ai == 0.0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate().take(n) {
                if bj == 0.0 {
                    continue;
                }
                let common = i & j;
                let keep = match kind {
                    Kind::Geometric => true,
                    Kind::Left => common == i,
                    Kind::Right => common == j,
                };
                if !keep {
                    continue;
                }
                let f = reorder_sign(i, j) * self.sig.square_factor(common);
                out[i ^ j] += f * ai * bj;
            }
        }
        Ok(Multivector { sig: self.sig.clone(), coeffs: self.sig.from_internal(&out) })
    }

    /// Clifford product.
    pub fn gp(&self, other: &Self) -> Result<Self> {
        self.binary(other, Kind::Geometric)
    }

    /// Exterior product.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.sig.check(&other.sig)?;
        let n = self.sig.blades();
        Ok(Multivector { sig: self.sig.clone(), coeffs: outer_raw(n, &self.coeffs, &other.coeffs) })
    }

    /// Left contraction: Σ_{r≤s} ⟨A_r B_s⟩_{s−r}.
    pub fn lc(&self, other: &Self) -> Result<Self> {
        self.binary(other, Kind::Left)
    }

    /// Right contraction: Σ_{r≥s} ⟨A_r B_s⟩_{r−s}.
    pub fn rc(&self, other: &Self) -> Result<Self> {
        self.binary(other, Kind::Right)
    }

    /// Scalar product Σ_r ⟨Ã_r B_r⟩₀.
    pub fn scalar_product(&self, other: &Self) -> Result<f64> {
        Ok(self.reverse().lc(other)?.scalar_part())
    }

    /// Reversion: grade k scaled by (−1)^{k(k−1)/2}.
    pub fn reverse(&self) -> Self {
        self.map_blades(|m| reversion_sign(blade_grade(m)))
    }

    /// Grade involution: grade k scaled by (−1)^k.
    pub fn involute(&self) -> Self {
        self.map_blades(|m| if blade_grade(m) % 2 == 0 { 1.0 } else { -1.0 })
    }

    /// Projection onto grade k (zero when k exceeds the dimension).
    pub fn grade(&self, k: usize) -> Self {
        self.map_blades(|m| if blade_grade(m) == k { 1.0 } else { 0.0 })
    }

    fn map_blades(&self, f: impl Fn(usize) -> f64) -> Self {
        let mut out = self.clone();
        for (m, c) in out.coeffs.iter_mut().enumerate().take(self.sig.blades()) {
            *c *= f(m);
        }
        out
    }

    /// Hodge dual ⋆A = Ã ⌟ τ.
    pub fn hodge(&self) -> Self {
        let tau = Self::pseudoscalar(&self.sig);
        self.reverse().lc(&tau).expect("same signature")
    }

    /// Inverse Hodge dual: ⋆⁻¹A_r = (−1)^{r(n−r)} sgn(det) ⋆A_r.
    pub fn hodge_inv(&self) -> Self {
        let n = self.sig.dim();
        let s = self.sig.det_sign();
        let star = self.hodge();
        let mut out = Self::zero(&self.sig);
        for r in 0..=n {
            let sign = if (r * (n - r)) % 2 == 0 { s } else { -s };
            // ⋆ sends grade r to n − r
            out += &(star.grade(n - r) * sign);
        }
        out
    }

    /// Hodge dual from the component formula
    /// ⋆θ^{μ1…μp} = (1/(n−p)!) √|det g| g^{μ1ν1}…g^{μpνp} ε_{ν1…νn} θ^{ν(p+1)…νn},
    /// where the form on generators is g^{μν} and g is its inverse.
    pub fn hodge_components(&self) -> Self {
        let n = self.sig.dim();
        let vol = 1.0 / self.sig.det().abs().sqrt() * self.sig.orientation() as f64;
        let mut out = Self::zero(&self.sig);
        let perms = permutations(n);
        for (mask, &c) in self.coeffs.iter().enumerate().take(self.sig.blades()) {
            if c == 0.0 {
                continue;
            }
            let mus: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            let p = mus.len();
            let fact = factorial(n - p) as f64;
            for (perm, eps) in &perms {
                let mut w = *eps;
                for (k, &mu) in mus.iter().enumerate() {
                    w *= self.sig.metric(mu, perm[k]);
                    if w == 0.0 {
                        break;
                    }
                }
                if w == 0.0 {
                    continue;
                }
                // θ^{ν(p+1)} ∧ … ∧ θ^{νn} in ascending order with its sign
                let rest = &perm[p..];
                let mut target = 0usize;
                let mut sign = 1.0;
                for &nu in rest {
                    sign *= reorder_sign(target, 1 << nu);
                    target |= 1 << nu;
                }
                out.coeffs[target] += c * vol * w * sign / fact;
            }
        }
        out
    }

    /// Largest absolute coefficient.
    pub fn norm_inf(&self) -> f64 {
        self.coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()))
    }

    /// Coefficientwise comparison within `tol`.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.sig.same_as(&other.sig) && (self - other).norm_inf() <= tol
    }

    /// Grades carrying a nonzero coefficient.
    pub fn grades(&self) -> Vec<usize> {
        let mut seen = [false; MAX_DIM + 1];
        for (m, &c) in self.coeffs.iter().enumerate().take(self.sig.blades()) {
            if c != 0.0 {
                seen[blade_grade(m)] = true;
            }
        }
        (0..=self.sig.dim()).filter(|&k| seen[k]).collect()
    }

    /// True when at most one grade is present.
    pub fn is_homogeneous(&self) -> bool {
        self.grades().len() <= 1
    }
}

fn factorial(k: usize) -> usize {
    (1..=k).product()
}

fn permutations(n: usize) -> Vec<(Vec<usize>, f64)> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<(Vec<usize>, f64)>, n: usize) {
        if prefix.len() == n {
            let mut inv = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if prefix[i] > prefix[j] {
                        inv += 1;
                    }
                }
            }
            out.push((prefix.clone(), if inv % 2 == 0 { 1.0 } else { -1.0 }));
            return;
        }
        for k in 0..n {
            if !used[k] {
                used[k] = true;
                prefix.push(k);
                rec(prefix, used, out, n);
                prefix.pop();
                used[k] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out, n);
    out
}

/// Clifford product, rejecting mismatched signatures.
pub fn geometric_product(a: &Multivector, b: &Multivector) -> Result<Multivector> {
    a.gp(b)
}

/// Exterior product, rejecting mismatched signatures.
pub fn outer_product(a: &Multivector, b: &Multivector) -> Result<Multivector> {
    a.wedge(b)
}

/// Left contraction, rejecting mismatched signatures.
pub fn left_contraction(a: &Multivector, b: &Multivector) -> Result<Multivector> {
    a.lc(b)
}

/// Right contraction, rejecting mismatched signatures.
pub fn right_contraction(a: &Multivector, b: &Multivector) -> Result<Multivector> {
    a.rc(b)
}

/// Scalar product, rejecting mismatched signatures.
pub fn scalar_product(a: &Multivector, b: &Multivector) -> Result<f64> {
    a.scalar_product(b)
}

/// Reversion.
pub fn reversion(a: &Multivector) -> Multivector {
    a.reverse()
}

/// Hodge dual.
pub fn hodge_star(a: &Multivector) -> Multivector {
    a.hodge()
}

/// Inverse Hodge dual.
pub fn hodge_star_inverse(a: &Multivector) -> Multivector {
    a.hodge_inv()
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multivector({self})")
    }
}

/// Blades named g0..g4 joined by '^'; terms ordered by bitmask.
impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, &c) in self.coeffs.iter().enumerate().take(self.sig.blades()) {
            if c == 0.0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c:?}")?;
            if m != 0 {
                let names: Vec<String> =
                    (0..self.sig.dim()).filter(|i| m & (1 << i) != 0).map(|i| format!("g{i}")).collect();
                write!(f, " {}", names.join("^"))?;
            }
        }
        if first {
            write!(f, "0.0")?;
        }
        Ok(())
    }
}

impl PartialEq for Multivector {
    fn eq(&self, other: &Self) -> bool {
        self.sig.same_as(&other.sig) && self.coeffs == other.coeffs
    }
}

fn assert_same(a: &Signature, b: &Signature) {
    assert!(a.same_as(b), "multivector signature mismatch");
}

impl<'a> Add<&'a Multivector> for &'a Multivector {
    type Output = Multivector;
    fn add(self, rhs: &Multivector) -> Multivector {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a Multivector> for &'a Multivector {
    type Output = Multivector;
    fn sub(self, rhs: &Multivector) -> Multivector {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Add for Multivector {
    type Output = Multivector;
    fn add(mut self, rhs: Multivector) -> Multivector {
        self += &rhs;
        self
    }
}

impl Sub for Multivector {
    type Output = Multivector;
    fn sub(mut self, rhs: Multivector) -> Multivector {
        self -= &rhs;
        self
    }
}

impl AddAssign<&Multivector> for Multivector {
    fn add_assign(&mut self, rhs: &Multivector) {
        assert_same(&self.sig, &rhs.sig);
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *a += b;
        }
    }
}

impl SubAssign<&Multivector> for Multivector {
    fn sub_assign(&mut self, rhs: &Multivector) {
        assert_same(&self.sig, &rhs.sig);
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *a -= b;
        }
    }
}

impl Neg for Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self * -1.0
    }
}

impl Mul<f64> for Multivector {
    type Output = Multivector;
    fn mul(mut self, rhs: f64) -> Multivector {
        for c in self.coeffs.iter_mut() {
            *c *= rhs;
        }
        self
    }
}

impl Mul<f64> for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: f64) -> Multivector {
        self.clone() * rhs
    }
}

/// Clifford product; panics when the signatures differ.
impl Mul for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: &Multivector) -> Multivector {
        self.gp(rhs).expect("multivector signature mismatch")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(sig: &Signature, i: usize) -> Multivector {
        Multivector::basis_vector(sig, i)
    }

    #[test]
    fn generator_squares() {
        let s = Signature::lorentz4();
        assert_eq!(&g(&s, 0) * &g(&s, 0), Multivector::scalar(&s, 1.0));
        assert_eq!(&g(&s, 1) * &g(&s, 1), Multivector::scalar(&s, -1.0));
        assert_eq!(&g(&s, 0) * &g(&s, 1), Multivector::blade(&s, 0b11, 1.0));
    }

    #[test]
    fn contraction_examples() {
        let s = Signature::lorentz4();
        let b = g(&s, 0).wedge(&g(&s, 1)).unwrap();
        assert_eq!(g(&s, 0).lc(&b).unwrap(), g(&s, 1));
        assert_eq!(b.lc(&g(&s, 0)).unwrap(), Multivector::zero(&s));
        assert_eq!(b.scalar_product(&b).unwrap(), -1.0);
    }

    #[test]
    fn hodge_examples() {
        let s = Signature::lorentz4();
        let tau = Multivector::pseudoscalar(&s);
        assert_eq!(Multivector::scalar(&s, 1.0).hodge(), tau);
        assert_eq!(tau.hodge(), Multivector::scalar(&s, -1.0));
        assert_eq!(g(&s, 0).hodge(), Multivector::blade(&s, 0b1110, 1.0));
    }

    #[test]
    fn pseudoscalar_squares_to_minus_one() {
        let s = Signature::lorentz4();
        let t = Multivector::pseudoscalar(&s);
        assert_eq!(&t * &t, Multivector::scalar(&s, -1.0));
    }

    #[test]
    fn mismatch_rejected() {
        let a = Multivector::scalar(&Signature::lorentz4(), 1.0);
        let b = Multivector::scalar(&Signature::diagonal(&[1.0, 1.0, 1.0, 1.0]).unwrap(), 1.0);
        assert!(matches!(a.gp(&b), Err(Error::SignatureMismatch)));
    }

    #[test]
    fn display_format() {
        let s = Signature::lorentz4();
        let m = &Multivector::scalar(&s, 2.0) + &Multivector::blade(&s, 0b11, 1.0);
        assert_eq!(m.to_string(), "2.0 + 1.0 g0^g1");
    }

    #[test]
    fn non_diagonal_form_generator_relation() {
        let rows = vec![
            vec![0.0, 1.0, 0.0, 0.0],
            vec![1.0, 0.0, 0.0, 0.0],
            vec![0.0, 0.0, -1.0, 0.5],
            vec![0.0, 0.0, 0.5, -2.0],
        ];
        let s = Signature::new(&rows, 1).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                let anti = &(&g(&s, a) * &g(&s, b)) + &(&g(&s, b) * &g(&s, a));
                let expect = Multivector::scalar(&s, 2.0 * rows[a][b]);
                assert!(anti.approx_eq(&expect, 1e-13), "{a}{b}: {anti}");
            }
        }
    }
}
