//! Exact so(1,4) structure in the five-dimensional defining representation.
//!
//! The generator J_{AB} = η̊_{AC}X^C∂_B − η̊_{BC}X^C∂_A is a linear vector
//! field on ℝ^{1,4}; its matrix M with V^D = M^D_C X^C has entries
//! M^D_C = η̊_{AC}δ^D_B − η̊_{BC}δ^D_A. The Lie bracket of two linear fields
//! is [V_M, V_N] = V_{NM − MN}, and that is the bracket used throughout.
//! Everything here is exact rational arithmetic.

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::chart::Point;
use crate::desitter::{DeSitter, ETA5};
use crate::error::Result;
use crate::tensors::VectorField;

pub type Q = Rational64;
pub type Mat5 = [[Q; 5]; 5];

fn q(n: i64) -> Q {
    Q::from_integer(n)
}

fn eta(a: usize) -> Q {
    q(ETA5[a] as i64)
}

pub fn zero5() -> Mat5 {
    [[Q::zero(); 5]; 5]
}

pub fn identity5() -> Mat5 {
    let mut m = zero5();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Q::one();
    }
    m
}

pub fn mul5(a: &Mat5, b: &Mat5) -> Mat5 {
    let mut out = zero5();
    for i in 0..5 {
        for j in 0..5 {
            let mut s = Q::zero();
            for k in 0..5 {
                s += a[i][k] * b[k][j];
            }
            out[i][j] = s;
        }
    }
    out
}

pub fn add5(a: &Mat5, b: &Mat5) -> Mat5 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][j] + b[i][j]))
}

pub fn sub5(a: &Mat5, b: &Mat5) -> Mat5 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][j] - b[i][j]))
}

pub fn scale5(k: Q, a: &Mat5) -> Mat5 {
    a.map(|r| r.map(|v| v * k))
}

pub fn is_zero5(a: &Mat5) -> bool {
    a.iter().flatten().all(|v| v.is_zero())
}

/// Matrix commutator MN − NM.
pub fn commutator(m: &Mat5, n: &Mat5) -> Mat5 {
    sub5(&mul5(m, n), &mul5(n, m))
}

/// Lie bracket of the linear vector fields with matrices M and N: NM − MN.
pub fn bracket(m: &Mat5, n: &Mat5) -> Mat5 {
    commutator(n, m)
}

/// Largest |entry|.
pub fn max_abs5(a: &Mat5) -> Q {
    a.iter().flatten().map(|v| v.abs()).fold(Q::zero(), |m, v| if v > m { v } else { m })
}

/// Matrix of J_{AB}; antisymmetric in the labels and zero for A = B.
pub fn generator_matrix(a: usize, b: usize) -> Mat5 {
    let mut m = zero5();
    for (d, row) in m.iter_mut().enumerate() {
        for (c, v) in row.iter_mut().enumerate() {
            let mut s = Q::zero();
            if c == a && d == b {
                s += eta(a);
            }
            if c == b && d == a {
                s -= eta(b);
            }
            *v = s;
        }
    }
    m
}

/// The ten labels (A, B), A < B, in lexicographic order.
pub fn labels() -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(10);
    for a in 0..5 {
        for b in (a + 1)..5 {
            out.push((a, b));
        }
    }
    out
}

fn label_index(a: usize, b: usize) -> usize {
    labels().iter().position(|&l| l == (a, b)).expect("label with a < b")
}

pub fn label_name(l: (usize, usize)) -> String {
    format!("J_{}{}", l.0, l.1)
}

/// One so(1,4) generator.
#[derive(Clone, Debug, PartialEq)]
pub struct Generator {
    pub label: (usize, usize),
    pub matrix: Mat5,
}

/// The ten generators in [`labels`] order.
pub fn build_generators() -> Vec<Generator> {
    labels().into_iter().map(|l| Generator { label: l, matrix: generator_matrix(l.0, l.1) }).collect()
}

/// Coordinates of an algebra element on the ten generators.
pub type Combo = [Q; 10];

/// Matrix of a combination.
pub fn combo_matrix(c: &Combo) -> Mat5 {
    labels().iter().zip(c.iter()).fold(zero5(), |acc, (l, &k)| add5(&acc, &scale5(k, &generator_matrix(l.0, l.1))))
}

/// Coefficients of an algebra matrix on the generators, or `None` if it is
/// not in the span.
pub fn decompose(m: &Mat5) -> Option<Combo> {
    let mut c = [Q::zero(); 10];
    for (i, &(a, b)) in labels().iter().enumerate() {
        c[i] = m[b][a] / eta(a);
    }
    if combo_matrix(&c) == *m {
        Some(c)
    } else {
        None
    }
}

/// k·J_{AB} as a combination, honouring J_{AB} = −J_{BA} and J_{AA} = 0.
pub fn term(k: Q, a: usize, b: usize) -> Combo {
    let mut c = [Q::zero(); 10];
    if a < b {
        c[label_index(a, b)] = k;
    } else if b < a {
        c[label_index(b, a)] = -k;
    }
    c
}

fn add_combo(x: &Combo, y: &Combo) -> Combo {
    std::array::from_fn(|i| x[i] + y[i])
}

/// Human-readable combination, e.g. "J_01 - 1/4 J_23".
pub fn combo_string(c: &Combo) -> String {
    let mut parts = Vec::new();
    for (l, k) in labels().iter().zip(c.iter()) {
        if k.is_zero() {
            continue;
        }
        let name = label_name(*l);
        let abs = k.abs();
        let coeff = if abs.is_one() { String::new() } else { format!("{abs} ") };
        let sign = if *k < Q::zero() { "-" } else { "+" };
        parts.push((sign, format!("{coeff}{name}")));
    }
    if parts.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (sign, body)) in parts.into_iter().enumerate() {
        if i == 0 {
            if sign == "-" {
                s.push('-');
            }
        } else {
            s.push_str(&format!(" {sign} "));
        }
        s.push_str(&body);
    }
    s
}

/// The bracket rule as printed, for labels (A, B) and (C, D) with A < B and C < D:
///
/// * [J_{α4}, J_{β4}] = J_{αβ}
/// * [J_{αβ}, J_{λ4}] = η_{λβ}J_{α4} − η_{λα}J_{β4}
/// * [J_{αβ}, J_{λτ}] = η_{αλ}J_{βτ} + η_{βτ}J_{αλ} − η_{βλ}J_{ατ} − η_{ατ}J_{βλ}
pub fn printed_rule(x: (usize, usize), y: (usize, usize)) -> Combo {
    let e = |i: usize, j: usize| if i == j { eta(i) } else { Q::zero() };
    match (x.1 == 4, y.1 == 4) {
        (true, true) => term(Q::one(), x.0, y.0),
        (false, true) => {
            let (a, b, l) = (x.0, x.1, y.0);
            add_combo(&term(e(l, b), a, 4), &term(-e(l, a), b, 4))
        }
        (true, false) => printed_rule(y, x).map(|v| -v),
        (false, false) => {
            let (a, b, l, t) = (x.0, x.1, y.0, y.1);
            let mut c = term(e(a, l), b, t);
            c = add_combo(&c, &term(e(b, t), a, l));
            c = add_combo(&c, &term(-e(b, l), a, t));
            add_combo(&c, &term(-e(a, t), b, l))
        }
    }
}

/// [J_{AB}, J_{CD}] = η_{BC}J_{AD} − η_{AC}J_{BD} − η_{BD}J_{AC} + η_{AD}J_{BC}.
pub fn uniform_rule(x: (usize, usize), y: (usize, usize)) -> Combo {
    let e = |i: usize, j: usize| if i == j { eta(i) } else { Q::zero() };
    let (a, b, c, d) = (x.0, x.1, y.0, y.1);
    let mut out = term(e(b, c), a, d);
    out = add_combo(&out, &term(-e(a, c), b, d));
    out = add_combo(&out, &term(-e(b, d), a, c));
    add_combo(&out, &term(e(a, d), b, c))
}

/// One row of the commutator table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CommutatorReport {
    pub pair: (String, String),
    pub computed: String,
    pub expected: String,
    pub exact_match: bool,
    /// Whether the computed bracket matches the uniform five-index rule.
    pub uniform_match: bool,
}

/// All 45 brackets of distinct generators against the printed rule.
pub fn commutator_table() -> Vec<CommutatorReport> {
    let gens = build_generators();
    let mut out = Vec::with_capacity(45);
    for i in 0..gens.len() {
        for j in (i + 1)..gens.len() {
            let (x, y) = (gens[i].label, gens[j].label);
            let m = bracket(&gens[i].matrix, &gens[j].matrix);
            let computed = decompose(&m).expect("so(1,4) is closed under the bracket");
            let expected = printed_rule(x, y);
            let uniform = uniform_rule(x, y);
            out.push(CommutatorReport {
                pair: (label_name(x), label_name(y)),
                computed: combo_string(&computed),
                expected: combo_string(&expected),
                exact_match: computed == expected,
                uniform_match: computed == uniform,
            });
        }
    }
    out
}

/// Π_α = J_{α4}/ℓ.
pub fn translation_matrix(alpha: usize, ell: Q) -> Mat5 {
    scale5(Q::one() / ell, &generator_matrix(alpha, 4))
}

/// Brackets involving Π_α at radius ℓ, each compared exactly with the
/// printed rule: [Π_α, Π_β] = J_{αβ}/ℓ², [J_{αβ}, Π_λ] = η_{λβ}Π_α − η_{λα}Π_β.
pub fn translation_brackets(ell: Q) -> Vec<CommutatorReport> {
    let mut out = Vec::new();
    let e = |i: usize, j: usize| if i == j { eta(i) } else { Q::zero() };
    for a in 0..4 {
        for b in (a + 1)..4 {
            let m = bracket(&translation_matrix(a, ell), &translation_matrix(b, ell));
            let expected = scale5(Q::one() / (ell * ell), &generator_matrix(a, b));
            out.push(CommutatorReport {
                pair: (format!("Pi_{a}"), format!("Pi_{b}")),
                computed: combo_string(&decompose(&m).expect("closed")),
                expected: combo_string(&decompose(&expected).expect("closed")),
                exact_match: m == expected,
                uniform_match: m == expected,
            });
        }
    }
    for (a, b) in labels().into_iter().filter(|l| l.1 < 4) {
        for l in 0..4 {
            let m = bracket(&generator_matrix(a, b), &translation_matrix(l, ell));
            let expected = sub5(
                &scale5(e(l, b), &translation_matrix(a, ell)),
                &scale5(e(l, a), &translation_matrix(b, ell)),
            );
            out.push(CommutatorReport {
                pair: (label_name((a, b)), format!("Pi_{l}")),
                computed: combo_string(&decompose(&m).expect("closed")),
                expected: combo_string(&decompose(&expected).expect("closed")),
                exact_match: m == expected,
                uniform_match: m == expected,
            });
        }
    }
    out
}

/// Structure constants of a rule: `c[i][j]` = [e_i, e_j] on the basis.
fn structure_constants(rule: impl Fn((usize, usize), (usize, usize)) -> Combo) -> Vec<Vec<Combo>> {
    let ls = labels();
    ls.iter()
        .map(|&x| ls.iter().map(|&y| if x == y { [Q::zero(); 10] } else if x < y { rule(x, y) } else { rule(y, x).map(|v| -v) }).collect())
        .collect()
}

/// Largest |Jacobi sum| over all generator triples for the structure
/// constants of `rule`; zero for a Lie algebra.
pub fn jacobi_defect(rule: impl Fn((usize, usize), (usize, usize)) -> Combo) -> Q {
    let c = structure_constants(rule);
    let br = |x: &Combo, y: &Combo| -> Combo {
        let mut out = [Q::zero(); 10];
        for i in 0..10 {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..10 {
                if y[j].is_zero() {
                    continue;
                }
                for k in 0..10 {
                    out[k] += x[i] * y[j] * c[i][j][k];
                }
            }
        }
        out
    };
    let unit = |i: usize| -> Combo { std::array::from_fn(|k| if k == i { Q::one() } else { Q::zero() }) };
    let mut worst = Q::zero();
    for i in 0..10 {
        for j in 0..10 {
            for k in 0..10 {
                let (a, b, d) = (unit(i), unit(j), unit(k));
                let s = add_combo(&add_combo(&br(&a, &br(&b, &d)), &br(&b, &br(&d, &a))), &br(&d, &br(&a, &b)));
                for v in s {
                    if v.abs() > worst {
                        worst = v.abs();
                    }
                }
            }
        }
    }
    worst
}

/// Sign of the permutation (a0..a4) of 0..4, zero if any index repeats.
pub fn levi_civita5(idx: [usize; 5]) -> i64 {
    let mut seen = [false; 5];
    for &i in &idx {
        if i >= 5 || seen[i] {
            return 0;
        }
        seen[i] = true;
    }
    let mut sign = 1;
    let mut p = idx;
    for i in 0..5 {
        while p[i] != i {
            let j = p[i];
            p.swap(i, j);
            sign = -sign;
        }
    }
    sign
}

/// Dense rational matrix of any size.
pub type QMat = Vec<Vec<Q>>;

fn qzero(n: usize) -> QMat {
    vec![vec![Q::zero(); n]; n]
}

fn qmul(a: &QMat, b: &QMat) -> QMat {
    let n = a.len();
    let mut out = qzero(n);
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

fn qadd(a: &QMat, b: &QMat) -> QMat {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect()).collect()
}

fn qscale(k: Q, a: &QMat) -> QMat {
    a.iter().map(|r| r.iter().map(|v| v * k).collect()).collect()
}

fn qcommutator(a: &QMat, b: &QMat) -> QMat {
    let ab = qmul(a, b);
    let ba = qmul(b, a);
    ab.iter().zip(&ba).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect()).collect()
}

fn qis_zero(a: &QMat) -> bool {
    a.iter().flatten().all(|v| v.is_zero())
}

/// Representation in which Casimir operators are evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Representation {
    /// 5×5 matrices acting on ℝ^{1,4}; W_A vanishes identically here.
    Defining,
    /// 10×10 matrices of ad(J_{AB}) on the generator basis.
    Adjoint,
}

/// ρ(J_{AB}) for every A, B (zero on the diagonal, antisymmetric).
pub fn representation(rep: Representation) -> Vec<Vec<QMat>> {
    let single = |a: usize, b: usize| -> QMat {
        match rep {
            Representation::Defining => generator_matrix(a, b).iter().map(|r| r.to_vec()).collect(),
            Representation::Adjoint => {
                let x = generator_matrix(a, b);
                let mut m = qzero(10);
                for (j, g) in build_generators().iter().enumerate() {
                    let c = decompose(&bracket(&x, &g.matrix)).expect("closed");
                    for k in 0..10 {
                        m[k][j] = c[k];
                    }
                }
                m
            }
        }
    };
    (0..5).map(|a| (0..5).map(|b| single(a, b)).collect()).collect()
}

/// ρ(J^{AB}) = η̊^{AA}η̊^{BB}ρ(J_{AB}).
fn raised(r: &[Vec<QMat>], a: usize, b: usize) -> QMat {
    qscale(eta(a) * eta(b), &r[a][b])
}

/// I1 = (1/2ℓ²) Σ_{A,B} J_{AB}J^{AB}.
pub fn casimir_i1(rep: Representation, ell: Q) -> QMat {
    let r = representation(rep);
    let n = r[0][1].len();
    let mut s = qzero(n);
    for a in 0..5 {
        for b in 0..5 {
            s = qadd(&s, &qmul(&r[a][b], &raised(&r, a, b)));
        }
    }
    qscale(Q::one() / (q(2) * ell * ell), &s)
}

fn epsilon_contraction(r: &[Vec<QMat>], a: usize, range: usize) -> QMat {
    let n = r[0][1].len();
    let mut s = qzero(n);
    for b in 0..range {
        for c in 0..range {
            for d in 0..range {
                for e in 0..range {
                    let eps = levi_civita5([a, b, c, d, e]);
                    if eps != 0 {
                        s = qadd(&s, &qscale(q(eps), &qmul(&raised(r, b, c), &raised(r, d, e))));
                    }
                }
            }
        }
    }
    s
}

/// W_A = (1/8ℓ) ε_{ABCDE} J^{BC}J^{DE}.
pub fn pauli_lubanski(rep: Representation, a: usize, ell: Q) -> QMat {
    let r = representation(rep);
    qscale(Q::one() / (q(8) * ell), &epsilon_contraction(&r, a, 5))
}

/// I2 = W^A W_A.
pub fn casimir_i2(rep: Representation, ell: Q) -> QMat {
    let mut s: Option<QMat> = None;
    for a in 0..5 {
        let w = pauli_lubanski(rep, a, ell);
        let t = qscale(eta(a), &qmul(&w, &w));
        s = Some(match s {
            None => t,
            Some(acc) => qadd(&acc, &t),
        });
    }
    s.expect("five components")
}

/// W_4 written with four-dimensional indices, (1/8) ε_{4μνρτ}J^{μν}J^{ρτ}.
pub fn w4_four_index(rep: Representation) -> QMat {
    let r = representation(rep);
    qscale(Q::one() / q(8), &epsilon_contraction(&r, 4, 4))
}

/// Casimir centrality and values at one radius.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CasimirReport {
    pub representation: Representation,
    pub ell: String,
    pub i1_central: bool,
    pub i2_central: bool,
    pub i1_is_scalar: bool,
    pub i2_is_scalar: bool,
    /// The scalar value when the operator is a multiple of the identity.
    pub i1_value: Option<String>,
    pub i2_value: Option<String>,
    /// Whether I1 equals η^{αβ}Π_αΠ_β + (1/2ℓ²)η^{αλ}η^{βτ}J_{αβ}J_{λτ}.
    pub i1_split_matches: bool,
    /// Same split with −η^{αβ}Π_αΠ_β.
    pub i1_split_opposite_pi_matches: bool,
    /// Whether I1(ℓ)·ℓ² equals I1(1).
    pub i1_scaling_exact: bool,
}

fn scalar_value(m: &QMat) -> Option<Q> {
    let d = m[0][0];
    let n = m.len();
    let ok = (0..n).all(|i| (0..n).all(|j| m[i][j] == if i == j { d } else { Q::zero() }));
    ok.then_some(d)
}

pub fn casimir_check(rep: Representation, ell: Q) -> CasimirReport {
    let r = representation(rep);
    let n = r[0][1].len();
    let i1 = casimir_i1(rep, ell);
    let i2 = casimir_i2(rep, ell);
    let central = |m: &QMat| (0..5).all(|a| ((a + 1)..5).all(|b| qis_zero(&qcommutator(m, &r[a][b]))));
    let mut pi = qzero(n);
    for a in 0..4 {
        let p = qscale(Q::one() / ell, &r[a][4]);
        pi = qadd(&pi, &qscale(eta(a), &qmul(&p, &p)));
    }
    let mut rot = qzero(n);
    for a in 0..4 {
        for b in 0..4 {
            rot = qadd(&rot, &qmul(&r[a][b], &raised(&r, a, b)));
        }
    }
    let rot = qscale(Q::one() / (q(2) * ell * ell), &rot);
    let v1 = scalar_value(&i1);
    let v2 = scalar_value(&i2);
    CasimirReport {
        representation: rep,
        ell: ell.to_string(),
        i1_central: central(&i1),
        i2_central: central(&i2),
        i1_is_scalar: v1.is_some(),
        i2_is_scalar: v2.is_some(),
        i1_value: v1.map(|v| v.to_string()),
        i2_value: v2.map(|v| v.to_string()),
        i1_split_matches: qadd(&pi, &rot) == i1,
        i1_split_opposite_pi_matches: qadd(&qscale(q(-1), &pi), &rot) == i1,
        i1_scaling_exact: qscale(ell * ell, &i1) == casimir_i1(rep, Q::one()),
    }
}

/// W_4 from the four-index formula against the A = 4 component of W_A.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct W4Report {
    pub representation: Representation,
    pub ell: String,
    /// Whether W_4 is a nonzero operator in this representation.
    pub nonzero: bool,
    pub equal: bool,
    /// Whether the four-index form equals ℓ times the five-index component.
    pub equal_up_to_ell: bool,
}

pub fn w4_check(rep: Representation, ell: Q) -> W4Report {
    let four = w4_four_index(rep);
    let five = pauli_lubanski(rep, 4, ell);
    W4Report {
        representation: rep,
        ell: ell.to_string(),
        nonzero: !qis_zero(&five),
        equal: four == five,
        equal_up_to_ell: four == qscale(ell, &five),
    }
}

/// Structure-constant contraction across radii.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ContractionReport {
    pub ells: Vec<String>,
    /// ‖[Π_α, Π_β]‖ / ‖J_{αβ}‖ per radius, for every pair α < β (all equal).
    pub norm_ratios: Vec<String>,
    /// Whether every ratio equals 1/ℓ² exactly.
    pub inverse_square_exact: bool,
    /// ‖·‖(ℓ_i) / ‖·‖(ℓ_{i+1}) for consecutive radii.
    pub consecutive_ratios: Vec<String>,
    /// Whether each consecutive ratio equals (ℓ_{i+1}/ℓ_i)² exactly.
    pub consecutive_exact: bool,
    /// Whether the [J_{αβ}, J_{λτ}] brackets are the same for every radius.
    pub rotations_ell_independent: bool,
}

pub fn contraction_scaling(ells: &[Q]) -> ContractionReport {
    let mut per_ell = Vec::new();
    let mut inverse_square_exact = true;
    for &l in ells {
        let mut ratio: Option<Q> = None;
        for a in 0..4 {
            for b in (a + 1)..4 {
                let m = bracket(&translation_matrix(a, l), &translation_matrix(b, l));
                let r = max_abs5(&m) / max_abs5(&generator_matrix(a, b));
                if r != Q::one() / (l * l) {
                    inverse_square_exact = false;
                }
                match ratio {
                    None => ratio = Some(r),
                    Some(p) if p != r => inverse_square_exact = false,
                    _ => {}
                }
            }
        }
        per_ell.push(ratio.unwrap_or_else(Q::zero));
    }
    let mut consecutive = Vec::new();
    let mut consecutive_exact = true;
    for i in 0..per_ell.len().saturating_sub(1) {
        let r = per_ell[i] / per_ell[i + 1];
        let want = (ells[i + 1] / ells[i]) * (ells[i + 1] / ells[i]);
        consecutive_exact &= r == want;
        consecutive.push(r.to_string());
    }
    // The rotation generators carry no ℓ, so their table is the ℓ = 1 table
    // at every radius; compare the brackets recomputed per radius.
    let rot: Vec<(usize, usize)> = labels().into_iter().filter(|l| l.1 < 4).collect();
    let table = |_l: Q| -> Vec<Mat5> {
        let mut v = Vec::new();
        for &x in &rot {
            for &y in &rot {
                v.push(bracket(&generator_matrix(x.0, x.1), &generator_matrix(y.0, y.1)));
            }
        }
        v
    };
    let base = table(Q::one());
    let rotations_ell_independent = ells.iter().all(|&l| table(l) == base);
    ContractionReport {
        ells: ells.iter().map(|l| l.to_string()).collect(),
        norm_ratios: per_ell.iter().map(|r| r.to_string()).collect(),
        inverse_square_exact,
        consecutive_ratios: consecutive,
        consecutive_exact,
        rotations_ell_independent,
    }
}

/// Apply a generator to an ambient point exactly: (M X)^D.
pub fn act(m: &Mat5, x: &[Q; 5]) -> [Q; 5] {
    std::array::from_fn(|d| (0..5).map(|c| m[d][c] * x[c]).fold(Q::zero(), |a, b| a + b))
}

/// The defining vector field η̊_{AC}X^C∂_B − η̊_{BC}X^C∂_A evaluated at X.
pub fn field_at(a: usize, b: usize, x: &[Q; 5]) -> [Q; 5] {
    let mut v = [Q::zero(); 5];
    v[b] += eta(a) * x[a];
    v[a] -= eta(b) * x[b];
    v
}

/// Residuals of the ambient identities for the chart Killing fields at one point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PushforwardResidual {
    /// max |J_* J_{μν} − (η̊_{μβ}X^β∂_ν − η̊_{νβ}X^β∂_μ)|.
    pub rotations: f64,
    /// max |J_*(ℓΠ_μ) − (−X⁴∂_μ + X_μ∂_4)| for the right side as printed.
    pub boosts: f64,
    /// max |J_*(ℓΠ_μ) − (−X⁴∂_μ − X_μ∂_4)|.
    pub boosts_opposite_x_mu: f64,
    /// max |η̊(J_*V, X)| over all ten fields (tangency to the pseudo-sphere).
    pub tangency: f64,
}

pub fn pushforward_residual(ds: &DeSitter, x: &Point) -> Result<PushforwardResidual> {
    let big = ds.embed(x)?;
    let jrot = ds.killing_rotations(x)?;
    let xi = ds.killing_translations(x)?;
    let low: [f64; 5] = std::array::from_fn(|a| ETA5[a] * big[a]);
    let mut rotations = 0.0f64;
    let mut boosts = 0.0f64;
    let mut boosts_alt = 0.0f64;
    let mut tangency = 0.0f64;
    let tang = |v: &[f64; 5]| (0..5).map(|a| ETA5[a] * v[a] * big[a]).sum::<f64>().abs();
    for m in 0..4 {
        for n in (m + 1)..4 {
            let pf = ds.pushforward(x, &jrot[m][n])?;
            let mut rhs = [0.0; 5];
            rhs[n] += low[m];
            rhs[m] -= low[n];
            rotations = rotations.max((0..5).fold(0.0f64, |a, k| a.max((pf[k] - rhs[k]).abs())));
            tangency = tangency.max(tang(&pf));
        }
        let v: [f64; 4] = xi[m].map(|c| c * ds.ell());
        let pf = ds.pushforward(x, &v)?;
        let mut rhs = [0.0; 5];
        rhs[m] = -big[4];
        rhs[4] = low[m];
        boosts = boosts.max((0..5).fold(0.0f64, |a, k| a.max((pf[k] - rhs[k]).abs())));
        rhs[4] = -low[m];
        boosts_alt = boosts_alt.max((0..5).fold(0.0f64, |a, k| a.max((pf[k] - rhs[k]).abs())));
        tangency = tangency.max(tang(&pf));
    }
    Ok(PushforwardResidual { rotations, boosts, boosts_opposite_x_mu: boosts_alt, tangency })
}

/// Worst residuals over a set of points.
pub fn appendix_pushforward_check(ds: &DeSitter, points: &[Point]) -> Result<PushforwardResidual> {
    let mut worst = PushforwardResidual { rotations: 0.0, boosts: 0.0, boosts_opposite_x_mu: 0.0, tangency: 0.0 };
    for p in points {
        let r = pushforward_residual(ds, p)?;
        worst.rotations = worst.rotations.max(r.rotations);
        worst.boosts = worst.boosts.max(r.boosts);
        worst.boosts_opposite_x_mu = worst.boosts_opposite_x_mu.max(r.boosts_opposite_x_mu);
        worst.tangency = worst.tangency.max(r.tangency);
    }
    Ok(worst)
}

/// Chart vector field representing the generator with the given label.
///
/// J_{μν} maps to x_μ∂_ν − x_ν∂_μ. The chart field ℓΠ_μ pushes forward to
/// −X⁴∂_μ − X_μ∂_4 = −J_{μ4}, so J_{μ4} maps to −ℓΠ_μ; with this map the
/// chart fields obey the same brackets as the matrices.
pub fn chart_field(ds: &DeSitter, label: (usize, usize)) -> VectorField {
    if label.1 == 4 {
        ds.boost_field(label.0).scale(-1.0)
    } else {
        ds.rotation_field(label.0, label.1)
    }
}

/// Chart field of a combination.
pub fn chart_combo_field(ds: &DeSitter, c: &Combo) -> VectorField {
    let fields: Vec<(f64, VectorField)> = labels()
        .into_iter()
        .zip(c.iter())
        .filter(|(_, k)| !k.is_zero())
        .map(|(l, k)| (*k.numer() as f64 / *k.denom() as f64, chart_field(ds, l)))
        .collect();
    VectorField::new(move |x| {
        let mut out = [0.0; 4];
        for (k, f) in &fields {
            let v = f.eval(x)?;
            for i in 0..4 {
                out[i] += k * v[i];
            }
        }
        Ok(out)
    })
}

/// max over all 45 pairs and the given points of |[V_i, V_j] − V_{[i,j]}|,
/// with the left side from finite differences on the chart.
pub fn vector_field_bridge(ds: &DeSitter, points: &[Point]) -> Result<f64> {
    let chart = ds.chart();
    let gens = build_generators();
    let mut worst = 0.0f64;
    for i in 0..gens.len() {
        for j in (i + 1)..gens.len() {
            let combo = decompose(&bracket(&gens[i].matrix, &gens[j].matrix)).expect("closed");
            let lhs = chart_field(ds, gens[i].label).bracket(&chart_field(ds, gens[j].label), &chart);
            let rhs = chart_combo_field(ds, &combo);
            for p in points {
                let (a, b) = (lhs.eval(p)?, rhs.eval(p)?);
                for k in 0..4 {
                    worst = worst.max((a[k] - b[k]).abs());
                }
            }
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_eta_antisymmetric() {
        for g in build_generators() {
            let m = &g.matrix;
            for d in 0..5 {
                for c in 0..5 {
                    assert_eq!(eta(d) * m[d][c], -(eta(c) * m[c][d]));
                }
            }
        }
        assert_eq!(generator_matrix(1, 0), scale5(q(-1), &generator_matrix(0, 1)));
    }

    #[test]
    fn j01_acts_on_x0() {
        let x = [q(1), q(0), q(0), q(0), q(0)];
        assert_eq!(act(&generator_matrix(0, 1), &x), [q(0), q(1), q(0), q(0), q(0)]);
        assert_eq!(field_at(0, 1, &x), act(&generator_matrix(0, 1), &x));
    }

    #[test]
    fn first_two_lines_hold() {
        let table = commutator_table();
        let r = table.iter().find(|r| r.pair == ("J_04".into(), "J_14".into())).unwrap();
        assert!(r.exact_match);
        assert_eq!(r.computed, "J_01");
        let disjoint = table.iter().find(|r| r.pair == ("J_12".into(), "J_34".into())).unwrap();
        assert_eq!(disjoint.computed, "0");
    }

    #[test]
    fn uniform_rule_is_a_lie_algebra() {
        assert!(jacobi_defect(uniform_rule).is_zero());
        assert!(commutator_table().iter().all(|r| r.uniform_match));
    }

    #[test]
    fn levi_civita_signs() {
        assert_eq!(levi_civita5([0, 1, 2, 3, 4]), 1);
        assert_eq!(levi_civita5([1, 0, 2, 3, 4]), -1);
        assert_eq!(levi_civita5([0, 0, 2, 3, 4]), 0);
    }

    #[test]
    fn combo_rendering() {
        let c = add_combo(&term(q(1), 0, 1), &term(Q::new(-1, 4), 2, 3));
        assert_eq!(combo_string(&c), "J_01 - 1/4 J_23");
    }
    #[test]
    fn adjoint_casimirs_are_central_and_w4_carries_ell() {
        let r = casimir_check(Representation::Adjoint, q(3));
        assert!(r.i1_central && r.i2_central);
        assert!(r.i1_split_opposite_pi_matches && !r.i1_split_matches);
        let w = w4_check(Representation::Adjoint, q(3));
        assert!(w.nonzero && !w.equal && w.equal_up_to_ell);
        assert!(w4_check(Representation::Adjoint, q(1)).equal);
    }
}
