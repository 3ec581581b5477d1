use desitter_core::clifford::{Multivector, Signature};
use proptest::prelude::*;

fn coeffs(n: usize) -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec((-1000i32..=1000).prop_map(|k| f64::from(k) / 1000.0), n)
}

fn sig(five: bool) -> Signature {
    if five {
        Signature::lorentz5()
    } else {
        Signature::lorentz4()
    }
}

fn mv(s: &Signature, c: &[f64]) -> Multivector {
    Multivector::from_coeffs(s, &c[..s.blades()]).unwrap()
}

fn close(a: &Multivector, b: &Multivector, tol: f64) -> bool {
    (a.clone() - b.clone()).norm_inf() <= tol
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn product_is_associative(five in any::<bool>(), a in coeffs(32), b in coeffs(32), c in coeffs(32)) {
        let s = sig(five);
        let (a, b, c) = (mv(&s, &a), mv(&s, &b), mv(&s, &c));
        prop_assert!(close(&a.gp(&b).unwrap().gp(&c).unwrap(), &a.gp(&b.gp(&c).unwrap()).unwrap(), 1e-12));
    }

    #[test]
    fn vector_product_splits(five in any::<bool>(), a in coeffs(32), b in coeffs(32), k in 0usize..=5) {
        let s = sig(five);
        let k = k.min(s.dim());
        let (a, b) = (mv(&s, &a).grade(1), mv(&s, &b).grade(k));
        let sum = a.lc(&b).unwrap() + a.wedge(&b).unwrap();
        prop_assert!(close(&a.gp(&b).unwrap(), &sum, 1e-12));
    }

    #[test]
    fn hodge_round_trip(five in any::<bool>(), a in coeffs(32)) {
        let s = sig(five);
        let a = mv(&s, &a);
        prop_assert!(close(&a.hodge().hodge_inv(), &a, 1e-12));
        prop_assert!(close(&a.hodge(), &a.hodge_components(), 1e-12));
    }

    #[test]
    fn hodge_maps_grade_r_to_n_minus_r(five in any::<bool>(), a in coeffs(32), r in 0usize..=5) {
        let s = sig(five);
        let r = r.min(s.dim());
        let h = mv(&s, &a).grade(r).hodge();
        prop_assert!(close(&h.grade(s.dim() - r), &h, 0.0));
    }

    #[test]
    fn reverse_is_an_anti_automorphism(five in any::<bool>(), a in coeffs(32), b in coeffs(32)) {
        let s = sig(five);
        let (a, b) = (mv(&s, &a), mv(&s, &b));
        let lhs = a.gp(&b).unwrap().reverse();
        let rhs = b.reverse().gp(&a.reverse()).unwrap();
        prop_assert!(close(&lhs, &rhs, 1e-12));
    }

    #[test]
    fn wedge_of_vectors_is_antisymmetric(a in coeffs(32), b in coeffs(32)) {
        let s = sig(false);
        let (a, b) = (mv(&s, &a).grade(1), mv(&s, &b).grade(1));
        prop_assert!(close(&a.wedge(&b).unwrap(), &(b.wedge(&a).unwrap() * -1.0), 1e-15));
        prop_assert!(a.wedge(&a).unwrap().norm_inf() <= 1e-15);
    }
}

#[test]
fn mixed_signatures_are_rejected() {
    let a = Multivector::scalar(&Signature::lorentz4(), 1.0);
    let b = Multivector::scalar(&Signature::lorentz5(), 1.0);
    assert!(a.gp(&b).is_err());
}
