use desitter_core::desitter::sigma2;
use desitter_core::tensors::killing_residual;
use desitter_core::DeSitter;
use proptest::prelude::*;

fn interior_point(ell: f64) -> impl Strategy<Value = [f64; 4]> {
    proptest::array::uniform4(-0.8f64..0.8)
        .prop_map(move |p| p.map(|c| c * ell))
        .prop_filter("inside |σ²| < 2ℓ²", move |p| sigma2(p).abs() < 2.0 * ell * ell)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn embedding_lies_on_the_hyperboloid(ell in 0.5f64..4.0, u in interior_point(1.0)) {
        let ds = DeSitter::new(ell).unwrap();
        let x = u.map(|c| c * ell);
        let big = ds.embed(&x).unwrap();
        prop_assert!(ds.embedding_constraint(&big).abs() <= 1e-12 * ell * ell);
    }

    #[test]
    fn scalar_curvature_is_twelve_over_ell_squared(ell in 0.5f64..4.0, u in interior_point(1.0)) {
        let ds = DeSitter::new(ell).unwrap();
        let x = u.map(|c| c * ell);
        let r = ds.chart().geometry(&x).unwrap().scalar;
        prop_assert!((r.abs() * ell * ell - 12.0).abs() < 1e-6);
    }

    #[test]
    fn translations_are_killing(x in interior_point(1.0), a in 0usize..4) {
        let ds = DeSitter::new(1.0).unwrap();
        let r = killing_residual(&ds.translation_field(a), &ds.chart(), &x).unwrap();
        prop_assert!(r < 1e-8);
    }

    #[test]
    fn killing_det_factorises(ell in 0.5f64..4.0, u in interior_point(1.0)) {
        let ds = DeSitter::new(ell).unwrap();
        let x = u.map(|c| c * ell);
        prop_assert!((ds.killing_det(&x) - ds.killing_det_closed_form(&x)).abs() < 1e-12);
    }
}
