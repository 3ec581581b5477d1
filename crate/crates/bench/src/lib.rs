//! Shared inputs for the benchmarks in `benches/`.

use desitter_core::clifford::{Multivector, Signature};
use desitter_core::Point;

/// A dense multivector with every coefficient set.
pub fn dense(sig: &Signature, seed: f64) -> Multivector {
    let c: Vec<f64> = (0..sig.blades()).map(|i| ((i as f64 + 1.0) * seed).sin()).collect();
    Multivector::from_coeffs(sig, &c).expect("length matches")
}

/// A generic point of the de Sitter chart interior at ℓ = 1.
pub const SAMPLE_POINT: Point = [0.3, 0.2, -0.1, 0.4];
