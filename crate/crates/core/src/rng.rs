//! Seeded sampling of chart points. Every random draw in the workbench goes
//! through here so a seed fixes the whole run.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chart::Point;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform point in the cube [−a, a]⁴.
pub fn point_in_cube(r: &mut impl Rng, a: f64) -> Point {
    std::array::from_fn(|_| r.gen_range(-a..a))
}

/// Points of the de Sitter chart interior with |σ²| kept below `max_sigma2`
/// and coordinates in [−a, a].
pub fn desitter_points(seed: u64, n: usize, ell: f64, a: f64, max_sigma2: f64) -> Vec<Point> {
    let mut r = rng(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let p = point_in_cube(&mut r, a * ell);
        let s2 = crate::desitter::sigma2(&p);
        if s2.abs() < max_sigma2 * ell * ell {
            out.push(p);
        }
    }
    out
}

/// Points with every coordinate in [−a, a].
pub fn cube_points(seed: u64, n: usize, a: f64) -> Vec<Point> {
    let mut r = rng(seed);
    (0..n).map(|_| point_in_cube(&mut r, a)).collect()
}

/// Uniform reals in [−1, 1].
pub fn coefficients(r: &mut impl Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| r.gen_range(-1.0..1.0)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_points_repeat() {
        assert_eq!(desitter_points(7, 5, 1.0, 0.8, 2.0), desitter_points(7, 5, 1.0, 0.8, 2.0));
        assert!(desitter_points(7, 50, 1.0, 0.8, 2.0).iter().all(|p| crate::desitter::sigma2(p).abs() < 2.0));
    }
}
