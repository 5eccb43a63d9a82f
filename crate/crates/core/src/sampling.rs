//! Low-discrepancy sample sets and parallel max-reductions over them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const PRIMES: [u32; 3] = [2, 3, 5];

/// Radical inverse of `i` in base `b`.
fn radical_inverse(mut i: u64, b: u32) -> f64 {
    let inv = 1.0 / b as f64;
    let mut f = inv;
    let mut r = 0.0;
    while i > 0 {
        r += f * (i % b as u64) as f64;
        i /= b as u64;
        f *= inv;
    }
    r
}

/// Randomly shifted Halton points in `[0, 1)^3`. The shift depends only on
/// `seed`, so sample sets are reproducible.
pub fn halton(n: usize, seed: u64) -> Vec<[f64; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shift: [f64; 3] = [rng.random(), rng.random(), rng.random()];
    (0..n as u64)
        .map(|i| [0, 1, 2].map(|d| (radical_inverse(i + 1, PRIMES[d]) + shift[d]).fract()))
        .collect()
}

/// Coordinate chart with per-axis bounds; periodic axes have period
/// `hi - lo`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Chart {
    pub lo: [f64; 3],
    pub hi: [f64; 3],
    pub periodic: [bool; 3],
}

impl Chart {
    /// The flat 3-torus `[0, 1)^3`.
    pub fn torus() -> Self {
        Chart { lo: [0.0; 3], hi: [1.0; 3], periodic: [true; 3] }
    }

    /// A non-periodic box.
    pub fn cube(lo: f64, hi: f64) -> Self {
        Chart { lo: [lo; 3], hi: [hi; 3], periodic: [false; 3] }
    }

    pub fn samples(&self, n: usize, seed: u64) -> Vec<[f64; 3]> {
        halton(n, seed)
            .into_iter()
            .map(|u| [0, 1, 2].map(|d| self.lo[d] + u[d] * (self.hi[d] - self.lo[d])))
            .collect()
    }
}

/// Points of the solid torus `{|(x, y) - center| < radius} x [0, 1)`, equal
/// area in the disk factor.
pub fn solid_torus(center: [f64; 2], radius: f64, n: usize, seed: u64) -> Vec<[f64; 3]> {
    halton(n, seed)
        .into_iter()
        .map(|u| {
            let r = radius * u[0].sqrt();
            let th = std::f64::consts::TAU * u[1];
            [center[0] + r * th.cos(), center[1] + r * th.sin(), u[2]]
        })
        .collect()
}

/// Points of the annulus `r_in <= r < r_out` times the circle.
pub fn annular_torus(center: [f64; 2], r_in: f64, r_out: f64, n: usize, seed: u64) -> Vec<[f64; 3]> {
    halton(n, seed)
        .into_iter()
        .map(|u| {
            let r = (r_in * r_in + u[0] * (r_out * r_out - r_in * r_in)).sqrt();
            let th = std::f64::consts::TAU * u[1];
            [center[0] + r * th.cos(), center[1] + r * th.sin(), u[2]]
        })
        .collect()
}

/// Points of the disk of `radius` around `center`.
pub fn disk(center: [f64; 2], radius: f64, n: usize, seed: u64) -> Vec<[f64; 2]> {
    solid_torus(center, radius, n, seed).into_iter().map(|p| [p[0], p[1]]).collect()
}

/// Maximum of `f` over `points`, evaluated in parallel; NaN counts as
/// infinity. Returns `(max, argmax)`.
pub fn sweep_max<P, F>(points: &[P], f: F) -> (f64, Option<usize>)
where
    P: Sync,
    F: Fn(&P) -> f64 + Sync,
{
    points
        .par_iter()
        .enumerate()
        .map(|(i, p)| {
            let v = f(p);
            (if v.is_nan() { f64::INFINITY } else { v }, Some(i))
        })
        .reduce(|| (f64::NEG_INFINITY, None), |a, b| if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a })
}

/// Minimum counterpart of [`sweep_max`]; NaN counts as negative infinity.
pub fn sweep_min<P, F>(points: &[P], f: F) -> (f64, Option<usize>)
where
    P: Sync,
    F: Fn(&P) -> f64 + Sync,
{
    let (m, i) = sweep_max(points, |p| {
        let v = f(p);
        if v.is_nan() {
            f64::INFINITY
        } else {
            -v
        }
    });
    (-m, i)
}

/// Deterministic per-index generator for random directions in sweeps.
pub fn indexed_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn halton_is_reproducible_and_in_range() {
        let a = halton(100, 3);
        assert_eq!(a, halton(100, 3));
        assert_ne!(a, halton(100, 4));
        assert!(a.iter().flatten().all(|v| (0.0..1.0).contains(v)));
    }

    #[test]
    fn sweep_reports_nan_as_failure() {
        let pts = [0.0, 1.0, f64::NAN, 0.5];
        assert_eq!(sweep_max(&pts, |x| *x), (f64::INFINITY, Some(2)));
        assert_eq!(sweep_max(&pts[..2], |x| *x), (1.0, Some(1)));
        assert_eq!(sweep_min(&pts[..2], |x| *x), (0.0, Some(0)));
    }

    #[test]
    fn torus_samples_stay_in_disk() {
        let pts = solid_torus([0.5, 0.5], 0.2, 500, 1);
        assert!(pts.iter().all(|p| ((p[0] - 0.5).powi(2) + (p[1] - 0.5).powi(2)).sqrt() < 0.2));
        let ann = annular_torus([0.0, 0.0], 0.1, 0.2, 500, 1);
        assert!(ann.iter().all(|p| (0.1 - 1e-12..0.2).contains(&p[0].hypot(p[1]))));
    }
}
