//! Random generators used by the property checks, benches and tests.
//!
//! Draws mix uniform values with a coarse grid so that boundary values and
//! exact ties show up often enough to matter.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::interval::Interval;

const GRID: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];

/// A value in `[0, 1]`, on the grid one time in five.
pub fn unit<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    if rng.gen_bool(0.2) {
        *GRID.choose(rng).unwrap()
    } else {
        rng.gen::<f64>()
    }
}

/// A random interval; about one in ten is degenerate.
pub fn interval<R: Rng + ?Sized>(rng: &mut R) -> Interval {
    let a = unit(rng);
    if rng.gen_bool(0.1) {
        return Interval::clamped(a, a);
    }
    let b = unit(rng);
    Interval::clamped(a.min(b), a.max(b))
}

pub fn intervals<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Interval> {
    (0..n).map(|_| interval(rng)).collect()
}

pub fn degenerate<R: Rng + ?Sized>(rng: &mut R) -> Interval {
    let x = unit(rng);
    Interval::clamped(x, x)
}

/// Uniform point of the grid `{0, 1/k, …, 1}`.
pub fn grid_value<R: Rng + ?Sized>(rng: &mut R, k: u32) -> f64 {
    rng.gen_range(0..=k) as f64 / k as f64
}

/// A vector where at least two entries coincide (for `n >= 2`).
pub fn intervals_with_ties<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Interval> {
    let mut xs = intervals(rng, n);
    if n >= 2 {
        let distinct = rng.gen_range(1..n);
        for i in distinct..n {
            xs[i] = xs[rng.gen_range(0..distinct)];
        }
        xs.shuffle(rng);
    }
    xs
}
