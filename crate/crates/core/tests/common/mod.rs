#![allow(dead_code)]

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tropsing::rational::{int, ratio};
use tropsing::{HeightVector, PointConfiguration, Rational, RationalVector};

pub fn config(pairs: &[(i64, i64)]) -> PointConfiguration {
    PointConfiguration::from_pairs(pairs).expect("valid configuration")
}

/// The eight points of the square-like polygon used for the Gale dual example.
pub fn square8() -> PointConfiguration {
    config(&[
        (0, 0),
        (1, 0),
        (0, 1),
        (1, 1),
        (2, 1),
        (0, 2),
        (1, 2),
        (2, 2),
    ])
}

/// Support of a polynomial whose curve has a weight two edge through the origin.
pub fn intro() -> PointConfiguration {
    config(&[(0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (1, 2)])
}

pub fn kite5() -> PointConfiguration {
    config(&[(0, 0), (1, 0), (0, 1), (1, 1), (1, 2)])
}

/// Four points on `y = 0`, three on `y = 1`, two on `y = 2`, in block order.
pub fn point10() -> PointConfiguration {
    config(&[
        (0, 0),
        (1, 0),
        (2, 0),
        (3, 0),
        (0, 1),
        (1, 1),
        (2, 1),
        (0, 2),
        (1, 2),
    ])
}

pub fn square3() -> PointConfiguration {
    config(&[
        (0, 0),
        (1, 0),
        (2, 0),
        (0, 1),
        (1, 1),
        (2, 1),
        (0, 2),
        (1, 2),
        (2, 2),
    ])
}

pub fn triangle2() -> PointConfiguration {
    config(&[(0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (0, 2)])
}

pub fn hexagon() -> PointConfiguration {
    config(&[(1, 0), (2, 0), (0, 1), (1, 1), (2, 1), (0, 2), (1, 2)])
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small rationals with many ties: numerators in `-3..=3`, denominators 1 or 2.
pub fn tie_prone(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    (0..n)
        .map(|_| ratio(rng.random_range(-3..=3), rng.random_range(1..=2)))
        .collect()
}

/// Integer heights in `lo..=hi`.
pub fn integer_heights(rng: &mut ChaCha8Rng, n: usize, lo: i64, hi: i64) -> HeightVector {
    HeightVector(RationalVector(
        (0..n).map(|_| int(rng.random_range(lo..=hi))).collect(),
    ))
}

/// Rationals `p/q` with `|p| <= 40`, `1 <= q <= 7`.
pub fn generic(rng: &mut ChaCha8Rng, n: usize) -> HeightVector {
    HeightVector(RationalVector(
        (0..n)
            .map(|_| ratio(rng.random_range(-40..=40), rng.random_range(1..=7)))
            .collect(),
    ))
}
