//! Shared fixtures for the benchmarks.

use tropsing::rational::ratio;
use tropsing::{HeightVector, PointConfiguration, PuiseuxPolynomial, RationalVector};

pub fn config(pairs: &[(i64, i64)]) -> PointConfiguration {
    PointConfiguration::from_pairs(pairs).expect("valid configuration")
}

pub fn square8() -> PointConfiguration {
    config(&[(0, 0), (1, 0), (0, 1), (1, 1), (2, 1), (0, 2), (1, 2), (2, 2)])
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

pub fn intro() -> PointConfiguration {
    config(&[(0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (1, 2)])
}

pub fn intro_polynomial() -> PuiseuxPolynomial {
    PuiseuxPolynomial::parse(&[
        ((1, 2), "1"),
        ((2, 0), "-t"),
        ((1, 1), "-2 - t^3"),
        ((1, 0), "1 + 2*t + t^3"),
        ((0, 1), "t^3"),
        ((0, 0), "-t - t^3"),
    ])
    .expect("valid polynomial")
}

/// Deterministic heights without ties for a configuration of `n` points.
pub fn generic_heights(n: usize) -> HeightVector {
    HeightVector(RationalVector(
        (0..n as i64)
            .map(|k| ratio((k * k * 7 + k * 3) % 23 - 11, 1 + k % 5))
            .collect(),
    ))
}
