//! Shared helpers for the integration tests.

#![allow(dead_code)]

pub mod classical;

use homcalc::{Chain, Cochain, Coefficients, Scalar, Vector};

pub fn to_ints(v: &Vector) -> Vec<i64> {
    v.iter()
        .map(|s| s.to_string().parse().expect("integer entry"))
        .collect()
}

pub fn scalars(v: &[i64]) -> Vector {
    Vector(v.iter().map(|&x| Scalar::from(x)).collect())
}

pub fn cochain(dim: usize, p: usize, v: &[i64]) -> Cochain {
    Cochain::from_coeffs(dim, p, Coefficients::Algebra, scalars(v)).unwrap()
}

pub fn chain(dim: usize, n: usize, v: &[i64]) -> Chain {
    Chain::from_coeffs(dim, n, scalars(v)).unwrap()
}
