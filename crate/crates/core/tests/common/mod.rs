#![allow(dead_code)]

use std::ops::RangeInclusive;

use num_bigint::BigInt;
use proptest::prelude::*;
use qfib::matrix::PolyMatrix;
use qfib::{Monomial, Poly};

pub fn monomial(exps: RangeInclusive<i32>, with_z: bool) -> impl Strategy<Value = Monomial> {
    let z = if with_z { exps.clone() } else { 0..=0 };
    (exps.clone(), exps.clone(), exps, z).prop_map(|(x, s, q, z)| Monomial::new(x, s, q, z))
}

pub fn poly_with(
    max_terms: usize,
    exps: RangeInclusive<i32>,
    coeffs: RangeInclusive<i64>,
    with_z: bool,
) -> impl Strategy<Value = Poly> {
    prop::collection::vec((monomial(exps, with_z), coeffs), 0..=max_terms)
        .prop_map(|ts| Poly::from_terms(ts.into_iter().map(|(m, c)| (m, BigInt::from(c)))))
}

/// Laurent polynomials in all four variables with mixed-sign exponents.
pub fn laurent() -> impl Strategy<Value = Poly> {
    poly_with(6, -3..=3, -40..=40, true)
}

/// Ordinary polynomials in x, s, q.
pub fn polynomial() -> impl Strategy<Value = Poly> {
    poly_with(5, 0..=3, -20..=20, false)
}

/// Square matrices of size 1..=4 with small Laurent entries in x, s, q.
pub fn small_matrix() -> impl Strategy<Value = PolyMatrix> {
    (1usize..=4).prop_flat_map(|n| {
        prop::collection::vec(poly_with(3, -1..=2, -5..=5, false), n * n)
            .prop_map(move |entries| PolyMatrix::new(n, n, entries).unwrap())
    })
}
