#![allow(dead_code)]

use newtonpoly::poly::default_variables;
use newtonpoly::rational::q;
use newtonpoly::{parse_poly_infer, Rational, SparsePoly};
use proptest::prelude::*;

pub fn poly(text: &str, n: usize) -> SparsePoly {
    parse_poly_infer(text, n).unwrap().0
}

pub fn vars(n: usize) -> Vec<String> {
    default_variables(n)
}

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(a, b)| q(a, b))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (1i64..=9, 1i64..=5, any::<bool>()).prop_map(|(a, b, neg)| q(if neg { -a } else { a }, b))
}

/// Random polynomials in `n` variables with up to `terms` terms of degree <= `deg` per variable.
pub fn poly_strategy(n: usize, terms: usize, deg: u32) -> impl Strategy<Value = SparsePoly> {
    prop::collection::vec(
        (nonzero_rational(), prop::collection::vec(0..=deg, n)),
        1..=terms,
    )
    .prop_map(move |ts| SparsePoly::from_terms(n, ts))
}

/// Like [`poly_strategy`] but with no constant term, never identically zero.
pub fn phase_strategy(n: usize, terms: usize, deg: u32) -> impl Strategy<Value = SparsePoly> {
    prop::collection::vec(
        (nonzero_rational(), prop::collection::vec(0..=deg, n)),
        1..=terms,
    )
    .prop_map(move |ts| {
        SparsePoly::from_terms(n, ts.into_iter().filter(|(_, e)| e.iter().any(|&x| x > 0)))
    })
    .prop_filter("nonzero", |p| !p.is_zero())
}
