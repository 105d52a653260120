#![allow(dead_code)]

use graphoid_core::rational::{q, qr};
use graphoid_core::{Poly, RatFunc, XReal, Q};
use proptest::prelude::*;

pub fn small_q() -> impl Strategy<Value = Q> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| qr(n, d))
}

pub fn xreal() -> impl Strategy<Value = XReal> {
    prop_oneof![
        1 => Just(XReal::Infinity),
        1 => Just(XReal::zero()),
        6 => small_q().prop_map(XReal::Finite),
    ]
}

/// Polynomial in x, y with total degree ≤ `deg` and small integer
/// coefficients.
pub fn poly2(deg: u32, vars: usize) -> impl Strategy<Value = Poly> {
    let monos: Vec<(u32, u32)> =
        (0..=deg).flat_map(|i| (0..=deg - i).map(move |j| (i, j))).filter(|&(_, j)| vars > 1 || j == 0).collect();
    let n = monos.len();
    proptest::collection::vec(-3i64..=3, n)
        .prop_map(move |c| Poly::from_terms(monos.iter().zip(c).map(|(&(i, j), v)| (i, j, q(v)))))
}

pub fn nonzero_poly2(deg: u32, vars: usize) -> impl Strategy<Value = Poly> {
    poly2(deg, vars).prop_filter("nonzero", |p| !p.is_zero())
}

pub fn ratfunc(deg: u32, vars: usize) -> impl Strategy<Value = RatFunc> {
    (poly2(deg, vars), nonzero_poly2(deg, vars)).prop_map(|(p, d)| RatFunc::new(p, d).unwrap())
}

pub fn point2() -> impl Strategy<Value = Vec<Q>> {
    proptest::collection::vec(small_q(), 2)
}
