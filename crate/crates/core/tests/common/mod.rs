#![allow(dead_code)]

use qgraph::algebra::{Polynomial, RationalFunction};

pub fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
    RationalFunction::new(Polynomial::from_i64(num), Polynomial::from_i64(den)).unwrap()
}

pub fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Reference closed forms of the catalog transmissions.
pub fn closed_form(name: &str) -> RationalFunction {
    match name {
        "D" => rf(&[0, 0, 8], &[9, 0, 0, 0, -1]),
        "H" => rf(&[0, 0, 0, 8], &[9, 0, 0, 0, 0, 0, -1]),
        "Dtilde" => rf(&[0, 0, 16, 16], &[27, 9, 6, -6, -1, -3]),
        "Q" => rf(&[0, 0, 0, 32, 32], &poly_mul(&[9, 0, 4, 0, 3], &[9, -3, 1, -3])),
        "X" => rf(&[0, 0, 0, 64], &[81, 0, 9, 0, -17, 0, -9]),
        _ => panic!("no closed form for {name}"),
    }
}

/// Graphs used by the whole-suite checks.
pub const SUITE: [&str; 9] = [
    "D",
    "H",
    "Dtilde",
    "Q",
    "X",
    "S(Q,X)",
    "P(Q,X)",
    "P(P(Q,X),P(X,Q))",
    "S(P(Q,Q),P(X,X),P(Q,Q))",
];
