#![allow(dead_code)]

use std::f64::consts::TAU;

use ketsonic::kets::{KetPlacement, Term, VisualDecomposition, VisualKet};
use proptest::prelude::*;
use rand::Rng;

pub fn placement() -> impl Strategy<Value = KetPlacement> {
    (
        0.0..=1.0f64,
        0.0..=1.0f64,
        0.005..=1.0f64,
        0.0..TAU,
        0.001..=1.0f64,
    )
        .prop_map(|(x, y, scale, rotation, thickness)| {
            KetPlacement::new(x, y, scale, rotation, thickness).unwrap()
        })
}

pub fn ket() -> impl Strategy<Value = VisualKet> {
    prop_oneof![
        Just(VisualKet::Dot),
        Just(VisualKet::Segment),
        (0.01..=TAU).prop_map(|sweep| VisualKet::Arc { sweep }),
    ]
}

pub fn term() -> impl Strategy<Value = Term> {
    (placement(), ket()).prop_map(|(p, k)| Term::new(p, k))
}

pub fn decomposition(max_terms: usize) -> impl Strategy<Value = VisualDecomposition> {
    prop::collection::vec(term(), 0..=max_terms)
        .prop_flat_map(|terms| {
            let n = terms.len();
            (Just(terms), 0..=n)
        })
        .prop_map(|(terms, j)| VisualDecomposition::new(terms, j).unwrap())
}

pub fn random_term(rng: &mut impl Rng) -> Term {
    let p = KetPlacement::new(
        rng.random_range(0.0..=1.0),
        rng.random_range(0.0..=1.0),
        rng.random_range(0.005..=1.0),
        rng.random_range(0.0..TAU),
        rng.random_range(0.001..=1.0),
    )
    .unwrap();
    let ket = match rng.random_range(0..3) {
        0 => VisualKet::Dot,
        1 => VisualKet::Segment,
        _ => VisualKet::Arc {
            sweep: rng.random_range(0.01..=TAU),
        },
    };
    Term::new(p, ket)
}

pub fn random_decomposition(rng: &mut impl Rng, max_terms: usize) -> VisualDecomposition {
    let n = rng.random_range(0..=max_terms);
    let terms: Vec<Term> = (0..n).map(|_| random_term(rng)).collect();
    let j = rng.random_range(0..=n);
    VisualDecomposition::new(terms, j).unwrap()
}
