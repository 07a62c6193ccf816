//! Seeded random ordinals, posets and terms for the property suites.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::ordinal::Ordinal;
use crate::poset::FinitePoset;
use crate::term::{DeltaMK, WpoTerm};

/// Shape limits for [`term`].
#[derive(Debug, Clone, Copy)]
pub struct TermShape {
    pub depth: usize,
    pub max_poset: usize,
    pub ordinal_height: usize,
    pub max_coeff: u32,
}

impl Default for TermShape {
    fn default() -> Self {
        TermShape {
            depth: 4,
            max_poset: 6,
            ordinal_height: 2,
            max_coeff: 5,
        }
    }
}

/// Random ordinal of height at most `height` with up to three terms and
/// coefficients in `1..=max_coeff`. May be zero.
pub fn ordinal<R: Rng + ?Sized>(rng: &mut R, height: usize, max_coeff: u32) -> Ordinal {
    if height == 0 {
        return Ordinal::from(rng.gen_range(0..=max_coeff as u64));
    }
    let terms = rng.gen_range(0..=3);
    let exponents: BTreeSet<Ordinal> = (0..terms)
        .map(|_| ordinal(rng, height - 1, max_coeff.min(3)))
        .collect();
    let cnf: Vec<(Ordinal, BigUint)> = exponents
        .into_iter()
        .rev()
        .map(|e| (e, BigUint::from(rng.gen_range(1..=max_coeff))))
        .collect();
    Ordinal::from_cnf(cnf).expect("distinct exponents in decreasing order")
}

pub fn nonzero_ordinal<R: Rng + ?Sized>(rng: &mut R, height: usize, max_coeff: u32) -> Ordinal {
    loop {
        let a = ordinal(rng, height, max_coeff);
        if !a.is_zero() {
            return a;
        }
    }
}

/// Random limit ordinal of height at most `height` (at least 1).
pub fn limit_ordinal<R: Rng + ?Sized>(rng: &mut R, height: usize, max_coeff: u32) -> Ordinal {
    let (delta, _) = ordinal(rng, height.max(1), max_coeff).split_delta_m();
    if delta.is_zero() {
        Ordinal::omega().mul_natural(&rng.gen_range(1..=max_coeff).into())
    } else {
        delta
    }
}

/// Random poset with at most `max_n` elements and randomly permuted labels.
pub fn poset<R: Rng + ?Sized>(rng: &mut R, max_n: usize) -> FinitePoset {
    let n = rng.gen_range(0..=max_n);
    let density = rng.gen_range(0.0..0.6);
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(rng);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(density) {
                edges.push((labels[a], labels[b]));
            }
        }
    }
    FinitePoset::from_edges(n, &edges).expect("edges follow a fixed linear order")
}

pub fn term<R: Rng + ?Sized>(rng: &mut R, shape: TermShape) -> WpoTerm {
    if shape.depth == 0 || rng.gen_bool(0.3) {
        return if rng.gen_bool(0.5) {
            WpoTerm::Fin(poset(rng, shape.max_poset))
        } else {
            WpoTerm::Ord(ordinal(rng, shape.ordinal_height, shape.max_coeff))
        };
    }
    let sub = TermShape {
        depth: shape.depth - 1,
        ..shape
    };
    let (a, b) = (term(rng, sub), term(rng, sub));
    match rng.gen_range(0..3) {
        0 => WpoTerm::union(a, b),
        1 => WpoTerm::sum(a, b),
        _ => WpoTerm::prod(a, b),
    }
}

/// Random valid decomposition: `delta` zero or a limit of height at most
/// `height`, `m <= max_m`, and `1 <= k <= m` when `m > 0`.
pub fn delta_mk<R: Rng + ?Sized>(rng: &mut R, height: usize, max_m: u32) -> DeltaMK {
    let delta = if rng.gen_bool(0.25) {
        Ordinal::zero()
    } else {
        limit_ordinal(rng, height, 4)
    };
    let m = rng.gen_range(0..=max_m);
    let k = if m == 0 { 0 } else { rng.gen_range(1..=m) };
    DeltaMK::new(delta, m, k).expect("generated within the invariants")
}
