mod common;

use std::cmp::Ordering;
use std::collections::BTreeMap;

use common::Poly;
use num_bigint::BigUint;
use otype::Ordinal;
use proptest::prelude::*;

fn from_map(map: BTreeMap<Ordinal, u32>) -> Ordinal {
    Ordinal::from_cnf(map.into_iter().rev().map(|(e, c)| (e, BigUint::from(c)))).unwrap()
}

fn ordinal(height: u32) -> BoxedStrategy<Ordinal> {
    if height == 0 {
        return (0u64..8).prop_map(Ordinal::from).boxed();
    }
    prop::collection::btree_map(ordinal(height - 1), 1u32..7, 0..4)
        .prop_map(from_map)
        .boxed()
}

fn ord() -> BoxedStrategy<Ordinal> {
    ordinal(2)
}

fn nonzero() -> BoxedStrategy<Ordinal> {
    ord().prop_filter("nonzero", |a| !a.is_zero()).boxed()
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(0u64..6, 0..5).prop_map(Poly::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn add_is_associative(a in ord(), b in ord(), c in ord()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
    }

    #[test]
    fn mul_is_associative(a in ordinal(1), b in ordinal(1), c in ordinal(1)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn mul_distributes_on_the_left(a in ord(), b in ord(), c in ord()) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn zero_and_one(a in ord()) {
        prop_assert_eq!(a.add(&Ordinal::zero()), a.clone());
        prop_assert_eq!(Ordinal::zero().add(&a), a.clone());
        prop_assert_eq!(a.mul(&Ordinal::one()), a.clone());
        prop_assert_eq!(Ordinal::one().mul(&a), a.clone());
        prop_assert!(a.mul(&Ordinal::zero()).is_zero());
        prop_assert_eq!(a.nat_prod(&Ordinal::one()), a.clone());
        prop_assert_eq!(a.nat_sum(&Ordinal::zero()), a);
    }

    #[test]
    fn natural_sum_laws(a in ord(), b in ord(), c in ord()) {
        prop_assert_eq!(a.nat_sum(&b), b.nat_sum(&a));
        prop_assert_eq!(a.nat_sum(&b).nat_sum(&c), a.nat_sum(&b.nat_sum(&c)));
    }

    #[test]
    fn natural_sum_is_strictly_monotone(a in ord(), b in ord(), c in ord()) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assume!(lo < hi);
        prop_assert!(lo.nat_sum(&c) < hi.nat_sum(&c));
        prop_assert!(c.nat_sum(&lo) < c.nat_sum(&hi));
    }

    #[test]
    fn natural_product_laws(a in ordinal(1), b in ordinal(1), c in ord()) {
        prop_assert_eq!(a.nat_prod(&b), b.nat_prod(&a));
        prop_assert_eq!(a.nat_prod(&b).nat_prod(&c), a.nat_prod(&b.nat_prod(&c)));
        prop_assert_eq!(a.nat_prod(&b.nat_sum(&c)), a.nat_prod(&b).nat_sum(&a.nat_prod(&c)));
    }

    #[test]
    fn natural_operations_dominate(a in ord(), b in ord()) {
        prop_assert!(a.add(&b) <= a.nat_sum(&b));
        prop_assert!(a.mul(&b) <= a.nat_prod(&b));
    }

    #[test]
    fn left_addition_is_cancellative_and_monotone(a in ord(), b in ord(), c in ord()) {
        prop_assert_eq!(a.add(&b) == a.add(&c), b == c);
        prop_assert_eq!(a.add(&b).cmp(&a.add(&c)), b.cmp(&c));
    }

    #[test]
    fn ordinary_sum_absorbs_when_exponents_allow(a in nonzero(), b in nonzero()) {
        let trailing = a.trailing_exponent().unwrap();
        let leading = b.leading_exponent().unwrap();
        if trailing >= leading {
            prop_assert_eq!(a.add(&b), a.nat_sum(&b));
        } else {
            // some term of a falls below the leading term of b
            prop_assert!(a.add(&b) < a.nat_sum(&b));
        }
        let discards = a.terms().iter().any(|t| t.exponent() < leading);
        prop_assert_eq!(a.add(&b) == a.nat_sum(&b), !discards);
    }

    #[test]
    fn split_reconstructs(a in ord()) {
        let (delta, m) = a.split_delta_m();
        prop_assert!(delta.is_zero() || delta.is_limit());
        prop_assert_eq!(&m, &a.finite_tail());
        prop_assert_eq!(delta.add(&Ordinal::from(m)), a);
    }

    #[test]
    fn multiplying_by_a_natural(a in nonzero(), n in 1u32..=10) {
        let beta0 = a.leading_exponent().unwrap().clone();
        let k0 = a.leading_coefficient().unwrap().clone();
        let want = Ordinal::monomial(beta0.clone(), k0 * n).add(&a.tail_sigma());
        prop_assert_eq!(a.mul(&Ordinal::from(n as u64)), want.clone());
        prop_assert_eq!(a.mul_natural(&BigUint::from(n)), want);
        prop_assert!(a.tail_sigma() < Ordinal::omega_pow(beta0));
    }

    #[test]
    fn equality_is_structural(a in ord(), b in ord()) {
        prop_assert_eq!(a.compare(&b) == Ordering::Equal, a.terms() == b.terms());
        prop_assert_eq!(a.compare(&b), b.compare(&a).reverse());
    }

    #[test]
    fn text_round_trips(a in ordinal(3)) {
        prop_assert_eq!(Ordinal::parse(&a.render()).unwrap(), a.clone());
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<Ordinal>(&json).unwrap(), a);
    }

    #[test]
    fn agrees_with_polynomial_oracle(p in poly(), q in poly()) {
        let (a, b) = (p.to_ordinal(), q.to_ordinal());
        prop_assert_eq!(a.add(&b), p.add(&q).to_ordinal());
        prop_assert_eq!(a.mul(&b), p.mul(&q).to_ordinal());
        prop_assert_eq!(a.nat_sum(&b), p.nat_sum(&q).to_ordinal());
        prop_assert_eq!(a.nat_prod(&b), p.nat_prod(&q).to_ordinal());
        prop_assert_eq!(a < b, p.lt(&q));
        prop_assert_eq!(Poly::from_ordinal(&a), Some(p));
    }
}

#[test]
fn ordering_is_transitive_on_a_sample() {
    let sample: Vec<Ordinal> = ["0", "1", "3", "w", "w+1", "w*2", "w^2", "w^2+w*5", "w^w", "w^(w+1)", "w^(w^w)"]
        .iter()
        .map(|s| Ordinal::parse(s).unwrap())
        .collect();
    for w in sample.windows(2) {
        assert!(w[0] < w[1], "{} < {}", w[0], w[1]);
    }
}
