use num_bigint::BigUint;
use num_traits::Zero;
use otype::gen::{self, TermShape};
use otype::term::{lex_product_term_expand, proof_trace, proof_trace_o, vialard_expanded, TraceRule};
use otype::{parse_term, vialard, FinitePoset, Ordinal, WpoTerm};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn term() -> impl Strategy<Value = WpoTerm> {
    any::<u64>().prop_map(|s| gen::term(&mut rng(s), TermShape::default()))
}

fn finite_term() -> impl Strategy<Value = WpoTerm> {
    any::<u64>().prop_map(|s| {
        let mut r = rng(s);
        let shape = TermShape {
            depth: 3,
            max_poset: 3,
            ordinal_height: 0,
            max_coeff: 3,
        };
        loop {
            let t = gen::term(&mut r, shape);
            if t.is_finite() {
                return t;
            }
        }
    })
}

fn ordinal() -> impl Strategy<Value = Ordinal> {
    any::<u64>().prop_map(|s| gen::ordinal(&mut rng(s), 2, 5))
}

fn poset() -> impl Strategy<Value = FinitePoset> {
    any::<u64>().prop_map(|s| gen::poset(&mut rng(s), 8))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn decomposition_invariants(t in term()) {
        let d = t.delta_mk();
        prop_assert!(d.m >= d.k);
        prop_assert_eq!(d.k.is_zero(), d.m.is_zero());
        prop_assert_eq!(d.order_type(), t.o());
        prop_assert!(d.delta.is_zero() || d.delta.is_limit());
        prop_assert_eq!(d.k, t.max_count());
    }

    #[test]
    fn finite_terms_match_their_expansion(t in finite_term()) {
        let p = lex_product_term_expand(&t).unwrap();
        prop_assert_eq!(t.o(), Ordinal::from(p.len()));
        prop_assert_eq!(t.max_count(), BigUint::from(p.maximal_elements().len()));
    }

    #[test]
    fn union_commutes_and_sum_associates(a in term(), b in term(), c in term()) {
        prop_assert_eq!(WpoTerm::union(a.clone(), b.clone()).o(), WpoTerm::union(b.clone(), a.clone()).o());
        let left = WpoTerm::sum(WpoTerm::sum(a.clone(), b.clone()), c.clone());
        let right = WpoTerm::sum(a, WpoTerm::sum(b, c));
        prop_assert_eq!(left.o(), right.o());
        prop_assert_eq!(left.max_count(), right.max_count());
    }

    #[test]
    fn product_associates(a in term(), b in term(), c in term()) {
        let left = WpoTerm::prod(WpoTerm::prod(a.clone(), b.clone()), c.clone());
        let right = WpoTerm::prod(a, WpoTerm::prod(b, c));
        prop_assert_eq!(left.o(), right.o());
        prop_assert_eq!(left.max_count(), right.max_count());
    }

    #[test]
    fn single_point_index_is_neutral(t in term()) {
        prop_assert_eq!(WpoTerm::prod(t.clone(), WpoTerm::chain(1)).o(), t.o());
        prop_assert_eq!(WpoTerm::prod(WpoTerm::chain(1), t.clone()).o(), t.o());
    }

    #[test]
    fn antichain_index_is_a_natural_multiple(t in term(), k in 1usize..5) {
        let o = WpoTerm::prod(t.clone(), WpoTerm::antichain(k)).o();
        prop_assert_eq!(o, t.o().nat_prod(&Ordinal::from(k)));
    }

    #[test]
    fn trace_agrees_with_the_formula(base in ordinal(), q in poset()) {
        let tree = proof_trace(&base, &q);
        let formula = vialard(&base, &WpoTerm::Fin(q.clone()).delta_mk());
        prop_assert_eq!(&tree.value, &formula);
        prop_assert_eq!(proof_trace_o(&base, &q), formula);
        check_node(&base, &q, &tree)?;
    }

    #[test]
    fn formula_matches_expansion(base in ordinal(), seed in any::<u64>()) {
        let d = gen::delta_mk(&mut rng(seed), 2, 6);
        prop_assert_eq!(vialard(&base, &d), vialard_expanded(&base, &d));
    }

    #[test]
    fn formula_bounds(base in ordinal(), seed in any::<u64>()) {
        let d = gen::delta_mk(&mut rng(seed), 2, 6);
        let v = vialard(&base, &d);
        let index = d.order_type();
        prop_assert!(base.mul(&index) <= v);
        prop_assert!(v <= base.nat_prod(&index));
    }

    #[test]
    fn display_parses_back(t in term()) {
        prop_assert_eq!(parse_term(&t.to_string()).unwrap(), t);
    }
}

/// Every node's children come from a cut of its index poset, and the
/// node's value follows from theirs.
fn check_node(base: &Ordinal, root: &FinitePoset, node: &otype::term::TraceNode) -> Result<(), TestCaseError> {
    let q = root.restrict(&node.labels);
    prop_assert_eq!(node.max_count, q.maximal_elements().len());
    match &node.rule {
        TraceRule::Empty => prop_assert!(node.labels.is_empty() && node.value.is_zero()),
        TraceRule::SingleTop { below } => {
            prop_assert_eq!(node.max_count, 1);
            prop_assert_eq!(below.len() + 1, node.labels.len());
            prop_assert_eq!(&node.value, &node.children[0].value.add(base));
        }
        TraceRule::SplitFirstMax { rest, owned } => {
            prop_assert!(node.max_count >= 2);
            prop_assert_eq!(rest.len() + owned.len(), node.labels.len());
            for &u in owned {
                for &l in rest {
                    prop_assert!(!root.lt(u, l));
                }
            }
            prop_assert_eq!(&node.value, &node.children[0].value.nat_sum(&node.children[1].value));
        }
    }
    for c in &node.children {
        check_node(base, root, c)?;
    }
    Ok(())
}

#[test]
fn trace_of_a_two_element_antichain() {
    let base = Ordinal::parse("w+1").unwrap();
    let t = proof_trace(&base, &FinitePoset::antichain(2));
    assert_eq!(t.value.to_string(), "w*2+2");
    assert!(matches!(t.rule, TraceRule::SplitFirstMax { .. }));
}
