//! Terms denoting well partial orders and the compositional evaluation of
//! their maximal order types.
//!
//! Evaluation never materializes an infinite order. Each constructor has a
//! rule computing `o(T)` and the number of maximal elements from the same
//! data for its operands; the product rule is
//!
//! ```text
//! o(P·Q) = o(P)·(δ + (m − k)) + o(P) ⊗ k      where o(Q) = δ + m,
//! ```
//!
//! `δ` zero or a limit and `k` the number of maximal elements of `Q`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;
use thiserror::Error;

use crate::ordinal::Ordinal;
use crate::poset::FinitePoset;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("term {0} does not denote a finite poset")]
    NotFinite(String),
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
}

/// A term of the wpo algebra. `Prod(base, index)` is the lexicographic
/// product along `index`: pairs compare on the index coordinate first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum WpoTerm {
    Fin(FinitePoset),
    Ord(Ordinal),
    /// Disjoint union.
    Union(Box<WpoTerm>, Box<WpoTerm>),
    /// Lexicographic sum: everything in `low` below everything in `high`.
    Sum(Box<WpoTerm>, Box<WpoTerm>),
    Prod(Box<WpoTerm>, Box<WpoTerm>),
}

/// `o(T) = delta + m` with `delta` zero or a limit, and `k` maximal elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DeltaMK {
    pub delta: Ordinal,
    pub m: BigUint,
    pub k: BigUint,
}

impl DeltaMK {
    pub fn new(delta: Ordinal, m: impl Into<BigUint>, k: impl Into<BigUint>) -> Result<Self, TermError> {
        let dmk = DeltaMK {
            delta,
            m: m.into(),
            k: k.into(),
        };
        dmk.check()?;
        Ok(dmk)
    }

    fn check(&self) -> Result<(), TermError> {
        if self.delta.is_successor() {
            return Err(TermError::InvalidDecomposition(format!(
                "delta = {} has a finite tail",
                self.delta
            )));
        }
        if self.m < self.k {
            return Err(TermError::InvalidDecomposition(format!(
                "m = {} is below k = {}",
                self.m, self.k
            )));
        }
        if self.k.is_zero() != self.m.is_zero() {
            return Err(TermError::InvalidDecomposition(format!(
                "k = {} and m = {} must vanish together",
                self.k, self.m
            )));
        }
        Ok(())
    }

    /// `delta + m`.
    pub fn order_type(&self) -> Ordinal {
        self.delta.add(&Ordinal::natural(self.m.clone()))
    }
}

impl fmt::Display for DeltaMK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "delta={} m={} k={}", self.delta, self.m, self.k)
    }
}

impl WpoTerm {
    pub fn chain(n: usize) -> Self {
        WpoTerm::Fin(FinitePoset::chain(n))
    }

    pub fn antichain(n: usize) -> Self {
        WpoTerm::Fin(FinitePoset::antichain(n))
    }

    pub fn ord(a: Ordinal) -> Self {
        WpoTerm::Ord(a)
    }

    pub fn union(a: WpoTerm, b: WpoTerm) -> Self {
        WpoTerm::Union(Box::new(a), Box::new(b))
    }

    pub fn sum(low: WpoTerm, high: WpoTerm) -> Self {
        WpoTerm::Sum(Box::new(low), Box::new(high))
    }

    pub fn prod(base: WpoTerm, index: WpoTerm) -> Self {
        WpoTerm::Prod(Box::new(base), Box::new(index))
    }

    /// Maximal order type.
    pub fn o(&self) -> Ordinal {
        match self {
            WpoTerm::Fin(p) => Ordinal::from(p.len()),
            WpoTerm::Ord(a) => a.clone(),
            WpoTerm::Union(a, b) => a.o().nat_sum(&b.o()),
            WpoTerm::Sum(a, b) => a.o().add(&b.o()),
            WpoTerm::Prod(base, index) => vialard(&base.o(), &index.delta_mk()),
        }
    }

    /// Number of maximal elements.
    pub fn max_count(&self) -> BigUint {
        match self {
            WpoTerm::Fin(p) => BigUint::from(p.maximal_elements().len()),
            // a successor ordinal has its top point, a limit has none
            WpoTerm::Ord(a) => {
                if a.is_successor() {
                    BigUint::from(1u32)
                } else {
                    BigUint::zero()
                }
            }
            WpoTerm::Union(a, b) => a.max_count() + b.max_count(),
            WpoTerm::Sum(low, high) => {
                if high.o().is_zero() {
                    low.max_count()
                } else {
                    high.max_count()
                }
            }
            WpoTerm::Prod(base, index) => base.max_count() * index.max_count(),
        }
    }

    /// The `(δ, m, k)` decomposition.
    ///
    /// # Panics
    ///
    /// If the result breaks `m ≥ k` or `k = 0 ⇔ m = 0`; that would be an
    /// evaluator bug, not bad input.
    pub fn delta_mk(&self) -> DeltaMK {
        let (delta, m) = self.o().split_delta_m();
        let dmk = DeltaMK {
            delta,
            m,
            k: self.max_count(),
        };
        if let Err(e) = dmk.check() {
            panic!("decomposition of {self} violates its invariants: {e}");
        }
        dmk
    }

    pub fn is_finite(&self) -> bool {
        match self {
            WpoTerm::Fin(_) => true,
            WpoTerm::Ord(a) => a.is_finite(),
            WpoTerm::Union(a, b) | WpoTerm::Sum(a, b) | WpoTerm::Prod(a, b) => a.is_finite() && b.is_finite(),
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            WpoTerm::Fin(_) | WpoTerm::Ord(_) => 1,
            WpoTerm::Union(a, b) | WpoTerm::Sum(a, b) | WpoTerm::Prod(a, b) => 1 + a.size() + b.size(),
        }
    }
}

/// `o(T)`.
pub fn o_of(term: &WpoTerm) -> Ordinal {
    term.o()
}

pub fn max_count(term: &WpoTerm) -> BigUint {
    term.max_count()
}

pub fn delta_mk(term: &WpoTerm) -> DeltaMK {
    term.delta_mk()
}

/// Maximal order type of `P·Q` from `o(P)` and the decomposition of `Q`:
/// `o(P)·(δ + (m − k)) + o(P) ⊗ k`.
pub fn vialard(o_p: &Ordinal, q: &DeltaMK) -> Ordinal {
    let rest = q.delta.add(&Ordinal::natural(&q.m - &q.k));
    o_p.mul(&rest).add(&o_p.nat_prod(&Ordinal::natural(q.k.clone())))
}

/// The same value computed from the normal form `o(P) = ω^β₀·k₀ + σ`:
/// `o(P)·δ + ω^β₀·(k₀·m) + σ ⊗ k`.
pub fn vialard_expanded(o_p: &Ordinal, q: &DeltaMK) -> Ordinal {
    let (Ok(beta0), Ok(k0)) = (o_p.leading_exponent(), o_p.leading_coefficient()) else {
        return Ordinal::zero();
    };
    let sigma = o_p.tail_sigma();
    let head = Ordinal::monomial(beta0.clone(), k0 * &q.m);
    o_p.mul(&q.delta)
        .add(&head)
        .add(&sigma.nat_prod(&Ordinal::natural(q.k.clone())))
}

/// How one step of the finite-index recursion was taken.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceRule {
    /// `Q` is empty, so `P·Q` is.
    Empty,
    /// One maximal element: `o(P·Q) = o(P·Q⊥) + o(P)`, with `Q⊥` the
    /// elements below the top.
    SingleTop { below: Vec<usize> },
    /// Several maximal elements: `o(P·Q) = o(P·Q′) ⊕ o(P·Q″)` where `Q″`
    /// is the part owned by the first maximal element.
    SplitFirstMax { rest: Vec<usize>, owned: Vec<usize> },
}

/// One node of the recursion tree built by [`proof_trace`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceNode {
    /// Labels of this node's index poset in the root poset.
    pub labels: Vec<usize>,
    pub max_count: usize,
    pub rule: TraceRule,
    pub value: Ordinal,
    pub children: Vec<TraceNode>,
}

impl TraceNode {
    pub fn depth(&self) -> usize {
        1 + self.children.iter().map(TraceNode::depth).max().unwrap_or(0)
    }

    /// Indented text rendering, one line per node.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out, 0);
        out
    }

    fn render_into(&self, out: &mut String, indent: usize) {
        use std::fmt::Write;
        let pad = "  ".repeat(indent);
        let labels = format_labels(&self.labels);
        let _ = match &self.rule {
            TraceRule::Empty => writeln!(out, "{pad}Q={labels}: empty => 0"),
            TraceRule::SingleTop { .. } => writeln!(
                out,
                "{pad}Q={labels} k=1: top cut, o(P.Qbot) + o(P) => {}",
                self.value
            ),
            TraceRule::SplitFirstMax { .. } => writeln!(
                out,
                "{pad}Q={labels} k={}: split at first maximal, o(P.Q') (+) o(P.Q'') => {}",
                self.max_count, self.value
            ),
        };
        for c in &self.children {
            c.render_into(out, indent + 1);
        }
    }
}

fn format_labels(labels: &[usize]) -> String {
    let inner: Vec<String> = labels.iter().map(|l| l.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

/// Evaluates `o(P·Q)` for a finite `Q` by recursion on its shape, given
/// only `o(P)`. With one maximal element the top is split off as an upper
/// cut and the values add; with several, the first maximal element's part
/// is split off and the values combine by natural sum.
pub fn proof_trace(base_o: &Ordinal, q: &FinitePoset) -> TraceNode {
    let labels: Vec<usize> = (0..q.len()).collect();
    trace_rec(base_o, q, labels)
}

/// Value of [`proof_trace`] without keeping the tree.
pub fn proof_trace_o(base_o: &Ordinal, q: &FinitePoset) -> Ordinal {
    if q.is_empty() {
        return Ordinal::zero();
    }
    if q.maximal_elements().len() == 1 {
        let split = q.split_top();
        proof_trace_o(base_o, &split.lower).add(base_o)
    } else {
        let split = q.split_first_max().expect("at least two maximal elements");
        proof_trace_o(base_o, &split.lower).nat_sum(&proof_trace_o(base_o, &split.upper))
    }
}

fn trace_rec(base_o: &Ordinal, q: &FinitePoset, labels: Vec<usize>) -> TraceNode {
    let maxima = q.maximal_elements().len();
    if q.is_empty() {
        return TraceNode {
            labels,
            max_count: 0,
            rule: TraceRule::Empty,
            value: Ordinal::zero(),
            children: Vec::new(),
        };
    }
    let relabel = |local: &[usize]| -> Vec<usize> { local.iter().map(|&i| labels[i]).collect() };
    if maxima == 1 {
        let split = q.split_top();
        let below = relabel(&split.lower_labels);
        let child = trace_rec(base_o, &split.lower, below.clone());
        let value = child.value.add(base_o);
        TraceNode {
            labels,
            max_count: 1,
            rule: TraceRule::SingleTop { below },
            value,
            children: vec![child],
        }
    } else {
        let split = q.split_first_max().expect("at least two maximal elements");
        let rest = relabel(&split.lower_labels);
        let owned = relabel(&split.upper_labels);
        let left = trace_rec(base_o, &split.lower, rest.clone());
        let right = trace_rec(base_o, &split.upper, owned.clone());
        let value = left.value.nat_sum(&right.value);
        TraceNode {
            labels,
            max_count: maxima,
            rule: TraceRule::SplitFirstMax { rest, owned },
            value,
            children: vec![left, right],
        }
    }
}

/// Expands a term whose every leaf is finite into the poset it denotes.
/// Product labels follow [`crate::poset::product_label`]; union and sum
/// shift the right operand's labels past the left's.
pub fn lex_product_term_expand(term: &WpoTerm) -> Result<FinitePoset, TermError> {
    match term {
        WpoTerm::Fin(p) => Ok(p.clone()),
        WpoTerm::Ord(a) => a
            .to_u64()
            .map(|n| FinitePoset::chain(n as usize))
            .ok_or_else(|| TermError::NotFinite(term.to_string())),
        WpoTerm::Union(a, b) => Ok(lex_product_term_expand(a)?.disjoint_union(&lex_product_term_expand(b)?)),
        WpoTerm::Sum(a, b) => Ok(lex_product_term_expand(a)?.lex_sum(&lex_product_term_expand(b)?)),
        WpoTerm::Prod(a, b) => {
            let index = lex_product_term_expand(b)?;
            if index.is_empty() {
                return Ok(FinitePoset::empty());
            }
            Ok(lex_product_term_expand(a)?.lex_product(&index))
        }
    }
}

/// Renders in the CLI expression syntax, fully parenthesized.
impl fmt::Display for WpoTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WpoTerm::Fin(p) => write!(f, "{p}"),
            WpoTerm::Ord(a) => write!(f, "ord({a})"),
            WpoTerm::Union(a, b) => write!(f, "({a} (+) {b})"),
            WpoTerm::Sum(a, b) => write!(f, "({a} + {b})"),
            WpoTerm::Prod(a, b) => write!(f, "({a} . {b})"),
        }
    }
}

impl fmt::Debug for WpoTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WpoTerm({self})")
    }
}
