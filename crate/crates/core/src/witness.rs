//! Explicit linearizations certifying lower bounds on maximal order types.
//!
//! A [`Witness`] lists segments `(source, block)`: "the next `block`
//! elements of component `source`, in that component's own order". Its
//! order type is the ordinary sum of the blocks. Components are the chains
//! a term decomposes into, numbered from zero:
//!
//! * `Ord(α)` is one component of type `α`;
//! * `Prod(Ord(α), Fin(antichain(k)))` is `k` pairwise incomparable copies
//!   of `α`, copy `i` being the pairs with index coordinate `i`;
//! * `Sum(A, B)` is the components of `A` followed by those of `B`, each of
//!   the former entirely below each of the latter;
//! * any other term whose leaves are all finite is expanded, and every
//!   element is a component of type 1 numbered by its expansion label.
//!
//! Validation only ever proves `o(T) ≥ claimed_type`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::ordinal::Ordinal;
use crate::term::{lex_product_term_expand, WpoTerm};

/// Elements materialized per block when no cap is given.
pub const DEFAULT_RANK_CAP: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("antichain witness needs k >= 1 and a nonzero ordinal (got k = {k}, alpha = {alpha})")]
    EmptyProduct { alpha: Ordinal, k: usize },
    #[error("no component layout for term {0}")]
    Unsupported(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Segment {
    pub source: usize,
    pub block: Ordinal,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub segments: Vec<Segment>,
    pub claimed_type: Ordinal,
}

impl Witness {
    /// Witness whose claimed type is the sum of `segments`.
    pub fn new(segments: Vec<Segment>) -> Self {
        let claimed_type = block_sum(segments.iter().map(|s| &s.block));
        Witness {
            segments,
            claimed_type,
        }
    }

    /// A single chain, emitted in one block.
    pub fn chain(alpha: Ordinal) -> Self {
        if alpha.is_zero() {
            return Witness::new(Vec::new());
        }
        Witness::new(vec![Segment {
            source: 0,
            block: alpha,
        }])
    }

    /// One more than the largest source tag.
    pub fn component_count(&self) -> usize {
        self.segments.iter().map(|s| s.source + 1).max().unwrap_or(0)
    }

    /// Ordinary sum of the blocks of each source, in witness order.
    pub fn source_totals(&self) -> Vec<Ordinal> {
        let mut totals = vec![Ordinal::zero(); self.component_count()];
        for s in &self.segments {
            totals[s.source] = totals[s.source].add(&s.block);
        }
        totals
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .segments
            .iter()
            .map(|s| format!("{}@{}", s.block, s.source))
            .collect();
        write!(f, "[{}] => {}", parts.join(", "), self.claimed_type)
    }
}

fn block_sum<'a>(blocks: impl Iterator<Item = &'a Ordinal>) -> Ordinal {
    blocks.fold(Ordinal::zero(), |acc, b| acc.add(b))
}

/// `low` followed by `high`; `high`'s sources are shifted past `low`'s.
pub fn witness_lex_sum(low: &Witness, high: &Witness) -> Witness {
    let shift = low.component_count();
    let segments = low
        .segments
        .iter()
        .cloned()
        .chain(high.segments.iter().map(|s| Segment {
            source: s.source + shift,
            block: s.block.clone(),
        }))
        .collect();
    Witness {
        segments,
        claimed_type: low.claimed_type.add(&high.claimed_type),
    }
}

/// Linearization of `k` incomparable copies of the chain `alpha` reaching
/// `alpha ⊗ k`: for each normal-form term of `alpha`, largest first, emit
/// that term's block from copy 0, then copy 1, and so on.
pub fn witness_product_antichain(alpha: &Ordinal, k: usize) -> Result<Witness, WitnessError> {
    if k == 0 || alpha.is_zero() {
        return Err(WitnessError::EmptyProduct {
            alpha: alpha.clone(),
            k,
        });
    }
    let mut segments = Vec::with_capacity(alpha.terms().len() * k);
    for t in alpha.terms() {
        let block = Ordinal::monomial(t.exponent().clone(), t.coefficient().clone());
        for source in 0..k {
            segments.push(Segment {
                source,
                block: block.clone(),
            });
        }
    }
    Ok(Witness::new(segments))
}

/// One singleton segment per element, in the given order.
pub fn witness_from_extension(order: &[usize]) -> Witness {
    Witness::new(
        order
            .iter()
            .map(|&source| Segment {
                source,
                block: Ordinal::one(),
            })
            .collect(),
    )
}

/// Outcome of [`validate_witness`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub segments: Vec<Segment>,
    pub claimed_type: Ordinal,
    pub passed: bool,
    pub elements: usize,
    pub pairs_checked: u64,
    pub failure: Option<String>,
}

impl WitnessReport {
    pub fn render(&self) -> String {
        let verdict = if self.passed { "pass" } else { "FAIL" };
        let mut out = format!(
            "witness {}: claimed {} ({} elements, {} pairs checked)",
            verdict, self.claimed_type, self.elements, self.pairs_checked
        );
        for s in &self.segments {
            out.push_str(&format!("\n  {} from component {}", s.block, s.source));
        }
        if let Some(f) = &self.failure {
            out.push_str(&format!("\n  reason: {f}"));
        }
        out
    }
}

/// Chains making up a term, with `below[a][b]` meaning every element of
/// component `a` lies below every element of component `b`.
#[derive(Debug, Clone)]
struct Layout {
    chains: Vec<Ordinal>,
    below: Vec<Vec<bool>>,
}

impl Layout {
    fn incomparable(chains: Vec<Ordinal>) -> Self {
        let n = chains.len();
        Layout {
            chains,
            below: vec![vec![false; n]; n],
        }
    }

    fn of(term: &WpoTerm) -> Result<Layout, WitnessError> {
        match term {
            WpoTerm::Ord(a) => Ok(Layout::incomparable(
                std::iter::once(a.clone()).filter(|a| !a.is_zero()).collect(),
            )),
            WpoTerm::Prod(base, index) => match (base.as_ref(), index.as_ref()) {
                (WpoTerm::Ord(a), WpoTerm::Fin(q)) if q.is_antichain() => {
                    let copies = if a.is_zero() { 0 } else { q.len() };
                    Ok(Layout::incomparable(vec![a.clone(); copies]))
                }
                _ => Layout::expanded(term),
            },
            WpoTerm::Sum(low, high) => {
                let (low, high) = (Layout::of(low)?, Layout::of(high)?);
                let (nl, nh) = (low.chains.len(), high.chains.len());
                let mut below = vec![vec![false; nl + nh]; nl + nh];
                for a in 0..nl + nh {
                    for b in 0..nl + nh {
                        below[a][b] = match (a < nl, b < nl) {
                            (true, true) => low.below[a][b],
                            (false, false) => high.below[a - nl][b - nl],
                            (true, false) => true,
                            (false, true) => false,
                        };
                    }
                }
                let mut chains = low.chains;
                chains.extend(high.chains);
                Ok(Layout { chains, below })
            }
            _ => Layout::expanded(term),
        }
    }

    fn expanded(term: &WpoTerm) -> Result<Layout, WitnessError> {
        let p = lex_product_term_expand(term).map_err(|_| WitnessError::Unsupported(term.to_string()))?;
        let n = p.len();
        Ok(Layout {
            chains: vec![Ordinal::one(); n],
            below: (0..n).map(|a| (0..n).map(|b| p.lt(a, b)).collect()).collect(),
        })
    }
}

/// Positions sampled inside a block: the first `cap` naturals, the start of
/// each copy of each normal-form term (up to `cap` copies per term), and
/// the last element when the block is a successor.
fn sample_offsets(block: &Ordinal, cap: usize) -> BTreeSet<Ordinal> {
    let mut out = BTreeSet::new();
    for i in 0..cap {
        let o = Ordinal::from(i);
        if o >= *block {
            break;
        }
        out.insert(o);
    }
    let mut prefix = Ordinal::zero();
    for t in block.terms() {
        let copies = t.coefficient().to_usize().unwrap_or(usize::MAX).min(cap);
        for c in 0..copies {
            out.insert(prefix.add(&Ordinal::monomial(t.exponent().clone(), c as u64)));
        }
        prefix = prefix.add(&Ordinal::monomial(t.exponent().clone(), t.coefficient().clone()));
    }
    let (delta, m) = block.split_delta_m();
    if !m.is_zero() {
        out.insert(delta.add(&Ordinal::natural(m - BigUint::from(1u32))));
    }
    out
}

/// Checks `w` against `term`'s order.
///
/// The exact checks compare the claimed type with the sum of the blocks
/// and each component's blocks with the component's type. Then the first
/// `rank_cap` elements of every block plus its boundary elements are
/// materialized and every pair of them is checked against the term's order.
pub fn validate_witness(w: &Witness, term: &WpoTerm, rank_cap: usize) -> Result<WitnessReport, WitnessError> {
    let layout = Layout::of(term)?;
    let mut report = WitnessReport {
        segments: w.segments.clone(),
        claimed_type: w.claimed_type.clone(),
        passed: false,
        elements: 0,
        pairs_checked: 0,
        failure: None,
    };
    match check_witness(w, &layout, rank_cap, &mut report) {
        Ok(()) => report.passed = true,
        Err(reason) => report.failure = Some(reason),
    }
    Ok(report)
}

fn check_witness(w: &Witness, layout: &Layout, rank_cap: usize, report: &mut WitnessReport) -> Result<(), String> {
    let total = block_sum(w.segments.iter().map(|s| &s.block));
    if total != w.claimed_type {
        return Err(format!("blocks sum to {total}, not the claimed {}", w.claimed_type));
    }
    let n = layout.chains.len();
    let mut totals = vec![Ordinal::zero(); n];
    for (i, s) in w.segments.iter().enumerate() {
        if s.source >= n {
            return Err(format!("segment {i} names component {} of {n}", s.source));
        }
        if s.block.is_zero() {
            return Err(format!("segment {i} is empty"));
        }
        totals[s.source] = totals[s.source].add(&s.block);
    }
    for (c, (got, want)) in totals.iter().zip(&layout.chains).enumerate() {
        if got != want {
            return Err(format!("component {c} has type {want} but its blocks sum to {got}"));
        }
    }

    // (component, position within component), in witness order
    let mut elements: Vec<(usize, Ordinal)> = Vec::new();
    let mut next = vec![Ordinal::zero(); n];
    for s in &w.segments {
        let start = next[s.source].clone();
        for offset in sample_offsets(&s.block, rank_cap) {
            elements.push((s.source, start.add(&offset)));
        }
        next[s.source] = start.add(&s.block);
    }
    report.elements = elements.len();

    for (j, (cj, pj)) in elements.iter().enumerate() {
        if *pj >= layout.chains[*cj] {
            return Err(format!("position {pj} overruns component {cj}"));
        }
        for (ci, pi) in &elements[..j] {
            report.pairs_checked += 1;
            let inverted = if ci == cj { pj <= pi } else { layout.below[*cj][*ci] };
            if inverted {
                return Err(format!(
                    "element {pj} of component {cj} is placed after element {pi} of component {ci} but lies below it"
                ));
            }
        }
    }
    Ok(())
}

/// Single-step corruptions of a witness of incomparable components, each
/// tagged with a description. Every mutant changes the ordered block sum of
/// some component, or breaks the claimed type; mutants that merely regroup
/// blocks into an equally valid witness are left out.
pub fn corruption_mutants(w: &Witness) -> Vec<(String, Witness)> {
    let original = w.source_totals();
    let components = w.component_count();
    let mut out = Vec::new();
    let keep = |label: String, m: Witness, out: &mut Vec<(String, Witness)>| {
        let sum = block_sum(m.segments.iter().map(|s| &s.block));
        let mut totals = m.source_totals();
        totals.resize(components.max(totals.len()), Ordinal::zero());
        if sum != m.claimed_type || totals != original {
            out.push((label, m));
        }
    };
    let segs = &w.segments;
    for i in 0..segs.len() {
        for j in i + 1..segs.len() {
            if segs[i].source == segs[j].source && segs[i].block != segs[j].block {
                let mut m = w.clone();
                let (a, b) = (m.segments[i].block.clone(), m.segments[j].block.clone());
                m.segments[i].block = b;
                m.segments[j].block = a;
                keep(format!("swap blocks of segments {i} and {j}"), m, &mut out);
            }
        }
        for source in (0..components).filter(|&s| s != segs[i].source) {
            let mut m = w.clone();
            m.segments[i].source = source;
            keep(format!("move segment {i} to component {source}"), m, &mut out);
        }
        let mut m = w.clone();
        m.segments[i].block = m.segments[i].block.add(&Ordinal::one());
        keep(format!("grow segment {i} by one"), m, &mut out);
        let mut m = w.clone();
        m.segments.remove(i);
        keep(format!("drop segment {i}"), m, &mut out);
    }
    let mut m = w.clone();
    m.claimed_type = m.claimed_type.add(&Ordinal::one());
    keep("overclaim by one".to_string(), m, &mut out);
    out
}
