//! Finite strict partial orders on the labels `0..n`.
//!
//! The relation is kept transitively closed from construction on, so
//! every query reads the closed relation directly.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Largest poset for which [`FinitePoset::linear_extensions`] will
/// materialize every extension unless a larger cap is passed.
pub const DEFAULT_ENUMERATION_CAP: usize = 10;

/// Largest poset accepted by the subset dynamic program in
/// [`FinitePoset::count_linear_extensions`].
pub const COUNT_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("relation has a cycle through element {0}")]
    Cycle(usize),
    #[error("element {element} out of range for a poset of size {size}")]
    OutOfRange { element: usize, size: usize },
    #[error("{size} elements exceed the enumeration cap of {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("cut sides do not partition the {size} elements")]
    NotPartition { size: usize },
    #[error("expected at least 2 maximal elements, found {0}")]
    TooFewMaximal(usize),
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct BitMatrix {
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        BitMatrix {
            words,
            bits: vec![0; words * n],
        }
    }

    fn get(&self, r: usize, c: usize) -> bool {
        self.bits[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    fn set(&mut self, r: usize, c: usize) {
        self.bits[r * self.words + c / 64] |= 1 << (c % 64);
    }

    fn row(&self, r: usize) -> &[u64] {
        &self.bits[r * self.words..(r + 1) * self.words]
    }

    /// row[dst] |= row[src]
    fn union_rows(&mut self, dst: usize, src: usize) {
        if dst == src {
            return;
        }
        for w in 0..self.words {
            let v = self.bits[src * self.words + w];
            self.bits[dst * self.words + w] |= v;
        }
    }
}

/// A finite strict partial order. `lt(a, b)` means `a < b`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinitePoset {
    n: usize,
    lt: BitMatrix,
}

/// A partition of a poset's elements into a lower and an upper side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cut {
    pub lower: Vec<usize>,
    pub upper: Vec<usize>,
}

/// Result of splitting a poset into two induced suborders.
///
/// `lower_labels[i]` is the label in the original poset of element `i` of
/// `lower`, and likewise for the upper side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Split {
    pub lower: FinitePoset,
    pub lower_labels: Vec<usize>,
    pub upper: FinitePoset,
    pub upper_labels: Vec<usize>,
}

impl Split {
    pub fn cut(&self) -> Cut {
        Cut {
            lower: self.lower_labels.clone(),
            upper: self.upper_labels.clone(),
        }
    }
}

impl FinitePoset {
    pub fn empty() -> Self {
        FinitePoset::antichain(0)
    }

    pub fn antichain(n: usize) -> Self {
        FinitePoset {
            n,
            lt: BitMatrix::new(n),
        }
    }

    pub fn chain(n: usize) -> Self {
        let mut p = FinitePoset::antichain(n);
        for a in 0..n {
            for b in a + 1..n {
                p.lt.set(a, b);
            }
        }
        p
    }

    /// Transitive closure of `edges`, rejecting cycles.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, PosetError> {
        let mut lt = BitMatrix::new(n);
        for &(a, b) in edges {
            for e in [a, b] {
                if e >= n {
                    return Err(PosetError::OutOfRange { element: e, size: n });
                }
            }
            lt.set(a, b);
        }
        // Warshall on bit rows.
        for k in 0..n {
            for i in 0..n {
                if lt.get(i, k) {
                    lt.union_rows(i, k);
                }
            }
        }
        if let Some(x) = (0..n).find(|&x| lt.get(x, x)) {
            return Err(PosetError::Cycle(x));
        }
        Ok(FinitePoset { n, lt })
    }

    /// Builds from a closed strict order given as a predicate.
    fn from_closed(n: usize, less: impl Fn(usize, usize) -> bool) -> Self {
        let mut lt = BitMatrix::new(n);
        for a in 0..n {
            for b in 0..n {
                if less(a, b) {
                    lt.set(a, b);
                }
            }
        }
        let p = FinitePoset { n, lt };
        debug_assert!(p.is_valid());
        p
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.lt.get(a, b)
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        a == b || self.lt(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.le(a, b) || self.lt(b, a)
    }

    /// All pairs `(a, b)` with `a < b`.
    pub fn relations(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |a| (0..self.n).filter(move |&b| self.lt(a, b)).map(move |b| (a, b)))
    }

    /// Covering pairs of the Hasse diagram.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        self.relations()
            .filter(|&(a, b)| !(0..self.n).any(|c| self.lt(a, c) && self.lt(c, b)))
            .collect()
    }

    /// Irreflexive, transitive and antisymmetric.
    pub fn is_valid(&self) -> bool {
        (0..self.n).all(|a| {
            !self.lt(a, a)
                && (0..self.n).all(|b| {
                    !(self.lt(a, b) && self.lt(b, a))
                        && (!self.lt(a, b) || (0..self.n).all(|c| !self.lt(b, c) || self.lt(a, c)))
                })
        })
    }

    pub fn is_chain(&self) -> bool {
        (0..self.n).all(|a| (a + 1..self.n).all(|b| self.comparable(a, b)))
    }

    pub fn is_antichain(&self) -> bool {
        self.lt.bits.iter().all(|&w| w == 0)
    }

    /// Elements with no strict upper bound, in increasing label order.
    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&a| self.lt.row(a).iter().all(|&w| w == 0))
            .collect()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&b| !(0..self.n).any(|a| self.lt(a, b)))
            .collect()
    }

    /// Induced suborder on `labels`; element `i` of the result is `labels[i]`.
    pub fn restrict(&self, labels: &[usize]) -> FinitePoset {
        FinitePoset::from_closed(labels.len(), |i, j| self.lt(labels[i], labels[j]))
    }

    /// Whether `order` lists every element exactly once, consistently with `<`.
    pub fn is_linear_extension(&self, order: &[usize]) -> bool {
        if order.len() != self.n {
            return false;
        }
        let mut rank = vec![usize::MAX; self.n];
        for (i, &x) in order.iter().enumerate() {
            if x >= self.n || rank[x] != usize::MAX {
                return false;
            }
            rank[x] = i;
        }
        self.relations().all(|(a, b)| rank[a] < rank[b])
    }

    /// Calls `visit` on every linear extension, in lexicographic order of
    /// the label sequences. Returns the number visited.
    pub fn for_each_linear_extension<F>(&self, cap: usize, mut visit: F) -> Result<u64, PosetError>
    where
        F: FnMut(&[usize]),
    {
        if self.n > cap {
            return Err(PosetError::CapExceeded { size: self.n, cap });
        }
        // pending[x] = number of unplaced elements strictly below x
        let mut pending: Vec<usize> = (0..self.n)
            .map(|x| (0..self.n).filter(|&y| self.lt(y, x)).count())
            .collect();
        let mut placed = vec![false; self.n];
        let mut prefix = Vec::with_capacity(self.n);
        let mut count = 0;
        self.extend(&mut pending, &mut placed, &mut prefix, &mut count, &mut visit);
        Ok(count)
    }

    fn extend<F: FnMut(&[usize])>(
        &self,
        pending: &mut [usize],
        placed: &mut [bool],
        prefix: &mut Vec<usize>,
        count: &mut u64,
        visit: &mut F,
    ) {
        if prefix.len() == self.n {
            *count += 1;
            visit(prefix);
            return;
        }
        for x in 0..self.n {
            if placed[x] || pending[x] != 0 {
                continue;
            }
            placed[x] = true;
            prefix.push(x);
            for y in 0..self.n {
                if self.lt(x, y) {
                    pending[y] -= 1;
                }
            }
            self.extend(pending, placed, prefix, count, visit);
            for y in 0..self.n {
                if self.lt(x, y) {
                    pending[y] += 1;
                }
            }
            prefix.pop();
            placed[x] = false;
        }
    }

    /// Every linear extension as a permutation of the labels.
    pub fn linear_extensions(&self, cap: usize) -> Result<Vec<Vec<usize>>, PosetError> {
        let mut out = Vec::new();
        self.for_each_linear_extension(cap, |ext| out.push(ext.to_vec()))?;
        Ok(out)
    }

    /// Number of linear extensions by dynamic programming over down-sets,
    /// without materializing any of them.
    pub fn count_linear_extensions(&self) -> Result<u128, PosetError> {
        if self.n > COUNT_LIMIT {
            return Err(PosetError::CapExceeded {
                size: self.n,
                cap: COUNT_LIMIT,
            });
        }
        let below: Vec<u32> = (0..self.n)
            .map(|x| (0..self.n).filter(|&y| self.lt(y, x)).fold(0u32, |m, y| m | 1 << y))
            .collect();
        let full = (1usize << self.n) - 1;
        let mut ways = vec![0u128; full + 1];
        ways[0] = 1;
        for set in 0..full {
            let w = ways[set];
            if w == 0 {
                continue;
            }
            for (x, &needs) in below.iter().enumerate() {
                let bit = 1usize << x;
                if set & bit == 0 && needs as usize & !set == 0 {
                    ways[set | bit] += w;
                }
            }
        }
        Ok(ways[full])
    }

    /// Whether `cut` is a cut: no upper element lies strictly below a lower one.
    pub fn is_cut(&self, cut: &Cut) -> Result<bool, PosetError> {
        let mut seen = vec![false; self.n];
        for &x in cut.lower.iter().chain(&cut.upper) {
            if x >= self.n || seen[x] {
                return Err(PosetError::NotPartition { size: self.n });
            }
            seen[x] = true;
        }
        if seen.iter().any(|s| !s) {
            return Err(PosetError::NotPartition { size: self.n });
        }
        Ok(cut
            .lower
            .iter()
            .all(|&lo| cut.upper.iter().all(|&hi| !self.lt(hi, lo))))
    }

    /// Lexicographic product `self · index`: pairs compare on the index
    /// coordinate first, then on `self`. The pair `(p, q)` gets the label
    /// `q * self.len() + p`; see [`product_label`] and [`product_pair`].
    pub fn lex_product(&self, index: &FinitePoset) -> FinitePoset {
        let np = self.n;
        FinitePoset::from_closed(np * index.n, |a, b| {
            let (pa, qa) = (a % np, a / np);
            let (pb, qb) = (b % np, b / np);
            index.lt(qa, qb) || (qa == qb && self.lt(pa, pb))
        })
    }

    /// Disjoint union; `other`'s labels are shifted by `self.len()`.
    pub fn disjoint_union(&self, other: &FinitePoset) -> FinitePoset {
        let n = self.n;
        FinitePoset::from_closed(n + other.n, |a, b| match (a < n, b < n) {
            (true, true) => self.lt(a, b),
            (false, false) => other.lt(a - n, b - n),
            _ => false,
        })
    }

    /// Lexicographic sum: every element of `self` below every element of
    /// `other`, whose labels are shifted by `self.len()`.
    pub fn lex_sum(&self, other: &FinitePoset) -> FinitePoset {
        let n = self.n;
        FinitePoset::from_closed(n + other.n, |a, b| match (a < n, b < n) {
            (true, true) => self.lt(a, b),
            (false, false) => other.lt(a - n, b - n),
            (true, false) => true,
            (false, true) => false,
        })
    }

    fn split_by(&self, in_upper: impl Fn(usize) -> bool) -> Split {
        let (upper_labels, lower_labels): (Vec<usize>, Vec<usize>) = (0..self.n).partition(|&x| in_upper(x));
        Split {
            lower: self.restrict(&lower_labels),
            lower_labels,
            upper: self.restrict(&upper_labels),
            upper_labels,
        }
    }

    /// Splits off the maximal elements: the upper side is the antichain of
    /// maximal elements, the lower side everything else.
    pub fn split_top(&self) -> Split {
        let maxima: BTreeSet<usize> = self.maximal_elements().into_iter().collect();
        self.split_by(|x| maxima.contains(&x))
    }

    /// Splits off the first maximal element `q` (lowest label) together with
    /// everything below `q` and below no other maximal element. That part
    /// is the upper side of the returned split and has exactly one maximal
    /// element; the lower side keeps the other `k - 1` maximal elements.
    pub fn split_first_max(&self) -> Result<Split, PosetError> {
        let maxima = self.maximal_elements();
        if maxima.len() < 2 {
            return Err(PosetError::TooFewMaximal(maxima.len()));
        }
        let first = maxima[0];
        let others = &maxima[1..];
        for x in 0..self.n {
            assert!(
                maxima.iter().any(|&q| self.le(x, q)),
                "element {x} lies below no maximal element"
            );
        }
        Ok(self.split_by(|x| {
            x == first || (self.lt(x, first) && !others.iter().any(|&q| self.lt(x, q)))
        }))
    }

    /// Every strict partial order on `0..n`, labeled. Grows quickly; meant
    /// for `n <= 4`.
    pub fn all_labeled(n: usize) -> Vec<FinitePoset> {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
            .collect();
        let mut out = Vec::new();
        for mask in 0u64..1 << pairs.len() {
            let p = FinitePoset::from_closed_unchecked(n, &pairs, mask);
            if p.is_valid() {
                out.push(p);
            }
        }
        out
    }

    fn from_closed_unchecked(n: usize, pairs: &[(usize, usize)], mask: u64) -> FinitePoset {
        let mut lt = BitMatrix::new(n);
        for (i, &(a, b)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                lt.set(a, b);
            }
        }
        FinitePoset { n, lt }
    }

    /// One representative per isomorphism class of posets with exactly `n`
    /// elements, each labeled so that `a < b` implies `a < b` as integers.
    pub fn catalog(n: usize) -> Vec<FinitePoset> {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let mut classes = BTreeSet::new();
        let mut out = Vec::new();
        for mask in 0u64..1 << pairs.len() {
            let p = FinitePoset::from_closed_unchecked(n, &pairs, mask);
            if !p.is_valid() {
                continue;
            }
            if classes.insert(p.canonical_code()) {
                out.push(p);
            }
        }
        out
    }

    /// Smallest adjacency code over all relabelings.
    fn canonical_code(&self) -> Vec<bool> {
        let mut perm: Vec<usize> = (0..self.n).collect();
        let mut best: Option<Vec<bool>> = None;
        loop {
            let code: Vec<bool> = (0..self.n)
                .flat_map(|a| (0..self.n).map(move |b| (a, b)))
                .map(|(a, b)| self.lt(perm[a], perm[b]))
                .collect();
            if best.as_ref().is_none_or(|b| code < *b) {
                best = Some(code);
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        best.unwrap_or_default()
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let Some(i) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).expect("successor exists");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// Label of the pair `(p, q)` in `P.lex_product(Q)` where `|P| = base_len`.
pub fn product_label(p: usize, q: usize, base_len: usize) -> usize {
    q * base_len + p
}

/// Inverse of [`product_label`].
pub fn product_pair(label: usize, base_len: usize) -> (usize, usize) {
    (label % base_len, label / base_len)
}

impl fmt::Debug for FinitePoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinitePoset({self})")
    }
}

/// Renders in the literal syntax `poset(n; a<b, ...)`, using `chain(n)` or
/// `antichain(n)` where they apply.
impl fmt::Display for FinitePoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_antichain() {
            return write!(f, "antichain({})", self.n);
        }
        if self.is_chain() && (1..self.n).all(|b| self.lt(b - 1, b)) {
            return write!(f, "chain({})", self.n);
        }
        write!(f, "poset({};", self.n)?;
        for (i, (a, b)) in self.covers().into_iter().enumerate() {
            let sep = if i == 0 { " " } else { ", " };
            write!(f, "{sep}{a}<{b}")?;
        }
        f.write_str(")")
    }
}
