//! Seeded property suites cross-checking the evaluator against its
//! independent routes: the recursion over finite index posets, the
//! normal-form expansion of the product rule, brute-force enumeration of
//! finite products, and explicit witnesses.
//!
//! Every suite is deterministic for a given seed. A failing suite keeps the
//! smallest failing case it saw as its counterexample.

use std::collections::BTreeSet;
use std::fmt;
use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::gen::{self, TermShape};
use crate::ordinal::Ordinal;
use crate::poset::{product_pair, FinitePoset};
use crate::term::{lex_product_term_expand, proof_trace, proof_trace_o, vialard, vialard_expanded, WpoTerm};
use crate::witness::{
    corruption_mutants, validate_witness, witness_product_antichain, WitnessReport, DEFAULT_RANK_CAP,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Counterexample,
    K0Law,
    Trace,
    BruteForce,
    Decomposition,
    Absorption,
    Expansion,
    Monotonicity,
    Witness,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Counterexample,
        Suite::K0Law,
        Suite::Trace,
        Suite::BruteForce,
        Suite::Decomposition,
        Suite::Absorption,
        Suite::Expansion,
        Suite::Monotonicity,
        Suite::Witness,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Counterexample => "counterexample",
            Suite::K0Law => "k0-law",
            Suite::Trace => "trace",
            Suite::BruteForce => "brute-force",
            Suite::Decomposition => "decomposition",
            Suite::Absorption => "absorption",
            Suite::Expansion => "expansion",
            Suite::Monotonicity => "monotonicity",
            Suite::Witness => "witness",
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }

    pub fn description(self) -> &'static str {
        match self {
            Suite::Counterexample => "o((w+1).antichain(2)) = w*2+2 > w*2+1 with a validated witness",
            Suite::K0Law => "index without maximal elements: o(P.Q) = o(P)*o(Q)",
            Suite::Trace => "finite-index recursion agrees with the product formula",
            Suite::BruteForce => "exhaustive finite products against enumeration and cuts",
            Suite::Decomposition => "m >= k, k = 0 iff m = 0, limit iff no maximal element",
            Suite::Absorption => "a + b = a (+) b when trailing(a) >= leading(b)",
            Suite::Expansion => "product formula equals its normal-form expansion",
            Suite::Monotonicity => "product formula strictly increasing in o(Q)",
            Suite::Witness => "antichain witnesses reach alpha (x) k and resist corruption",
        }
    }

    /// Random cases drawn when none are requested. Exhaustive suites
    /// ignore the count.
    pub fn default_cases(self) -> usize {
        match self {
            Suite::Counterexample | Suite::BruteForce | Suite::Witness => 1,
            Suite::K0Law | Suite::Decomposition | Suite::Absorption | Suite::Expansion => 1000,
            Suite::Trace | Suite::Monotonicity => 500,
        }
    }

    /// Wall-clock budget for a default run.
    pub fn budget(self) -> Duration {
        Duration::from_secs(match self {
            Suite::Counterexample => 1,
            Suite::K0Law | Suite::Absorption | Suite::Expansion | Suite::Monotonicity => 5,
            Suite::Decomposition | Suite::Witness => 10,
            Suite::Trace | Suite::BruteForce => 30,
        })
    }

    pub fn run(self, seed: u64, cases: Option<usize>) -> SuiteReport {
        let cases = cases.unwrap_or(self.default_cases());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut log = Log::default();
        let start = Instant::now();
        // a broken invariant panics mid-case; report it as a failure
        let outcome = panic::catch_unwind(AssertUnwindSafe(|| match self {
            Suite::Counterexample => counterexample_suite(&mut log),
            Suite::K0Law => k0_law(&mut rng, cases, &mut log),
            Suite::Trace => trace_agreement(&mut rng, cases, &mut log),
            Suite::BruteForce => brute_force(&mut log),
            Suite::Decomposition => decomposition(&mut rng, cases, &mut log),
            Suite::Absorption => absorption(&mut rng, cases, &mut log),
            Suite::Expansion => expansion(&mut rng, cases, &mut log),
            Suite::Monotonicity => monotonicity(&mut rng, cases, &mut log),
            Suite::Witness => witness_tightness(&mut log),
        }));
        if let Err(payload) = outcome {
            let message = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            log.case(false, 0, || format!("panicked: {message}"));
        }
        SuiteReport {
            suite: self,
            seed,
            cases: log.cases,
            failures: log.failures,
            counterexample: log.smallest.map(|(_, text)| text),
            elapsed: start.elapsed(),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub cases: usize,
    pub failures: usize,
    pub counterexample: Option<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    /// Verdict line plus the counterexample, if any. Leaves out timing so
    /// that output depends only on the seed.
    pub fn summary(&self) -> String {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let mut line = format!(
            "{verdict} {:<15} {} cases, {} failures",
            self.suite.name(),
            self.cases,
            self.failures
        );
        if let Some(c) = &self.counterexample {
            line.push_str(&format!("\n     smallest counterexample: {c}"));
        }
        line
    }
}

#[derive(Default)]
struct Log {
    cases: usize,
    failures: usize,
    smallest: Option<(usize, String)>,
}

impl Log {
    /// Records one case; `size` ranks failures for minimization.
    fn case(&mut self, ok: bool, size: usize, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if ok {
            return;
        }
        self.failures += 1;
        if self.smallest.as_ref().is_none_or(|(s, _)| size < *s) {
            self.smallest = Some((size, describe()));
        }
    }
}

fn ord_size(a: &Ordinal) -> usize {
    a.render().len()
}

/// The standard counterexample to `o(P·Q) = o(P)·o(Q)`.
#[derive(Debug, Clone, Serialize)]
pub struct CounterexampleDemo {
    pub term: String,
    pub formula_value: Ordinal,
    pub naive_product: Ordinal,
    pub witness: WitnessReport,
}

impl CounterexampleDemo {
    pub fn holds(&self) -> bool {
        self.formula_value > self.naive_product
            && self.witness.passed
            && self.witness.claimed_type == self.formula_value
    }

    pub fn render(&self) -> String {
        let term = if self.term.starts_with('(') {
            self.term.clone()
        } else {
            format!("({})", self.term)
        };
        format!(
            "o{} = {}\no(w+1) * o(antichain(2)) = {}\n{} > {}: {}\n{}",
            term,
            self.formula_value,
            self.naive_product,
            self.formula_value,
            self.naive_product,
            self.formula_value > self.naive_product,
            self.witness.render()
        )
    }
}

pub fn counterexample_demo(rank_cap: usize) -> CounterexampleDemo {
    let alpha = Ordinal::omega().add(&Ordinal::one());
    let base = WpoTerm::ord(alpha.clone());
    let index = WpoTerm::antichain(2);
    let term = WpoTerm::prod(base.clone(), index.clone());
    let witness = witness_product_antichain(&alpha, 2).expect("nonzero alpha and k");
    let report = validate_witness(&witness, &term, rank_cap).expect("supported shape");
    CounterexampleDemo {
        term: term.to_string(),
        formula_value: term.o(),
        naive_product: base.o().mul(&index.o()),
        witness: report,
    }
}

fn counterexample_suite(log: &mut Log) {
    let demo = counterexample_demo(20);
    let expected = Ordinal::parse("w*2+2").expect("literal");
    let naive = Ordinal::parse("w*2+1").expect("literal");
    let ok = demo.holds() && demo.formula_value == expected && demo.naive_product == naive;
    log.case(ok, 0, || demo.render());
}

fn k0_law(rng: &mut ChaCha8Rng, cases: usize, log: &mut Log) {
    for i in 0..cases {
        let base = WpoTerm::ord(gen::ordinal(rng, 2, 5));
        let index = if i % 2 == 0 {
            WpoTerm::ord(gen::limit_ordinal(rng, 2, 5))
        } else {
            limitless_term(rng)
        };
        let got = WpoTerm::prod(base.clone(), index.clone()).o();
        let want = base.o().mul(&index.o());
        log.case(got == want, base.size() + index.size() + ord_size(&want), || {
            format!("P = {base}, Q = {index}: o(P.Q) = {got}, o(P)*o(Q) = {want}")
        });
    }
}

/// A random term without maximal elements.
fn limitless_term(rng: &mut ChaCha8Rng) -> WpoTerm {
    let shape = TermShape {
        depth: 3,
        ..TermShape::default()
    };
    for _ in 0..200 {
        let t = gen::term(rng, shape);
        if t.max_count().is_zero() {
            return t;
        }
    }
    WpoTerm::ord(gen::limit_ordinal(rng, 2, 5))
}

fn trace_agreement(rng: &mut ChaCha8Rng, cases: usize, log: &mut Log) {
    for _ in 0..cases {
        let base_o = gen::ordinal(rng, 2, 5);
        let q = gen::poset(rng, 8);
        let traced = proof_trace_o(&base_o, &q);
        let tree = proof_trace(&base_o, &q);
        let formula = vialard(&base_o, &WpoTerm::Fin(q.clone()).delta_mk());
        let ok = traced == formula && tree.value == formula && tree.depth() <= q.len() + 1;
        log.case(ok, q.len() * 10 + ord_size(&base_o), || {
            format!("o(P) = {base_o}, Q = {q}: trace {traced}, formula {formula}")
        });
    }
}

fn brute_force(log: &mut Log) {
    let catalog: Vec<FinitePoset> = (0..=3).flat_map(FinitePoset::catalog).collect();
    for p in &catalog {
        for q in &catalog {
            if p.len() * q.len() > 9 {
                continue;
            }
            let failure = brute_force_case(p, q);
            log.case(failure.is_none(), p.len() * q.len(), || {
                format!("P = {p}, Q = {q}: {}", failure.unwrap_or_default())
            });
        }
    }
}

fn brute_force_case(p: &FinitePoset, q: &FinitePoset) -> Option<String> {
    let n = p.len() * q.len();
    let term = WpoTerm::prod(WpoTerm::Fin(p.clone()), WpoTerm::Fin(q.clone()));
    let expanded = match lex_product_term_expand(&term) {
        Ok(e) => e,
        Err(e) => return Some(e.to_string()),
    };
    if expanded.len() != n || !expanded.is_valid() {
        return Some(format!("expansion has {} elements or is not an order", expanded.len()));
    }

    let mut longest = 0usize;
    let mut bad = 0u64;
    let enumerated = expanded
        .for_each_linear_extension(n, |ext| {
            longest = longest.max(ext.len());
            if ext.len() != n || !expanded.is_linear_extension(ext) {
                bad += 1;
            }
        })
        .expect("within cap");
    if bad > 0 {
        return Some(format!("{bad} extensions are malformed"));
    }
    match expanded.count_linear_extensions() {
        Ok(c) if c == enumerated as u128 => {}
        other => return Some(format!("enumerated {enumerated} extensions, counted {other:?}")),
    }
    if term.o() != Ordinal::from(longest) || longest != n {
        return Some(format!("o = {}, longest extension {longest}", term.o()));
    }
    if proof_trace_o(&Ordinal::from(p.len()), q) != Ordinal::from(n) {
        return Some("finite-index recursion disagrees".into());
    }

    let maxima: BTreeSet<(usize, usize)> = expanded
        .maximal_elements()
        .into_iter()
        .map(|l| product_pair(l, p.len()))
        .collect();
    let expected: BTreeSet<(usize, usize)> = p
        .maximal_elements()
        .into_iter()
        .flat_map(|a| q.maximal_elements().into_iter().map(move |b| (a, b)))
        .collect();
    if maxima != expected || term.max_count() != BigUint::from(expected.len()) {
        return Some(format!("maximal elements {maxima:?}, expected {expected:?}"));
    }

    for poset in [p, q, &expanded] {
        if let Some(f) = split_failure(poset) {
            return Some(format!("{poset}: {f}"));
        }
    }
    None
}

fn split_failure(poset: &FinitePoset) -> Option<String> {
    let k = poset.maximal_elements().len();
    let top = poset.split_top();
    if poset.is_cut(&top.cut()) != Ok(true) || !top.upper.is_antichain() || top.upper.len() != k {
        return Some("split_top is not a cut onto the maxima".into());
    }
    if k >= 2 {
        let split = poset.split_first_max().expect("two maxima");
        if poset.is_cut(&split.cut()) != Ok(true) {
            return Some("split_first_max is not a cut".into());
        }
        let counts = (split.lower.maximal_elements().len(), split.upper.maximal_elements().len());
        if counts != (k - 1, 1) {
            return Some(format!("split_first_max maxima {counts:?}"));
        }
    }
    None
}

fn decomposition(rng: &mut ChaCha8Rng, cases: usize, log: &mut Log) {
    for _ in 0..cases {
        let t = gen::term(rng, TermShape::default());
        let o = t.o();
        let (_, m) = o.split_delta_m();
        let k = t.max_count();
        let mut ok = m >= k && k.is_zero() == m.is_zero();
        if k.is_zero() && !o.is_zero() {
            ok &= o.is_limit();
        }
        if !k.is_zero() {
            ok &= !o.finite_tail().is_zero();
        }
        // small finite terms: compare with the expanded poset
        if t.is_finite() && o <= Ordinal::from(200u64) {
            let p = lex_product_term_expand(&t).expect("finite term");
            ok &= Ordinal::from(p.len()) == o && BigUint::from(p.maximal_elements().len()) == k;
        }
        log.case(ok, t.size(), || format!("T = {t}: o = {o}, m = {m}, k = {k}"));
    }
}

fn absorption(rng: &mut ChaCha8Rng, cases: usize, log: &mut Log) {
    for _ in 0..cases {
        let a = gen::nonzero_ordinal(rng, 2, 5);
        let bound = a.trailing_exponent().expect("nonzero").clone();
        let b = capped_ordinal(rng, &bound);
        let ok = bound >= *b.leading_exponent().expect("nonzero") && a.add(&b) == a.nat_sum(&b);
        log.case(ok, ord_size(&a) + ord_size(&b), || {
            format!("a = {a}, b = {b}: a+b = {}, a(+)b = {}", a.add(&b), a.nat_sum(&b))
        });
    }
}

/// Random nonzero ordinal whose leading exponent is at most `bound`; about
/// half of the draws sit exactly on the bound.
fn capped_ordinal(rng: &mut ChaCha8Rng, bound: &Ordinal) -> Ordinal {
    loop {
        let raw = gen::ordinal(rng, 2, 5);
        let terms: BTreeSet<Ordinal> = raw
            .terms()
            .iter()
            .map(|t| {
                if t.exponent() > bound || rng.gen_bool(0.2) {
                    bound.clone()
                } else {
                    t.exponent().clone()
                }
            })
            .collect();
        let b = terms
            .into_iter()
            .fold(Ordinal::zero(), |acc, e| acc.nat_sum(&Ordinal::monomial(e, rng.gen_range(1..=5u32))));
        if !b.is_zero() {
            return b;
        }
    }
}

fn expansion(rng: &mut ChaCha8Rng, cases: usize, log: &mut Log) {
    for _ in 0..cases {
        let o_p = gen::ordinal(rng, 2, 5);
        let dmk = gen::delta_mk(rng, 2, 6);
        let (direct, expanded) = (vialard(&o_p, &dmk), vialard_expanded(&o_p, &dmk));
        let mut ok = direct == expanded;
        if !o_p.is_zero() {
            let beta0 = o_p.leading_exponent().expect("nonzero");
            let k0 = o_p.leading_coefficient().expect("nonzero");
            for n in 1..=10u32 {
                let lhs = o_p.mul(&Ordinal::from(n as u64));
                let rhs = Ordinal::monomial(beta0.clone(), k0 * n).add(&o_p.tail_sigma());
                ok &= lhs == rhs;
            }
        }
        log.case(ok, ord_size(&o_p) + ord_size(&dmk.delta), || {
            format!("o(P) = {o_p}, {dmk}: formula {direct}, expansion {expanded}")
        });
    }
}

fn monotonicity(rng: &mut ChaCha8Rng, cases: usize, log: &mut Log) {
    let mut done = 0;
    while done < cases {
        let o_p = gen::nonzero_ordinal(rng, 2, 5);
        let (x, y) = (gen::delta_mk(rng, 2, 5), gen::delta_mk(rng, 2, 5));
        let (lo, hi) = match x.order_type().cmp(&y.order_type()) {
            std::cmp::Ordering::Less => (x, y),
            std::cmp::Ordering::Greater => (y, x),
            std::cmp::Ordering::Equal => continue,
        };
        done += 1;
        let (a, b) = (vialard(&o_p, &lo), vialard(&o_p, &hi));
        log.case(a < b, ord_size(&o_p) + ord_size(&hi.delta), || {
            format!("o(P) = {o_p}: ({lo}) gives {a}, ({hi}) gives {b}")
        });
    }
}

/// Ordinals with up to three terms, exponents from `{0, 1, 2, w, w+1}` and
/// coefficients from `1..=3`.
pub fn witness_family() -> Vec<Ordinal> {
    let exponents: Vec<Ordinal> = ["w+1", "w", "2", "1", "0"]
        .iter()
        .map(|s| Ordinal::parse(s).expect("literal"))
        .collect();
    let mut out = Vec::new();
    for mask in 1u32..1 << exponents.len() {
        let chosen: Vec<&Ordinal> = (0..exponents.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| &exponents[i])
            .collect();
        if chosen.len() > 3 {
            continue;
        }
        let combos = 3usize.pow(chosen.len() as u32);
        for code in 0..combos {
            let mut c = code;
            let cnf: Vec<(Ordinal, BigUint)> = chosen
                .iter()
                .map(|e| {
                    let coeff = c % 3 + 1;
                    c /= 3;
                    ((*e).clone(), BigUint::from(coeff))
                })
                .collect();
            out.push(Ordinal::from_cnf(cnf).expect("decreasing exponents"));
        }
    }
    out
}

fn witness_tightness(log: &mut Log) {
    for alpha in witness_family() {
        for k in 1..=4usize {
            let failure = witness_case(&alpha, k);
            log.case(failure.is_none(), ord_size(&alpha) + k, || {
                format!("alpha = {alpha}, k = {k}: {}", failure.unwrap_or_default())
            });
        }
    }
}

fn witness_case(alpha: &Ordinal, k: usize) -> Option<String> {
    let term = WpoTerm::prod(WpoTerm::ord(alpha.clone()), WpoTerm::antichain(k));
    let w = match witness_product_antichain(alpha, k) {
        Ok(w) => w,
        Err(e) => return Some(e.to_string()),
    };
    let expected = alpha.nat_prod(&Ordinal::from(k));
    if w.claimed_type != expected || term.o() != expected {
        return Some(format!("claimed {}, alpha (x) k = {expected}, o = {}", w.claimed_type, term.o()));
    }
    match validate_witness(&w, &term, DEFAULT_RANK_CAP) {
        Ok(r) if r.passed => {}
        Ok(r) => return Some(r.render()),
        Err(e) => return Some(e.to_string()),
    }
    for (label, m) in corruption_mutants(&w) {
        if validate_witness(&m, &term, DEFAULT_RANK_CAP).map(|r| r.passed).unwrap_or(false) {
            return Some(format!("corruption '{label}' validated: {m}"));
        }
    }
    None
}
