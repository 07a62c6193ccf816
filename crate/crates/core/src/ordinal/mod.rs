//! Ordinals below epsilon-zero in Cantor normal form.
//!
//! An [`Ordinal`] is a finite list of `(exponent, coefficient)` terms with
//! strictly decreasing exponents and coefficients of at least one, so
//! equality is structural. Ordinary sum and product are exposed through the
//! `+` and `*` operators; the natural (Hessenberg) operations are
//! [`Ordinal::nat_sum`] and [`Ordinal::nat_prod`].

mod parse;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub use parse::DEFAULT_MAX_HEIGHT;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrdinalError {
    #[error("syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("zero coefficient at byte {pos}")]
    ZeroCoefficient { pos: usize },
    #[error("ordinal nesting deeper than {limit} levels")]
    TooDeep { limit: usize },
    #[error("{0} is undefined for the ordinal 0")]
    ZeroOrdinal(&'static str),
    #[error("exponents must be strictly decreasing")]
    NotNormal,
}

impl OrdinalError {
    /// Byte offset of a parse failure, if this is one.
    pub fn position(&self) -> Option<usize> {
        match self {
            OrdinalError::Syntax { pos, .. } | OrdinalError::ZeroCoefficient { pos } => Some(*pos),
            _ => None,
        }
    }
}

/// One summand `ω^exponent · coefficient` of a Cantor normal form.
///
/// Field order matters: the derived ordering compares exponents first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    exponent: Ordinal,
    coefficient: BigUint,
}

impl Term {
    pub fn exponent(&self) -> &Ordinal {
        &self.exponent
    }

    pub fn coefficient(&self) -> &BigUint {
        &self.coefficient
    }
}

/// An ordinal below ε₀.
///
/// The derived `Ord` is the lexicographic comparison of term lists, which
/// is the ordinal order precisely because every value is kept normalized.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Ordinal {
    terms: Vec<Term>,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Ordinal::natural(1u32)
    }

    pub fn omega() -> Self {
        Ordinal::omega_pow(Ordinal::one())
    }

    pub fn natural(n: impl Into<BigUint>) -> Self {
        Ordinal::monomial(Ordinal::zero(), n)
    }

    /// `ω^exponent`.
    pub fn omega_pow(exponent: Ordinal) -> Self {
        Ordinal::monomial(exponent, 1u32)
    }

    /// `ω^exponent · coefficient`; a zero coefficient gives 0.
    pub fn monomial(exponent: Ordinal, coefficient: impl Into<BigUint>) -> Self {
        let coefficient = coefficient.into();
        if coefficient.is_zero() {
            return Ordinal::zero();
        }
        Ordinal {
            terms: vec![Term {
                exponent,
                coefficient,
            }],
        }
    }

    /// Builds an ordinal from terms that are already in Cantor normal form.
    pub fn from_cnf<I>(terms: I) -> Result<Self, OrdinalError>
    where
        I: IntoIterator<Item = (Ordinal, BigUint)>,
    {
        let mut out: Vec<Term> = Vec::new();
        for (exponent, coefficient) in terms {
            if coefficient.is_zero() {
                return Err(OrdinalError::ZeroCoefficient { pos: 0 });
            }
            if let Some(last) = out.last() {
                if last.exponent <= exponent {
                    return Err(OrdinalError::NotNormal);
                }
            }
            out.push(Term {
                exponent,
                coefficient,
            });
        }
        Ok(Ordinal { terms: out })
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.terms.iter().all(|t| t.exponent.is_zero())
    }

    /// The value as a natural number, if finite.
    pub fn as_natural(&self) -> Option<BigUint> {
        match self.terms.as_slice() {
            [] => Some(BigUint::zero()),
            [t] if t.exponent.is_zero() => Some(t.coefficient.clone()),
            _ => None,
        }
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.as_natural().and_then(|n| n.to_u64())
    }

    /// Nonzero and without a finite tail.
    pub fn is_limit(&self) -> bool {
        !self.is_zero() && self.finite_tail().is_zero()
    }

    pub fn is_successor(&self) -> bool {
        !self.finite_tail().is_zero()
    }

    /// Coefficient of the `ω^0` term.
    pub fn finite_tail(&self) -> BigUint {
        match self.terms.last() {
            Some(t) if t.exponent.is_zero() => t.coefficient.clone(),
            _ => BigUint::zero(),
        }
    }

    /// Splits `self` as `delta + m` with `delta` zero or a limit.
    pub fn split_delta_m(&self) -> (Ordinal, BigUint) {
        match self.terms.last() {
            Some(t) if t.exponent.is_zero() => {
                let delta = Ordinal {
                    terms: self.terms[..self.terms.len() - 1].to_vec(),
                };
                (delta, t.coefficient.clone())
            }
            _ => (self.clone(), BigUint::zero()),
        }
    }

    pub fn leading_exponent(&self) -> Result<&Ordinal, OrdinalError> {
        self.terms
            .first()
            .map(|t| &t.exponent)
            .ok_or(OrdinalError::ZeroOrdinal("leading exponent"))
    }

    pub fn trailing_exponent(&self) -> Result<&Ordinal, OrdinalError> {
        self.terms
            .last()
            .map(|t| &t.exponent)
            .ok_or(OrdinalError::ZeroOrdinal("trailing exponent"))
    }

    pub fn leading_coefficient(&self) -> Result<&BigUint, OrdinalError> {
        self.terms
            .first()
            .map(|t| &t.coefficient)
            .ok_or(OrdinalError::ZeroOrdinal("leading coefficient"))
    }

    /// Everything after the leading term. Always below `ω^leading_exponent`.
    pub fn tail_sigma(&self) -> Ordinal {
        Ordinal {
            terms: self.terms.iter().skip(1).cloned().collect(),
        }
    }

    /// The leading term alone, `ω^β₀ · k₀`.
    pub fn leading_term(&self) -> Ordinal {
        Ordinal {
            terms: self.terms.iter().take(1).cloned().collect(),
        }
    }

    /// Nesting height: naturals have height 0, `ω^e·c + ...` has height
    /// one more than its tallest exponent.
    pub fn height(&self) -> usize {
        self.terms
            .iter()
            .map(|t| {
                if t.exponent.is_zero() {
                    0
                } else {
                    1 + t.exponent.height()
                }
            })
            .max()
            .unwrap_or(0)
    }

    pub fn compare(&self, other: &Ordinal) -> Ordering {
        self.cmp(other)
    }

    /// Ordinary (non-commutative) ordinal sum.
    pub fn add(&self, other: &Ordinal) -> Ordinal {
        let Some(head) = other.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<Term> = Vec::with_capacity(self.terms.len() + other.terms.len());
        for t in &self.terms {
            match t.exponent.cmp(&head.exponent) {
                Ordering::Greater => terms.push(t.clone()),
                Ordering::Equal => {
                    terms.push(Term {
                        exponent: t.exponent.clone(),
                        coefficient: &t.coefficient + &head.coefficient,
                    });
                }
                Ordering::Less => break,
            }
        }
        let skip = match terms.last() {
            Some(last) if last.exponent == head.exponent => 1,
            _ => 0,
        };
        terms.extend(other.terms.iter().skip(skip).cloned());
        Ordinal { terms }
    }

    /// Ordinary product `self · n` for a natural `n`:
    /// `ω^β₀·(k₀·n) + σ` when `n ≥ 1`.
    pub fn mul_natural(&self, n: &BigUint) -> Ordinal {
        if n.is_zero() || self.is_zero() {
            return Ordinal::zero();
        }
        let mut terms = self.terms.clone();
        terms[0].coefficient = &terms[0].coefficient * n;
        Ordinal { terms }
    }

    /// Ordinary ordinal product, distributing `self` over the terms of
    /// `other` from the left.
    pub fn mul(&self, other: &Ordinal) -> Ordinal {
        if self.is_zero() || other.is_zero() {
            return Ordinal::zero();
        }
        let lead = &self.terms[0].exponent;
        let mut acc = Ordinal::zero();
        for t in &other.terms {
            let piece = if t.exponent.is_zero() {
                self.mul_natural(&t.coefficient)
            } else {
                Ordinal::monomial(lead.add(&t.exponent), t.coefficient.clone())
            };
            acc = acc.add(&piece);
        }
        acc
    }

    /// Natural (Hessenberg) sum: merge the normal forms like polynomials.
    pub fn nat_sum(&self, other: &Ordinal) -> Ordinal {
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match a.exponent.cmp(&b.exponent) {
                Ordering::Greater => {
                    terms.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    terms.push(b.clone());
                    j += 1;
                }
                Ordering::Equal => {
                    terms.push(Term {
                        exponent: a.exponent.clone(),
                        coefficient: &a.coefficient + &b.coefficient,
                    });
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend_from_slice(&self.terms[i..]);
        terms.extend_from_slice(&other.terms[j..]);
        Ordinal { terms }
    }

    /// Natural (Hessenberg) product: multiply the normal forms like
    /// polynomials, with `ω^x·m ⊗ ω^y·n = ω^(x⊕y)·mn`.
    pub fn nat_prod(&self, other: &Ordinal) -> Ordinal {
        let mut acc = Ordinal::zero();
        for a in &self.terms {
            for b in &other.terms {
                let t = Ordinal::monomial(
                    a.exponent.nat_sum(&b.exponent),
                    &a.coefficient * &b.coefficient,
                );
                acc = acc.nat_sum(&t);
            }
        }
        acc
    }

    /// Parses with the default nesting limit.
    pub fn parse(text: &str) -> Result<Ordinal, OrdinalError> {
        parse::parse(text, DEFAULT_MAX_HEIGHT)
    }

    pub fn parse_with_limit(text: &str, max_height: usize) -> Result<Ordinal, OrdinalError> {
        parse::parse(text, max_height)
    }

    /// Canonical text form, e.g. `w^2*3+w+4`.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Self {
        Ordinal::natural(n)
    }
}

impl From<usize> for Ordinal {
    fn from(n: usize) -> Self {
        Ordinal::natural(n as u64)
    }
}

impl From<BigUint> for Ordinal {
    fn from(n: BigUint) -> Self {
        Ordinal::natural(n)
    }
}

impl FromStr for Ordinal {
    type Err = OrdinalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ordinal::parse(s)
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            if t.exponent.is_zero() {
                write!(f, "{}", t.coefficient)?;
                continue;
            }
            f.write_str("w")?;
            if t.exponent != Ordinal::one() {
                if t.exponent.is_finite() || t.exponent == Ordinal::omega() {
                    write!(f, "^{}", t.exponent)?;
                } else {
                    write!(f, "^({})", t.exponent)?;
                }
            }
            if !t.coefficient.is_one() {
                write!(f, "*{}", t.coefficient)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ordinal({self})")
    }
}

impl Serialize for Ordinal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Ordinal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        Ordinal::parse(&text).map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $inner:ident) => {
        impl $trait<&Ordinal> for &Ordinal {
            type Output = Ordinal;
            fn $method(self, rhs: &Ordinal) -> Ordinal {
                Ordinal::$inner(self, rhs)
            }
        }

        impl $trait<Ordinal> for Ordinal {
            type Output = Ordinal;
            fn $method(self, rhs: Ordinal) -> Ordinal {
                Ordinal::$inner(&self, &rhs)
            }
        }

        impl $trait<&Ordinal> for Ordinal {
            type Output = Ordinal;
            fn $method(self, rhs: &Ordinal) -> Ordinal {
                Ordinal::$inner(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, add);
forward_binop!(Mul, mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> Ordinal {
        Ordinal::parse(s).unwrap()
    }

    #[test]
    fn compare_examples() {
        assert_eq!(o("0").compare(&o("0")), Ordering::Equal);
        assert_eq!(o("w").compare(&o("w+1")), Ordering::Less);
        assert_eq!(o("w^2+1").compare(&o("w*5+3")), Ordering::Greater);
        assert!(o("w^w") > o("w^9*100+w"));
        assert!(o("w*2") > o("w+100"));
    }

    #[test]
    fn add_examples() {
        assert_eq!(o("1") + o("w"), o("w"));
        assert_eq!(o("w") + o("1"), o("w+1"));
        assert_eq!(o("w^2*2+3") + o("w+1"), o("w^2*2+w+1"));
        assert_eq!(o("w*2+5") + o("w*3"), o("w*5"));
        assert_eq!(o("w+1") + Ordinal::zero(), o("w+1"));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(o("w+1") * o("2"), o("w*2+1"));
        assert_eq!(o("w^3+w") * Ordinal::zero(), Ordinal::zero());
        assert_eq!(Ordinal::zero() * o("w"), Ordinal::zero());
        assert_eq!(o("w") * o("w"), o("w^2"));
        assert_eq!(o("2") * o("w"), o("w"));
        assert_eq!(o("w+1") * o("w+1"), o("w^2+w+1"));
        assert_eq!(o("w^2*2+w") * o("w"), o("w^3"));
    }

    #[test]
    fn nat_sum_examples() {
        assert_eq!(o("w+1").nat_sum(&o("w")), o("w*2+1"));
        assert_eq!(o("w^3+7").nat_sum(&Ordinal::zero()), o("w^3+7"));
        assert_eq!(o("w^2+1").nat_sum(&o("w*3")), o("w^2+w*3+1"));
    }

    #[test]
    fn nat_prod_examples() {
        assert_eq!(o("w+1").nat_prod(&o("2")), o("w*2+2"));
        assert_eq!(o("w^w+3").nat_prod(&o("1")), o("w^w+3"));
        assert_eq!(o("w").nat_prod(&o("w")), o("w^2"));
        assert_eq!(o("w+1").nat_prod(&o("w+1")), o("w^2+w*2+1"));
        assert_eq!(o("w+1").nat_prod(&Ordinal::zero()), Ordinal::zero());
    }

    #[test]
    fn decomposition_accessors() {
        assert_eq!(o("w*2+3").split_delta_m(), (o("w*2"), BigUint::from(3u32)));
        assert_eq!(o("5").split_delta_m(), (Ordinal::zero(), BigUint::from(5u32)));
        assert_eq!(o("w^w").split_delta_m(), (o("w^w"), BigUint::zero()));

        let a = o("w^2*3+w+4");
        assert_eq!(a.leading_exponent().unwrap(), &o("2"));
        assert_eq!(a.tail_sigma(), o("w+4"));
        assert_eq!(a.trailing_exponent().unwrap(), &Ordinal::zero());
        assert_eq!(o("w^w").trailing_exponent().unwrap(), &o("w"));
    }

    #[test]
    fn exponent_accessors_reject_zero() {
        let z = Ordinal::zero();
        assert!(matches!(z.leading_exponent(), Err(OrdinalError::ZeroOrdinal(_))));
        assert!(matches!(z.trailing_exponent(), Err(OrdinalError::ZeroOrdinal(_))));
        assert_eq!(z.tail_sigma(), Ordinal::zero());
    }

    #[test]
    fn limit_and_successor() {
        assert!(o("w").is_limit());
        assert!(!o("w").is_successor());
        assert!(o("w+1").is_successor());
        assert!(!Ordinal::zero().is_limit());
        assert!(!Ordinal::zero().is_successor());
        assert_eq!(o("w^(w+1)*2").height(), 2);
        assert_eq!(o("17").height(), 0);
    }

    #[test]
    fn from_cnf_validates() {
        assert!(Ordinal::from_cnf([(Ordinal::one(), 1u32.into()), (Ordinal::one(), 1u32.into())]).is_err());
        assert!(Ordinal::from_cnf([(Ordinal::one(), 0u32.into())]).is_err());
        let a = Ordinal::from_cnf([(Ordinal::omega(), 2u32.into()), (Ordinal::zero(), 1u32.into())]).unwrap();
        assert_eq!(a, o("w^w*2+1"));
    }

    #[test]
    fn coefficients_are_unbounded() {
        let big = o("w*18446744073709551615");
        let doubled = big.nat_sum(&big);
        assert_eq!(doubled.render(), "w*36893488147419103230");
    }

    #[test]
    fn serde_uses_canonical_text() {
        let a = o("w^(w+1)*2+w+3");
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(json, "\"w^(w+1)*2+w+3\"");
        let back: Ordinal = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a);
    }
}
