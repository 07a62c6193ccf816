//! Ordinals below w^w as coefficient vectors, index = exponent. Shares no
//! code with the library arithmetic.

#![allow(dead_code)]

use num_bigint::BigUint;
use otype::Ordinal;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly(pub Vec<u64>);

impl Poly {
    pub fn new(mut c: Vec<u64>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        Poly(c)
    }

    pub fn nat(n: u64) -> Self {
        Poly::new(vec![n])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn lead(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn trail(&self) -> Option<usize> {
        self.0.iter().position(|&c| c != 0)
    }

    pub fn add(&self, b: &Poly) -> Poly {
        let Some(e) = b.lead() else { return self.clone() };
        let mut c = b.0.clone();
        if self.0.len() > e {
            c[e] += self.0[e];
            c.extend_from_slice(&self.0[e + 1..]);
        }
        Poly::new(c)
    }

    pub fn nat_sum(&self, b: &Poly) -> Poly {
        let mut c = vec![0; self.0.len().max(b.0.len())];
        for (i, x) in self.0.iter().enumerate() {
            c[i] += x;
        }
        for (i, x) in b.0.iter().enumerate() {
            c[i] += x;
        }
        Poly::new(c)
    }

    pub fn nat_prod(&self, b: &Poly) -> Poly {
        if self.is_zero() || b.is_zero() {
            return Poly(vec![]);
        }
        let mut c = vec![0; self.0.len() + b.0.len() - 1];
        for (i, x) in self.0.iter().enumerate() {
            for (j, y) in b.0.iter().enumerate() {
                c[i + j] += x * y;
            }
        }
        Poly::new(c)
    }

    /// Ordinary product: distribute over the terms of `b`, highest first.
    pub fn mul(&self, b: &Poly) -> Poly {
        let Some(a0) = self.lead() else { return Poly(vec![]) };
        let mut out = Poly(vec![]);
        for e in (0..b.0.len()).rev() {
            let n = b.0[e];
            if n == 0 {
                continue;
            }
            let part = if e == 0 {
                let mut c = self.0.clone();
                c[a0] *= n;
                Poly::new(c)
            } else {
                let mut c = vec![0; a0 + e + 1];
                c[a0 + e] = n;
                Poly::new(c)
            };
            out = out.add(&part);
        }
        out
    }

    pub fn lt(&self, b: &Poly) -> bool {
        if self.0.len() != b.0.len() {
            return self.0.len() < b.0.len();
        }
        for i in (0..self.0.len()).rev() {
            if self.0[i] != b.0[i] {
                return self.0[i] < b.0[i];
            }
        }
        false
    }

    pub fn to_ordinal(&self) -> Ordinal {
        let cnf = (0..self.0.len())
            .rev()
            .filter(|&e| self.0[e] != 0)
            .map(|e| (Ordinal::from(e as u64), BigUint::from(self.0[e])));
        Ordinal::from_cnf(cnf).expect("decreasing exponents")
    }

    pub fn from_ordinal(a: &Ordinal) -> Option<Poly> {
        let mut c = Vec::new();
        for t in a.terms() {
            let e = t.exponent().to_u64()? as usize;
            let n: u64 = t.coefficient().try_into().ok()?;
            if c.len() <= e {
                c.resize(e + 1, 0);
            }
            c[e] = n;
        }
        Some(Poly::new(c))
    }
}

/// `o_p·(delta + (m - k)) + o_p ⊗ k` with delta given as a limit polynomial.
pub fn product_formula(o_p: &Poly, delta: &Poly, m: u64, k: u64) -> Poly {
    let index = delta.add(&Poly::nat(m - k));
    o_p.mul(&index).add(&o_p.nat_prod(&Poly::nat(k)))
}

pub fn trail_ge_lead(a: &Poly, b: &Poly) -> bool {
    match (a.trail(), b.lead()) {
        (Some(t), Some(l)) => t >= l,
        _ => false,
    }
}

/// SplitMix64, for drawing oracle inputs independently of the library's
/// generators.
pub struct Mix(pub u64);

impl Mix {
    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }

    /// Up to `len` exponents, coefficients in `0..=max`.
    pub fn poly(&mut self, len: usize, max: u64) -> Poly {
        let n = self.below(len as u64 + 1) as usize;
        Poly::new((0..n).map(|_| self.below(max + 1)).collect())
    }
}
