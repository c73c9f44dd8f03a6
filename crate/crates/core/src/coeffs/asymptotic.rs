use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::numeric::ExtReal;

/// Finite sum of terms `c ln(n)^a / n^b`, `a, b >= 0`, truncated after
/// `1/n^{max_order}`.
#[derive(Clone, Debug, PartialEq)]
pub struct AsymptoticExpansion {
    /// Keyed by `(b, a)` so iteration runs through increasing inverse powers.
    terms: BTreeMap<(u32, u32), ExtReal>,
    max_order: u32,
}

impl AsymptoticExpansion {
    pub fn zero(max_order: u32) -> Self {
        AsymptoticExpansion {
            terms: BTreeMap::new(),
            max_order,
        }
    }

    pub fn constant(c: ExtReal, max_order: u32) -> Self {
        Self::monomial(c, 0, 0, max_order)
    }

    /// `c ln(n)^a / n^b`.
    pub fn monomial(c: ExtReal, a: u32, b: u32, max_order: u32) -> Self {
        let mut e = Self::zero(max_order);
        e.add_term(a, b, c);
        e
    }

    /// `ln n`.
    pub fn ln_n(max_order: u32) -> Self {
        Self::monomial(ExtReal::one(), 1, 0, max_order)
    }

    pub fn max_order(&self) -> u32 {
        self.max_order
    }

    pub fn add_term(&mut self, a: u32, b: u32, c: ExtReal) {
        if b > self.max_order {
            return;
        }
        match self.terms.get_mut(&(b, a)) {
            Some(v) => *v += c,
            None => {
                self.terms.insert((b, a), c);
            }
        }
    }

    pub fn coeff(&self, a: u32, b: u32) -> ExtReal {
        self.terms.get(&(b, a)).cloned().unwrap_or_else(ExtReal::zero)
    }

    /// `(a, b, c)` triples ordered by `b`, then `a`.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &ExtReal)> {
        self.terms.iter().map(|(&(b, a), c)| (a, b, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(ExtReal::is_zero)
    }

    /// Smallest `b` carrying a nonzero coefficient.
    pub fn lowest_order(&self) -> Option<u32> {
        self.terms
            .iter()
            .find(|(_, c)| !c.is_zero())
            .map(|(&(b, _), _)| b)
    }

    /// `(a, c)` pairs of the `1/n^b` block.
    pub fn block(&self, b: u32) -> Vec<(u32, ExtReal)> {
        self.terms
            .range((b, 0)..=(b, u32::MAX))
            .map(|(&(_, a), c)| (a, c.clone()))
            .collect()
    }

    pub fn scale(&self, k: &ExtReal) -> Self {
        AsymptoticExpansion {
            terms: self.terms.iter().map(|(&key, c)| (key, c * k)).collect(),
            max_order: self.max_order,
        }
    }

    /// Multiplies by `n^{-k}`; the result is known `k` orders further.
    pub fn shift(&self, k: u32) -> Self {
        let mut out = Self::zero(self.max_order + k);
        for (&(b, a), c) in &self.terms {
            out.add_term(a, b + k, c.clone());
        }
        out
    }

    pub fn truncate(&self, max_order: u32) -> Self {
        let mut out = Self::zero(max_order.min(self.max_order));
        for (&(b, a), c) in &self.terms {
            out.add_term(a, b, c.clone());
        }
        out
    }

    /// Drops coefficients of magnitude at most `tol`.
    pub fn prune(&self, tol: &ExtReal) -> Self {
        AsymptoticExpansion {
            terms: self
                .terms
                .iter()
                .filter(|(_, c)| c.abs() > *tol)
                .map(|(&k, c)| (k, c.clone()))
                .collect(),
            max_order: self.max_order,
        }
    }

    pub fn powi(&self, k: u32) -> Self {
        let mut acc = Self::constant(ExtReal::one(), self.max_order);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, n: &ExtReal) -> ExtReal {
        let ln = n.ln();
        let inv = n.recip();
        self.terms
            .iter()
            .map(|(&(b, a), c)| c * ln.powi(a as i32) * inv.powi(b as i32))
            .sum()
    }
}

impl Add for &AsymptoticExpansion {
    type Output = AsymptoticExpansion;
    fn add(self, rhs: &AsymptoticExpansion) -> AsymptoticExpansion {
        let mut out = self.truncate(rhs.max_order);
        for (&(b, a), c) in &rhs.terms {
            out.add_term(a, b, c.clone());
        }
        out
    }
}

impl Sub for &AsymptoticExpansion {
    type Output = AsymptoticExpansion;
    fn sub(self, rhs: &AsymptoticExpansion) -> AsymptoticExpansion {
        self + &(-rhs)
    }
}

impl Neg for &AsymptoticExpansion {
    type Output = AsymptoticExpansion;
    fn neg(self) -> AsymptoticExpansion {
        self.scale(&ExtReal::from_i64(-1))
    }
}

impl Mul for &AsymptoticExpansion {
    type Output = AsymptoticExpansion;
    fn mul(self, rhs: &AsymptoticExpansion) -> AsymptoticExpansion {
        let order = self.max_order.min(rhs.max_order);
        let mut out = AsymptoticExpansion::zero(order);
        for (&(ba, aa), ca) in &self.terms {
            for (&(bb, ab), cb) in &rhs.terms {
                if ba + bb <= order {
                    out.add_term(aa + ab, ba + bb, ca * cb);
                }
            }
        }
        out
    }
}
