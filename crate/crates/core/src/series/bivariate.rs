use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use super::PowerSeries;
use crate::error::{Error, Result};
use crate::numeric::ExtReal;

/// Laurent series in `eps` (pole order at most one) whose coefficients are
/// polynomials in a symbol `L`.
///
/// Terms are keyed by `(eps degree, L degree)`. Every degree up to
/// `eps_order` is known; higher ones are truncated away.
#[derive(Clone, Debug, PartialEq)]
pub struct BivariatePoly {
    terms: BTreeMap<(i32, u32), ExtReal>,
    eps_order: i32,
}

/// Lowest `eps` degree a [`BivariatePoly`] may carry.
pub const MIN_EPS_DEGREE: i32 = -1;

impl BivariatePoly {
    pub fn zero(eps_order: i32) -> Self {
        BivariatePoly {
            terms: BTreeMap::new(),
            eps_order,
        }
    }

    pub fn constant(c: ExtReal, eps_order: i32) -> Self {
        Self::monomial(c, 0, 0, eps_order)
    }

    /// `c eps^i L^j`.
    pub fn monomial(c: ExtReal, i: i32, j: u32, eps_order: i32) -> Self {
        let mut p = Self::zero(eps_order);
        p.add_term(i, j, c);
        p
    }

    /// Power series in `eps` with no `L` dependence.
    pub fn from_eps_series(s: &PowerSeries, eps_order: i32) -> Self {
        let mut p = Self::zero(eps_order.min(s.order() as i32));
        for (i, c) in s.coeffs().iter().enumerate() {
            if !c.is_zero() {
                p.add_term(i as i32, 0, c.clone());
            }
        }
        p
    }

    pub fn eps_order(&self) -> i32 {
        self.eps_order
    }

    /// Adds `c eps^i L^j` in place; terms beyond the truncation are dropped.
    ///
    /// # Panics
    /// If `i` is below [`MIN_EPS_DEGREE`].
    pub fn add_term(&mut self, i: i32, j: u32, c: ExtReal) {
        assert!(i >= MIN_EPS_DEGREE, "eps degree {i} below the allowed pole order");
        if i > self.eps_order {
            return;
        }
        match self.terms.get_mut(&(i, j)) {
            Some(v) => *v += c,
            None => {
                self.terms.insert((i, j), c);
            }
        }
    }

    pub fn coeff(&self, i: i32, j: u32) -> ExtReal {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(ExtReal::zero)
    }

    pub fn get(&self, i: i32, j: u32) -> Option<&ExtReal> {
        self.terms.get(&(i, j))
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, u32, &ExtReal)> {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn min_eps_degree(&self) -> Option<i32> {
        self.terms.keys().map(|&(i, _)| i).min()
    }

    /// Highest `L` degree among the stored terms at `eps^i`.
    pub fn l_degree_at(&self, i: i32) -> Option<u32> {
        self.terms
            .range((i, 0)..=(i, u32::MAX))
            .map(|(&(_, j), _)| j)
            .max()
    }

    pub fn scale(&self, k: &ExtReal) -> Self {
        BivariatePoly {
            terms: self.terms.iter().map(|(&key, c)| (key, c * k)).collect(),
            eps_order: self.eps_order,
        }
    }

    /// Multiplies by `eps^k`.
    pub fn shift_eps(&self, k: i32) -> Self {
        let mut out = Self::zero(self.eps_order + k);
        for (&(i, j), c) in &self.terms {
            out.add_term(i + k, j, c.clone());
        }
        out
    }

    pub fn truncate(&self, eps_order: i32) -> Self {
        let mut out = Self::zero(eps_order.min(self.eps_order));
        for (&(i, j), c) in &self.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }

    pub fn powi(&self, k: u32) -> Self {
        let mut acc = Self::constant(ExtReal::one(), self.eps_order);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, eps: &ExtReal, l: &ExtReal) -> ExtReal {
        self.terms
            .iter()
            .map(|(&(i, j), c)| c * eps.powi(i) * l.powi(j as i32))
            .sum()
    }

    /// Collects the `L`-polynomial at each `eps` degree.
    fn by_eps_degree(&self) -> BTreeMap<i32, BTreeMap<u32, ExtReal>> {
        let mut out: BTreeMap<i32, BTreeMap<u32, ExtReal>> = BTreeMap::new();
        for (&(i, j), c) in &self.terms {
            out.entry(i).or_default().insert(j, c.clone());
        }
        out
    }

    /// Inverse of `a = eps * u` where `u` has an invertible pure-number
    /// leading coefficient.
    ///
    /// `u^{-1}` is built coefficient by coefficient in `eps` with `L` kept
    /// as an opaque symbol: `r_0 = 1/u_0`, `r_n = -(1/u_0) sum_{k=1}^{n}
    /// u_k r_{n-k}`. If every `L^j` in `u` appears no earlier than
    /// `eps^{ceil(j/s)}`, then `r_n` has `L` degree at most `floor(s n)`;
    /// this is checked for every coefficient. The result is `eps^{-1}
    /// u^{-1}`, known through `eps^{eps_order(a) - 2}`.
    pub fn recip_graded(&self) -> Result<Self> {
        if let Some(min) = self.min_eps_degree() {
            if min < 1 {
                return Err(Error::NotInvertible(format!(
                    "expected a multiple of eps, found an eps^{min} term"
                )));
            }
        }
        let u = self.shift_eps(-1);
        let order = u.eps_order;
        let blocks = u.by_eps_degree();
        let u0 = match blocks.get(&0) {
            Some(b) if b.len() == 1 && b.contains_key(&0) && !b[&0].is_zero() => b[&0].clone(),
            Some(b) if b.keys().any(|&j| j > 0) => {
                return Err(Error::NotInvertible(
                    "leading eps coefficient depends on L".into(),
                ))
            }
            _ => {
                return Err(Error::NotInvertible(
                    "leading eps coefficient vanishes; raise the expansion order".into(),
                ))
            }
        };
        // slope s = max j / i over the L-carrying terms, kept as a fraction
        let (mut s_num, mut s_den) = (0u32, 1u32);
        for &(i, j) in u.terms.keys() {
            if i > 0 && u64::from(j) * u64::from(s_den) > u64::from(s_num) * i as u64 {
                s_num = j;
                s_den = i as u32;
            }
        }
        let inv0 = u0.recip();
        let empty = BTreeMap::new();
        let mut r: Vec<BTreeMap<u32, ExtReal>> = Vec::with_capacity(order.max(0) as usize + 1);
        r.push(BTreeMap::from([(0u32, inv0.clone())]));
        for n in 1..=order {
            let mut acc: BTreeMap<u32, ExtReal> = BTreeMap::new();
            for k in 1..=n {
                let uk = blocks.get(&k).unwrap_or(&empty);
                for (&ja, ca) in uk {
                    for (&jb, cb) in &r[(n - k) as usize] {
                        let v = ca * cb;
                        match acc.get_mut(&(ja + jb)) {
                            Some(slot) => *slot += v,
                            None => {
                                acc.insert(ja + jb, v);
                            }
                        }
                    }
                }
            }
            let bound = (u64::from(s_num) * n as u64 / u64::from(s_den)) as u32;
            if let Some(&j) = acc.keys().next_back() {
                if j > bound {
                    return Err(Error::GradingViolation { i: n, j, bound });
                }
            }
            for v in acc.values_mut() {
                *v = -(&*v * &inv0);
            }
            r.push(acc);
        }
        let mut out = Self::zero(order - 1);
        for (n, block) in r.into_iter().enumerate() {
            for (j, c) in block {
                out.add_term(n as i32 - 1, j, c);
            }
        }
        Ok(out)
    }
}

impl Add for &BivariatePoly {
    type Output = BivariatePoly;
    fn add(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = self.truncate(self.eps_order.min(rhs.eps_order));
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Sub for &BivariatePoly {
    type Output = BivariatePoly;
    fn sub(self, rhs: &BivariatePoly) -> BivariatePoly {
        self + &(-rhs)
    }
}

impl Neg for &BivariatePoly {
    type Output = BivariatePoly;
    fn neg(self) -> BivariatePoly {
        self.scale(&ExtReal::from_i64(-1))
    }
}

impl Mul for &BivariatePoly {
    type Output = BivariatePoly;
    /// Cauchy product. The result is known through
    /// `min(order_a + lowdeg_b, order_b + lowdeg_a)`.
    fn mul(self, rhs: &BivariatePoly) -> BivariatePoly {
        let low_a = self.min_eps_degree().unwrap_or(0);
        let low_b = rhs.min_eps_degree().unwrap_or(0);
        let order = (self.eps_order + low_b).min(rhs.eps_order + low_a);
        let mut out = BivariatePoly::zero(order);
        for (&(ia, ja), ca) in &self.terms {
            for (&(ib, jb), cb) in &rhs.terms {
                if ia + ib <= order {
                    out.add_term(ia + ib, ja + jb, ca * cb);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn l_sym(order: i32) -> BivariatePoly {
        BivariatePoly::monomial(ExtReal::one(), 0, 1, order)
    }

    fn eps(order: i32) -> BivariatePoly {
        BivariatePoly::monomial(ExtReal::one(), 1, 0, order)
    }

    fn all_close(a: &BivariatePoly, b: &BivariatePoly, k: i32) -> bool {
        let diff = a - b;
        let ok = diff.terms().all(|(_, _, c)| c.abs() <= ExtReal::tol_rel(k));
        ok
    }

    #[test]
    fn square_of_log_binomial() {
        // (-L + eps/2)^2 = L^2 - L eps + eps^2/4
        let x = &(-&l_sym(4)) + &eps(4).scale(&ExtReal::ratio(1, 2));
        let sq = &x * &x;
        assert_eq!(sq.coeff(0, 2), ExtReal::one());
        assert_eq!(sq.coeff(1, 1), ExtReal::from_i64(-1));
        assert_eq!(sq.coeff(2, 0), ExtReal::ratio(1, 4));
        assert_eq!(sq.terms().count(), 3);
    }

    #[test]
    fn laurent_cancellation() {
        let inv = BivariatePoly::monomial(ExtReal::one(), -1, 0, 4);
        let p = &inv * &eps(4);
        assert_eq!(p.coeff(0, 0), ExtReal::one());
        assert_eq!(p.terms().count(), 1);
    }

    #[test]
    #[should_panic]
    fn double_pole_is_rejected() {
        let inv = BivariatePoly::monomial(ExtReal::one(), -1, 0, 4);
        let _ = &inv * &inv;
    }

    #[test]
    fn recip_of_geometric() {
        // a = eps (1 - eps) -> eps^{-1} (1 + eps + eps^2 + ...)
        let a = &eps(8) - &eps(8).powi(2);
        let r = a.recip_graded().unwrap();
        assert_eq!(r.eps_order(), 6);
        for i in -1..=6 {
            assert_eq!(r.coeff(i, 0), ExtReal::one(), "eps^{i}");
        }
    }

    #[test]
    fn recip_rejects_non_multiple_of_eps() {
        let a = &BivariatePoly::constant(ExtReal::one(), 4) + &eps(4);
        assert!(matches!(a.recip_graded(), Err(Error::NotInvertible(_))));
        let a = &eps(4) * &l_sym(4);
        assert!(matches!(a.recip_graded(), Err(Error::NotInvertible(_))));
        let a = eps(4).powi(2);
        assert!(matches!(a.recip_graded(), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn recip_with_log_terms_is_exact_inverse() {
        // a = eps (2 + eps (3 L + 1) + eps^2 (L^2 - 5))
        let mut a = BivariatePoly::zero(7);
        a.add_term(1, 0, ExtReal::from_i64(2));
        a.add_term(2, 1, ExtReal::from_i64(3));
        a.add_term(2, 0, ExtReal::one());
        a.add_term(3, 2, ExtReal::one());
        a.add_term(3, 0, ExtReal::from_i64(-5));
        let r = a.recip_graded().unwrap();
        let prod = &a * &r;
        assert_eq!(prod.eps_order(), 6);
        assert!(all_close(&prod, &BivariatePoly::constant(ExtReal::one(), 6), 2));
        // slope 1: degree of L at eps^i in the result is at most i + 1
        for i in -1..=5 {
            if let Some(j) = r.l_degree_at(i) {
                assert!(j as i32 <= i + 1);
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn graded_recip_inverts(coeffs in prop::collection::vec((-9i64..9, 0u32..3), 1..10), lead in 1i64..9) {
            let order = 7;
            let mut a = BivariatePoly::zero(order);
            a.add_term(1, 0, ExtReal::from_i64(lead));
            for (n, (c, j)) in coeffs.into_iter().enumerate() {
                let i = 2 + (n as i32 % 5);
                // keep L degree <= i - 1 so the slope stays finite
                a.add_term(i, j.min(i as u32 - 1), ExtReal::ratio(c, 5));
            }
            let r = a.recip_graded().unwrap();
            let prod = &a * &r;
            let scale = r.terms().map(|(_, _, c)| c.abs()).fold(ExtReal::one(), ExtReal::max);
            let diff = &prod - &BivariatePoly::constant(ExtReal::one(), prod.eps_order());
            for (_, _, c) in diff.terms() {
                prop_assert!(c.abs() <= ExtReal::tol_rel(4) * &scale);
            }
        }
    }
}
