use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::numeric::ExtReal;

/// Truncated power series `c_0 + c_1 z + ... + c_N z^N`.
///
/// Binary operations on series of different orders return the smaller
/// order.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeries {
    coeffs: Vec<ExtReal>,
}

impl PowerSeries {
    /// Builds a series of the given order, padding or truncating `coeffs`.
    pub fn new(mut coeffs: Vec<ExtReal>, order: usize) -> Self {
        coeffs.resize(order + 1, ExtReal::zero());
        PowerSeries { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> ExtReal) -> Self {
        PowerSeries {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(ExtReal::one(), order)
    }

    pub fn constant(c: ExtReal, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    /// The series `z`.
    pub fn variable(order: usize) -> Self {
        Self::new(vec![ExtReal::zero(), ExtReal::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &ExtReal {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[ExtReal] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<ExtReal> {
        self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs[..=order.min(self.order())].to_vec(), order.min(self.order()))
    }

    pub fn scale(&self, k: &ExtReal) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Divides by `z^k`; the first `k` coefficients must vanish. The order
    /// drops by `k`.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if k > self.order() || self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return Err(Error::Domain(format!("series is not divisible by z^{k}")));
        }
        Ok(PowerSeries {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    /// Multiplicative inverse by the division recurrence
    /// `b_n = -(1/a_0) sum_{k=1}^{n} a_k b_{n-k}`.
    pub fn recip(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::NotInvertible("constant term is zero".into()));
        }
        let inv0 = a0.recip();
        let mut out: Vec<ExtReal> = Vec::with_capacity(self.coeffs.len());
        out.push(inv0.clone());
        for n in 1..self.coeffs.len() {
            let acc: ExtReal = (1..=n).map(|k| &self.coeffs[k] * &out[n - k]).sum();
            out.push(-(acc * &inv0));
        }
        Ok(PowerSeries { coeffs: out })
    }

    /// Formal `ln(1 + a)` for `a` with zero constant term, via
    /// `∫ a' / (1 + a)`.
    pub fn log1p(&self) -> Result<Self> {
        self.require_zero_constant("log1p")?;
        let order = self.order();
        let one_plus = {
            let mut c = self.coeffs.clone();
            c[0] = ExtReal::one();
            PowerSeries { coeffs: c }
        };
        let inv = one_plus.recip()?;
        let deriv = self.derivative();
        let quotient = &deriv * &inv.truncate(order.saturating_sub(1));
        Ok(quotient.integral(order))
    }

    /// Formal `exp(a)` for `a` with zero constant term, from `e' = a' e`.
    pub fn exp(&self) -> Result<Self> {
        self.require_zero_constant("exp")?;
        let mut out: Vec<ExtReal> = Vec::with_capacity(self.coeffs.len());
        out.push(ExtReal::one());
        for n in 1..self.coeffs.len() {
            let acc: ExtReal = (1..=n)
                .map(|k| &self.coeffs[k] * &out[n - k] * (k as i64))
                .sum();
            out.push(acc / (n as i64));
        }
        Ok(PowerSeries { coeffs: out })
    }

    pub fn powi(&self, k: u32) -> Self {
        let mut acc = PowerSeries::one(self.order());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Derivative; the order drops by one (stays 0 for constants).
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return PowerSeries::zero(0);
        }
        PowerSeries {
            coeffs: (1..self.coeffs.len())
                .map(|k| &self.coeffs[k] * (k as i64))
                .collect(),
        }
    }

    /// Antiderivative with zero constant, truncated at `order`.
    fn integral(&self, order: usize) -> Self {
        let mut coeffs = vec![ExtReal::zero()];
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c / (k as i64 + 1)),
        );
        Self::new(coeffs, order)
    }

    pub fn eval(&self, z: &ExtReal) -> ExtReal {
        self.coeffs
            .iter()
            .rev()
            .fold(ExtReal::zero(), |acc, c| acc * z + c)
    }

    fn require_zero_constant(&self, op: &str) -> Result<()> {
        if self.coeffs[0].is_zero() {
            Ok(())
        } else {
            Err(Error::Domain(format!("{op} needs a zero constant term")))
        }
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order().min(rhs.order());
        PowerSeries::from_fn(order, |k| &self.coeffs[k] + &rhs.coeffs[k])
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;
    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order().min(rhs.order());
        PowerSeries::from_fn(order, |k| &self.coeffs[k] - &rhs.coeffs[k])
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;
    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order().min(rhs.order());
        PowerSeries::from_fn(order, |n| {
            (0..=n).map(|k| &self.coeffs[k] * &rhs.coeffs[n - k]).sum()
        })
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;
    fn neg(self) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64], order: usize) -> PowerSeries {
        PowerSeries::new(v.iter().map(|&x| ExtReal::from_i64(x)).collect(), order)
    }

    fn max_dev(a: &PowerSeries, b: &PowerSeries) -> ExtReal {
        a.coeffs()
            .iter()
            .zip(b.coeffs())
            .map(|(x, y)| (x - y).abs())
            .fold(ExtReal::zero(), ExtReal::max)
    }

    /// -ln(1 - eps) = eps + eps^2/2 + eps^3/3 + ...
    fn w_series(order: usize) -> PowerSeries {
        PowerSeries::from_fn(order, |k| {
            if k == 0 {
                ExtReal::zero()
            } else {
                ExtReal::ratio(1, k as i64)
            }
        })
    }

    #[test]
    fn difference_of_squares() {
        let p = &ints(&[1, 1], 4) * &ints(&[1, -1], 4);
        assert_eq!(p, ints(&[1, 0, -1], 4));
    }

    #[test]
    fn exp_times_exp_of_negative() {
        let e = PowerSeries::variable(6).exp().unwrap();
        let e_neg = (-&PowerSeries::variable(6)).exp().unwrap();
        assert!(max_dev(&(&e * &e_neg), &PowerSeries::one(6)) < ExtReal::tol_rel(0));
    }

    #[test]
    fn w_squared() {
        let w = w_series(6);
        let sq = &w * &w;
        let expect = [
            ExtReal::zero(),
            ExtReal::zero(),
            ExtReal::one(),
            ExtReal::one(),
            ExtReal::ratio(11, 12),
        ];
        for (k, e) in expect.iter().enumerate() {
            assert!((sq.coeff(k) - e).abs() < ExtReal::tol_rel(0), "coefficient {k}");
        }
    }

    #[test]
    fn geometric_reciprocals() {
        let r = ints(&[1, -1], 8).recip().unwrap();
        assert_eq!(r, ints(&[1; 9], 8));
        let r = ints(&[1, 1], 8).recip().unwrap();
        assert_eq!(r, ints(&[1, -1, 1, -1, 1, -1, 1, -1, 1], 8));
    }

    #[test]
    fn fibonacci_from_reciprocal() {
        let r = ints(&[1, -1, -1], 30).recip().unwrap();
        let (mut a, mut b) = (1i64, 1i64);
        for k in 0..=30 {
            assert_eq!(*r.coeff(k), ExtReal::from_i64(a), "F_{k}");
            (a, b) = (b, a + b);
        }
    }

    #[test]
    fn non_invertible_series() {
        assert!(matches!(
            ints(&[0, 1], 4).recip(),
            Err(Error::NotInvertible(_))
        ));
        assert!(ints(&[1, 1], 4).log1p().is_err());
        assert!(ints(&[2], 4).exp().is_err());
    }

    #[test]
    fn mercator_series() {
        let l = PowerSeries::variable(10).log1p().unwrap();
        for k in 1..=10i64 {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            assert!((l.coeff(k as usize) - ExtReal::ratio(sign, k)).abs() < ExtReal::tol_rel(0));
        }
    }

    #[test]
    fn log_of_w_over_eps() {
        // ln(w/eps) = eps/2 + 5 eps^2/24 + eps^3/8 + ...
        let ratio = w_series(8).shift_down(1).unwrap();
        let mut minus_one = ratio.clone();
        minus_one = &minus_one - &PowerSeries::one(minus_one.order());
        let l = minus_one.log1p().unwrap();
        let expect = [ExtReal::zero(), ExtReal::ratio(1, 2), ExtReal::ratio(5, 24), ExtReal::ratio(1, 8)];
        for (k, e) in expect.iter().enumerate() {
            assert!((l.coeff(k) - e).abs() < ExtReal::tol_rel(0), "coefficient {k}");
        }
    }

    fn small_series() -> impl Strategy<Value = PowerSeries> {
        prop::collection::vec(-50i64..50, 1..8).prop_map(|v| {
            PowerSeries::from_fn(12, |k| {
                v.get(k)
                    .map(|&x| ExtReal::ratio(x, 17))
                    .unwrap_or_else(ExtReal::zero)
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn recip_is_two_sided_inverse(a in small_series(), c0 in 1i64..20) {
            let mut coeffs = a.into_coeffs();
            coeffs[0] = ExtReal::ratio(c0, 3);
            let a = PowerSeries::new(coeffs, 12);
            let r = a.recip().unwrap();
            let scale = a.coeffs().iter().chain(r.coeffs()).map(ExtReal::abs).fold(ExtReal::one(), ExtReal::max);
            prop_assert!(max_dev(&(&a * &r), &PowerSeries::one(12)) <= ExtReal::tol_rel(4) * scale.square());
        }

        #[test]
        fn exp_and_log1p_are_inverse(a in small_series()) {
            let mut coeffs = a.into_coeffs();
            coeffs[0] = ExtReal::zero();
            let a = PowerSeries::new(coeffs, 12);
            let round = a.log1p().unwrap().exp().unwrap();
            let expect = &a + &PowerSeries::one(12);
            let scale = round.coeffs().iter().map(ExtReal::abs).fold(ExtReal::one(), ExtReal::max);
            prop_assert!(max_dev(&round, &expect) <= ExtReal::tol_rel(4) * &scale);
            let e = a.exp().unwrap();
            let back = (&e - &PowerSeries::one(12)).log1p().unwrap();
            let scale = e.coeffs().iter().map(ExtReal::abs).fold(ExtReal::one(), ExtReal::max);
            prop_assert!(max_dev(&back, &a) <= ExtReal::tol_rel(4) * scale);
        }
    }
}
