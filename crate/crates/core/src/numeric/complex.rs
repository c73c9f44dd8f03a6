use std::ops::{Add, Mul, Neg, Sub};

use super::ExtReal;

/// Minimal complex number: the field operations plus integer powers.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexPair {
    pub re: ExtReal,
    pub im: ExtReal,
}

impl ComplexPair {
    pub fn new(re: ExtReal, im: ExtReal) -> Self {
        ComplexPair { re, im }
    }

    pub fn real(re: ExtReal) -> Self {
        ComplexPair {
            re,
            im: ExtReal::zero(),
        }
    }

    pub fn i() -> Self {
        ComplexPair::new(ExtReal::zero(), ExtReal::one())
    }

    pub fn zero() -> Self {
        ComplexPair::real(ExtReal::zero())
    }

    pub fn one() -> Self {
        ComplexPair::real(ExtReal::one())
    }

    /// Principal logarithm of the negative real `-x`, `x > 0`: `ln x + iπ`.
    pub fn ln_of_negative(x: &ExtReal) -> Self {
        assert!(!x.is_negative() && !x.is_zero(), "expects x > 0");
        ComplexPair::new(x.ln(), ExtReal::pi())
    }

    pub fn scale(&self, k: &ExtReal) -> Self {
        ComplexPair::new(&self.re * k, &self.im * k)
    }

    pub fn conj(&self) -> Self {
        ComplexPair::new(self.re.clone(), -&self.im)
    }

    pub fn norm_sqr(&self) -> ExtReal {
        self.re.square() + self.im.square()
    }

    pub fn div(&self, rhs: &ComplexPair) -> Self {
        let den = rhs.norm_sqr();
        assert!(!den.is_zero(), "division by complex zero");
        let num = self * &rhs.conj();
        ComplexPair::new(num.re / &den, num.im / &den)
    }

    pub fn powi(&self, k: u32) -> Self {
        let mut acc = ComplexPair::one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Largest componentwise deviation from `other`.
    pub fn max_abs_diff(&self, other: &ComplexPair) -> ExtReal {
        (&self.re - &other.re)
            .abs()
            .max((&self.im - &other.im).abs())
    }
}

impl Add for &ComplexPair {
    type Output = ComplexPair;
    fn add(self, rhs: &ComplexPair) -> ComplexPair {
        ComplexPair::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &ComplexPair {
    type Output = ComplexPair;
    fn sub(self, rhs: &ComplexPair) -> ComplexPair {
        ComplexPair::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &ComplexPair {
    type Output = ComplexPair;
    fn mul(self, rhs: &ComplexPair) -> ComplexPair {
        ComplexPair::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &ComplexPair {
    type Output = ComplexPair;
    fn neg(self) -> ComplexPair {
        ComplexPair::new(-&self.re, -&self.im)
    }
}
