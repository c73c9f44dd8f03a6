use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Assign, Float, Integer, Rational};

use super::precision;
use crate::error::{Error, Result};

/// Real number carried at the process-wide working precision.
///
/// Thin wrapper over an MPFR float; every constructor rounds to
/// [`precision::bits`], so values from different modules always mix at the
/// same precision.
#[derive(Clone, PartialEq, PartialOrd)]
pub struct ExtReal(Float);

fn wrap<T>(value: T) -> ExtReal
where
    Float: Assign<T>,
{
    ExtReal(Float::with_val(precision::bits(), value))
}

impl ExtReal {
    pub fn zero() -> Self {
        wrap(0)
    }

    pub fn one() -> Self {
        wrap(1)
    }

    pub fn from_i64(v: i64) -> Self {
        wrap(v)
    }

    pub fn from_u64(v: u64) -> Self {
        wrap(v)
    }

    /// `num / den`, correctly rounded.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        wrap(Rational::from((num, den)))
    }

    pub fn from_rational(r: &Rational) -> Self {
        wrap(r)
    }

    pub fn from_integer(i: &Integer) -> Self {
        wrap(i)
    }

    /// Only for tolerances and plotting; the value is exact in binary but
    /// carries the f64's decimal noise.
    pub fn from_f64(v: f64) -> Self {
        wrap(v)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        Float::parse(trimmed)
            .map(wrap)
            .map_err(|_| Error::Parse(text.to_string()))
    }

    pub fn pi() -> Self {
        wrap(Constant::Pi)
    }

    pub fn ln2() -> Self {
        wrap(Constant::Log2)
    }

    /// `10^k`.
    pub fn pow10(k: i32) -> Self {
        ExtReal::from_i64(10).powi(k)
    }

    /// `10^(k - P)`: the tolerance idiom used throughout, e.g. `tol_rel(8)`
    /// is `10^{8-P}`.
    pub fn tol_rel(k: i32) -> Self {
        Self::pow10(k - precision::digits() as i32)
    }

    pub fn as_float(&self) -> &Float {
        &self.0
    }

    pub fn into_float(self) -> Float {
        self.0
    }

    pub fn from_float(f: Float) -> Self {
        wrap(f)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_sign_negative() && !self.0.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.0.is_finite()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    pub fn abs(&self) -> Self {
        ExtReal(self.0.clone().abs())
    }

    pub fn recip(&self) -> Self {
        ExtReal(self.0.clone().recip())
    }

    pub fn square(&self) -> Self {
        ExtReal(self.0.clone().square())
    }

    pub fn sqrt(&self) -> Self {
        ExtReal(self.0.clone().sqrt())
    }

    pub fn exp(&self) -> Self {
        ExtReal(self.0.clone().exp())
    }

    pub fn exp_m1(&self) -> Self {
        ExtReal(self.0.clone().exp_m1())
    }

    pub fn ln(&self) -> Self {
        ExtReal(self.0.clone().ln())
    }

    /// `ln(1 + x)` without cancellation for small `x`.
    pub fn ln_1p(&self) -> Self {
        ExtReal(self.0.clone().ln_1p())
    }

    pub fn sinh(&self) -> Self {
        ExtReal(self.0.clone().sinh())
    }

    pub fn cosh(&self) -> Self {
        ExtReal(self.0.clone().cosh())
    }

    pub fn asinh(&self) -> Self {
        ExtReal(self.0.clone().asinh())
    }

    pub fn powi(&self, k: i32) -> Self {
        ExtReal(self.0.clone().pow(k))
    }

    pub fn pow(&self, e: &ExtReal) -> Self {
        ExtReal(self.0.clone().pow(&e.0))
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    /// Total order for sorting; NaN never occurs in this crate.
    pub fn total_cmp(&self, other: &Self) -> Ordering {
        self.partial_cmp(other).unwrap_or(Ordering::Equal)
    }

    /// Decimal text with the working number of significant digits.
    pub fn to_decimal(&self) -> String {
        self.to_decimal_digits(precision::digits() as usize)
    }

    /// Decimal text with `digits` significant digits. Positional notation
    /// for moderate magnitudes, `d.ddde±x` otherwise.
    pub fn to_decimal_digits(&self, digits: usize) -> String {
        if self.0.is_zero() {
            return "0".to_string();
        }
        if !self.0.is_finite() {
            return self.0.to_string();
        }
        let (negative, mantissa, exp) = self.0.to_sign_string_exp(10, Some(digits));
        let exp = exp.unwrap_or(0);
        let sign = if negative { "-" } else { "" };
        if !(-9..=30).contains(&exp) {
            let (head, tail) = mantissa.split_at(1);
            format!("{sign}{head}.{tail}e{}", exp - 1)
        } else if exp <= 0 {
            format!("{sign}0.{}{mantissa}", "0".repeat((-exp) as usize))
        } else {
            let exp = exp as usize;
            if exp >= mantissa.len() {
                format!("{sign}{mantissa}{}", "0".repeat(exp - mantissa.len()))
            } else {
                let (int, frac) = mantissa.split_at(exp);
                format!("{sign}{int}.{frac}")
            }
        }
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match f.precision() {
            Some(d) => f.write_str(&self.to_decimal_digits(d.max(1))),
            None => f.write_str(&self.to_decimal()),
        }
    }
}

impl fmt::Debug for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExtReal({})", self.to_decimal_digits(25))
    }
}

impl From<i64> for ExtReal {
    fn from(v: i64) -> Self {
        ExtReal::from_i64(v)
    }
}

impl From<i32> for ExtReal {
    fn from(v: i32) -> Self {
        ExtReal::from_i64(v.into())
    }
}

impl From<u32> for ExtReal {
    fn from(v: u32) -> Self {
        ExtReal::from_u64(v.into())
    }
}

impl From<&Rational> for ExtReal {
    fn from(r: &Rational) -> Self {
        ExtReal::from_rational(r)
    }
}

impl PartialEq<i64> for ExtReal {
    fn eq(&self, other: &i64) -> bool {
        self.0 == *other
    }
}

impl PartialOrd<i64> for ExtReal {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        self.0.partial_cmp(other)
    }
}

macro_rules! binop {
    ($Op:ident, $op:ident, $OpAssign:ident, $op_assign:ident) => {
        impl $Op<ExtReal> for ExtReal {
            type Output = ExtReal;
            fn $op(self, rhs: ExtReal) -> ExtReal {
                ExtReal(self.0.$op(rhs.0))
            }
        }
        impl $Op<&ExtReal> for ExtReal {
            type Output = ExtReal;
            fn $op(self, rhs: &ExtReal) -> ExtReal {
                ExtReal(self.0.$op(&rhs.0))
            }
        }
        impl $Op<ExtReal> for &ExtReal {
            type Output = ExtReal;
            fn $op(self, rhs: ExtReal) -> ExtReal {
                wrap((&self.0).$op(&rhs.0))
            }
        }
        impl $Op<&ExtReal> for &ExtReal {
            type Output = ExtReal;
            fn $op(self, rhs: &ExtReal) -> ExtReal {
                wrap((&self.0).$op(&rhs.0))
            }
        }
        impl $Op<i64> for ExtReal {
            type Output = ExtReal;
            fn $op(self, rhs: i64) -> ExtReal {
                ExtReal(self.0.$op(rhs))
            }
        }
        impl $Op<i64> for &ExtReal {
            type Output = ExtReal;
            fn $op(self, rhs: i64) -> ExtReal {
                wrap((&self.0).$op(rhs))
            }
        }
        impl $OpAssign<ExtReal> for ExtReal {
            fn $op_assign(&mut self, rhs: ExtReal) {
                self.0.$op_assign(rhs.0);
            }
        }
        impl $OpAssign<&ExtReal> for ExtReal {
            fn $op_assign(&mut self, rhs: &ExtReal) {
                self.0.$op_assign(&rhs.0);
            }
        }
        impl $OpAssign<i64> for ExtReal {
            fn $op_assign(&mut self, rhs: i64) {
                self.0.$op_assign(rhs);
            }
        }
    };
}

binop!(Add, add, AddAssign, add_assign);
binop!(Sub, sub, SubAssign, sub_assign);
binop!(Mul, mul, MulAssign, mul_assign);
binop!(Div, div, DivAssign, div_assign);

impl Neg for ExtReal {
    type Output = ExtReal;
    fn neg(self) -> ExtReal {
        ExtReal(-self.0)
    }
}

impl Neg for &ExtReal {
    type Output = ExtReal;
    fn neg(self) -> ExtReal {
        wrap(-&self.0)
    }
}

impl Sum for ExtReal {
    fn sum<I: Iterator<Item = ExtReal>>(iter: I) -> ExtReal {
        iter.fold(ExtReal::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a ExtReal> for ExtReal {
    fn sum<I: Iterator<Item = &'a ExtReal>>(iter: I) -> ExtReal {
        iter.fold(ExtReal::zero(), |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn decimal_layouts() {
        assert_eq!(ExtReal::from_i64(0).to_decimal(), "0");
        assert_eq!(ExtReal::ratio(3, 4).to_decimal_digits(4), "0.7500");
        assert_eq!(ExtReal::ratio(-1, 8).to_decimal_digits(3), "-0.125");
        assert_eq!(ExtReal::from_i64(1234).to_decimal_digits(6), "1234.00");
        assert_eq!(ExtReal::from_i64(1234).to_decimal_digits(2), "1200");
        assert_eq!(ExtReal::pow10(-12).to_decimal_digits(3), "1.00e-12");
        assert_eq!(ExtReal::ratio(1, 1000).to_decimal_digits(2), "0.0010");
        assert!(ExtReal::pi().to_decimal().starts_with("3.14159265358979323846"));
    }

    #[test]
    fn ratio_is_correctly_rounded() {
        let third = ExtReal::ratio(1, 3);
        let back = &third * 3;
        assert!((back - 1).abs() < ExtReal::tol_rel(0));
    }

    #[test]
    fn transcendental_identities() {
        let x = ExtReal::ratio(7, 5);
        assert!((x.ln().exp() - &x).abs() < ExtReal::tol_rel(0));
        let small = ExtReal::pow10(-40);
        // ln_1p keeps full relative accuracy where ln(1+x) would not
        let rel = (small.ln_1p() / &small - 1).abs();
        assert!(rel < ExtReal::pow10(-39));
        assert!((ExtReal::from_i64(2).powi(10) - 1024).is_zero());
        assert!((ExtReal::from_i64(2).sqrt().square() - 2).abs() < ExtReal::tol_rel(0));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(ExtReal::parse("1.5e3").is_ok());
        assert!(ExtReal::parse("abc").is_err());
    }

    proptest! {
        #[test]
        fn decimal_round_trip(num in -1_000_000_000i64..1_000_000_000, den in 1i64..1_000_000, e in -40i32..40) {
            let x = ExtReal::ratio(num, den) * ExtReal::pow10(e);
            let text = x.to_decimal();
            let back = ExtReal::parse(&text).unwrap();
            prop_assert_eq!(back.to_decimal(), text);
        }

        #[test]
        fn field_ops_are_consistent(a in -1000i64..1000, b in 1i64..1000) {
            let x = ExtReal::ratio(a, 7);
            let y = ExtReal::ratio(b, 11);
            let back = (&x * &y) / &y;
            prop_assert!((back - &x).abs() <= ExtReal::tol_rel(0) * (x.abs() + 1));
            let s = (&x + &y) - &y;
            prop_assert!((s - &x).abs() <= ExtReal::tol_rel(0) * (x.abs() + 1));
        }
    }
}
