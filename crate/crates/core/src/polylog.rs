//! Polylogarithms `Li_m(z) = sum_{k>=1} z^k / k^m` on `[0, 1]`, their
//! expansion at `z = 1` in `w = -ln z`, and the inversion formula at `z = 2`.

use rug::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::memo::Memo;
use crate::numeric::{bernoulli, harmonic, li_half_series, zeta_int, ComplexPair, ExtReal};
use crate::series::BivariatePoly;
use crate::verify::VerificationRecord;

/// Above this argument `li_eval` switches from the direct series to the
/// expansion at `z = 1`.
pub fn crossover() -> ExtReal {
    ExtReal::ratio(19, 20)
}

/// Truncated expansion of `Li_m(e^{-w})` in powers of `w` and `ln w`.
///
/// Stored as a [`BivariatePoly`] with `eps = w` and `L = ln w`; only
/// non-negative powers of `w` occur.
#[derive(Clone, Debug)]
pub struct SingularExpansion {
    pub m: u32,
    pub w_order: u32,
    pub terms: BivariatePoly,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExpansionTerm {
    pub w_power: u32,
    pub log_power: u32,
    pub coefficient: String,
}

impl SingularExpansion {
    pub fn coeff(&self, w_power: u32, log_power: u32) -> ExtReal {
        self.terms.coeff(w_power as i32, log_power)
    }

    pub fn eval(&self, w: &ExtReal) -> ExtReal {
        self.terms.eval(w, &w.ln())
    }

    /// Nonzero terms ordered by `(w_power, log_power)`.
    pub fn rows(&self) -> Vec<ExpansionTerm> {
        self.terms
            .terms()
            .filter(|(_, _, c)| !c.is_zero())
            .map(|(i, j, c)| ExpansionTerm {
                w_power: i as u32,
                log_power: j,
                coefficient: c.to_decimal(),
            })
            .collect()
    }
}

fn check_weight(m: u32) -> Result<()> {
    if m < 2 {
        return Err(Error::Domain(format!("polylog weight must be >= 2, got {m}")));
    }
    Ok(())
}

/// Coefficient of `w^j` (no logarithm) in the expansion of `Li_m(e^{-w})`.
fn power_coeff(m: u32, j: u32) -> ExtReal {
    debug_assert!(j != m - 1);
    let fact = ExtReal::from_integer(&Integer::from(Integer::factorial(j)));
    let sign = if j.is_multiple_of(2) { 1 } else { -1 };
    zeta_int(m as i32 - j as i32) * sign / fact
}

/// The two coefficients at `w^{m-1}`: `(log part, plain part)`.
fn log_coeffs(m: u32) -> (ExtReal, ExtReal) {
    let fact = ExtReal::from_integer(&Integer::from(Integer::factorial(m - 1)));
    let sign = if m.is_multiple_of(2) { 1 } else { -1 };
    let log_part = ExtReal::from_i64(sign) / &fact;
    let plain = if m == 1 {
        ExtReal::zero()
    } else {
        -(harmonic(u64::from(m - 1), 1) * sign) / &fact
    };
    (log_part, plain)
}

pub fn li_singular_expansion(m: u32, w_order: u32) -> Result<SingularExpansion> {
    check_weight(m)?;
    if w_order < m {
        return Err(Error::Domain(format!(
            "expansion of Li_{m} needs w_order >= {m}, got {w_order}"
        )));
    }
    let mut terms = BivariatePoly::zero(w_order as i32);
    for j in 0..=w_order {
        if j == m - 1 {
            let (log_part, plain) = log_coeffs(m);
            terms.add_term(j as i32, 1, log_part);
            terms.add_term(j as i32, 0, plain);
        } else {
            let c = power_coeff(m, j);
            if !c.is_zero() {
                terms.add_term(j as i32, 0, c);
            }
        }
    }
    Ok(SingularExpansion { m, w_order, terms })
}

/// Expansion summed until two consecutive terms drop below the working
/// precision; valid for `0 < w < 2π`.
fn singular_value(m: u32, w: &ExtReal) -> ExtReal {
    let stop = ExtReal::tol_rel(-10);
    let ln_w = w.ln();
    let mut acc = ExtReal::zero();
    let mut w_pow = ExtReal::one();
    let mut previous_small = false;
    for j in 0u32.. {
        let term = if j == m - 1 {
            let (log_part, plain) = log_coeffs(m);
            (log_part * &ln_w + plain) * &w_pow
        } else {
            power_coeff(m, j) * &w_pow
        };
        acc += &term;
        let small = j >= m && term.abs() < stop;
        if small && previous_small {
            break;
        }
        previous_small = small;
        w_pow *= w;
    }
    acc
}

fn direct_series(m: u32, z: &ExtReal) -> ExtReal {
    let stop = ExtReal::tol_rel(-10);
    let one_minus = ExtReal::one() - z;
    let mut acc = ExtReal::zero();
    let mut pow = ExtReal::one();
    for k in 1u64.. {
        pow *= z;
        acc += &pow / ExtReal::from_u64(k).powi(m as i32);
        let tail = &pow * z / (ExtReal::from_u64(k + 1).powi(m as i32) * &one_minus);
        if tail < stop {
            break;
        }
    }
    acc
}

/// Gap between the two evaluation routes at the crossover point.
pub fn branch_overlap_gap(m: u32) -> Result<ExtReal> {
    check_weight(m)?;
    let z = crossover();
    Ok((direct_series(m, &z) - singular_value(m, &-z.ln())).abs())
}

fn ensure_overlap(m: u32) -> Result<()> {
    static CHECKED: Memo<u32, bool> = Memo::new();
    let ok = CHECKED.get_or_insert_with(m, || {
        branch_overlap_gap(m).map(|g| g <= ExtReal::tol_rel(10)).unwrap_or(false)
    });
    if ok {
        Ok(())
    } else {
        Err(Error::RouteMismatch(format!(
            "Li_{m}: direct series and expansion at 1 disagree at the crossover"
        )))
    }
}

/// `Li_m(z)` for `z` in `[0, 1]`.
pub fn li_eval(m: u32, z: &ExtReal) -> Result<ExtReal> {
    check_weight(m)?;
    if z.is_negative() || *z > 1 {
        return Err(Error::Domain(format!(
            "li_eval needs 0 <= z <= 1, got {}",
            z.to_decimal_digits(10)
        )));
    }
    if z.is_zero() {
        return Ok(ExtReal::zero());
    }
    if *z == 1 {
        return Ok(zeta_int(m as i32));
    }
    if *z > crossover() {
        ensure_overlap(m)?;
        return Ok(singular_value(m, &-z.ln()));
    }
    Ok(direct_series(m, z))
}

/// `B_n(x)` at a complex argument.
fn bernoulli_poly(n: u32, x: &ComplexPair) -> ComplexPair {
    let mut acc = ComplexPair::zero();
    for k in 0..=n {
        let binom = ExtReal::from_integer(&Integer::from(Integer::binomial_u(n, k)));
        let c = ExtReal::from_rational(&bernoulli(k as usize)) * binom;
        acc = &acc + &x.powi(n - k).scale(&c);
    }
    acc
}

/// `Li_m(z)` for real `z > 1` from the inversion formula, taking the
/// principal logarithm `ln(-z) = ln z + iπ`.
pub fn li_inverted(m: u32, z: &ExtReal) -> Result<ComplexPair> {
    check_weight(m)?;
    if *z <= 1 {
        return Err(Error::Domain("inversion is used for z > 1".into()));
    }
    let inner = li_eval(m, &z.recip())?;
    let sign = if m.is_multiple_of(2) { -1 } else { 1 };
    let two_pi_i = ComplexPair::new(ExtReal::zero(), ExtReal::pi() * 2);
    let x = &ComplexPair::real(ExtReal::ratio(1, 2)) + &ComplexPair::ln_of_negative(z).div(&two_pi_i);
    let fact = ExtReal::from_integer(&Integer::from(Integer::factorial(m)));
    let poly = &two_pi_i.powi(m) * &bernoulli_poly(m, &x);
    Ok(&ComplexPair::real(inner * sign) - &poly.scale(&fact.recip()))
}

/// Closed forms of `Li_2(2)` and `Li_3(2)`.
pub fn li_at_two_closed_form(m: u32) -> Result<ComplexPair> {
    let pi = ExtReal::pi();
    let l2 = ExtReal::ln2();
    match m {
        2 => Ok(ComplexPair::new(pi.square() / 4, -(&pi * &l2))),
        3 => Ok(ComplexPair::new(
            zeta_int(3) * 7 / 8 + pi.square() * &l2 / 4,
            -(&pi * l2.square()) / 2,
        )),
        _ => Err(Error::Domain(format!("no closed form for Li_{m}(2)"))),
    }
}

pub fn li_at_two(m: u32) -> Result<ComplexPair> {
    li_inverted(m, &ExtReal::from_i64(2))
}

pub(crate) fn render_complex(c: &ComplexPair) -> String {
    let sign = if c.im.is_negative() { '-' } else { '+' };
    format!("{}{}{}i", c.re.to_decimal(), sign, c.im.abs().to_decimal())
}

/// Inversion formula at `z = 2` against the closed forms, `m` in {2, 3}.
pub fn li_inversion_check(m: u32) -> Result<VerificationRecord> {
    let computed = li_at_two(m)?;
    let reference = li_at_two_closed_form(m)?;
    Ok(VerificationRecord::from_diff(
        format!("Li_{m}(2) inversion"),
        render_complex(&computed),
        render_complex(&reference),
        &computed.max_abs_diff(&reference),
        &ExtReal::tol_rel(8),
    ))
}

/// `Li_m(1/2)`; for `m = 2, 3` the value is also checked against its
/// closed form.
pub fn li_half_numeric(m: u32) -> Result<ExtReal> {
    let value = li_eval(m, &ExtReal::ratio(1, 2))?;
    let pi = ExtReal::pi();
    let l2 = ExtReal::ln2();
    let closed = match m {
        2 => Some(pi.square() / 12 - l2.square() / 2),
        3 => Some(zeta_int(3) * 7 / 8 - pi.square() * &l2 / 12 + l2.powi(3) / 6),
        _ => None,
    };
    if let Some(c) = closed {
        if (&value - &c).abs() > ExtReal::tol_rel(8) {
            return Err(Error::RouteMismatch(format!("Li_{m}(1/2) misses its closed form")));
        }
    }
    debug_assert!(!(2..=6).contains(&m) || (&value - li_half_series(m)).abs() <= ExtReal::tol_rel(8));
    Ok(value)
}
