//! Alternating Euler sums
//! `S+-_{p,q} = sum_{k>=1} (-1)^{k-1} H_k^{(p)} / k^q` in closed form, the
//! quadratic sum `T_3 = sum_{k>=1} (-1)^k H_k^2 / k^3`, and a brute-force
//! oracle that sums the series directly with iterated averaging.

use rug::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::memo::Memo;
use crate::numeric::{constants, eta_int, zeta_int, ExtReal};

/// Default number of pairwise-averaging passes in the oracle.
pub const DEFAULT_LEVELS: usize = 6;

/// Smallest term budget the oracle accepts.
pub const MIN_TERMS: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SumKind {
    /// `sum (-1)^{k-1} H_k^{(p)} / k^q`
    Linear,
    /// `sum (-1)^k (H_k^{(p)})^2 / k^q`
    Quadratic,
}

/// A closed form next to its brute-force value.
#[derive(Clone, Debug)]
pub struct EulerSumId {
    pub kind: SumKind,
    pub p: u32,
    pub q: u32,
    pub closed_form: ExtReal,
    pub oracle_value: ExtReal,
    pub oracle_error: ExtReal,
}

impl EulerSumId {
    pub fn difference(&self) -> ExtReal {
        (&self.closed_form - &self.oracle_value).abs()
    }
}

#[derive(Clone, Debug)]
pub struct OracleEstimate {
    pub value: ExtReal,
    /// Gap between the averaged estimates at `N` and `N/2`.
    pub error_estimate: ExtReal,
    pub terms: usize,
}

static CLOSED: Memo<(SumKind, u32, u32), ExtReal> = Memo::new();

fn binom(n: u32, k: u32) -> ExtReal {
    ExtReal::from_integer(&Integer::from(Integer::binomial_u(n, k)))
}

/// `S+-_{1,q}` for even `q`.
pub fn s_pm_linear(q: u32) -> Result<ExtReal> {
    if q < 2 || !q.is_multiple_of(2) {
        return Err(Error::Domain(format!("s_pm_linear needs even q >= 2, got {q}")));
    }
    CLOSED.try_get_or_insert_with((SumKind::Linear, 1, q), || {
        let q1 = q as i32 + 1;
        let mut twice = eta_int(q1) * (q1 as i64) - zeta_int(q1);
        for k in 1..(q as i32 / 2) {
            twice -= eta_int(2 * k) * zeta_int(q1 - 2 * k) * 2;
        }
        Ok(twice / 2)
    })
}

/// `S+-_{p,q}` for `p, q >= 2` with `p + q` odd; the `k = 0` terms use
/// `eta(0) = 1/2`.
pub fn s_pm_general(p: u32, q: u32) -> Result<ExtReal> {
    if p < 2 || q < 2 || (p + q).is_multiple_of(2) {
        return Err(Error::Domain(format!(
            "s_pm_general needs p, q >= 2 with p + q odd, got ({p}, {q})"
        )));
    }
    CLOSED.try_get_or_insert_with((SumKind::Linear, p, q), || {
        let (pi, qi) = (p as i32, q as i32);
        let mut twice = eta_int(pi + qi);
        if p % 2 == 1 {
            twice += zeta_int(pi) * eta_int(qi) * 2;
        }
        for k in 0..=(p / 2) {
            let w = pi + qi - 2 * k as i32;
            let sign = if (p - 2 * k + 1).is_multiple_of(2) { 2 } else { -2 };
            twice += binom(w as u32 - 1, q - 1) * eta_int(w) * eta_int(2 * k as i32) * sign;
        }
        let outer = if p.is_multiple_of(2) { 2 } else { -2 };
        for k in 0..=(q / 2) {
            let w = pi + qi - 2 * k as i32;
            twice += binom(w as u32 - 1, p - 1) * zeta_int(w) * eta_int(2 * k as i32) * outer;
        }
        Ok(twice / 2)
    })
}

/// `S+-_{1,3}`, which needs `Li_4(1/2)`.
pub fn s13_mu1() -> ExtReal {
    CLOSED.get_or_insert_with((SumKind::Linear, 1, 3), || {
        let l2 = ExtReal::ln2();
        -constants().li_half[&4].clone() * 2 + zeta_int(4) * 11 / 4 + zeta_int(2) * l2.square() / 2
            - l2.powi(4) / 12
            - zeta_int(3) * &l2 * 7 / 4
    })
}

/// `T_3 = sum_{k>=1} (-1)^k H_k^2 / k^3`.
pub fn t3_quadratic() -> ExtReal {
    CLOSED.get_or_insert_with((SumKind::Quadratic, 1, 3), || {
        let t = constants();
        let l2 = &t.ln2;
        -(t.li_half[&5].clone() * 4 + l2 * &t.li_half[&4] * 4 + l2.powi(5) * 2 / 15
            + zeta_int(3) * l2.square() * 7 / 4
            - zeta_int(5) * 19 / 32
            - zeta_int(2) * l2.powi(3) * 2 / 3
            - zeta_int(2) * zeta_int(3) * 11 / 8)
    })
}

/// Closed form for any sum this module knows.
pub fn closed_form(kind: SumKind, p: u32, q: u32) -> Result<ExtReal> {
    match (kind, p, q) {
        (SumKind::Linear, 1, 3) => Ok(s13_mu1()),
        (SumKind::Linear, 1, q) => s_pm_linear(q),
        (SumKind::Linear, p, q) => s_pm_general(p, q),
        (SumKind::Quadratic, 1, 3) => Ok(t3_quadratic()),
        _ => Err(Error::Domain(format!("no closed form for {kind:?} ({p}, {q})"))),
    }
}

/// Value of an alternating series from its partial sums, accelerated by
/// `levels` passes of pairwise averaging; the error estimate compares the
/// results obtained from the first `N` and the first `N/2` partial sums.
pub fn averaged_limit(partial: &[ExtReal], levels: usize, tol: &ExtReal) -> Result<OracleEstimate> {
    let n = partial.len();
    if n < 2 * (levels + 1) {
        return Err(Error::Domain("too few partial sums for the requested averaging".into()));
    }
    let average = |upto: usize| -> ExtReal {
        let mut acc = ExtReal::zero();
        for i in 0..=levels {
            acc += &partial[upto - 1 - i] * binom(levels as u32, i as u32);
        }
        acc * ExtReal::from_i64(2).powi(-(levels as i32))
    };
    let value = average(n);
    let coarse = average(n / 2);
    let error_estimate = (&value - &coarse).abs();
    if error_estimate > *tol {
        return Err(Error::AccelerationNonConvergence {
            difference: error_estimate.to_decimal_digits(6),
            tolerance: tol.to_decimal_digits(6),
        });
    }
    Ok(OracleEstimate {
        value,
        error_estimate,
        terms: n,
    })
}

/// Direct summation of `kind` with parameters `(p, q)` over `n` terms.
pub fn s_pm_direct(
    p: u32,
    q: u32,
    kind: SumKind,
    n: usize,
    levels: usize,
    tol: &ExtReal,
) -> Result<OracleEstimate> {
    if n < MIN_TERMS {
        return Err(Error::Domain(format!("oracle needs at least {MIN_TERMS} terms, got {n}")));
    }
    if p == 0 || q == 0 {
        return Err(Error::Domain("oracle needs p, q >= 1".into()));
    }
    let mut partial = Vec::with_capacity(n);
    let mut h = ExtReal::zero();
    let mut acc = ExtReal::zero();
    for k in 1..=n as u64 {
        let kk = ExtReal::from_u64(k);
        h += kk.powi(-(p as i32));
        let numerator = match kind {
            SumKind::Linear => h.clone(),
            SumKind::Quadratic => -h.square(),
        };
        let term = numerator / kk.powi(q as i32);
        if k % 2 == 1 {
            acc += term;
        } else {
            acc -= term;
        }
        partial.push(acc.clone());
    }
    averaged_limit(&partial, levels, tol)
}

/// Closed form and oracle side by side.
pub fn euler_sum_report(kind: SumKind, p: u32, q: u32, n: usize, tol: &ExtReal) -> Result<EulerSumId> {
    let closed = closed_form(kind, p, q)?;
    let oracle = s_pm_direct(p, q, kind, n, DEFAULT_LEVELS, tol)?;
    Ok(EulerSumId {
        kind,
        p,
        q,
        closed_form: closed,
        oracle_value: oracle.value,
        oracle_error: oracle.error_estimate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn oracle(p: u32, q: u32, kind: SumKind, n: usize) -> ExtReal {
        s_pm_direct(p, q, kind, n, DEFAULT_LEVELS, &ExtReal::pow10(-12))
            .unwrap()
            .value
    }

    fn within(a: &ExtReal, b: &ExtReal, exp: i32) -> bool {
        (a - b).abs() <= ExtReal::pow10(exp)
    }

    #[test]
    fn linear_printed_values() {
        let pi2 = ExtReal::pi().square();
        let s12 = s_pm_linear(2).unwrap();
        assert!(within(&s12, &(zeta_int(3) * 5 / 8), -55));
        let s14 = s_pm_linear(4).unwrap();
        let expect = zeta_int(5) * 59 / 32 - &pi2 * zeta_int(3) / 12;
        assert!(within(&s14, &expect, -55));
        assert!(s_pm_linear(3).is_err());
    }

    #[test]
    fn general_printed_value() {
        let s23 = s_pm_general(2, 3).unwrap();
        let expect = -zeta_int(5) * 11 / 32 + zeta_int(3) * ExtReal::pi().square() * 5 / 48;
        assert!(within(&s23, &expect, -55));
        assert!(s_pm_general(2, 4).is_err());
    }

    #[test]
    fn closed_forms_match_oracle() {
        let n = 100_000;
        for (kind, p, q) in [
            (SumKind::Linear, 1, 2),
            (SumKind::Linear, 1, 4),
            (SumKind::Linear, 2, 3),
            (SumKind::Linear, 1, 3),
            (SumKind::Quadratic, 1, 3),
        ] {
            let closed = closed_form(kind, p, q).unwrap();
            assert!(within(&closed, &oracle(p, q, kind, n), -12), "{kind:?} ({p}, {q})");
        }
        let s43 = s_pm_general(4, 3).unwrap();
        assert!(within(&s43, &oracle(4, 3, SumKind::Linear, n), -10));
        let s32 = s_pm_general(3, 2).unwrap();
        assert!(within(&s32, &oracle(3, 2, SumKind::Linear, n), -10));
    }

    #[test]
    fn oracle_cross_check_harmonic() {
        // sum (-1)^{k-1} H_k / k = zeta(2)/2 - ln^2 2 / 2
        let expect = zeta_int(2) / 2 - ExtReal::ln2().square() / 2;
        assert!(within(&oracle(1, 1, SumKind::Linear, 1000), &expect, -12));
    }

    #[test]
    fn mu1_value_and_s3() {
        let mu1 = s13_mu1();
        assert_eq!(mu1.to_decimal_digits(6), "0.859247");
        let t = constants();
        let l2 = &t.ln2;
        let pi = &t.pi;
        let s3 = t.li_half[&4].clone() * 4 - pi.powi(4) / 24 - pi.square() * l2.square() / 6
            + l2.powi(4) / 6
            + l2 * zeta_int(3) * 7 / 2;
        let via_mu1 = -mu1 * 2 + pi.powi(4) * 7 / 360;
        assert!(within(&via_mu1, &s3, -55));
    }

    #[test]
    fn budget_and_parity_errors() {
        assert!(s_pm_direct(1, 2, SumKind::Linear, 10, 6, &ExtReal::one()).is_err());
        // too tight a tolerance for the budget
        assert!(matches!(
            s_pm_direct(1, 1, SumKind::Linear, 1000, 1, &ExtReal::pow10(-30)),
            Err(Error::AccelerationNonConvergence { .. })
        ));
        assert!(closed_form(SumKind::Quadratic, 2, 3).is_err());
    }

    #[test]
    fn memoized_values_are_stable() {
        let a = s_pm_general(2, 3).unwrap();
        let b = s_pm_general(2, 3).unwrap();
        assert_eq!(a, b);
    }
}
