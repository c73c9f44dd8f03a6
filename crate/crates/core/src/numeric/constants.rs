//! Mathematical constants at working precision.
//!
//! `pi` and `ln 2` come straight from MPFR. Euler's constant is built from
//! the Euler–Maclaurin expansion of `H_N - ln N`, positive zeta values from
//! the Cohen–Rodriguez Villegas–Zagier acceleration of the alternating eta
//! series, and zeta at non-positive integers from Bernoulli numbers.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use super::bernoulli::bernoulli;
use super::memo::Memo;
use super::{precision, ExtReal};
use crate::error::{Error, Result};

/// Cut-off used by Euler's-constant computation.
pub const GAMMA_EM_CUTOFF: u64 = 10_000;

/// Snapshot of every constant the other modules consume.
#[derive(Clone, Debug)]
pub struct ConstantTable {
    pub pi: ExtReal,
    pub gamma: ExtReal,
    pub ln2: ExtReal,
    /// `zeta(s)` for `s` in `-9..=9`, `s != 1`.
    pub zeta: BTreeMap<i32, ExtReal>,
    /// Alternating zeta `(1 - 2^{1-s}) zeta(s)` for `s` in `1..=9`.
    pub eta: BTreeMap<i32, ExtReal>,
    /// `Li_m(1/2)` for `m` in `2..=6`.
    pub li_half: BTreeMap<u32, ExtReal>,
}

impl ConstantTable {
    fn build() -> Self {
        let zeta = (-9..=9)
            .filter(|&s| s != 1)
            .map(|s| (s, zeta_int(s)))
            .collect();
        let eta = (1..=9).map(|s| (s, eta_int(s))).collect();
        let li_half = (2..=6).map(|m| (m, li_half_series(m))).collect();
        ConstantTable {
            pi: ExtReal::pi(),
            gamma: euler_gamma(),
            ln2: ExtReal::ln2(),
            zeta,
            eta,
            li_half,
        }
    }

    /// Name/value pairs in a stable order, for dumping.
    pub fn entries(&self) -> Vec<(String, ExtReal)> {
        let mut out = vec![
            ("pi".to_string(), self.pi.clone()),
            ("gamma".to_string(), self.gamma.clone()),
            ("ln2".to_string(), self.ln2.clone()),
        ];
        out.extend(self.zeta.iter().map(|(s, v)| (format!("zeta({s})"), v.clone())));
        out.extend(self.eta.iter().map(|(s, v)| (format!("eta({s})"), v.clone())));
        out.extend(
            self.li_half
                .iter()
                .map(|(m, v)| (format!("Li_{m}(1/2)"), v.clone())),
        );
        out
    }
}

/// The process-wide constant table.
pub fn constants() -> &'static ConstantTable {
    static TABLE: OnceLock<ConstantTable> = OnceLock::new();
    TABLE.get_or_init(ConstantTable::build)
}

/// Euler's constant from `H_N - ln N - 1/(2N) + sum_k B_{2k} / (2k N^{2k})`
/// with `N = 10^4`, adding Bernoulli corrections until they drop below the
/// working precision.
pub fn euler_gamma() -> ExtReal {
    static GAMMA: OnceLock<ExtReal> = OnceLock::new();
    GAMMA
        .get_or_init(|| euler_gamma_with_cutoff(GAMMA_EM_CUTOFF))
        .clone()
}

pub(crate) fn euler_gamma_with_cutoff(n: u64) -> ExtReal {
    let big_n = ExtReal::from_u64(n);
    let mut acc = super::harmonic::harmonic(n, 1) - big_n.ln() - big_n.recip() / 2;
    let stop = ExtReal::tol_rel(-10);
    let n_sq = big_n.square();
    let mut n_pow = n_sq.clone();
    for k in 1..64usize {
        let term = ExtReal::from_rational(&bernoulli(2 * k)) / (&n_pow * (2 * k as i64));
        acc += &term;
        if term.abs() < stop {
            return acc;
        }
        n_pow *= &n_sq;
    }
    panic!("Euler-Maclaurin corrections for gamma did not fall below the working precision");
}

/// Default number of acceleration terms for the eta series: the method
/// gains `log10(3 + sqrt 8) ≈ 0.766` digits per term.
fn default_eta_budget() -> usize {
    let bits = f64::from(precision::bits());
    (bits * std::f64::consts::LN_2 / (3.0 + 8f64.sqrt()).ln()).ceil() as usize + 4
}

/// Accelerated value of `sum_{k>=0} (-1)^k a_k` for a totally monotone
/// sequence, using `n` terms.
pub(crate) fn accelerated_alternating(n: usize, mut a: impl FnMut(usize) -> ExtReal) -> ExtReal {
    let base = ExtReal::from_i64(3) + ExtReal::from_i64(8).sqrt();
    let mut d = base.powi(n as i32);
    d = (&d + d.recip()) / 2;
    let mut b = ExtReal::from_i64(-1);
    let mut c = -&d;
    let mut s = ExtReal::zero();
    let n = n as i64;
    for k in 0..n {
        c = &b - c;
        s += &c * a(k as usize);
        b = b * (2 * (k + n) * (k - n)) / ((2 * k + 1) * (k + 1));
    }
    s / d
}

/// `eta(s) = sum_{k>=1} (-1)^{k-1} / k^s` by accelerated summation with an
/// explicit term budget.
pub fn eta_with_budget(s: u32, budget: usize) -> Result<ExtReal> {
    let term = |k: usize| ExtReal::from_u64(k as u64 + 1).powi(-(s as i32));
    let value = accelerated_alternating(budget, term);
    let check = accelerated_alternating(budget + 10, term);
    let diff = (&value - &check).abs();
    let tol = ExtReal::tol_rel(0) * value.abs();
    if diff > tol {
        return Err(Error::AccelerationNonConvergence {
            difference: diff.to_decimal_digits(6),
            tolerance: tol.to_decimal_digits(6),
        });
    }
    Ok(check)
}

static ETA: Memo<u32, ExtReal> = Memo::new();
static ZETA: Memo<u32, ExtReal> = Memo::new();

/// `zeta(s)` for integer `s >= 2` from the accelerated eta series divided by
/// `1 - 2^{1-s}`.
pub fn zeta_hi(s: u32) -> Result<ExtReal> {
    if s < 2 {
        return Err(Error::Domain(format!("zeta_hi needs s >= 2, got {s}")));
    }
    ZETA.try_get_or_insert_with(s, || {
        let eta = eta_hi(s)?;
        let factor = ExtReal::one() - ExtReal::from_i64(2).powi(1 - s as i32);
        Ok(eta / factor)
    })
}

fn eta_hi(s: u32) -> Result<ExtReal> {
    ETA.try_get_or_insert_with(s, || eta_with_budget(s, default_eta_budget()))
}

/// `zeta(s)` at any integer `s != 1`.
///
/// # Panics
/// At the pole `s = 1`.
pub fn zeta_int(s: i32) -> ExtReal {
    match s {
        1 => panic!("zeta has a pole at s = 1"),
        0 => ExtReal::ratio(-1, 2),
        s if s < 0 => {
            let n = (-s) as usize;
            -ExtReal::from_rational(&bernoulli(n + 1)) / (n as i64 + 1)
        }
        s => zeta_hi(s as u32).expect("default eta budget always converges"),
    }
}

/// Alternating zeta `(1 - 2^{1-s}) zeta(s)`, with the limits `eta(1) = ln 2`
/// and `eta(0) = 1/2`.
pub fn eta_int(s: i32) -> ExtReal {
    match s {
        0 => ExtReal::ratio(1, 2),
        1 => ExtReal::ln2(),
        s if s >= 2 => eta_hi(s as u32).expect("default eta budget always converges"),
        s => {
            let factor = ExtReal::one() - ExtReal::from_i64(2).powi(1 - s);
            factor * zeta_int(s)
        }
    }
}

/// `Li_m(1/2)` by the direct series, summed until the geometric tail bound
/// drops below the working precision.
pub(crate) fn li_half_series(m: u32) -> ExtReal {
    static LI_HALF: Memo<u32, ExtReal> = Memo::new();
    LI_HALF.get_or_insert_with(m, || {
        let stop = ExtReal::tol_rel(-10);
        let mut acc = ExtReal::zero();
        let mut pow = ExtReal::one();
        for k in 1u64.. {
            pow /= 2;
            acc += &pow / ExtReal::from_u64(k).powi(m as i32);
            // tail <= 2^{-k} / (k+1)^m
            if &pow / ExtReal::from_u64(k + 1).powi(m as i32) < stop {
                break;
            }
        }
        acc
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::float::Constant;
    use rug::Float;

    fn close(a: &ExtReal, b: &ExtReal, k: i32) -> bool {
        (a - b).abs() <= ExtReal::tol_rel(k)
    }

    #[test]
    fn zeta_even_anchors() {
        let pi = ExtReal::pi();
        assert!(close(&zeta_int(2), &(pi.powi(2) / 6), 0));
        assert!(close(&zeta_int(4), &(pi.powi(4) / 90), 0));
        assert_eq!(zeta_int(0), ExtReal::ratio(-1, 2));
        assert_eq!(zeta_int(-1), ExtReal::ratio(-1, 12));
        for k in 1..=4 {
            assert!(zeta_int(-2 * k).is_zero());
        }
        assert_eq!(zeta_int(-3), ExtReal::ratio(1, 120));
    }

    #[test]
    fn zeta3_leading_digits() {
        assert!(zeta_int(3)
            .to_decimal()
            .starts_with("1.20205690315959428539973816151144999076"));
    }

    #[test]
    fn zeta_matches_mpfr() {
        for s in 2..=12u32 {
            let reference = ExtReal::from_float(Float::with_val(precision::bits(), Float::zeta_u(s)));
            assert!(close(&zeta_hi(s).unwrap(), &reference, 0), "zeta({s})");
        }
    }

    #[test]
    fn eta_consistency() {
        for s in 2..=9 {
            let factor = ExtReal::one() - ExtReal::from_i64(2).powi(1 - s);
            let reference = ExtReal::from_float(Float::with_val(precision::bits(), Float::zeta_u(s as u32)));
            assert!(close(&eta_int(s), &(factor * reference), 2), "eta({s})");
        }
        assert_eq!(eta_int(1), ExtReal::ln2());
        // the accelerated series reaches ln 2 at s = 1 as well
        let ln2 = eta_with_budget(1, default_eta_budget()).unwrap();
        assert!(close(&ln2, &ExtReal::ln2(), 0));
    }

    #[test]
    fn tiny_budget_is_reported() {
        assert!(matches!(
            eta_with_budget(3, 5),
            Err(Error::AccelerationNonConvergence { .. })
        ));
    }

    #[test]
    fn gamma_matches_mpfr() {
        let reference = ExtReal::from_float(Float::with_val(precision::bits(), Constant::Euler));
        assert!(close(&euler_gamma(), &reference, 0));
        // a smaller cut-off needs more Bernoulli terms but lands on the same value
        assert!(close(&euler_gamma_with_cutoff(1000), &reference, 0));
    }

    #[test]
    fn li_half_closed_forms() {
        let t = constants();
        let (pi, l2) = (&t.pi, &t.ln2);
        let li2 = pi.square() / 12 - l2.square() / 2;
        assert!(close(&t.li_half[&2], &li2, 0));
        let li3 = zeta_int(3) * 7 / 8 - pi.square() * l2 / 12 + l2.powi(3) / 6;
        assert!(close(&t.li_half[&3], &li3, 0));
    }

    #[test]
    fn table_has_expected_keys() {
        let t = constants();
        assert_eq!(t.zeta.len(), 18);
        assert!(!t.zeta.contains_key(&1));
        assert_eq!(t.eta.len(), 9);
        assert_eq!(t.entries().len(), 3 + 18 + 9 + 5);
    }
}
