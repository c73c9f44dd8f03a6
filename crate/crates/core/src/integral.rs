//! The integral `I(n) = ∫_0^1 (x^n + (1-x)^n)^{1/n} dx`: direct evaluation,
//! its large-`n` coefficients `I_0..I_5`, the constants they are assembled
//! from, and the table of closed-form integrals over `ln(1 + e^{-u})`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::euler_sums::{averaged_limit, s13_mu1, s_pm_direct, s_pm_general, s_pm_linear, t3_quadratic, SumKind, DEFAULT_LEVELS};
use crate::numeric::{constants, precision, zeta_int, ExtReal};
use crate::polylog::li_at_two;
use crate::quadrature::{integrate_finite_abscissa, integrate_semi_infinite};
use crate::verify::VerificationRecord;

/// Highest coefficient index with a known closed form.
pub const MAX_COEFF: usize = 5;

/// Default quadrature tolerance for residual tables.
pub fn default_table_tol() -> ExtReal {
    ExtReal::pow10(-30)
}

/// `I_0..I_5`.
#[derive(Clone, Debug)]
pub struct ICoefficients {
    pub values: [ExtReal; MAX_COEFF + 1],
}

impl ICoefficients {
    pub fn closed_forms() -> Self {
        let pi = ExtReal::pi();
        let z3 = zeta_int(3);
        ICoefficients {
            values: [
                ExtReal::ratio(3, 4),
                ExtReal::zero(),
                pi.square() / 48,
                &z3 / 8,
                -pi.powi(4) / 960,
                -(z3 * pi.square()) / 48,
            ],
        }
    }
}

pub fn coeff_i(i: usize) -> Result<ExtReal> {
    if i > MAX_COEFF {
        return Err(Error::Domain(format!(
            "I_{i} has no known closed form; coefficients stop at I_{MAX_COEFF}"
        )));
    }
    Ok(ICoefficients::closed_forms().values[i].clone())
}

/// `I_{n,k} = sum_{i <= k} I_i / n^i`.
pub fn partial_sum_i(n: u64, k: usize) -> Result<ExtReal> {
    let coeffs = ICoefficients::closed_forms();
    if k > MAX_COEFF {
        return Err(Error::Domain(format!("partial sums stop at k = {MAX_COEFF}")));
    }
    let inv = ExtReal::from_u64(n).recip();
    let mut acc = ExtReal::zero();
    let mut pow = ExtReal::one();
    for c in coeffs.values.iter().take(k + 1) {
        acc += c * &pow;
        pow *= &inv;
    }
    Ok(acc)
}

/// `I(n)` by quadrature of `2 (1-x) (1 + r^n)^{1/n}`, `r = x/(1-x)`, over
/// `[0, 1/2]`. Where `r^n` is below the working precision the factor is
/// exactly 1 to that precision and the piece is integrated in closed form.
pub fn eval_i(n: u64, tol: &ExtReal) -> Result<ExtReal> {
    if n == 0 {
        return Err(Error::Domain("I(n) needs n >= 1".into()));
    }
    let guard = 10;
    let cutoff = -f64::from(precision::digits() + guard) * std::f64::consts::LN_10;
    let nn = ExtReal::from_u64(n);
    let half = ExtReal::ratio(1, 2);
    // r^n < 10^{-(P+guard)} once y = 1/2 - x exceeds about |cutoff| / (4n)
    let split = {
        let y = ExtReal::from_f64(-cutoff) / (&nn * 4);
        if y >= half {
            ExtReal::zero()
        } else {
            &half - y
        }
    };
    let outer = (&split - split.square() / 2) * 2;
    let piece = integrate_finite_abscissa(
        |p| {
            // distance to 1/2 from the right end of [split, 1/2]
            let d = &p.from_right;
            let x = &p.x;
            let ln_r = if *d < ExtReal::ratio(1, 8) {
                (-(d * 2)).ln_1p() - (d * 2).ln_1p()
            } else {
                x.ln() - (ExtReal::one() - x).ln()
            };
            let n_ln_r = &ln_r * &nn;
            let base = (ExtReal::one() - x) * 2;
            if n_ln_r.to_f64() < cutoff || !n_ln_r.is_finite() {
                return base;
            }
            let factor = (n_ln_r.exp().ln_1p() / &nn).exp();
            base * factor
        },
        &split,
        &half,
        tol,
    )?;
    Ok(outer + piece.value)
}

fn ell(u: &ExtReal) -> ExtReal {
    (-u).exp().ln_1p()
}

/// `e^{-u} / (1 + e^{-u})`.
fn fermi(u: &ExtReal) -> ExtReal {
    let e = (-u).exp();
    &e / (ExtReal::one() + &e)
}

type Integrand = fn(&ExtReal) -> ExtReal;

struct Row {
    name: &'static str,
    integrand: Integrand,
    closed: fn() -> ExtReal,
}

fn li4() -> ExtReal {
    constants().li_half[&4].clone()
}

fn li5() -> ExtReal {
    constants().li_half[&5].clone()
}

fn s2_closed() -> ExtReal {
    let (pi, l2) = (ExtReal::pi(), ExtReal::ln2());
    pi.square() * l2.square() / 4 - &l2 * zeta_int(3) * 21 / 4 - li4() * 6 + pi.powi(4) / 15
        - l2.powi(4) / 4
}

fn s3_closed() -> ExtReal {
    let (pi, l2) = (ExtReal::pi(), ExtReal::ln2());
    li4() * 4 - pi.powi(4) / 24 - pi.square() * l2.square() / 6 + l2.powi(4) / 6
        + &l2 * zeta_int(3) * 7 / 2
}

fn s5_closed() -> ExtReal {
    let (pi, l2) = (ExtReal::pi(), ExtReal::ln2());
    li5() * 12 + &l2 * li4() * 12 + l2.powi(5) * 2 / 5 + zeta_int(3) * l2.square() * 21 / 4
        - zeta_int(5) * 99 / 16
        - pi.square() * l2.powi(3) / 3
        - zeta_int(3) * pi.square() / 2
}

fn s6_closed() -> ExtReal {
    -zeta_int(5) * 87 / 16 + ExtReal::pi().square() * zeta_int(3) / 2
}

fn s7_closed() -> ExtReal {
    let (pi, l2) = (ExtReal::pi(), ExtReal::ln2());
    pi.square() * l2.powi(3) * 2 / 3 - l2.square() * zeta_int(3) * 21 / 2 - &l2 * li4() * 24
        - l2.powi(5) * 4 / 5
        - li5() * 24
        + zeta_int(5) * 24
}

fn rows() -> Vec<Row> {
    vec![
        Row {
            name: "int ln(1+e^-u)/4",
            integrand: |u| ell(u) / 4,
            closed: || ExtReal::pi().square() / 48,
        },
        Row {
            name: "int u ln(1+e^-u)",
            integrand: |u| u * ell(u),
            closed: || zeta_int(3) * 3 / 4,
        },
        Row {
            name: "int ln(1+e^-u)^2",
            integrand: |u| ell(u).square(),
            closed: || zeta_int(3) / 4,
        },
        Row {
            name: "int (u ln(1+e^-u) + ln(1+e^-u)^2)/8",
            integrand: |u| {
                let l = ell(u);
                (u * &l + l.square()) / 8
            },
            closed: || zeta_int(3) / 8,
        },
        Row {
            name: "int u^3 e^-u/(1+e^-u)",
            integrand: |u| u.powi(3) * fermi(u),
            closed: || ExtReal::pi().powi(4) * 7 / 120,
        },
        Row {
            name: "int ln(1+e^-u)^3",
            integrand: |u| ell(u).powi(3),
            closed: s2_closed,
        },
        Row {
            name: "int u ln(1+e^-u)^2",
            integrand: |u| u * ell(u).square(),
            closed: s3_closed,
        },
        Row {
            name: "int u^4 e^-u/(1+e^-u)",
            integrand: |u| u.powi(4) * fermi(u),
            closed: || zeta_int(5) * 45 / 2,
        },
        Row {
            name: "int u ln(1+e^-u)^3",
            integrand: |u| u * ell(u).powi(3),
            closed: s5_closed,
        },
        Row {
            name: "int u^3 e^-u ln(1+e^-u)/(1+e^-u)",
            integrand: |u| u.powi(3) * fermi(u) * ell(u),
            closed: s6_closed,
        },
        Row {
            name: "int ln(1+e^-u)^4",
            integrand: |u| ell(u).powi(4),
            closed: s7_closed,
        },
    ]
}

/// Quadrature against closed form for every integral over `[0, ∞)` of
/// the table; failed quadratures mark their row failed.
pub fn corollary_table(quad_tol: &ExtReal, tolerance: &ExtReal) -> Vec<VerificationRecord> {
    rows()
        .par_iter()
        .map(|row| {
            let reference = (row.closed)();
            match integrate_semi_infinite(row.integrand, quad_tol) {
                Ok(q) => VerificationRecord::compare(row.name, &q.value, &reference, tolerance),
                Err(e) => VerificationRecord::failure(row.name, &reference, tolerance, &e.to_string()),
            }
        })
        .collect()
}

/// A constant known in closed form and by an independent numeric route.
#[derive(Clone, Debug)]
pub struct CheckedValue {
    pub closed_form: ExtReal,
    pub numeric: ExtReal,
}

impl CheckedValue {
    pub fn difference(&self) -> ExtReal {
        (&self.closed_form - &self.numeric).abs()
    }
}

#[derive(Clone, Debug)]
pub struct SConstants {
    pub s: [CheckedValue; 7],
    pub t: [CheckedValue; 3],
}

/// Closed forms of `S_1..S_7` assembled from Euler sums, and of `T_1..T_3`.
pub struct SClosedForms {
    pub s: [ExtReal; 7],
    pub t: [ExtReal; 3],
}

pub fn s_closed_forms() -> Result<SClosedForms> {
    let eta5 = zeta_int(5) * 15 / 16;
    let s14 = s_pm_linear(4)?;
    let t3 = t3_quadratic();
    let t2 = s_pm_general(2, 3)? - &eta5;
    let t1 = &t3 + &s14 * 2 - &eta5;
    let pi = ExtReal::pi();
    let s = [
        pi.powi(4) * 7 / 120,
        s2_closed(),
        -s13_mu1() * 2 + pi.powi(4) * 7 / 360,
        zeta_int(5) * 45 / 2,
        -(&t1 + &t2) * 3,
        (-s14 + eta5) * 6,
        s7_closed(),
    ];
    Ok(SClosedForms { s, t: [t1, t2, t3] })
}

/// Oracle for `T_1 = sum (-1)^k H_{k-1}^2 / k^3` or
/// `T_2 = sum (-1)^{k-1} H^{(2)}_{k-1} / k^3`.
fn t_oracle(which: usize, n: usize, tol: &ExtReal) -> Result<ExtReal> {
    if which == 3 {
        return Ok(s_pm_direct(1, 3, SumKind::Quadratic, n, DEFAULT_LEVELS, tol)?.value);
    }
    let mut partial = Vec::with_capacity(n);
    let mut h_prev = ExtReal::zero();
    let mut acc = ExtReal::zero();
    for k in 1..=n as u64 {
        let kk = ExtReal::from_u64(k);
        let term = if which == 1 {
            h_prev.square() / kk.powi(3)
        } else {
            -(&h_prev / kk.powi(3))
        };
        if k % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
        partial.push(acc.clone());
        h_prev += kk.powi(if which == 1 { -1 } else { -2 });
    }
    Ok(averaged_limit(&partial, DEFAULT_LEVELS, tol)?.value)
}

/// Every S- and T-constant, numerically checked: S by quadrature at
/// `quad_tol`, T by direct summation over `oracle_terms` terms.
pub fn s_constants(quad_tol: &ExtReal, oracle_terms: usize) -> Result<SConstants> {
    let closed = s_closed_forms()?;
    let integrands: [Integrand; 7] = [
        |u| u.powi(3) * fermi(u),
        |u| ell(u).powi(3),
        |u| u * ell(u).square(),
        |u| u.powi(4) * fermi(u),
        |u| u * ell(u).powi(3),
        |u| u.powi(3) * fermi(u) * ell(u),
        |u| ell(u).powi(4),
    ];
    let s_numeric: Vec<ExtReal> = integrands
        .par_iter()
        .map(|f| integrate_semi_infinite(f, quad_tol).map(|q| q.value))
        .collect::<Result<_>>()?;
    let oracle_tol = ExtReal::pow10(-12);
    let t_numeric: Vec<ExtReal> = [1usize, 2, 3]
        .par_iter()
        .map(|&w| t_oracle(w, oracle_terms, &oracle_tol))
        .collect::<Result<_>>()?;
    let pair = |c: &ExtReal, n: &ExtReal| CheckedValue {
        closed_form: c.clone(),
        numeric: n.clone(),
    };
    Ok(SConstants {
        s: std::array::from_fn(|i| pair(&closed.s[i], &s_numeric[i])),
        t: std::array::from_fn(|i| pair(&closed.t[i], &t_numeric[i])),
    })
}

/// The assemblies of `I_4` and `I_5` from the S-constants' closed forms.
pub fn assembly_checks(tolerance: &ExtReal) -> Result<Vec<VerificationRecord>> {
    let c = s_closed_forms()?;
    let s = &c.s;
    let i4 = (-&s[0] + &s[1] * 2 + &s[2] * 3) / 48;
    let i5 = (-&s[3] + &s[4] * 2 - &s[5] * 2 + &s[6]) / 96;
    Ok(vec![
        VerificationRecord::compare("I_4 = (-S1 + 2 S2 + 3 S3)/48", &i4, &coeff_i(4)?, tolerance),
        VerificationRecord::compare("I_5 = (-S4 + 2 S5 - 2 S6 + S7)/96", &i5, &coeff_i(5)?, tolerance),
    ])
}

/// `I_3` from the polylog inversion values at 2 against `zeta(3)/8`.
pub fn i3_two_routes() -> Result<VerificationRecord> {
    let l2 = ExtReal::ln2();
    let li2 = li_at_two(2)?;
    let li3 = li_at_two(3)?;
    let re = zeta_int(3) * 11 / 32 + &l2 * &li2.re / 4 - &li3.re / 4;
    let im = ExtReal::pi() * l2.square() / 8 + &l2 * &li2.im / 4 - &li3.im / 4;
    let reference = coeff_i(3)?;
    let diff = (&re - &reference).abs().max(im.abs());
    Ok(VerificationRecord::from_diff(
        "I_3 via inversion values",
        re.to_decimal(),
        reference.to_decimal(),
        &diff,
        &ExtReal::tol_rel(8),
    ))
}

/// `S+-_{1,2}` from the quadrature of `ln(1+e^{-u})^2` against the
/// Euler-sum formula.
pub fn s12_two_routes(quad_tol: &ExtReal) -> Result<VerificationRecord> {
    let integral = integrate_semi_infinite(|u| ell(u).square(), quad_tol)?.value;
    let via_integral = (zeta_int(3) * 3 / 2 - integral) / 2;
    Ok(VerificationRecord::compare(
        "S+-_{1,2} via ln(1+e^-u)^2",
        &via_integral,
        &s_pm_linear(2)?,
        &ExtReal::tol_rel(8),
    ))
}

/// Partial-sum orders that appear in residual tables.
pub const TABLE_ORDERS: [usize; 5] = [0, 2, 3, 4, 5];

#[derive(Clone, Debug)]
pub struct ResidualRow {
    pub n: u64,
    pub value: ExtReal,
    /// `(k, I_{n,k})` for `k` in [`TABLE_ORDERS`].
    pub partial: Vec<(usize, ExtReal)>,
    /// `(k, n^{k+1} (I(n) - I_{n,k}))`, except `k = 0` which is scaled by
    /// `n^2` since `I_1 = 0`.
    pub scaled: Vec<(usize, ExtReal)>,
}

pub fn residual_row(n: u64, tol: &ExtReal) -> Result<ResidualRow> {
    if n < 2 {
        return Err(Error::Domain("residual rows need n >= 2".into()));
    }
    let value = eval_i(n, tol)?;
    let nn = ExtReal::from_u64(n);
    let mut partial = Vec::new();
    let mut scaled = Vec::new();
    for k in TABLE_ORDERS {
        let p = partial_sum_i(n, k)?;
        let power = if k == 0 { 2 } else { k as i32 + 1 };
        scaled.push((k, (&value - &p) * nn.powi(power)));
        partial.push((k, p));
    }
    Ok(ResidualRow {
        n,
        value,
        partial,
        scaled,
    })
}

/// One row per `n`, computed in parallel; failures stay per row.
pub fn residual_table(ns: &[u64], tol: &ExtReal) -> Vec<Result<ResidualRow>> {
    ns.par_iter().map(|&n| residual_row(n, tol)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &ExtReal, b: &ExtReal, k: i32) -> bool {
        (a - b).abs() <= ExtReal::tol_rel(k)
    }

    #[test]
    fn coefficient_values() {
        assert_eq!(coeff_i(0).unwrap(), ExtReal::ratio(3, 4));
        assert!(coeff_i(1).unwrap().is_zero());
        assert_eq!(coeff_i(2).unwrap().to_decimal_digits(13), "0.2056167583560");
        assert_eq!(coeff_i(4).unwrap().to_decimal_digits(9), "-0.101467803");
        assert!(coeff_i(6).is_err());
    }

    #[test]
    fn partial_sums() {
        assert_eq!(partial_sum_i(10, 0).unwrap(), ExtReal::ratio(3, 4));
        let p2 = partial_sum_i(10, 2).unwrap();
        let expect = ExtReal::ratio(3, 4) + ExtReal::pi().square() / 4800;
        assert!(close(&p2, &expect, 0));
        let p3 = partial_sum_i(10, 3).unwrap();
        assert!(close(&p3, &(expect + zeta_int(3) / 8000), 0));
    }

    #[test]
    fn small_n_values() {
        let tol = ExtReal::tol_rel(15);
        assert!(close(&eval_i(1, &tol).unwrap(), &ExtReal::one(), 12));
        let two = ExtReal::from_i64(2);
        let expect = ExtReal::ratio(1, 2) + two.sqrt() * ExtReal::one().asinh() / 4;
        assert!(close(&eval_i(2, &tol).unwrap(), &expect, 12));
    }

    #[test]
    fn large_n_tends_to_three_quarters() {
        let v = eval_i(2000, &default_table_tol()).unwrap();
        let gap = (v - ExtReal::ratio(3, 4)).abs();
        // I_2 / n^2 ≈ 5e-8
        assert!(gap < ExtReal::pow10(-7));
    }

    #[test]
    fn corollary_rows_pass() {
        let table = corollary_table(&ExtReal::tol_rel(15), &ExtReal::tol_rel(12));
        assert_eq!(table.len(), 11);
        for r in &table {
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn closed_forms_printed_values() {
        let c = s_closed_forms().unwrap();
        let pi2 = ExtReal::pi().square();
        assert!(close(&c.s[5], &s6_closed(), 8));
        assert!(close(&c.s[4], &s5_closed(), 8));
        assert!(close(&c.s[2], &s3_closed(), 8));
        let t2 = zeta_int(3) * &pi2 * 5 / 48 - zeta_int(5) * 41 / 32;
        assert!(close(&c.t[1], &t2, 8));
        let (l2, t) = (ExtReal::ln2(), constants());
        let t1 = -t.li_half[&5].clone() * 4 - &l2 * &t.li_half[&4] * 4 - l2.powi(5) * 2 / 15
            - zeta_int(3) * l2.square() * 7 / 4
            + zeta_int(5) * 107 / 32
            + &pi2 * l2.powi(3) / 9
            + zeta_int(3) * &pi2 / 16;
        assert!(close(&c.t[0], &t1, 8));
    }

    #[test]
    fn assemblies_hold() {
        for r in assembly_checks(&ExtReal::tol_rel(8)).unwrap() {
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn numeric_routes_agree() {
        let sc = s_constants(&ExtReal::tol_rel(15), 20_000).unwrap();
        for (i, v) in sc.s.iter().enumerate() {
            assert!(v.difference() <= ExtReal::tol_rel(12), "S_{}", i + 1);
        }
        for (i, v) in sc.t.iter().enumerate() {
            assert!(v.difference() <= ExtReal::pow10(-10), "T_{}", i + 1);
        }
    }

    #[test]
    fn double_derivations() {
        assert!(i3_two_routes().unwrap().pass);
        assert!(s12_two_routes(&ExtReal::tol_rel(15)).unwrap().pass);
    }

    #[test]
    fn leading_residual_at_100() {
        let row = residual_row(100, &default_table_tol()).unwrap();
        let (_, s0) = &row.scaled[0];
        let i2 = coeff_i(2).unwrap();
        let rel = ((s0 - &i2) / &i2).abs();
        assert!(rel < ExtReal::ratio(1, 100));
        assert!(residual_row(1, &default_table_tol()).is_err());
    }
}
