//! Coefficients of `S_0(z) = zeta(m) / (zeta(m) - Li_m(z))`: exact values by
//! series division, and their asymptotics by singularity analysis at
//! `z = 1`.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::transfer::compute_g;
use super::AsymptoticExpansion;
use crate::error::{Error, Result};
use crate::numeric::{euler_gamma, zeta_int, ExtReal};
use crate::polylog::li_singular_expansion;
use crate::series::{BivariatePoly, PowerSeries};

/// Weights the pipeline supports.
pub const SUPPORTED_WEIGHTS: [u32; 3] = [3, 4, 6];

/// Default depth of the assembled expansion.
pub const DEFAULT_MAX_ORDER: u32 = 5;

/// Orders beyond this one are emitted but have no independent reference.
pub const REFERENCE_DEPTH: u32 = 3;

fn check_weight(m: u32) -> Result<()> {
    if SUPPORTED_WEIGHTS.contains(&m) {
        Ok(())
    } else {
        Err(Error::Domain(format!("weight m = {m} is outside {SUPPORTED_WEIGHTS:?}")))
    }
}

/// `S_0, .., S_{n_max}`.
pub fn exact_sn(m: u32, n_max: usize) -> Result<Vec<ExtReal>> {
    if m < 2 {
        return Err(Error::Domain(format!("weight must be >= 2, got {m}")));
    }
    let zeta = zeta_int(m as i32);
    let den = PowerSeries::from_fn(n_max, |k| {
        if k == 0 {
            zeta.clone()
        } else {
            -ExtReal::from_u64(k as u64).powi(-(m as i32))
        }
    });
    Ok(den.recip()?.scale(&zeta).into_coeffs())
}

/// The expansion `S(eps, L)` of `S_0(1 - eps)`, known through `eps^eps_order`.
///
/// `w = -ln(1 - eps)` and `ln w = -L + ln(w/eps)` are substituted into the
/// expansion of `Li_m` at 1; the reciprocal is taken with `L` as a symbol.
pub fn derive_s(m: u32, eps_order: u32) -> Result<BivariatePoly> {
    if eps_order < 1 {
        return Err(Error::Domain("eps_order must be at least 1".into()));
    }
    let k = eps_order as usize + 2;
    let li = li_singular_expansion(m, m.max(k as u32))?;
    // w / eps = sum_{r>=0} eps^r / (r + 1)
    let w_over_eps = PowerSeries::from_fn(k, |r| ExtReal::ratio(1, r as i64 + 1));
    let ln_ratio = (&w_over_eps - &PowerSeries::one(k)).log1p()?;
    let w = BivariatePoly::from_eps_series(&w_over_eps, k as i32).shift_eps(1).truncate(k as i32);
    let ln_w = &BivariatePoly::monomial(ExtReal::from_i64(-1), 0, 1, k as i32)
        + &BivariatePoly::from_eps_series(&ln_ratio, k as i32);

    // zeta(m) - Li_m(w): every term except the constant, negated
    let mut den = BivariatePoly::zero(k as i32);
    let mut w_pow = w.clone();
    for j in 1..=li.w_order {
        let plain = li.coeff(j, 0);
        if !plain.is_zero() {
            den = &den - &w_pow.scale(&plain);
        }
        let log_part = li.coeff(j, 1);
        if !log_part.is_zero() {
            den = &den - &(&w_pow * &ln_w).scale(&log_part);
        }
        w_pow = &w_pow * &w;
        if w_pow.min_eps_degree().is_none_or(|d| d > k as i32) {
            break;
        }
    }
    let den = den.truncate(k as i32);
    let s = den.recip_graded()?.scale(&zeta_int(m as i32));
    Ok(s.truncate(eps_order as i32))
}

/// `D_{i,j} = [eps^i L^j] S(eps, L)` for `i <= eps_order`, coefficients at
/// the rounding level removed.
pub fn derive_d(m: u32, eps_order: u32) -> Result<BTreeMap<(i32, u32), ExtReal>> {
    check_weight(m)?;
    if eps_order < 3 {
        return Err(Error::Domain("derive_d needs eps_order >= 3".into()));
    }
    let s = derive_s(m, eps_order)?;
    let tol = ExtReal::tol_rel(10);
    Ok(s.terms()
        .filter(|(_, _, c)| c.abs() > tol)
        .map(|(i, j, c)| ((i, j), c.clone()))
        .collect())
}

#[derive(Clone, Debug)]
pub struct CoeffPipelineResult {
    pub m: u32,
    pub max_order: u32,
    pub d: BTreeMap<(i32, u32), ExtReal>,
    pub g: BTreeMap<(u32, u32), AsymptoticExpansion>,
    /// `T = D_{-1,0} + sum_{i>=0, j>=1} D_{i,j} G_{i,j}`.
    pub t: AsymptoticExpansion,
    /// `C_{n,k}`, the truncation of `T` after `1/n^k`, for `k = 0..=max_order`.
    pub c: Vec<AsymptoticExpansion>,
}

/// Assembles the asymptotic expansion of `S_n` through `1/n^{max_order}`.
///
/// `G_{i,j}` starts at `1/n^{i+1}`, so `D` is needed through
/// `eps^{max_order - 1}`.
pub fn asym_sn(m: u32, max_order: u32) -> Result<CoeffPipelineResult> {
    check_weight(m)?;
    if max_order == 0 {
        return Err(Error::Domain("max_order must be at least 1".into()));
    }
    let d = derive_d(m, (max_order - 1).max(3))?;
    let keys: Vec<(u32, u32)> = d
        .keys()
        .filter(|&&(i, j)| i >= 0 && j >= 1 && (i as u32) < max_order)
        .map(|&(i, j)| (i as u32, j))
        .collect();
    let g: BTreeMap<(u32, u32), AsymptoticExpansion> = keys
        .par_iter()
        .map(|&(i, j)| compute_g(i, j, max_order).map(|e| ((i, j), e)))
        .collect::<Result<_>>()?;
    let mut t = AsymptoticExpansion::constant(
        d.get(&(-1, 0)).cloned().unwrap_or_else(ExtReal::zero),
        max_order,
    );
    for (&(i, j), ge) in &g {
        t = &t + &ge.scale(&d[&(i as i32, j)]);
    }
    let t = t.prune(&ExtReal::tol_rel(10));
    let c = (0..=max_order).map(|k| t.truncate(k)).collect();
    Ok(CoeffPipelineResult {
        m,
        max_order,
        d,
        g,
        t,
        c,
    })
}

#[derive(Clone, Debug)]
pub struct CompareRow {
    pub n: u64,
    pub exact: ExtReal,
    /// `C_{n,k}` for `k = 0..=k_max`.
    pub truncations: Vec<ExtReal>,
    /// `S_n - C_{n,k}`.
    pub residuals: Vec<ExtReal>,
}

/// Exact coefficients against the truncations `C_{n,0..=k_max}`.
pub fn compare_table(m: u32, n_values: &[u64], k_max: u32) -> Result<Vec<CompareRow>> {
    let pipeline = asym_sn(m, k_max.max(1))?;
    let n_max = n_values.iter().copied().max().unwrap_or(0) as usize;
    let exact = exact_sn(m, n_max)?;
    n_values
        .iter()
        .map(|&n| {
            if n == 0 {
                return Err(Error::Domain("asymptotic rows need n >= 1".into()));
            }
            let nn = ExtReal::from_u64(n);
            let s = exact[n as usize].clone();
            let truncations: Vec<ExtReal> = (0..=k_max as usize).map(|k| pipeline.c[k].eval(&nn)).collect();
            let residuals = truncations.iter().map(|c| &s - c).collect();
            Ok(CompareRow {
                n,
                exact: s,
                truncations,
                residuals,
            })
        })
        .collect()
}

/// Closed forms of the `m = 3` expansion `S(eps, L)` through `eps^2`,
/// keyed by `(i, j)`.
pub fn m3_reference_s() -> BTreeMap<(i32, u32), ExtReal> {
    let z3 = zeta_int(3);
    let pi = ExtReal::pi();
    let p = |k: i32| pi.powi(k);
    let over8 = |v: ExtReal| &z3 * v / (p(8) * 8);
    BTreeMap::from([
        ((-1, 0), &z3 * 6 / p(2)),
        ((0, 0), &z3 * (ExtReal::from_i64(27) / p(4) - ExtReal::from_i64(3) / p(2))),
        ((0, 1), &z3 * 18 / p(4)),
        ((1, 0), over8(-p(6) * 4 - p(4) * 48 + p(2) * 972)),
        ((1, 1), &z3 * 162 / p(6)),
        ((1, 2), &z3 * 54 / p(6)),
        ((2, 0), over8(-p(6) * 2 - p(4) * 19 + p(2) * 54 + 4374)),
        ((2, 1), &z3 * (p(2) * 10 + 243) * 9 / (p(8) * 2)),
        ((2, 2), &z3 * (p(2) + 27) * 27 / p(8)),
        ((2, 3), &z3 * 162 / p(8)),
    ])
}

/// Reference coefficients of the `m = 3` asymptotics through `1/n^3`,
/// keyed by `(a, b)` for `ln(n)^a / n^b`.
pub fn m3_reference_t() -> BTreeMap<(u32, u32), ExtReal> {
    let z3 = zeta_int(3);
    let pi = ExtReal::pi();
    let g = euler_gamma();
    let pi2 = pi.square();
    let pi8 = pi.powi(8);
    let k = |v: ExtReal| &z3 * 3 * v / &pi8;
    BTreeMap::from([
        ((0, 0), &z3 * 6 / &pi2),
        ((0, 1), &z3 * 18 / pi.powi(4)),
        ((0, 2), k(-(&pi2 * 18) - &pi2 * &g * 36)),
        ((1, 2), k(-(&pi2 * 36))),
        ((0, 3), k(-(&pi2 * 42) - 405 + g.square() * 324)),
        ((1, 3), k(&g * 648)),
        ((2, 3), k(ExtReal::from_i64(324))),
    ])
}

/// Reference coefficients for `m = 4` through `1/n^3` and the leading
/// terms for `m = 6` through `1/n^4`, keyed by `(a, b)`; absent keys are
/// zero.
pub fn reference_t(m: u32) -> Option<BTreeMap<(u32, u32), ExtReal>> {
    let pi = ExtReal::pi();
    match m {
        3 => Some(m3_reference_t()),
        4 => {
            let z3 = zeta_int(3);
            Some(BTreeMap::from([
                ((0, 0), pi.powi(4) / (&z3 * 90)),
                ((0, 2), pi.powi(4) / (z3.square() * 540)),
                ((0, 3), -pi.powi(6) / (z3.powi(3) * 1620)),
            ]))
        }
        6 => {
            let z5 = zeta_int(5);
            Some(BTreeMap::from([
                ((0, 0), pi.powi(6) / (&z5 * 945)),
                ((0, 4), pi.powi(6) / (z5.square() * 18900)),
            ]))
        }
        _ => None,
    }
}

/// Depth through which [`reference_t`] is complete.
pub fn reference_depth(m: u32) -> u32 {
    if m == 6 {
        4
    } else {
        REFERENCE_DEPTH
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &ExtReal, b: &ExtReal, k: i32) -> bool {
        (a - b).abs() <= ExtReal::tol_rel(k)
    }

    #[test]
    fn exact_first_coefficients() {
        let s = exact_sn(3, 100).unwrap();
        assert_eq!(s[0], ExtReal::one());
        assert!(close(&s[1], &zeta_int(3).recip(), 0));
        assert_eq!(s[100].to_decimal_digits(4), "0.7329");
    }

    #[test]
    fn m3_expansion_matches_reference() {
        let s = derive_s(3, 2).unwrap();
        for ((i, j), v) in m3_reference_s() {
            assert!(close(&s.coeff(i, j), &v, 8), "D_{{{i},{j}}}");
        }
        // nothing beyond the reference terms through eps^2
        for (i, j, c) in s.terms() {
            assert!(m3_reference_s().contains_key(&(i, j)) || c.abs() <= ExtReal::tol_rel(10));
        }
    }

    #[test]
    fn derive_d_named_values() {
        let d = derive_d(3, 3).unwrap();
        let pi = ExtReal::pi();
        assert!(close(&d[&(0, 1)], &(zeta_int(3) * 18 / pi.powi(4)), 8));
        let m4 = derive_d(4, 3).unwrap();
        assert!(close(&m4[&(-1, 0)], &(pi.powi(4) / (zeta_int(3) * 90)), 8));
        assert!(!m4.contains_key(&(0, 1)));
        assert!(derive_d(5, 3).is_err());
        assert!(derive_d(3, 2).is_err());
    }

    #[test]
    fn assembled_expansions_match_references() {
        for m in SUPPORTED_WEIGHTS {
            let r = asym_sn(m, DEFAULT_MAX_ORDER).unwrap();
            let reference = reference_t(m).unwrap();
            let depth = reference_depth(m);
            for (a, b, c) in r.t.terms().filter(|&(_, b, _)| b <= depth) {
                let want = reference.get(&(a, b)).cloned().unwrap_or_else(ExtReal::zero);
                assert!(close(c, &want, 8), "m = {m}: ln^{a} n / n^{b}");
            }
            for (&(a, b), v) in &reference {
                assert!(close(&r.t.coeff(a, b), v, 8), "m = {m}: missing ln^{a} n / n^{b}");
            }
            assert_eq!(r.c.len(), DEFAULT_MAX_ORDER as usize + 1);
        }
    }

    #[test]
    fn leading_constant_digits() {
        let r = asym_sn(3, 3).unwrap();
        // 6 zeta(3) / pi^2 = 0.73076296940143...
        assert_eq!(r.c[0].coeff(0, 0).to_decimal_digits(10), "0.7307629694");
    }

    #[test]
    fn m3_remainder_approaches_next_log_coefficient() {
        // |S_n - C_{n,3}| n^4 / ln^3 n tends to |[ln^3 n / n^4] T| from below
        let r = asym_sn(3, 4).unwrap();
        let limit = r.t.coeff(3, 4).abs();
        let rows = compare_table(3, &[50, 100, 200, 300, 800], 3).unwrap();
        let scaled: Vec<ExtReal> = rows
            .iter()
            .map(|row| {
                let n = ExtReal::from_u64(row.n);
                row.residuals[3].abs() * n.powi(4) / n.ln().powi(3)
            })
            .collect();
        for w in scaled.windows(2) {
            assert!(w[0] <= w[1], "{scaled:?}");
        }
        assert!(scaled.iter().all(|v| *v <= limit));
        assert!((&limit - &scaled[4]) / &limit < ExtReal::ratio(1, 5));
    }

    #[test]
    fn m4_converges_like_inverse_square() {
        let rows = compare_table(4, &[50, 100], 0).unwrap();
        let ratio = (rows[0].residuals[0].abs() / rows[1].residuals[0].abs()).to_f64();
        assert!((3.4..=4.6).contains(&ratio), "{ratio}");
    }

    #[test]
    fn m3_difference_at_100() {
        let rows = compare_table(3, &[100], 0).unwrap();
        let d = rows[0].residuals[0].to_f64();
        assert!((d - 2.2e-3).abs() < 0.1e-3, "{d}");
    }
}
