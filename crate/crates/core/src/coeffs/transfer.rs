//! Coefficients `L_{k,n} = [z^n] ln(1/(1-z))^k` and the finite differences
//! `G_{i,j,n} = [z^n] (1-z)^i ln(1/(1-z))^j`, exactly and asymptotically.

use rug::{Integer, Rational};

use super::AsymptoticExpansion;
use crate::error::{Error, Result};
use crate::numeric::{bernoulli, euler_gamma, zeta_int, ExtReal};
use crate::series::PowerSeries;

fn factorial(n: u32) -> Integer {
    Integer::from(Integer::factorial(n))
}

/// `L_{k,n}` for `n = 0..=n_max` from the exact Stirling recurrence
/// `c(n, k) = c(n-1, k-1) + (n-1) c(n-1, k)`: `L_{k,n} = k! c(n, k) / n!`.
pub fn lkn_stirling(k: u32, n_max: usize) -> Vec<Rational> {
    let k = k as usize;
    // row[j] = c(n, j) for the current n
    let mut row = vec![Integer::new(); k + 1];
    row[0] = Integer::from(1);
    let kf = factorial(k as u32);
    let mut n_fact = Integer::from(1);
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(Rational::from(if k == 0 { 1 } else { 0 }));
    for n in 1..=n_max {
        for j in (0..=k).rev() {
            let stay = Integer::from(&row[j] * (n as u64 - 1));
            row[j] = if j == 0 {
                stay
            } else {
                stay + &row[j - 1]
            };
        }
        n_fact *= n as u64;
        out.push(Rational::from((Integer::from(&row[k] * &kf), n_fact.clone())));
    }
    out
}

/// `L_{k,n}` for `n = 0..=n_max` as the coefficients of the `k`-th power of
/// `sum_{j>=1} z^j / j`.
pub fn lkn_series(k: u32, n_max: usize) -> Vec<ExtReal> {
    let l = PowerSeries::from_fn(n_max, |j| {
        if j == 0 {
            ExtReal::zero()
        } else {
            ExtReal::ratio(1, j as i64)
        }
    });
    l.powi(k).into_coeffs()
}

/// `L_{k,n}` for `n = 0..=n_max` by both routes, which must agree.
///
/// # Panics
/// If the two routes differ beyond rounding, which means an arithmetic bug.
pub fn exact_lkn_table(k: u32, n_max: usize) -> Vec<ExtReal> {
    let exact = lkn_stirling(k, n_max);
    let series = lkn_series(k, n_max);
    exact
        .iter()
        .zip(series)
        .enumerate()
        .map(|(n, (e, s))| {
            let e = ExtReal::from_rational(e);
            let tol = ExtReal::tol_rel(3) * e.abs().max(ExtReal::pow10(-300));
            assert!(
                (&e - &s).abs() <= tol,
                "L_{{{k},{n}}}: Stirling and series routes disagree"
            );
            e
        })
        .collect()
}

pub fn exact_lkn(k: u32, n: usize) -> ExtReal {
    exact_lkn_table(k, n).pop().expect("table has n + 1 entries")
}

/// `H_{n-1} = sum_{j<n} 1/j` as an expansion in `ln n` and `1/n`.
fn harmonic_shifted(order: u32) -> AsymptoticExpansion {
    let mut e = AsymptoticExpansion::ln_n(order);
    e.add_term(0, 0, euler_gamma());
    e.add_term(0, 1, ExtReal::ratio(-1, 2));
    for k in 1..=order / 2 {
        let b = ExtReal::from_rational(&bernoulli(2 * k as usize));
        e.add_term(0, 2 * k, -b / (2 * k as i64));
    }
    e
}

/// `H^{(s)}_{n-1}` for `s >= 2`: `zeta(s)` minus the Euler-Maclaurin tail
/// `sum_{j>=n} j^{-s}`.
fn harmonic_power_shifted(s: u32, order: u32) -> AsymptoticExpansion {
    let mut e = AsymptoticExpansion::constant(zeta_int(s as i32), order);
    e.add_term(0, s - 1, -ExtReal::one() / (s as i64 - 1));
    e.add_term(0, s, ExtReal::ratio(-1, 2));
    let mut k = 1u32;
    while s + 2 * k - 1 <= order {
        let mut rising = Integer::from(1);
        for t in 0..(2 * k - 1) {
            rising *= s + t;
        }
        let c = (bernoulli(2 * k as usize) * rising) / factorial(2 * k);
        e.add_term(0, s + 2 * k - 1, -ExtReal::from_rational(&c));
        k += 1;
    }
    e
}

/// Asymptotic expansion of `L_{k,n}` through `1/n^{max_order}`.
///
/// `L_{k,n} = (k!/n) e_{k-1}(1, 1/2, .., 1/(n-1))` with the elementary
/// symmetric function obtained from the power sums `H^{(s)}_{n-1}` by
/// Newton's identities.
pub fn asym_lkn(k: u32, max_order: u32) -> Result<AsymptoticExpansion> {
    if k == 0 {
        return Err(Error::Domain("L_{0,n} vanishes for n >= 1; use k >= 1".into()));
    }
    if max_order == 0 {
        return Ok(AsymptoticExpansion::zero(0));
    }
    let inner = max_order - 1;
    let p: Vec<AsymptoticExpansion> = (1..k)
        .map(|s| {
            if s == 1 {
                harmonic_shifted(inner)
            } else {
                harmonic_power_shifted(s, inner)
            }
        })
        .collect();
    let mut e = vec![AsymptoticExpansion::constant(ExtReal::one(), inner)];
    for r in 1..k as usize {
        let mut acc = AsymptoticExpansion::zero(inner);
        for i in 1..=r {
            let term = &e[r - i] * &p[i - 1];
            acc = if i % 2 == 1 { &acc + &term } else { &acc - &term };
        }
        e.push(acc.scale(&ExtReal::ratio(1, r as i64)));
    }
    let kf = ExtReal::from_integer(&factorial(k));
    Ok(e[k as usize - 1].shift(1).scale(&kf))
}

fn binom(n: u32, k: u32) -> ExtReal {
    ExtReal::from_integer(&Integer::from(Integer::binomial_u(n, k)))
}

/// Re-expands `f(n - t)` around `n` for an expansion `f`.
fn shifted(f: &AsymptoticExpansion, t: u32) -> AsymptoticExpansion {
    let order = f.max_order();
    if t == 0 {
        return f.clone();
    }
    let tt = ExtReal::from_u64(u64::from(t));
    // ln(1 - t/n) = -sum t^r / (r n^r)
    let mut lambda = AsymptoticExpansion::zero(order);
    for r in 1..=order {
        lambda.add_term(0, r, -tt.powi(r as i32) / (r as i64));
    }
    let ln_n = AsymptoticExpansion::ln_n(order);
    let mut out = AsymptoticExpansion::zero(order);
    for (a, b, c) in f.terms() {
        // (ln n + lambda)^a
        let mut logs = AsymptoticExpansion::zero(order);
        for s in 0..=a {
            let part = &ln_n.powi(a - s) * &lambda.powi(s);
            logs = &logs + &part.scale(&binom(a, s));
        }
        // (1 - t/n)^{-b}
        let mut geom = AsymptoticExpansion::zero(order);
        for r in 0..=order.saturating_sub(b) {
            let coeff = if b == 0 {
                if r == 0 { ExtReal::one() } else { ExtReal::zero() }
            } else {
                binom(b + r - 1, r) * tt.powi(r as i32)
            };
            geom.add_term(0, r, coeff);
        }
        let term = (&logs * &geom).shift(b).scale(c);
        out = &out + &term;
    }
    out
}

/// Asymptotic expansion of `G_{i,j,n} = sum_t C(i,t) (-1)^t L_{j,n-t}`
/// through `1/n^{max_order}`; cancelled coefficients are pruned.
pub fn compute_g(i: u32, j: u32, max_order: u32) -> Result<AsymptoticExpansion> {
    if j == 0 {
        // [z^n] (1-z)^i vanishes for n > i
        return Ok(AsymptoticExpansion::zero(max_order));
    }
    let l = asym_lkn(j, max_order)?;
    let mut out = AsymptoticExpansion::zero(max_order);
    for t in 0..=i {
        let term = shifted(&l, t).scale(&binom(i, t));
        out = if t % 2 == 0 { &out + &term } else { &out - &term };
    }
    Ok(out.prune(&ExtReal::tol_rel(10)))
}

/// `G_{i,j,n}` from exact `L` values.
pub fn exact_g(i: u32, j: u32, n: usize) -> ExtReal {
    let table = exact_lkn_table(j, n);
    let mut acc = ExtReal::zero();
    for t in 0..=i.min(n as u32) {
        let term = &table[n - t as usize] * binom(i, t);
        if t % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}
