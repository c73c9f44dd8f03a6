//! Tanh-sinh (double-exponential) quadrature at working precision.
//!
//! `x = tanh(π/2 · sinh t)` maps `t ∈ ℝ` onto `(-1, 1)` and the trapezoid
//! rule in `t` converges near-exponentially for integrands analytic in the
//! open interval, endpoint singularities included. Each refinement level
//! halves the step and only evaluates the new odd nodes.
//!
//! Nodes are stored as the distance `d = 1 - x` from the endpoint, computed
//! without cancellation, so integrands can resolve points that are far
//! closer to an endpoint than the working precision could express as `x`.

use std::sync::OnceLock;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numeric::{precision, ExtReal};

/// Number of step halvings after the unit step before giving up.
pub const MAX_LEVEL: usize = 12;

/// Levels always computed before the convergence test is trusted.
const MIN_LEVEL: usize = 3;

#[derive(Clone, Debug)]
pub struct QuadResult {
    pub value: ExtReal,
    /// Difference between the last two refinement levels.
    pub error_estimate: ExtReal,
    pub evaluations: usize,
}

/// An interior point of `[a, b]` together with its distances to both ends.
#[derive(Clone, Debug)]
pub struct Abscissa {
    pub x: ExtReal,
    pub from_left: ExtReal,
    pub from_right: ExtReal,
}

struct Node {
    /// `1 - tanh(π/2 sinh t)` for `t > 0`.
    d: ExtReal,
    weight: ExtReal,
}

struct Level {
    nodes: Vec<Node>,
}

fn level(k: usize) -> &'static Level {
    static LEVELS: [OnceLock<Level>; MAX_LEVEL + 1] = [const { OnceLock::new() }; MAX_LEVEL + 1];
    LEVELS[k].get_or_init(|| generate_level(k))
}

/// New nodes of level `k`: every `t = j h` for `k = 0`, odd `j` otherwise.
fn generate_level(k: usize) -> Level {
    let h = ExtReal::from_i64(2).powi(-(k as i32));
    let (start, step) = if k == 0 { (1u64, 1u64) } else { (1, 2) };
    let cutoff = ExtReal::from_i64(2).powi(-(precision::bits() as i32 + 24));
    let two_pi = ExtReal::pi() * 2;
    let mut nodes = Vec::new();
    let mut j = start;
    loop {
        let t = &h * (j as i64);
        let q = (-(ExtReal::pi() * t.sinh())).exp();
        let one_q = ExtReal::one() + &q;
        let d = &q * 2 / &one_q;
        let weight = &two_pi * t.cosh() * &q / one_q.square();
        if weight < cutoff {
            break;
        }
        nodes.push(Node { d, weight });
        j += step;
    }
    Level { nodes }
}

fn check_tolerance(tol: &ExtReal) -> Result<()> {
    if *tol < ExtReal::tol_rel(5) {
        return Err(Error::Domain(format!(
            "quadrature tolerance {} is below 10^(5-P)",
            tol.to_decimal_digits(4)
        )));
    }
    Ok(())
}

/// `∫_a^b f(x) dx` for `f` continuous on the open interval.
pub fn integrate_finite<F>(f: F, a: &ExtReal, b: &ExtReal, tol: &ExtReal) -> Result<QuadResult>
where
    F: Fn(&ExtReal) -> ExtReal + Sync,
{
    integrate_finite_abscissa(|p: &Abscissa| f(&p.x), a, b, tol)
}

/// Like [`integrate_finite`], but the integrand sees each point's distance
/// to both endpoints as well.
pub fn integrate_finite_abscissa<F>(
    f: F,
    a: &ExtReal,
    b: &ExtReal,
    tol: &ExtReal,
) -> Result<QuadResult>
where
    F: Fn(&Abscissa) -> ExtReal + Sync,
{
    check_tolerance(tol)?;
    let half = (b - a) / 2;
    let width = b - a;
    let mid = Abscissa {
        x: a + &half,
        from_left: half.clone(),
        from_right: half.clone(),
    };
    let pair = |node: &Node| -> ExtReal {
        let near = &half * &node.d;
        let far = &width - &near;
        let left = Abscissa {
            x: a + &near,
            from_left: near.clone(),
            from_right: far.clone(),
        };
        let right = Abscissa {
            x: b - &near,
            from_left: far,
            from_right: near,
        };
        &node.weight * (f(&left) + f(&right))
    };

    let mut sum = f(&mid) * (ExtReal::pi() / 2);
    let mut evaluations = 1;
    let mut previous: Option<ExtReal> = None;
    let mut last_diff = ExtReal::zero();
    for k in 0..=MAX_LEVEL {
        let nodes = &level(k).nodes;
        let contributions: Vec<ExtReal> = nodes.par_iter().map(pair).collect();
        evaluations += 2 * nodes.len();
        sum += contributions.into_iter().sum::<ExtReal>();
        let estimate = &half * &sum * ExtReal::from_i64(2).powi(-(k as i32));
        if let Some(prev) = previous {
            last_diff = (&estimate - &prev).abs();
            if k >= MIN_LEVEL && last_diff <= *tol {
                return Ok(QuadResult {
                    value: estimate,
                    error_estimate: last_diff,
                    evaluations,
                });
            }
        }
        previous = Some(estimate);
    }
    Err(Error::QuadratureNonConvergence {
        levels: MAX_LEVEL,
        estimate: previous.map(|p| p.to_decimal()).unwrap_or_default(),
        difference: last_diff.to_decimal_digits(6),
    })
}

/// `∫_0^∞ f(u) du` for integrands bounded by a polynomial times `e^{-u}`,
/// through `u = -ln t` on `(0, 1]`.
pub fn integrate_semi_infinite<F>(f: F, tol: &ExtReal) -> Result<QuadResult>
where
    F: Fn(&ExtReal) -> ExtReal + Sync,
{
    let half = ExtReal::ratio(1, 2);
    integrate_finite_abscissa(
        |p: &Abscissa| {
            let t = &p.from_left;
            let u = if *t < half {
                -t.ln()
            } else {
                -(-&p.from_right).ln_1p()
            };
            f(&u) / t
        },
        &ExtReal::zero(),
        &ExtReal::one(),
        tol,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::zeta_int;

    fn tol() -> ExtReal {
        ExtReal::tol_rel(15)
    }

    #[test]
    fn linear_integrand() {
        let r = integrate_finite(|x| x.clone(), &ExtReal::zero(), &ExtReal::one(), &tol()).unwrap();
        assert!((r.value - ExtReal::ratio(1, 2)).abs() < ExtReal::tol_rel(10));
    }

    #[test]
    fn constant_integrand_on_shifted_interval() {
        let r = integrate_finite(
            |_| ExtReal::one(),
            &ExtReal::from_i64(-3),
            &ExtReal::ratio(5, 2),
            &tol(),
        )
        .unwrap();
        assert!((r.value - ExtReal::ratio(11, 2)).abs() < ExtReal::tol_rel(10));
    }

    #[test]
    fn n_two_closed_form() {
        // ∫_0^1 sqrt(x^2 + (1-x)^2) dx = 1/2 + sqrt(2) asinh(1) / 4 ≈ 0.81161
        let r = integrate_finite(
            |x| (x.square() + (ExtReal::one() - x).square()).sqrt(),
            &ExtReal::zero(),
            &ExtReal::one(),
            &tol(),
        )
        .unwrap();
        let expect = ExtReal::ratio(1, 2) + ExtReal::from_i64(2).sqrt() * ExtReal::one().asinh() / 4;
        assert!(expect.to_decimal().starts_with("0.81161"));
        assert!((r.value - expect).abs() < ExtReal::tol_rel(12));
    }

    #[test]
    fn log_endpoint_singularity() {
        // ∫_0^1 ln x dx = -1
        let r = integrate_finite_abscissa(
            |p| p.from_left.ln(),
            &ExtReal::zero(),
            &ExtReal::one(),
            &tol(),
        )
        .unwrap();
        assert!((r.value + 1).abs() < ExtReal::tol_rel(12));
    }

    #[test]
    fn semi_infinite_exponential() {
        let r = integrate_semi_infinite(|u| (-u).exp(), &tol()).unwrap();
        assert!((r.value - 1).abs() < ExtReal::tol_rel(12));
    }

    #[test]
    fn semi_infinite_fermi_dirac_moments() {
        let pi = ExtReal::pi();
        let r = integrate_semi_infinite(
            |u| {
                let e = (-u).exp();
                u.powi(3) * &e / (ExtReal::one() + &e)
            },
            &tol(),
        )
        .unwrap();
        assert!((r.value - pi.powi(4) * 7 / 120).abs() < ExtReal::tol_rel(12));
        let r = integrate_semi_infinite(
            |u| {
                let e = (-u).exp();
                u.powi(4) * &e / (ExtReal::one() + &e)
            },
            &tol(),
        )
        .unwrap();
        assert!((r.value - zeta_int(5) * 45 / 2).abs() < ExtReal::tol_rel(12));
    }

    #[test]
    fn truncation_matches_substitution() {
        // ∫_0^∞ ln(1+e^{-u}) du against ∫_0^80 of the same plus the tail
        // bound; the tail is below e^{-80} ≈ 1.8e-35, so compare at that scale
        let f = |u: &ExtReal| (-u).exp().ln_1p();
        let full = integrate_semi_infinite(f, &tol()).unwrap().value;
        let upto = integrate_finite(f, &ExtReal::zero(), &ExtReal::from_i64(80), &tol())
            .unwrap()
            .value;
        let tail_bound = ExtReal::from_i64(-80).exp();
        let gap = &full - &upto;
        assert!(!gap.is_negative());
        assert!(gap <= tail_bound);
        // and the semi-infinite result is the closed form pi^2/12
        let expect = ExtReal::pi().square() / 12;
        assert!((full - expect).abs() < ExtReal::tol_rel(12));
    }

    #[test]
    fn rejects_tolerance_below_precision() {
        let r = integrate_finite(|x| x.clone(), &ExtReal::zero(), &ExtReal::one(), &ExtReal::tol_rel(0));
        assert!(matches!(r, Err(Error::Domain(_))));
    }

    #[test]
    fn non_convergence_reports_best_estimate() {
        // a jump inside the interval limits the rule to first order
        let third = ExtReal::ratio(1, 3);
        let r = integrate_finite(
            |x| if *x < third { ExtReal::zero() } else { ExtReal::one() },
            &ExtReal::zero(),
            &ExtReal::one(),
            &tol(),
        );
        match r {
            Err(Error::QuadratureNonConvergence { levels, estimate, .. }) => {
                assert_eq!(levels, MAX_LEVEL);
                let est = ExtReal::parse(&estimate).unwrap();
                assert!((est - ExtReal::ratio(2, 3)).abs() < ExtReal::pow10(-3));
            }
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }
}
