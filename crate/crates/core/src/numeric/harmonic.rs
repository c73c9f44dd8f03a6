use super::constants::{euler_gamma, zeta_int};
use super::ExtReal;
use crate::error::{Error, Result};

/// Generalised harmonic number `H_n^{(p)} = sum_{j=1}^{n} 1/j^p`.
///
/// # Panics
/// If `n == 0` or `p == 0`.
pub fn harmonic(n: u64, p: u32) -> ExtReal {
    assert!(n >= 1 && p >= 1, "harmonic(n, p) needs n >= 1 and p >= 1");
    harmonic_from_zero(n, p)
}

/// Same as [`harmonic`] but allows the empty sum `n = 0`.
pub(crate) fn harmonic_from_zero(n: u64, p: u32) -> ExtReal {
    let mut acc = ExtReal::zero();
    for j in 1..=n {
        acc += ExtReal::from_u64(j).powi(-(p as i32));
    }
    acc
}

/// Polygamma `psi(k, n)` at a positive integer, for `k` in `{0, 1, 2}`,
/// through harmonic numbers.
pub fn polygamma_int(k: u32, n: u64) -> Result<ExtReal> {
    if n == 0 {
        return Err(Error::Domain("polygamma at a non-positive integer".into()));
    }
    match k {
        0 => Ok(harmonic_from_zero(n - 1, 1) - euler_gamma()),
        1 => Ok(zeta_int(2) - harmonic_from_zero(n - 1, 2)),
        2 => Ok(harmonic_from_zero(n - 1, 3) * 2 - zeta_int(3) * 2),
        _ => Err(Error::Domain(format!("polygamma order {k} is not supported"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_harmonic_numbers() {
        assert_eq!(harmonic(1, 1), ExtReal::one());
        assert!((harmonic(3, 1) - ExtReal::ratio(11, 6)).abs() < ExtReal::tol_rel(0));
        assert_eq!(harmonic(2, 2), ExtReal::ratio(5, 4));
    }

    #[test]
    #[should_panic]
    fn harmonic_rejects_zero() {
        harmonic(0, 1);
    }

    #[test]
    fn polygamma_values() {
        let g = euler_gamma();
        assert_eq!(polygamma_int(0, 1).unwrap(), -g.clone());
        let pi2_6 = ExtReal::pi().square() / 6;
        assert!((polygamma_int(1, 1).unwrap() - pi2_6).abs() < ExtReal::tol_rel(0));
        let psi3 = polygamma_int(0, 3).unwrap();
        assert!((psi3 - (ExtReal::ratio(3, 2) - g)).abs() < ExtReal::tol_rel(0));
        assert!(polygamma_int(3, 2).is_err());
        assert!(polygamma_int(0, 0).is_err());
    }

    #[test]
    fn trigamma_recurrence() {
        // psi(1, n+1) = psi(1, n) - 1/n^2
        let a = polygamma_int(1, 10).unwrap();
        let b = polygamma_int(1, 11).unwrap() + ExtReal::from_i64(10).powi(-2);
        assert!((a - b).abs() < ExtReal::tol_rel(0));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn consecutive_difference_is_one_term(n in 2u64..10_000, p in 1u32..=5) {
            let d = harmonic(n, p) - harmonic(n - 1, p);
            let term = ExtReal::from_u64(n).powi(-(p as i32));
            prop_assert!((d - term).abs() <= ExtReal::tol_rel(0));
        }
    }
}
