//! Verification records: a computed value, its reference, and the verdict.

use serde::{Deserialize, Serialize};

use crate::numeric::ExtReal;

/// One cross-check. `pass` holds exactly when `abs_diff <= tolerance`; all
/// numbers are decimal strings at working precision.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub name: String,
    pub computed: String,
    pub reference: String,
    pub abs_diff: String,
    pub tolerance: String,
    pub pass: bool,
}

impl VerificationRecord {
    pub fn compare(
        name: impl Into<String>,
        computed: &ExtReal,
        reference: &ExtReal,
        tolerance: &ExtReal,
    ) -> Self {
        let diff = (computed - reference).abs();
        Self::from_diff(name, computed.to_decimal(), reference.to_decimal(), &diff, tolerance)
    }

    /// Record whose values are already rendered (e.g. complex pairs).
    pub fn from_diff(
        name: impl Into<String>,
        computed: String,
        reference: String,
        abs_diff: &ExtReal,
        tolerance: &ExtReal,
    ) -> Self {
        VerificationRecord {
            name: name.into(),
            computed,
            reference,
            abs_diff: abs_diff.to_decimal(),
            tolerance: tolerance.to_decimal(),
            pass: abs_diff <= tolerance,
        }
    }

    /// A row whose computation itself failed.
    pub fn failure(name: impl Into<String>, reference: &ExtReal, tolerance: &ExtReal, reason: &str) -> Self {
        VerificationRecord {
            name: format!("{} [{reason}]", name.into()),
            computed: "nan".into(),
            reference: reference.to_decimal(),
            abs_diff: "inf".into(),
            tolerance: tolerance.to_decimal(),
            pass: false,
        }
    }

    /// Recomputes the verdict from the rendered strings.
    pub fn rederive_pass(&self) -> bool {
        match (ExtReal::parse(&self.abs_diff), ExtReal::parse(&self.tolerance)) {
            (Ok(d), Ok(t)) => d.is_finite() && d <= t,
            _ => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_matches_strings() {
        let a = ExtReal::ratio(1, 3);
        let b = &a + ExtReal::pow10(-30);
        let pass = VerificationRecord::compare("x", &a, &b, &ExtReal::pow10(-29));
        assert!(pass.pass);
        assert!(pass.rederive_pass());
        let fail = VerificationRecord::compare("x", &a, &b, &ExtReal::pow10(-31));
        assert!(!fail.pass);
        assert!(!fail.rederive_pass());
        let broken = VerificationRecord::failure("y", &a, &ExtReal::one(), "boom");
        assert!(!broken.pass && !broken.rederive_pass());
    }
}
