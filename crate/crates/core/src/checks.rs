//! Acceptance criteria as lists of verification records, shared by the
//! acceptance binary and the `verify-all` command.

use rayon::prelude::*;

use crate::coeffs::pipeline::{m3_reference_s, reference_depth, reference_t};
use crate::coeffs::transfer::{lkn_series, lkn_stirling};
use crate::coeffs::{asym_lkn, asym_sn, derive_s, exact_sn};
use crate::error::Result;
use crate::euler_sums::{closed_form, s_pm_direct, SumKind, DEFAULT_LEVELS};
use crate::integral::{assembly_checks, coeff_i, corollary_table, eval_i, i3_two_routes, partial_sum_i, s12_two_routes};
use crate::numeric::{zeta_int, ExtReal};
use crate::polylog::li_inversion_check;
use crate::verify::VerificationRecord;

/// Criteria whose reference values cannot be met by the correct
/// mathematics; see the README for the analysis.
pub const KNOWN_UNATTAINABLE: [u32; 2] = [6, 9];

#[derive(Clone, Debug)]
pub struct Criterion {
    pub id: u32,
    pub title: &'static str,
    pub records: Vec<VerificationRecord>,
}

impl Criterion {
    pub fn pass(&self) -> bool {
        !self.records.is_empty() && self.records.iter().all(|r| r.pass)
    }
}

fn record_or_failure(
    name: &str,
    reference: &ExtReal,
    tolerance: &ExtReal,
    value: Result<ExtReal>,
) -> VerificationRecord {
    match value {
        Ok(v) => VerificationRecord::compare(name, &v, reference, tolerance),
        Err(e) => VerificationRecord::failure(name, reference, tolerance, &e.to_string()),
    }
}

pub fn corollary() -> Criterion {
    Criterion {
        id: 1,
        title: "closed-form integrals against quadrature",
        records: corollary_table(&ExtReal::pow10(-45), &ExtReal::pow10(-40)),
    }
}

pub fn assemblies() -> Criterion {
    let records = assembly_checks(&ExtReal::pow10(-50)).unwrap_or_else(|e| {
        vec![VerificationRecord::failure("I_4, I_5 assembly", &ExtReal::zero(), &ExtReal::pow10(-50), &e.to_string())]
    });
    Criterion {
        id: 2,
        title: "I_4 and I_5 assembled from S-constants",
        records,
    }
}

pub fn integral_orders() -> Criterion {
    let tol = ExtReal::pow10(-30);
    let values: Vec<Result<ExtReal>> = [100u64, 200, 400].par_iter().map(|&n| eval_i(n, &tol)).collect();
    let mut records = Vec::new();
    let i2 = coeff_i(2).expect("I_2 exists");
    let n100 = ExtReal::from_u64(100);
    records.push(record_or_failure(
        "n^2 (I(n) - 3/4) at n = 100 vs I_2",
        &i2,
        &(&i2 / 100),
        values[0].clone().map(|v| (v - ExtReal::ratio(3, 4)) * n100.square()),
    ));
    let rem = |idx: usize, n: u64| -> Result<ExtReal> {
        Ok((values[idx].clone()? - partial_sum_i(n, 5)?).abs())
    };
    records.push(record_or_failure(
        "|I(n) - I_{n,5}| ratio, n = 100 over n = 200",
        &ExtReal::from_i64(67),
        &ExtReal::from_i64(23),
        rem(0, 100).and_then(|a| Ok(a / rem(1, 200)?)),
    ));
    let i3 = coeff_i(3).expect("I_3 exists");
    let n400 = ExtReal::from_u64(400);
    records.push(record_or_failure(
        "n^3 (I(n) - I_{n,2}) at n = 400 vs I_3",
        &i3,
        &(&i3 / 20),
        values[2]
            .clone()
            .and_then(|v| Ok((v - partial_sum_i(400, 2)?) * n400.powi(3))),
    ));
    Criterion {
        id: 3,
        title: "I(n) against its partial sums",
        records,
    }
}

pub fn euler_sums() -> Criterion {
    let tol = ExtReal::pow10(-10);
    let cases = [
        ("S+-_{1,2}", SumKind::Linear, 1, 2),
        ("S+-_{1,4}", SumKind::Linear, 1, 4),
        ("S+-_{1,3}", SumKind::Linear, 1, 3),
        ("S+-_{2,3}", SumKind::Linear, 2, 3),
        ("T_3", SumKind::Quadratic, 1, 3),
    ];
    let records = cases
        .par_iter()
        .map(|&(name, kind, p, q)| {
            let closed = closed_form(kind, p, q);
            let oracle = s_pm_direct(p, q, kind, 100_000, DEFAULT_LEVELS, &tol);
            match (closed, oracle) {
                (Ok(c), Ok(o)) => VerificationRecord::compare(name, &c, &o.value, &tol),
                (Err(e), _) | (_, Err(e)) => VerificationRecord::failure(name, &ExtReal::zero(), &tol, &e.to_string()),
            }
        })
        .collect();
    Criterion {
        id: 4,
        title: "Euler sums against direct summation",
        records,
    }
}

pub fn d_table() -> Criterion {
    let tol = ExtReal::pow10(-50);
    let records = match derive_s(3, 2) {
        Ok(s) => m3_reference_s()
            .iter()
            .map(|(&(i, j), v)| VerificationRecord::compare(format!("D_{{{i},{j}}} (m = 3)"), &s.coeff(i, j), v, &tol))
            .collect(),
        Err(e) => vec![VerificationRecord::failure("D-table (m = 3)", &ExtReal::zero(), &tol, &e.to_string())],
    };
    Criterion {
        id: 5,
        title: "machine-derived D_{i,j} for m = 3",
        records,
    }
}

fn digits_record(name: &str, value: &ExtReal, digits: usize, reference: &str) -> VerificationRecord {
    let rendered = value.to_decimal_digits(digits);
    let diff = match (ExtReal::parse(&rendered), ExtReal::parse(reference)) {
        (Ok(a), Ok(b)) => (a - b).abs(),
        _ => ExtReal::one(),
    };
    VerificationRecord::from_diff(name, rendered, reference.to_string(), &diff, &ExtReal::zero())
}

/// Coefficients of `T` for weight `m` through the reference depth against
/// the reference table; absent reference entries must vanish.
fn expansion_records(m: u32, tol: &ExtReal) -> Vec<VerificationRecord> {
    let depth = reference_depth(m);
    let reference = reference_t(m).expect("supported weight");
    match asym_sn(m, depth) {
        Ok(r) => {
            let mut keys: Vec<(u32, u32)> = reference.keys().copied().collect();
            for (a, b, _) in r.t.terms() {
                if !keys.contains(&(a, b)) {
                    keys.push((a, b));
                }
            }
            keys.sort_by_key(|&(a, b)| (b, a));
            keys.iter()
                .map(|&(a, b)| {
                    let want = reference.get(&(a, b)).cloned().unwrap_or_else(ExtReal::zero);
                    VerificationRecord::compare(
                        format!("m = {m}: [ln(n)^{a} / n^{b}]"),
                        &r.t.coeff(a, b),
                        &want,
                        tol,
                    )
                })
                .collect()
        }
        Err(e) => vec![VerificationRecord::failure(format!("m = {m} expansion"), &ExtReal::zero(), tol, &e.to_string())],
    }
}

pub fn endpoint_values() -> Criterion {
    let mut records = Vec::new();
    let c0 = zeta_int(3) * 6 / ExtReal::pi().square();
    records.push(digits_record("C_{n,0} (m = 3), 10 digits", &c0, 10, "0.7307629692"));
    match exact_sn(3, 100) {
        Ok(s) => records.push(digits_record("S_100 (m = 3), 4 digits", &s[100], 4, "0.7329")),
        Err(e) => records.push(VerificationRecord::failure("S_100 (m = 3)", &ExtReal::zero(), &ExtReal::zero(), &e.to_string())),
    }
    records.extend(expansion_records(4, &ExtReal::pow10(-50)));
    Criterion {
        id: 6,
        title: "m = 3 printed values and m = 4 coefficients",
        records,
    }
}

pub fn weight_six() -> Criterion {
    Criterion {
        id: 7,
        title: "m = 6 leading asymptotics",
        records: expansion_records(6, &ExtReal::pow10(-40)),
    }
}

pub fn transfer_layer() -> Criterion {
    let mut records = Vec::new();
    for k in 1..=3u32 {
        let exact = lkn_stirling(k, 200);
        let series = lkn_series(k, 200);
        let mut worst = ExtReal::zero();
        for (e, s) in exact.iter().zip(&series) {
            let e = ExtReal::from_rational(e);
            let scale = e.abs().max(ExtReal::one());
            worst = worst.max((&e - s).abs() / scale);
        }
        records.push(VerificationRecord::compare(
            format!("L_{{{k},n}} Stirling vs series power, n <= 200 (relative)"),
            &worst,
            &ExtReal::zero(),
            &ExtReal::tol_rel(3),
        ));
    }
    for k in 1..=3u32 {
        let table: Vec<ExtReal> = lkn_stirling(k, 100).iter().map(ExtReal::from_rational).collect();
        let expansion = match asym_lkn(k, 5) {
            Ok(e) => e,
            Err(e) => {
                records.push(VerificationRecord::failure("asym_Lkn", &ExtReal::zero(), &ExtReal::zero(), &e.to_string()));
                continue;
            }
        };
        let rem = |n: usize| (&table[n] - expansion.eval(&ExtReal::from_u64(n as u64))).abs();
        let scale = |n: usize| {
            let nn = ExtReal::from_u64(n as u64);
            nn.ln().square() / nn.powi(6)
        };
        let c = rem(20) / scale(20);
        for n in [50usize, 100] {
            let bound = &c * scale(n) + ExtReal::tol_rel(5) * table[n].abs();
            records.push(VerificationRecord::compare(
                format!("|L_{{{k},{n}}} - expansion| within c ln(n)^2/n^6 (c fitted at 20)"),
                &rem(n),
                &ExtReal::zero(),
                &bound,
            ));
        }
    }
    Criterion {
        id: 8,
        title: "transfer layer L_{k,n}",
        records,
    }
}

pub fn decay() -> Criterion {
    let mut records = Vec::new();
    let ns = [50u64, 100, 200, 300];
    match (asym_sn(3, 3), exact_sn(3, 300)) {
        (Ok(r), Ok(s)) => {
            let scaled: Vec<ExtReal> = ns
                .iter()
                .map(|&n| {
                    let nn = ExtReal::from_u64(n);
                    (&s[n as usize] - r.c[3].eval(&nn)).abs() * nn.powi(4) / nn.ln().powi(3)
                })
                .collect();
            for (w, pair) in scaled.windows(2).zip(ns.windows(2)) {
                let increase = (&w[1] - &w[0]).max(ExtReal::zero());
                records.push(VerificationRecord::from_diff(
                    format!("m = 3 scaled remainder non-increasing, n = {} -> {}", pair[0], pair[1]),
                    w[1].to_decimal(),
                    w[0].to_decimal(),
                    &increase,
                    &ExtReal::zero(),
                ));
            }
        }
        (Err(e), _) | (_, Err(e)) => {
            records.push(VerificationRecord::failure("m = 3 decay", &ExtReal::zero(), &ExtReal::zero(), &e.to_string()))
        }
    }
    match (asym_sn(4, 3), exact_sn(4, 100)) {
        (Ok(r), Ok(s)) => {
            let res = |n: u64| (&s[n as usize] - r.c[0].eval(&ExtReal::from_u64(n))).abs();
            records.push(VerificationRecord::compare(
                "m = 4 |S_n - C_{n,0}| ratio, n = 50 over n = 100",
                &(res(50) / res(100)),
                &ExtReal::from_i64(4),
                &ExtReal::ratio(3, 5),
            ));
        }
        (Err(e), _) | (_, Err(e)) => {
            records.push(VerificationRecord::failure("m = 4 decay", &ExtReal::zero(), &ExtReal::zero(), &e.to_string()))
        }
    }
    Criterion {
        id: 9,
        title: "end-to-end decay of the remainders",
        records,
    }
}

/// All acceptance criteria in order.
pub fn acceptance_criteria() -> Vec<Criterion> {
    let builders: [fn() -> Criterion; 9] = [
        corollary,
        assemblies,
        integral_orders,
        euler_sums,
        d_table,
        endpoint_values,
        weight_six,
        transfer_layer,
        decay,
    ];
    builders.par_iter().map(|b| b()).collect()
}

/// Every record: the acceptance criteria plus the internal cross-checks.
pub fn verify_all() -> Vec<VerificationRecord> {
    let mut out: Vec<VerificationRecord> = acceptance_criteria().into_iter().flat_map(|c| c.records).collect();
    for m in [2, 3] {
        match li_inversion_check(m) {
            Ok(r) => out.push(r),
            Err(e) => out.push(VerificationRecord::failure(format!("Li_{m}(2) inversion"), &ExtReal::zero(), &ExtReal::zero(), &e.to_string())),
        }
    }
    for r in [i3_two_routes(), s12_two_routes(&ExtReal::tol_rel(15))] {
        match r {
            Ok(r) => out.push(r),
            Err(e) => out.push(VerificationRecord::failure("double derivation", &ExtReal::zero(), &ExtReal::zero(), &e.to_string())),
        }
    }
    out
}
