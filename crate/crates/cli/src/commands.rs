use anyhow::{anyhow, bail, Result};
use polyasym::coeffs::pipeline::reference_depth;
use polyasym::coeffs::{asym_sn, derive_d, exact_sn};
use polyasym::euler_sums::{closed_form, s_pm_direct, SumKind, DEFAULT_LEVELS};
use polyasym::integral::{corollary_table, default_table_tol, residual_table, TABLE_ORDERS};
use polyasym::numeric::{constants, precision};
use polyasym::polylog::{li_eval, li_singular_expansion};
use polyasym::{checks, ExtReal};

use crate::output::{emit, Output, Table};
use crate::{Cli, Command};

fn tol_or(cli: &Cli, default: ExtReal) -> Result<ExtReal> {
    match &cli.tol {
        Some(t) => Ok(ExtReal::parse(t)?),
        None => Ok(default),
    }
}

/// Runs the command; `Ok(false)` means some verification record failed.
pub fn run(cli: &Cli) -> Result<bool> {
    precision::set_precision_digits(cli.precision)?;
    let mut ok = true;
    let output = match &cli.command {
        Command::Constants => {
            let mut t = Table::new(["name", "value"]);
            for (name, v) in constants().entries() {
                t.push(vec![name, v.to_decimal()]);
            }
            Output::Table(t)
        }
        Command::Polylog { m, z, expansion_order } => match (z, expansion_order) {
            (_, Some(k)) => {
                let e = li_singular_expansion(*m, *k)?;
                let mut t = Table::new(["w_power", "log_power", "coefficient"]);
                for r in e.rows() {
                    t.push(vec![r.w_power.to_string(), r.log_power.to_string(), r.coefficient]);
                }
                Output::Table(t)
            }
            (Some(z), None) => {
                let zv = ExtReal::parse(z)?;
                let v = li_eval(*m, &zv)?;
                let mut t = Table::new(["m", "z", "value"]);
                t.push(vec![m.to_string(), z.clone(), v.to_decimal()]);
                Output::Table(t)
            }
            (None, None) => bail!("polylog needs --z or --expansion-order"),
        },
        Command::Eulersum { p, q, direct, quadratic } => {
            let kind = if *quadratic { SumKind::Quadratic } else { SumKind::Linear };
            let closed = closed_form(kind, *p, *q)?;
            match direct {
                None => {
                    let mut t = Table::new(["p", "q", "closed_form"]);
                    t.push(vec![p.to_string(), q.to_string(), closed.to_decimal()]);
                    Output::Table(t)
                }
                Some(n) => {
                    let tol = tol_or(cli, ExtReal::pow10(-10))?;
                    let o = s_pm_direct(*p, *q, kind, *n, DEFAULT_LEVELS, &tol)?;
                    let mut t = Table::new(["p", "q", "closed_form", "direct", "difference", "direct_error_estimate"]);
                    t.push(vec![
                        p.to_string(),
                        q.to_string(),
                        closed.to_decimal(),
                        o.value.to_decimal(),
                        (&closed - &o.value).abs().to_decimal(),
                        o.error_estimate.to_decimal(),
                    ]);
                    Output::Table(t)
                }
            }
        }
        Command::Integral { n_list } => {
            let tol = tol_or(cli, default_table_tol())?;
            let mut header = vec!["n".to_string(), "I_n".to_string()];
            header.extend(TABLE_ORDERS.iter().map(|k| format!("I_n{k}")));
            header.extend(TABLE_ORDERS.iter().map(|k| format!("scaled_residual_{k}")));
            let mut t = Table::new(header);
            for row in residual_table(n_list, &tol) {
                let row = row?;
                let mut cells = vec![row.n.to_string(), row.value.to_decimal()];
                cells.extend(row.partial.iter().map(|(_, v)| v.to_decimal()));
                cells.extend(row.scaled.iter().map(|(_, v)| v.to_decimal()));
                t.push(cells);
            }
            Output::Table(t)
        }
        Command::Corollary => {
            let quad = tol_or(cli, ExtReal::tol_rel(15))?;
            let records = corollary_table(&quad, &(&quad * 1000));
            ok = records.iter().all(|r| r.pass);
            Output::Records(records)
        }
        Command::Coeffs { m, n_max, k_max } => {
            if *n_max == 0 {
                bail!("--n-max must be at least 1");
            }
            let r = asym_sn(*m, (*k_max).max(1))?;
            let exact = exact_sn(*m, *n_max as usize)?;
            let depth = reference_depth(*m);
            let mark = |k: u32| if k > depth { "_unverified" } else { "" };
            let mut header = vec!["n".to_string(), "S_n".to_string()];
            header.extend((0..=*k_max).map(|k| format!("C_n{k}{}", mark(k))));
            header.extend((0..=*k_max).map(|k| format!("residual_{k}{}", mark(k))));
            let mut t = Table::new(header);
            for n in 1..=*n_max {
                let nn = ExtReal::from_u64(n);
                let s = &exact[n as usize];
                let cs: Vec<ExtReal> = (0..=*k_max as usize).map(|k| r.c[k].eval(&nn)).collect();
                let mut cells = vec![n.to_string(), s.to_decimal()];
                cells.extend(cs.iter().map(ExtReal::to_decimal));
                cells.extend(cs.iter().map(|c| (s - c).to_decimal()));
                t.push(cells);
            }
            Output::Table(t)
        }
        Command::Derive { m, max_order } => {
            let order = (*max_order).max(1);
            let d = derive_d(*m, (order - 1).max(3))?;
            let r = asym_sn(*m, order)?;
            let mut t = Table::new(["kind", "i", "j", "coefficient"]);
            for ((i, j), c) in &d {
                t.push(vec!["D".into(), i.to_string(), j.to_string(), c.to_decimal()]);
            }
            // T rows: i = power of 1/n, j = power of ln n
            for (a, b, c) in r.t.terms() {
                t.push(vec!["T".into(), b.to_string(), a.to_string(), c.to_decimal()]);
            }
            Output::Table(t)
        }
        Command::VerifyAll => {
            let records = checks::verify_all();
            ok = records.iter().all(|r| r.pass);
            Output::Records(records)
        }
    };
    emit(&output, cli.format, cli.out.as_deref()).map_err(|e| anyhow!(e))?;
    Ok(ok)
}
