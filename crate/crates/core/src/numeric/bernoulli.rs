use std::sync::Mutex;

use rug::{Integer, Rational};

/// Bernoulli numbers with `B_1 = -1/2`, grown on demand from
/// `sum_{k=0}^{n} C(n+1, k) B_k = 0`.
static TABLE: Mutex<Vec<Rational>> = Mutex::new(Vec::new());

pub fn bernoulli(n: usize) -> Rational {
    let mut table = TABLE.lock().unwrap();
    if table.is_empty() {
        table.push(Rational::from(1));
    }
    while table.len() <= n {
        let m = table.len();
        let mut acc = Rational::new();
        for (k, b) in table.iter().enumerate() {
            let c = Integer::from(Integer::binomial_u(m as u32 + 1, k as u32));
            acc += Rational::from(c) * b;
        }
        acc /= -(m as i64 + 1);
        table.push(acc);
    }
    table[n].clone()
}
