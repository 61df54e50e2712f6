//! Oracles and generators shared by the integration tests.
#![allow(dead_code)]

use kum3_core::config::{Config, ConfigDocument, ConfigValue};
use kum3_core::exact::{int, parse_rational};
use kum3_core::suites::{run_suite, SuiteName};
use proptest::prelude::*;

/// Determinant by the Leibniz expansion.
pub fn leibniz_det(m: &[Vec<i128>]) -> i128 {
    fn go(
        m: &[Vec<i128>],
        row: usize,
        used: &mut Vec<bool>,
        sign: i128,
        acc: i128,
        total: &mut i128,
    ) {
        if row == m.len() {
            *total += sign * acc;
            return;
        }
        let mut s = sign;
        for col in 0..m.len() {
            if used[col] {
                continue;
            }
            // sign of the permutation from the number of unused columns skipped
            if m[row][col] != 0 {
                used[col] = true;
                go(m, row + 1, used, s, acc * m[row][col], total);
                used[col] = false;
            }
            s = -s;
        }
    }
    let mut total = 0;
    go(m, 0, &mut vec![false; m.len()], 1, 1, &mut total);
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Rank as the size of the largest nonvanishing minor.
pub fn brute_rank(m: &[Vec<i64>]) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    for k in (1..=rows.min(cols)).rev() {
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor: Vec<Vec<i128>> = rs
                    .iter()
                    .map(|r| cs.iter().map(|c| m[*r][*c] as i128).collect())
                    .collect();
                if leibniz_det(&minor) != 0 {
                    return k;
                }
            }
        }
    }
    0
}

/// Integer matrices up to 8 x 8, built as products so that every rank occurs.
pub fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=8, 1usize..=8, 0usize..=8).prop_flat_map(|(r, c, k)| {
        (
            prop::collection::vec(prop::collection::vec(-3i64..=3, k), r),
            prop::collection::vec(prop::collection::vec(-3i64..=3, c), k),
        )
            .prop_map(move |(a, b)| {
                (0..r)
                    .map(|i| {
                        (0..c)
                            .map(|j| (0..k).map(|l| a[i][l] * b[l][j]).sum())
                            .collect()
                    })
                    .collect()
            })
    })
}

const CHEAP_FIRST: [SuiteName; 8] = [
    SuiteName::Bookkeeping,
    SuiteName::FujikiTable,
    SuiteName::BasisLemma,
    SuiteName::WClasses,
    SuiteName::W17Rank,
    SuiteName::Gram19,
    SuiteName::Restrictions,
    SuiteName::DClasses,
];

fn bump(text: &str) -> String {
    (parse_rational(text).expect("bundled values parse") + int(1)).to_string()
}

/// Every single-value perturbation by +1 of a document, labelled.
pub fn perturbations(doc: &ConfigDocument) -> Vec<(String, ConfigDocument)> {
    let mut out = Vec::new();
    for (s, (section, entries)) in doc.sections().into_iter().enumerate() {
        for (e, entry) in entries.iter().enumerate() {
            let width = match &entry.value {
                ConfigValue::Scalar(_) => 1,
                ConfigValue::List(xs) => xs.len(),
            };
            for k in 0..width {
                let mut changed = doc.clone();
                let target = &mut changed.sections_mut()[s][e];
                let label = match &mut target.value {
                    ConfigValue::Scalar(x) => {
                        *x = bump(x);
                        format!("{section}.{}", entry.key)
                    }
                    ConfigValue::List(xs) => {
                        xs[k] = bump(&xs[k]);
                        format!("{section}.{}[{k}]", entry.key)
                    }
                };
                out.push((label, changed));
            }
        }
    }
    out
}

/// Whether some suite fails (or the config is rejected) for the document.
/// Suites run cheapest first and stop at the first failure.
pub fn detected(doc: ConfigDocument) -> bool {
    match Config::from_document(doc) {
        Ok(cfg) => CHEAP_FIRST.iter().any(|n| run_suite(*n, &cfg).failed() > 0),
        Err(_) => true,
    }
}
