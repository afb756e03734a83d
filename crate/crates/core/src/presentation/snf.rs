use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// Nonzero diagonal entries, positive, each dividing the next.
    pub invariant_factors: Vec<BigInt>,
    pub rank: usize,
}

/// Exact Smith normal form of an integer matrix.
///
/// Unit pivots are eliminated first on a sparse copy with checked `i64`
/// arithmetic; whatever remains (or overflows) is finished densely over
/// big integers.
pub fn smith_normal_form(m: &[Vec<i64>]) -> SmithForm {
    let cols = m.first().map_or(0, |r| r.len());
    let mut rows: Vec<Option<BTreeMap<usize, i64>>> = m
        .iter()
        .map(|r| Some(r.iter().enumerate().filter(|(_, &x)| x != 0).map(|(j, &x)| (j, x)).collect()))
        .collect();
    let mut in_col: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); cols];
    for (i, r) in rows.iter().enumerate() {
        for &j in r.as_ref().unwrap().keys() {
            in_col[j].insert(i);
        }
    }

    let mut units = 0usize;
    'pivot: loop {
        // Cheapest unit pivot: fewest other rows to clear.
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, r) in rows.iter().enumerate() {
            let Some(r) = r else { continue };
            for (&j, &x) in r {
                if x.abs() == 1 {
                    let cost = in_col[j].len();
                    if best.is_none_or(|b| cost < b.0) {
                        best = Some((cost, i, j));
                    }
                }
            }
        }
        let Some((_, pi, pj)) = best else { break };
        let pivot_row = rows[pi].clone().unwrap();
        let p = pivot_row[&pj];
        let targets: Vec<usize> = in_col[pj].iter().copied().filter(|&i| i != pi).collect();
        // Compute every update before committing so an overflow leaves the
        // matrix consistent for the dense phase.
        let mut updates = Vec::with_capacity(targets.len());
        for &i in &targets {
            let row = rows[i].as_ref().unwrap();
            let f = row[&pj] * p;
            let mut new = row.clone();
            for (&j, &x) in &pivot_row {
                let Some(v) = f.checked_mul(x).and_then(|d| new.get(&j).copied().unwrap_or(0).checked_sub(d)) else {
                    break 'pivot;
                };
                if v == 0 {
                    new.remove(&j);
                } else {
                    new.insert(j, v);
                }
            }
            updates.push((i, new));
        }
        for (i, new) in updates {
            let old = rows[i].replace(new).unwrap();
            for j in old.keys() {
                in_col[*j].remove(&i);
            }
            for j in rows[i].as_ref().unwrap().keys() {
                in_col[*j].insert(i);
            }
        }
        for j in pivot_row.keys() {
            in_col[*j].remove(&pi);
        }
        rows[pi] = None;
        units += 1;
    }

    let live_cols: Vec<usize> = (0..cols).filter(|&j| !in_col[j].is_empty()).collect();
    let dense: Vec<Vec<BigInt>> = rows
        .into_iter()
        .flatten()
        .filter(|r| !r.is_empty())
        .map(|r| live_cols.iter().map(|j| BigInt::from(r.get(j).copied().unwrap_or(0))).collect())
        .collect();
    let mut factors = vec![BigInt::from(1); units];
    factors.extend(dense_snf(dense));
    SmithForm { rank: factors.len(), invariant_factors: factors }
}

fn dense_snf(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Smallest nonzero entry of the trailing block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        for r in a.iter_mut() {
            r.swap(t, bj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let d = &q * &a[t][j];
                    a[i][j] -= d;
                }
                if !a[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for i in t..rows {
                    let d = &q * &a[i][t];
                    a[i][j] -= d;
                }
                if !a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                // Pivot must divide the rest of the block.
                let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
                match bad {
                    Some(i) => {
                        for j in t..cols {
                            let x = a[i][j].clone();
                            a[t][j] += x;
                        }
                    }
                    None => break,
                }
            }
            // Move the smallest entry of row/column t into the pivot.
            let mut m = (t, t);
            for i in t..rows {
                if !a[i][t].is_zero() && a[i][t].abs() < a[m.0][m.1].abs() {
                    m = (i, t);
                }
            }
            for j in t..cols {
                if !a[t][j].is_zero() && a[t][j].abs() < a[m.0][m.1].abs() {
                    m = (t, j);
                }
            }
            if m.0 != t {
                a.swap(t, m.0);
            }
            if m.1 != t {
                for r in a.iter_mut() {
                    r.swap(t, m.1);
                }
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}
