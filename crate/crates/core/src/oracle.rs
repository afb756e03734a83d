//! Brute-force fundamental group of the 2-skeleton: a BFS spanning tree of
//! the 1-skeleton, every other 1-cell a generator, every 2-cell a relator.
//! Independent of the Morse matching; used to cross-check homology.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::complex::{Cell, DiscreteComplex};
use crate::error::Result;
use crate::presentation::FPGroup;
use crate::word::{Letter, Word};

pub fn oracle_presentation(complex: &DiscreteComplex) -> Result<FPGroup> {
    let zeros = complex.enumerate(0);
    let ones = complex.enumerate(1);
    let mut adj: HashMap<&Cell, Vec<(usize, Cell)>> = HashMap::new();
    let ends: Vec<(Cell, Cell)> = ones.iter().map(|c| (c.initial(), c.terminal())).collect();
    for (i, (a, b)) in ends.iter().enumerate() {
        adj.entry(a).or_default().push((i, b.clone()));
        adj.entry(b).or_default().push((i, a.clone()));
    }
    let mut in_tree = vec![false; ones.len()];
    let mut seen: HashSet<Cell> = HashSet::new();
    // BFS from every component; D_n of a connected graph is connected, but
    // stay total anyway.
    for z in &zeros {
        if !seen.insert(z.clone()) {
            continue;
        }
        let mut queue = VecDeque::from([z.clone()]);
        while let Some(v) = queue.pop_front() {
            for (i, w) in adj.get(&v).map(|x| x.as_slice()).unwrap_or(&[]) {
                if seen.insert(w.clone()) {
                    in_tree[*i] = true;
                    queue.push_back(w.clone());
                }
            }
        }
    }
    let gens: Vec<usize> = (0..ones.len()).filter(|&i| !in_tree[i]).collect();
    let index: HashMap<&Cell, usize> = gens.iter().enumerate().map(|(k, &i)| (&ones[i], k)).collect();
    let mut g = FPGroup::new(gens.iter().map(|&i| ones[i].to_string()).collect());
    for t in complex.enumerate(2) {
        let w: Word<usize> = complex
            .boundary_word(&t)?
            .iter()
            .filter_map(|l| index.get(&l.atom).map(|&k| Letter::new(k, l.inverse)))
            .collect();
        g.push_relator(w, Some(t.to_string()));
    }
    Ok(g)
}
