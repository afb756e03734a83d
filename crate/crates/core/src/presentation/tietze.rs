use serde::Serialize;

use super::{homology_h1, FPGroup};
use crate::word::{Letter, Word};

/// One generator removed by solving a relator for it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Elimination {
    /// Index into the input presentation.
    pub generator: usize,
    /// Index of the input relator that was consumed.
    pub relator: usize,
    pub relator_source: Option<String>,
    /// Value at the time of elimination, over input indices.
    pub expression: Word<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TietzeResult {
    pub group: FPGroup,
    /// Input index of each surviving generator.
    pub survivors: Vec<usize>,
    pub log: Vec<Elimination>,
    /// Every input generator as a word over the surviving generators
    /// (indices into `group`).
    pub expressions: Vec<Word<usize>>,
    pub target: Option<usize>,
}

impl TietzeResult {
    pub fn target_reached(&self) -> Option<bool> {
        self.target.map(|t| self.group.generators.len() <= t)
    }
}

/// Greedy generator elimination until no relator contains a generator
/// exactly once. Larger `sizes` go first, then shorter relators.
pub fn tietze_minimize(p: &FPGroup, target: Option<usize>) -> TietzeResult {
    let target = target.or_else(|| Some(homology_h1(p).rank_bound()));
    let ngen = p.generators.len();
    let size = |g: usize| p.sizes.get(g).copied().unwrap_or(0);
    let mut rels: Vec<Option<Word<usize>>> = p.relators.iter().map(|r| Some(r.reduced())).collect();
    let mut alive = vec![true; ngen];
    let mut log = Vec::new();

    loop {
        for r in rels.iter_mut() {
            if r.as_ref().is_some_and(|w| w.is_empty()) {
                *r = None;
            }
        }
        // (priority key, generator, relator)
        let mut best: Option<((std::cmp::Reverse<usize>, usize, usize, usize), usize, usize)> = None;
        for (ri, r) in rels.iter().enumerate() {
            let Some(r) = r else { continue };
            let mut counts = std::collections::BTreeMap::new();
            for l in r.iter() {
                *counts.entry(l.atom).or_insert(0usize) += 1;
            }
            for (&g, &c) in &counts {
                if c != 1 {
                    continue;
                }
                let key = (std::cmp::Reverse(size(g)), r.len(), g, ri);
                if best.as_ref().is_none_or(|b| key < b.0) {
                    best = Some((key, g, ri));
                }
            }
        }
        let Some((_, g, ri)) = best else { break };
        let r = rels[ri].take().unwrap();
        let pos = r.iter().position(|l| l.atom == g).unwrap();
        let a = Word::from(r.letters[..pos].to_vec());
        let b = Word::from(r.letters[pos + 1..].to_vec());
        // a g^e b = 1
        let expr = if r.letters[pos].inverse { b.concat(&a) } else { a.inverse().concat(&b.inverse()) }.reduced();
        for w in rels.iter_mut().flatten() {
            *w = w.substitute(|&x| if x == g { expr.clone() } else { Word::single(x) }).reduced();
        }
        alive[g] = false;
        log.push(Elimination { generator: g, relator: ri, relator_source: p.provenance.get(ri).cloned().flatten(), expression: expr });
    }

    let survivors: Vec<usize> = (0..ngen).filter(|&g| alive[g]).collect();
    let mut new_index = vec![usize::MAX; ngen];
    for (k, &g) in survivors.iter().enumerate() {
        new_index[g] = k;
    }
    let mut expressions: Vec<Word<usize>> =
        (0..ngen).map(|g| if alive[g] { Word::single(new_index[g]) } else { Word::empty() }).collect();
    // Later eliminations only mention generators alive at their time.
    for e in log.iter().rev() {
        expressions[e.generator] = e.expression.substitute(|&x| expressions[x].clone()).reduced();
    }

    let mut group = FPGroup::new(survivors.iter().map(|&g| p.generators[g].clone()).collect());
    group.sizes = survivors.iter().map(|&g| size(g)).collect();
    for (ri, r) in rels.into_iter().enumerate() {
        if let Some(r) = r {
            group.push_relator(r.map(|&x| new_index[x]), p.provenance.get(ri).cloned().flatten());
        }
    }
    TietzeResult { group, survivors, log, expressions, target }
}

/// Letter helper for tests elsewhere in the crate.
#[allow(dead_code)]
pub(crate) fn letters(v: &[(usize, i64)]) -> Word<usize> {
    v.iter().map(|&(i, s)| Letter::new(i, s < 0)).collect()
}
