//! Rewriting words of 1-cells into words of critical 1-cells, and the
//! resulting presentation of the braid group.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{Cell, DiscreteComplex, MorseClass};
use crate::error::{Error, Result};
use crate::presentation::{tietze_minimize, FPGroup, TietzeResult};
use crate::word::{Letter, Word};

pub const DEFAULT_MAX_STEPS: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Move {
    FreeCancel,
    Collapse,
    SimpleHomotopy,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Step {
    pub kind: Move,
    pub position: usize,
    /// The cell acted on; for a simple homotopy also the 2-cell used.
    pub cells: Vec<Cell>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RewriteTrace {
    pub input: Word<Cell>,
    pub steps: Vec<Step>,
    pub output: Word<Cell>,
}

/// Rewrites words along the discrete gradient flow of a complex.
///
/// Classifications and letter images are cached, so one rewriter should be
/// reused for all words of a complex.
pub struct Rewriter<'c> {
    complex: &'c DiscreteComplex,
    max_steps: usize,
    classes: HashMap<Cell, MorseClass>,
    images: HashMap<Cell, Word<Cell>>,
    /// Letters visited by the current `rewrite` call.
    work: usize,
}

impl<'c> Rewriter<'c> {
    pub fn new(complex: &'c DiscreteComplex) -> Self {
        Self::with_max_steps(complex, DEFAULT_MAX_STEPS)
    }

    pub fn with_max_steps(complex: &'c DiscreteComplex, max_steps: usize) -> Self {
        Rewriter { complex, max_steps, classes: HashMap::new(), images: HashMap::new(), work: 0 }
    }

    pub fn complex(&self) -> &'c DiscreteComplex {
        self.complex
    }

    fn class(&mut self, c: &Cell) -> Result<MorseClass> {
        if let Some(k) = self.classes.get(c) {
            return Ok(k.clone());
        }
        self.complex.validate_cell(c)?;
        if c.dim() != 1 {
            return Err(Error::Cell(format!("{c} is not a 1-cell")));
        }
        let k = self.complex.classify(c)?;
        self.classes.insert(c.clone(), k.clone());
        Ok(k)
    }

    /// Solve the boundary word of `W(sigma)` for `sigma`.
    fn homotopy_replacement(&self, sigma: &Cell, tau: &Cell) -> Result<Word<Cell>> {
        let b = self.complex.boundary_word(tau)?;
        let hits: Vec<usize> = b.iter().enumerate().filter(|(_, l)| &l.atom == sigma).map(|(i, _)| i).collect();
        if hits.len() != 1 {
            return Err(Error::Matching(format!("{sigma} occurs {} times in the boundary of {tau}", hits.len())));
        }
        let rotated = b.rotated(hits[0]);
        let rest = Word::from(rotated.letters[1..].to_vec());
        // b = sigma^e w, so sigma = (w^-1)^e.
        Ok(if rotated.letters[0].inverse { rest } else { rest.inverse() })
    }

    /// Literal application of the three moves, highest priority first and
    /// leftmost within a priority, recording every step.
    pub fn trace(&mut self, w: &Word<Cell>) -> Result<RewriteTrace> {
        let mut cur = w.letters.clone();
        let mut steps = Vec::new();
        loop {
            if steps.len() >= self.max_steps {
                return Err(Error::StepBound(self.max_steps));
            }
            if let Some(i) = (0..cur.len().saturating_sub(1)).find(|&i| cur[i].cancels(&cur[i + 1])) {
                steps.push(Step { kind: Move::FreeCancel, position: i, cells: vec![cur[i].atom.clone()] });
                cur.drain(i..i + 2);
                continue;
            }
            let mut classes = Vec::with_capacity(cur.len());
            for l in &cur {
                classes.push(self.class(&l.atom)?);
            }
            if let Some(i) = classes.iter().position(|k| matches!(k, MorseClass::Collapsible { .. })) {
                steps.push(Step { kind: Move::Collapse, position: i, cells: vec![cur[i].atom.clone()] });
                cur.remove(i);
                continue;
            }
            if let Some(i) = classes.iter().position(|k| matches!(k, MorseClass::Redundant { .. })) {
                let MorseClass::Redundant { image } = &classes[i] else { unreachable!() };
                let mut rep = self.homotopy_replacement(&cur[i].atom, image)?;
                if cur[i].inverse {
                    rep = rep.inverse();
                }
                steps.push(Step {
                    kind: Move::SimpleHomotopy,
                    position: i,
                    cells: vec![cur[i].atom.clone(), image.clone()],
                });
                cur.splice(i..i + 1, rep.letters);
                continue;
            }
            break;
        }
        Ok(RewriteTrace { input: w.clone(), steps, output: Word::from(cur) })
    }

    /// Image of a single positive letter under the flow, memoized.
    fn letter_image(&mut self, c: &Cell, active: &mut HashSet<Cell>) -> Result<Word<Cell>> {
        self.work += 1;
        if self.work > self.max_steps {
            return Err(Error::StepBound(self.max_steps));
        }
        if let Some(w) = self.images.get(c) {
            return Ok(w.clone());
        }
        let img = match self.class(c)? {
            MorseClass::Critical => Word::single(c.clone()),
            MorseClass::Collapsible { .. } => Word::empty(),
            MorseClass::Redundant { image } => {
                if !active.insert(c.clone()) {
                    return Err(Error::Matching(format!("gradient flow through {c} is cyclic")));
                }
                let rep = self.homotopy_replacement(c, &image)?;
                let mut out = Word::empty();
                for l in rep.iter() {
                    let sub = self.letter_image(&l.atom, active)?;
                    out = out.concat(&if l.inverse { sub.inverse() } else { sub });
                }
                active.remove(c);
                out.reduced()
            }
        };
        self.images.insert(c.clone(), img.clone());
        Ok(img)
    }

    /// Critical word equal to `w`; agrees with `trace(w).output`. The step
    /// bound applies to the letters visited by this call, cached or not.
    pub fn rewrite(&mut self, w: &Word<Cell>) -> Result<Word<Cell>> {
        self.work = 0;
        let mut active = HashSet::new();
        let mut out = Word::empty();
        for l in w.iter() {
            let img = self.letter_image(&l.atom, &mut active)?;
            out = out.concat(&if l.inverse { img.inverse() } else { img });
        }
        Ok(out.reduced())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MorseRelator {
    pub word: Word<usize>,
    pub source: Cell,
}

/// Generators are the critical 1-cells, one relator per critical 2-cell.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MorsePresentation {
    pub particles: usize,
    pub generators: Vec<Cell>,
    pub relators: Vec<MorseRelator>,
    /// Relators as words of critical cells.
    #[serde(skip)]
    pub cell_relators: Vec<Word<Cell>>,
}

impl MorsePresentation {
    pub fn index_of(&self, c: &Cell) -> Option<usize> {
        self.generators.binary_search(c).ok()
    }

    /// Critical word to a word over generator indices.
    pub fn to_indices(&self, w: &Word<Cell>) -> Result<Word<usize>> {
        w.iter()
            .map(|l| {
                self.index_of(&l.atom)
                    .map(|i| Letter::new(i, l.inverse))
                    .ok_or_else(|| Error::Matching(format!("{} is not a critical 1-cell", l.atom)))
            })
            .collect()
    }

    pub fn to_fp_group(&self, complex: &DiscreteComplex) -> FPGroup {
        let mut g = FPGroup::new(self.generators.iter().map(|c| c.to_string()).collect());
        g.sizes = self.generators.iter().map(|c| complex.cell_size(c)).collect();
        for r in &self.relators {
            g.push_relator(r.word.clone(), Some(r.source.to_string()));
        }
        g
    }
}

pub fn morse_presentation(complex: &DiscreteComplex, max_steps: usize) -> Result<MorsePresentation> {
    let generators = complex.critical_cells(1);
    let twos = complex.critical_cells(2);
    let words: Vec<Word<Cell>> = twos
        .par_chunks(16.max(twos.len() / rayon::current_num_threads().max(1) + 1))
        .map(|chunk| {
            let mut rw = Rewriter::with_max_steps(complex, max_steps);
            chunk.iter().map(|t| rw.rewrite(&complex.boundary_word(t)?)).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let mut p = MorsePresentation { particles: complex.particles(), generators, relators: Vec::new(), cell_relators: Vec::new() };
    for (t, w) in twos.into_iter().zip(words) {
        let word = p.to_indices(&w)?;
        p.relators.push(MorseRelator { word, source: t });
        p.cell_relators.push(w);
    }
    Ok(p)
}

/// A Morse presentation together with its Tietze minimization.
#[derive(Clone, Debug)]
pub struct MinimalMorse {
    pub morse: MorsePresentation,
    pub tietze: TietzeResult,
}

impl MinimalMorse {
    pub fn group(&self) -> &FPGroup {
        &self.tietze.group
    }

    /// Critical cells surviving as generators.
    pub fn generator_cells(&self) -> Vec<Cell> {
        self.tietze.survivors.iter().map(|&i| self.morse.generators[i].clone()).collect()
    }

    /// A critical cell as a word over the minimal generators.
    pub fn expression(&self, c: &Cell) -> Option<&Word<usize>> {
        self.morse.index_of(c).map(|i| &self.tietze.expressions[i])
    }
}

pub fn minimal_presentation(complex: &DiscreteComplex, max_steps: usize) -> Result<MinimalMorse> {
    let morse = morse_presentation(complex, max_steps)?;
    let fp = morse.to_fp_group(complex);
    let tietze = tietze_minimize(&fp, None);
    Ok(MinimalMorse { morse, tietze })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::fixtures;
    use crate::graph::{parse_graph, OrderedGraph};

    fn complex(json: &str, n: usize) -> DiscreteComplex {
        let g = OrderedGraph::new(&parse_graph(json).unwrap()).unwrap();
        DiscreteComplex::new(Arc::new(g), n).unwrap()
    }

    /// Parse a word of cells written with short names.
    fn word(names: &[(&str, &str)], s: &str) -> Word<Cell> {
        s.split_whitespace()
            .map(|t| {
                let (name, inv) = t.strip_suffix("^-1").map_or((t, false), |x| (x, true));
                let cell = names.iter().find(|(n, _)| *n == name).unwrap().1.parse().unwrap();
                Letter::new(cell, inv)
            })
            .collect()
    }

    const N3: [(&str, &str); 5] = [
        ("a1", "{e(1,8), 2, 3}"),
        ("a2", "{e(1,11), 2, 3}"),
        ("g", "{e(5,9), 1, 6}"),
        ("s1", "{e(5,9), 6, 7}"),
        ("s2", "{e(5,9), 6, 10}"),
    ];

    const N4: [(&str, &str); 8] = [
        ("a1", "{e(1,8), 2, 3, 4}"),
        ("a2", "{e(1,11), 2, 3, 4}"),
        ("g", "{e(5,9), 1, 2, 6}"),
        ("s1", "{e(5,9), 1, 6, 7}"),
        ("s2", "{e(5,9), 1, 6, 10}"),
        ("s3", "{e(5,9), 6, 7, 8}"),
        ("s4", "{e(5,9), 6, 7, 10}"),
        ("s5", "{e(5,9), 6, 10, 11}"),
    ];

    fn rewritten(c: &DiscreteComplex, tau: &str) -> Word<Cell> {
        let mut rw = Rewriter::new(c);
        rw.rewrite(&c.boundary_word(&tau.parse().unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn free_cancellation_and_idempotence() {
        let c = complex(fixtures::THETA, 3);
        let mut rw = Rewriter::new(&c);
        let s: Cell = "{e(2,3), 1, 5}".parse().unwrap();
        let w = Word::from(vec![Letter::pos(s.clone()), Letter::neg(s)]);
        assert!(rw.trace(&w).unwrap().output.is_empty());
        let crit = word(&N3, "a1 g^-1 a1^-1");
        assert_eq!(rw.rewrite(&crit).unwrap(), crit);
        assert!(rw.trace(&crit).unwrap().steps.is_empty());
    }

    #[test]
    fn theta_three_relators() {
        let c = complex(fixtures::THETA, 3);
        assert_eq!(rewritten(&c, "{e(1,8), e(5,9), 6}"), word(&N3, "a1 g^-1 a1^-1 g^-1 s1"));
        assert_eq!(rewritten(&c, "{e(1,11), e(5,9), 6}"), word(&N3, "a2 g^-1 a2^-1 s2"));
    }

    #[test]
    fn theta_four_relators() {
        let c = complex(fixtures::THETA, 4);
        assert_eq!(rewritten(&c, "{e(1,8), e(5,9), 2, 6}"), word(&N4, "a1 g^-1 a1^-1 g^-1 s1"));
        assert_eq!(rewritten(&c, "{e(1,11), e(5,9), 2, 6}"), word(&N4, "a2 g^-1 a2^-1 s2"));
        assert_eq!(rewritten(&c, "{e(1,11), e(5,9), 6, 7}"), word(&N4, "a2 s1^-1 a2^-1 s4"));
        assert_eq!(rewritten(&c, "{e(1,8), e(5,9), 6, 7}"), word(&N4, "a1 s1^-1 a1^-1 g^-1 s3"));
        assert_eq!(rewritten(&c, "{e(1,11), e(5,9), 6, 10}"), word(&N4, "a2 s2^-1 a2^-1 s5"));
        assert_eq!(rewritten(&c, "{e(1,8), e(5,9), 6, 10}"), word(&N4, "g a1 s2^-1 a1^-1 g^-1 s2^-1 s4"));
    }

    #[test]
    fn trace_and_memo_agree() {
        for (json, n) in [(fixtures::THETA, 3), (fixtures::THETA, 4), (fixtures::LASSO, 3), (fixtures::Y, 2)] {
            let c = complex(json, n);
            let mut rw = Rewriter::new(&c);
            for t in c.enumerate(2).iter().step_by(7) {
                let b = c.boundary_word(t).unwrap();
                let tr = rw.trace(&b).unwrap();
                assert_eq!(tr.output, rw.rewrite(&b).unwrap(), "{t}");
                assert!(tr.output.iter().all(|l| c.is_critical(&l.atom)));
                assert_eq!(rw.rewrite(&tr.output).unwrap(), tr.output);
            }
        }
    }

    #[test]
    fn rewriting_is_a_homomorphism() {
        let c = complex(fixtures::THETA, 3);
        let mut rw = Rewriter::new(&c);
        let ones = c.enumerate(1);
        for k in 0..40 {
            let a = Word::from(vec![Letter::pos(ones[(k * 13) % ones.len()].clone()), Letter::neg(ones[(k * 7) % ones.len()].clone())]);
            let b = Word::from(vec![Letter::pos(ones[(k * 29 + 3) % ones.len()].clone())]);
            let whole = rw.rewrite(&a.concat(&b)).unwrap();
            let parts = rw.rewrite(&a).unwrap().concat(&rw.rewrite(&b).unwrap()).reduced();
            assert_eq!(whole, parts);
        }
    }

    #[test]
    fn theta_minimal() {
        let m = minimal_presentation(&complex(fixtures::THETA, 3), DEFAULT_MAX_STEPS).unwrap();
        assert_eq!(m.generator_cells(), vec![cells(&N3, "a1"), cells(&N3, "a2"), cells(&N3, "g")]);
        assert!(m.group().relators.is_empty());
        let m = minimal_presentation(&complex(fixtures::THETA, 4), DEFAULT_MAX_STEPS).unwrap();
        assert_eq!(m.group().generators.len(), 3);
        assert_eq!(m.group().relators.len(), 1);
    }

    fn cells(names: &[(&str, &str)], n: &str) -> Cell {
        names.iter().find(|x| x.0 == n).unwrap().1.parse().unwrap()
    }

    #[test]
    fn step_bound_fires() {
        let c = complex(fixtures::THETA, 3);
        let mut rw = Rewriter::with_max_steps(&c, 2);
        let b = c.boundary_word(&"{e(1,8), e(5,9), 6}".parse().unwrap()).unwrap();
        assert!(matches!(rw.trace(&b), Err(Error::StepBound(2))));
        assert!(matches!(rw.rewrite(&b), Err(Error::StepBound(2))));
        assert!(Rewriter::with_max_steps(&c, 1000).rewrite(&b).is_ok());
    }

    #[test]
    fn presentations() {
        let p = morse_presentation(&complex(fixtures::THETA, 2), DEFAULT_MAX_STEPS).unwrap();
        assert_eq!(p.generators.len(), 3);
        assert!(p.relators.is_empty());
        let p = morse_presentation(&complex(fixtures::PATH, 3), DEFAULT_MAX_STEPS).unwrap();
        assert!(p.generators.is_empty() && p.relators.is_empty());
        let c = complex(fixtures::THETA, 4);
        let p = morse_presentation(&c, DEFAULT_MAX_STEPS).unwrap();
        assert_eq!((p.generators.len(), p.relators.len()), (8, 6));
    }
}
