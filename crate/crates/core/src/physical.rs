//! Exchange loops (Y- and O-loops), their images among critical cells, and
//! presentations whose generators are those loops.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{Cell, DiscreteComplex};
use crate::error::{Error, Result};
use crate::graph::{Edge, Label};
use crate::morse::{MinimalMorse, Rewriter};
use crate::presentation::FPGroup;
use crate::word::{Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum LoopSpec {
    /// Two particles exchanged on the junction `l` between `k < l < m < n`.
    Y {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        k: Label,
        m: Label,
        n: Label,
        spectators: Vec<Label>,
    },
    /// One particle carried once around a simple cycle.
    O {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        cycle: Vec<Label>,
        spectators: Vec<Label>,
    },
    /// Any closed word of 1-cells in cell syntax.
    #[serde(rename = "word")]
    Word {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        word: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LoopKind {
    Y,
    O,
    Word,
}

fn join(v: &[Label]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl LoopSpec {
    pub fn kind(&self) -> LoopKind {
        match self {
            LoopSpec::Y { .. } => LoopKind::Y,
            LoopSpec::O { .. } => LoopKind::O,
            LoopSpec::Word { .. } => LoopKind::Word,
        }
    }

    pub fn name(&self) -> String {
        match self {
            LoopSpec::Y { name: Some(s), .. } | LoopSpec::O { name: Some(s), .. } | LoopSpec::Word { name: Some(s), .. } => {
                s.clone()
            }
            LoopSpec::Y { k, m, n, spectators, .. } => format!("Y({k},{m},{n};{})", join(spectators)),
            LoopSpec::O { cycle, spectators, .. } => format!("O({};{})", join(cycle), join(spectators)),
            LoopSpec::Word { word, .. } => format!("W({word})"),
        }
    }

    pub fn word(&self, complex: &DiscreteComplex) -> Result<Word<Cell>> {
        let w = match self {
            LoopSpec::Y { k, m, n, spectators, .. } => y_loop_word(complex, *k, *m, *n, spectators)?,
            LoopSpec::O { cycle, spectators, .. } => o_loop_word(complex, cycle, spectators)?,
            LoopSpec::Word { word, .. } => parse_cell_word(word)?,
        };
        for l in w.iter() {
            complex.validate_cell(&l.atom).map_err(|e| Error::Loop(format!("{}: {e}", self.name())))?;
            if l.atom.dim() != 1 {
                return Err(Error::Loop(format!("{}: {} is not a 1-cell", self.name(), l.atom)));
            }
        }
        check_closed(&w).map_err(|e| Error::Loop(format!("{}: {e}", self.name())))?;
        Ok(w)
    }
}

pub fn parse_loops(json: &str) -> Result<Vec<LoopSpec>> {
    serde_json::from_str(json).map_err(|e| Error::Loop(e.to_string()))
}

/// Words like `{e(1,8), 2} {e(1,11), 2}^-1`.
pub fn parse_cell_word(s: &str) -> Result<Word<Cell>> {
    let mut out = Word::empty();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let close = rest.find('}').ok_or_else(|| Error::Cell(format!("unterminated cell in `{s}`")))?;
        let cell: Cell = rest[..=close].parse()?;
        rest = &rest[close + 1..];
        let inverse = rest.starts_with("^-1");
        if inverse {
            rest = &rest[3..];
        }
        out.push(Letter::new(cell, inverse));
        rest = rest.trim_start();
    }
    Ok(out)
}

fn spectators_ok(complex: &DiscreteComplex, spectators: &[Label], used: &[Label], expected: usize) -> Result<()> {
    let set: BTreeSet<Label> = spectators.iter().copied().collect();
    if set.len() != spectators.len() {
        return Err(Error::Loop("repeated spectator".into()));
    }
    if spectators.len() != expected {
        return Err(Error::Loop(format!(
            "{} spectators given, {} needed for {} particles",
            spectators.len(),
            expected,
            complex.particles()
        )));
    }
    if let Some(v) = spectators.iter().find(|v| used.contains(v)) {
        return Err(Error::Loop(format!("spectator {v} collides with the moving particles")));
    }
    Ok(())
}

pub fn y_loop_word(complex: &DiscreteComplex, k: Label, m: Label, n: Label, spectators: &[Label]) -> Result<Word<Cell>> {
    let g = complex.graph();
    let l = g
        .neighbours(k)
        .iter()
        .copied()
        .find(|&l| k < l && l < m && g.has_edge(l, m) && g.has_edge(l, n))
        .ok_or_else(|| Error::Loop(format!("no junction l with k < l < m adjacent to {k}, {m}, {n}")))?;
    if !(m < n) {
        return Err(Error::Loop(format!("need m < n, got {m}, {n}")));
    }
    if g.degree(l) < 3 {
        return Err(Error::Loop(format!("vertex {l} is not a junction")));
    }
    spectators_ok(complex, spectators, &[k, l, m, n], complex.particles().checked_sub(2).ok_or_else(|| Error::Loop("a Y-loop needs two particles".into()))?)?;
    let cell = |e: Edge, v: Label| {
        let mut vs = spectators.to_vec();
        vs.push(v);
        Cell::new(vec![e], vs)
    };
    let (ln, lm, kl) = (Edge::new(l, n), Edge::new(l, m), Edge::new(k, l));
    Ok(Word::from(vec![
        Letter::pos(cell(ln, k)?),
        Letter::neg(cell(lm, k)?),
        Letter::neg(cell(kl, m)?),
        Letter::neg(cell(ln, m)?),
        Letter::pos(cell(lm, n)?),
        Letter::pos(cell(kl, n)?),
    ]))
}

pub fn o_loop_word(complex: &DiscreteComplex, cycle: &[Label], spectators: &[Label]) -> Result<Word<Cell>> {
    let g = complex.graph();
    if cycle.len() < 3 {
        return Err(Error::Loop("a cycle needs at least 3 vertices".into()));
    }
    if cycle.iter().collect::<BTreeSet<_>>().len() != cycle.len() {
        return Err(Error::Loop("cycle is not simple".into()));
    }
    spectators_ok(complex, spectators, cycle, complex.particles() - 1)?;
    let mut w = Word::empty();
    for (i, &a) in cycle.iter().enumerate() {
        let b = cycle[(i + 1) % cycle.len()];
        if !g.has_edge(a, b) {
            return Err(Error::Loop(format!("{a} and {b} are not adjacent")));
        }
        // Cells are oriented from iota down to tau.
        let e = Edge::new(a, b);
        w.push(Letter::new(Cell::new(vec![e], spectators.to_vec())?, a != e.iota));
    }
    Ok(w)
}

fn ends(l: &Letter<Cell>) -> (Cell, Cell) {
    if l.inverse {
        (l.atom.terminal(), l.atom.initial())
    } else {
        (l.atom.initial(), l.atom.terminal())
    }
}

/// Start configuration of a closed path of 1-cells.
pub fn check_closed(w: &Word<Cell>) -> Result<Option<Cell>> {
    let Some(first) = w.letters.first() else { return Ok(None) };
    let start = ends(first).0;
    let mut at = start.clone();
    for (i, l) in w.iter().enumerate() {
        let (from, to) = ends(l);
        if from != at {
            return Err(Error::Loop(format!("letter {i} starts at {from} but the path is at {at}")));
        }
        at = to;
    }
    if at != start {
        return Err(Error::Loop(format!("path ends at {at}, not at its start {start}")));
    }
    Ok(Some(start))
}

/// Critical word of a loop, optionally based at `{1..n}` first.
pub fn loop_image(rw: &mut Rewriter, w: &Word<Cell>, base: bool) -> Result<Word<Cell>> {
    let start = check_closed(w)?;
    let based = match (base, start) {
        (true, Some(s)) => {
            let p = rw.complex().path_to_base(&s)?;
            p.concat(w).concat(&p.inverse())
        }
        _ => w.clone(),
    };
    rw.rewrite(&based)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhysicalLoop {
    pub name: String,
    pub kind: LoopKind,
    pub word: Word<Cell>,
    pub image: Word<Cell>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhysicalRelator {
    pub word: Word<usize>,
    pub origin: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhysicalPresentation {
    pub loops: Vec<PhysicalLoop>,
    pub relators: Vec<PhysicalRelator>,
    /// Critical cells as words in the loops, in the order they were solved.
    pub dictionary: Vec<(Cell, Word<usize>)>,
}

impl PhysicalPresentation {
    pub fn group(&self) -> FPGroup {
        let mut g = FPGroup::new(self.loops.iter().map(|l| l.name.clone()).collect());
        for r in &self.relators {
            g.push_relator(r.word.clone(), Some(r.origin.clone()));
        }
        g
    }

    pub fn loop_index(&self, name: &str) -> Option<usize> {
        self.loops.iter().position(|l| l.name == name)
    }

    pub fn entry(&self, c: &Cell) -> Option<&Word<usize>> {
        self.dictionary.iter().find(|(d, _)| d == c).map(|(_, w)| w)
    }

    pub fn named(&self, w: &Word<usize>) -> Word<String> {
        w.map(|&i| self.loops[i].name.clone())
    }
}

pub fn build_loops(complex: &DiscreteComplex, specs: &[LoopSpec], max_steps: usize) -> Result<Vec<PhysicalLoop>> {
    let names: BTreeSet<String> = specs.iter().map(|s| s.name()).collect();
    if names.len() != specs.len() {
        return Err(Error::Loop("loop names must be distinct".into()));
    }
    specs
        .par_iter()
        .map(|s| {
            let word = s.word(complex)?;
            let mut rw = Rewriter::with_max_steps(complex, max_steps);
            let image = loop_image(&mut rw, &word, true)?;
            Ok(PhysicalLoop { name: s.name(), kind: s.kind(), word, image })
        })
        .collect()
}

/// Express the minimal Morse generators through the loops and collect the
/// relators of the loop presentation.
pub fn solve_physical_presentation(
    complex: &DiscreteComplex,
    minimal: &MinimalMorse,
    specs: &[LoopSpec],
    max_steps: usize,
) -> Result<PhysicalPresentation> {
    let loops = build_loops(complex, specs, max_steps)?;
    let mut solved: BTreeMap<Cell, Word<usize>> = BTreeMap::new();
    let mut order: Vec<Cell> = Vec::new();
    let mut used = vec![false; loops.len()];

    'scan: loop {
        for (li, lp) in loops.iter().enumerate() {
            if used[li] {
                continue;
            }
            let unknown: BTreeSet<&Cell> = lp.image.iter().map(|l| &l.atom).filter(|c| !solved.contains_key(*c)).collect();
            if unknown.len() != 1 {
                continue;
            }
            let c = (*unknown.iter().next().unwrap()).clone();
            if lp.image.occurrences(&c) != 1 {
                continue;
            }
            let pos = lp.image.iter().position(|l| l.atom == c).unwrap();
            let sub = |w: &[Letter<Cell>]| -> Word<usize> {
                Word::from(w.to_vec()).substitute(|x| solved[x].clone())
            };
            let a = sub(&lp.image.letters[..pos]);
            let b = sub(&lp.image.letters[pos + 1..]);
            // L = a c^e b
            let ce = a.inverse().concat(&Word::single(li)).concat(&b.inverse());
            let value = if lp.image.letters[pos].inverse { ce.inverse() } else { ce }.reduced();
            solved.insert(c.clone(), value);
            order.push(c);
            used[li] = true;
            continue 'scan;
        }
        break;
    }

    let needed: BTreeSet<Cell> = minimal.generator_cells().into_iter().collect();
    if needed.iter().any(|c| !solved.contains_key(c)) {
        let mut unsolved: BTreeSet<Cell> = needed.iter().filter(|c| !solved.contains_key(*c)).cloned().collect();
        for lp in &loops {
            unsolved.extend(lp.image.iter().map(|l| l.atom.clone()).filter(|c| !solved.contains_key(c)));
        }
        let suggestions = unsolved
            .iter()
            .filter_map(|c| suggest_y_loop(complex, c, max_steps))
            .map(|s| serde_json::to_string(&s).unwrap_or_default())
            .collect();
        return Err(Error::Unsolved { unsolved: unsolved.iter().map(|c| c.to_string()).collect(), suggestions });
    }

    let gens = minimal.generator_cells();
    let in_loops = |w: &Word<usize>| -> Word<usize> { w.substitute(|&i| solved[&gens[i]].clone()).reduced() };
    let full = |c: &Cell| -> Word<usize> {
        match solved.get(c) {
            Some(w) => w.clone(),
            None => in_loops(minimal.expression(c).expect("critical cell")),
        }
    };

    let mut relators = Vec::new();
    let group = minimal.group();
    for (i, r) in group.relators.iter().enumerate() {
        let w = in_loops(r);
        if !w.is_empty() {
            let from = group.provenance[i].as_deref().unwrap_or("?");
            relators.push(PhysicalRelator { word: w, origin: format!("minimal relator from {from}") });
        }
    }
    for c in &order {
        if needed.contains(c) {
            continue;
        }
        let gi = minimal.morse.index_of(c).expect("critical cell");
        let e = minimal
            .tietze
            .log
            .iter()
            .find(|e| e.generator == gi)
            .ok_or_else(|| Error::Matching(format!("{c} is neither a minimal generator nor eliminated")))?;
        let r = &minimal.morse.relators[e.relator];
        let w = r.word.substitute(|&j| full(&minimal.morse.generators[j])).reduced();
        if !w.is_empty() {
            relators.push(PhysicalRelator { word: w, origin: format!("dependency of {c} via boundary of {}", r.source) });
        }
    }
    for (li, lp) in loops.iter().enumerate() {
        if used[li] {
            continue;
        }
        let w = Word::single(li).inverse().concat(&lp.image.substitute(|c| full(c))).reduced();
        if !w.is_empty() {
            relators.push(PhysicalRelator { word: w, origin: format!("image of unused loop {}", lp.name) });
        }
    }
    let dictionary = order.into_iter().map(|c| {
        let w = solved[&c].clone();
        (c, w)
    }).collect();
    Ok(PhysicalPresentation { loops, relators, dictionary })
}

/// A Y-loop whose image is `c` or its inverse, if one of the standard shape
/// exists and checks out.
pub fn suggest_y_loop(complex: &DiscreteComplex, c: &Cell, max_steps: usize) -> Option<LoopSpec> {
    let g = complex.graph();
    let e = *c.edges().first()?;
    let (l, n) = (e.tau, e.iota);
    let k = g.parent(l)?;
    let m = c.vertices().iter().copied().find(|&v| l < v && v < n && g.parent(v) == Some(l))?;
    let spectators: Vec<Label> = c.vertices().iter().copied().filter(|&v| v != m).collect();
    let spec = LoopSpec::Y { name: None, k, m, n, spectators };
    let word = spec.word(complex).ok()?;
    let mut rw = Rewriter::with_max_steps(complex, max_steps);
    let image = loop_image(&mut rw, &word, true).ok()?;
    (image.len() == 1 && &image.letters[0].atom == c).then_some(spec)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::fixtures;
    use crate::graph::{parse_graph, OrderedGraph};
    use crate::morse::{minimal_presentation, DEFAULT_MAX_STEPS};
    use crate::presentation::homology_h1;

    pub(crate) fn complex(json: &str, n: usize) -> DiscreteComplex {
        let g = OrderedGraph::new(&parse_graph(json).unwrap()).unwrap();
        DiscreteComplex::new(Arc::new(g), n).unwrap()
    }

    fn setup(n: usize, loops: &str) -> (DiscreteComplex, MinimalMorse, Vec<LoopSpec>) {
        let c = complex(fixtures::THETA, n);
        let m = minimal_presentation(&c, DEFAULT_MAX_STEPS).unwrap();
        (c, m, parse_loops(loops).unwrap())
    }

    fn cell(s: &str) -> Cell {
        s.parse().unwrap()
    }

    #[test]
    fn y_loop_literal_word() {
        let c = complex(fixtures::THETA, 2);
        let w = y_loop_word(&c, 4, 6, 9, &[]).unwrap();
        assert_eq!(
            w.to_string(),
            "{e(5,9), 4} {e(5,6), 4}^-1 {e(4,5), 6}^-1 {e(5,9), 6}^-1 {e(5,6), 9} {e(4,5), 9}"
        );
        assert!(check_closed(&w).is_ok());
        assert!(y_loop_word(&c, 4, 6, 9, &[1]).is_err());
        assert!(y_loop_word(&c, 3, 6, 9, &[]).is_err());
        let c4 = complex(fixtures::THETA, 4);
        assert!(y_loop_word(&c4, 4, 6, 9, &[1, 5]).is_err());
        assert_eq!(y_loop_word(&c4, 4, 6, 9, &[1, 2]).unwrap().len(), 6);
    }

    #[test]
    fn o_loop_words() {
        let c = complex(fixtures::THETA, 2);
        let w = o_loop_word(&c, &[5, 6, 7, 8, 1, 11, 10, 9], &[2]).unwrap();
        assert_eq!(w.len(), 8);
        assert!(check_closed(&w).is_ok());
        assert!(o_loop_word(&c, &[1, 2], &[5]).is_err());
        assert!(o_loop_word(&c, &[1, 2, 3], &[5]).is_err());
        assert!(o_loop_word(&c, &[1, 2, 3, 4, 5, 6, 7, 8], &[2]).is_err());
        let mut rw = Rewriter::new(&c);
        assert_eq!(loop_image(&mut rw, &w, true).unwrap(), parse_cell_word("{e(1,8), 2} {e(1,11), 2}^-1").unwrap());
    }

    #[test]
    fn y_lemma_form() {
        for n in 2..=5 {
            let c = complex(fixtures::THETA, n);
            let v: Vec<Label> = (1..=n as Label - 2).collect();
            let mut rw = Rewriter::new(&c);
            let img = loop_image(&mut rw, &y_loop_word(&c, 4, 6, 9, &v).unwrap(), true).unwrap();
            let mut vs = v.clone();
            vs.push(6);
            let expected = Cell::new(vec![Edge::new(5, 9)], vs).unwrap();
            assert_eq!(img, Word::from(vec![Letter::neg(expected)]), "n = {n}");
        }
    }

    #[test]
    fn basing_does_not_change_images() {
        let (c, _, specs) = setup(4, fixtures::THETA_LOOPS_N4);
        let mut rw = Rewriter::new(&c);
        for s in &specs {
            let w = s.word(&c).unwrap();
            let based = loop_image(&mut rw, &w, true).unwrap();
            assert_eq!(based, loop_image(&mut rw, &w, false).unwrap());
            // Rotating the loop changes the base point, not the conjugacy class.
            let rot = loop_image(&mut rw, &w.rotated(3), true).unwrap();
            assert!(rot.cyclically_reduced().cyclic_eq_up_to_inverse(&based.cyclically_reduced()));
        }
    }

    #[test]
    fn theta_two_dictionary() {
        let (c, m, specs) = setup(2, fixtures::THETA_LOOPS_N2);
        let p = solve_physical_presentation(&c, &m, &specs, DEFAULT_MAX_STEPS).unwrap();
        let show = |x: &str| p.named(p.entry(&cell(x)).unwrap()).to_string();
        assert_eq!(show("{e(5,9), 6}"), "gamma^-1");
        assert_eq!(show("{e(1,8), 2}"), "gamma alpha_U");
        assert_eq!(show("{e(1,11), 2}"), "alpha_D^-1 gamma alpha_U");
        assert!(p.relators.is_empty());

        let gr = parse_cell_word("{e(1,11), 2} {e(1,8), 2}^-1 {e(1,2), 8} {e(1,11), 8}^-1 {e(1,8), 11} {e(1,2), 11}^-1").unwrap();
        let mut rw = Rewriter::new(&c);
        let img = loop_image(&mut rw, &gr, true).unwrap();
        assert_eq!(
            img,
            parse_cell_word("{e(1,11), 2} {e(1,8), 2}^-1 {e(1,11), 2}^-1 {e(5,9), 6} {e(1,8), 2}").unwrap()
        );
        let sub = img.substitute(|x| p.entry(x).unwrap().clone()).reduced();
        assert_eq!(p.named(&sub).to_string(), "alpha_D^-1 alpha_U^-1 gamma^-1 alpha_D alpha_U");
    }

    #[test]
    fn theta_four_presentation() {
        let (c, m, specs) = setup(4, fixtures::THETA_LOOPS_N4);
        let p = solve_physical_presentation(&c, &m, &specs, DEFAULT_MAX_STEPS).unwrap();
        let show = |x: &str| p.named(p.entry(&cell(x)).unwrap()).to_string();
        assert_eq!(show("{e(5,9), 1, 2, 6}"), "gamma^-1");
        assert_eq!(show("{e(5,9), 1, 6, 10}"), "gamma'^-1");
        assert_eq!(show("{e(5,9), 6, 10, 11}"), "gamma''^-1");
        assert_eq!(show("{e(1,8), 2, 3, 4}"), "gamma gamma' gamma'' alpha_U");
        assert_eq!(show("{e(1,11), 2, 3, 4}"), "alpha_D^-1 gamma gamma' gamma'' alpha_U");
        assert_eq!(p.relators.len(), 3);
        let a2 = "alpha_D^-1 gamma gamma' gamma'' alpha_U";
        let a2i = "alpha_U^-1 gamma''^-1 gamma'^-1 gamma^-1 alpha_D";
        assert_eq!(p.named(&p.relators[1].word).to_string(), format!("{a2} gamma {a2i} gamma'^-1"));
        assert_eq!(p.named(&p.relators[2].word).to_string(), format!("{a2} gamma' {a2i} gamma''^-1"));
        assert_eq!(homology_h1(&p.group()), homology_h1(m.group()));
    }

    #[test]
    fn loop_images_round_trip() {
        // Every loop's image, read back through the dictionary, is the loop.
        let (c, m, specs) = setup(4, fixtures::THETA_LOOPS_N4);
        let p = solve_physical_presentation(&c, &m, &specs, DEFAULT_MAX_STEPS).unwrap();
        for (li, lp) in p.loops.iter().enumerate() {
            let back = lp.image.substitute(|x| p.entry(x).cloned().unwrap_or_else(|| {
                m.expression(x).unwrap().substitute(|&i| p.entry(&m.generator_cells()[i]).unwrap().clone())
            })).reduced();
            assert_eq!(back, Word::single(li), "{}", lp.name);
        }
    }

    #[test]
    fn too_few_loops() {
        let (c, m, specs) = setup(4, fixtures::THETA_LOOPS_N4);
        let few: Vec<LoopSpec> = specs.into_iter().filter(|s| matches!(s.name().as_str(), "gamma" | "alpha_U")).collect();
        match solve_physical_presentation(&c, &m, &few, DEFAULT_MAX_STEPS) {
            Err(Error::Unsolved { unsolved, suggestions }) => {
                assert_eq!(
                    unsolved,
                    vec!["{e(1,8), 2, 3, 4}", "{e(1,11), 2, 3, 4}", "{e(5,9), 1, 6, 10}", "{e(5,9), 6, 10, 11}"]
                );
                assert!(suggestions.iter().any(|s| s.contains(r#""k":4,"m":6,"n":9,"spectators":[1,10]"#)), "{suggestions:?}");
                assert!(suggestions.iter().any(|s| s.contains(r#""spectators":[10,11]"#)), "{suggestions:?}");
            }
            other => panic!("expected an unsolved system, got {other:?}"),
        }
    }

    #[test]
    fn loops_file_validation() {
        assert!(parse_loops(r#"[{"type":"Q"}]"#).is_err());
        let specs = parse_loops(r#"[{"type":"Y","k":4,"m":6,"n":9,"spectators":[]}]"#).unwrap();
        assert_eq!(specs[0].name(), "Y(4,6,9;)");
        let c = complex(fixtures::THETA, 2);
        let open = LoopSpec::Word { name: None, word: "{e(1,2), 5}".into() };
        assert!(matches!(open.word(&c), Err(Error::Loop(_))));
    }
}
