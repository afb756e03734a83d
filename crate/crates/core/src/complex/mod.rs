//! Cells of the discretized configuration complex and the discrete
//! gradient (Morse matching) on them.

mod cell;

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

pub use cell::Cell;

use crate::error::{Error, Result};
use crate::graph::{check_subdivision, Edge, Label, OrderedGraph};
use crate::word::{Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MorseClass {
    Critical,
    /// Matched upward; `image` is one dimension higher.
    Redundant { image: Cell },
    /// Matched downward; `preimage` is one dimension lower.
    Collapsible { preimage: Cell },
}

impl MorseClass {
    pub fn is_critical(&self) -> bool {
        matches!(self, MorseClass::Critical)
    }
}

/// `D_n` of an ordered graph, restricted to cells of dimension at most 2.
#[derive(Clone, Debug)]
pub struct DiscreteComplex {
    graph: Arc<OrderedGraph>,
    n: usize,
}

impl DiscreteComplex {
    /// Checks sufficient subdivision and that the tree has a unique critical 0-cell.
    pub fn new(graph: Arc<OrderedGraph>, n: usize) -> Result<DiscreteComplex> {
        if n == 0 {
            return Err(Error::Input("particle count must be at least 1".into()));
        }
        let report = check_subdivision(graph.source(), n);
        if !report.is_sufficient() {
            let mut parts: Vec<String> = report
                .path_violations
                .iter()
                .map(|p| format!("path {}..{} has {} edges (needs {})", p.from, p.to, p.length, n - 1))
                .collect();
            parts.extend(
                report
                    .cycle_violations
                    .iter()
                    .map(|c| format!("cycle {:?} has {} edges (needs {})", c.vertices, c.length, n + 1)),
            );
            return Err(Error::InsufficientSubdivision { particles: n, detail: parts.join("; ") });
        }
        let complex = DiscreteComplex { graph, n };
        let found = complex.count_critical_zero_cells();
        if found != 1 {
            return Err(Error::CriticalZeroCells { expected: format!("{{1..{n}}}"), found });
        }
        Ok(complex)
    }

    pub fn graph(&self) -> &OrderedGraph {
        &self.graph
    }

    pub fn graph_arc(&self) -> Arc<OrderedGraph> {
        self.graph.clone()
    }

    pub fn particles(&self) -> usize {
        self.n
    }

    /// The critical 0-cell `{1, ..., n}`.
    pub fn base(&self) -> Cell {
        Cell::from_sorted(Vec::new(), (1..=self.n as Label).collect())
    }

    /// Critical 0-cells are the rooted subtrees with `n` vertices.
    fn count_critical_zero_cells(&self) -> usize {
        let g = &*self.graph;
        let n = self.n;
        // f[v][k]: rooted subtrees at v with k vertices, saturating.
        let mut f: Vec<Vec<usize>> = vec![Vec::new(); g.vertex_count() + 1];
        for v in g.labels().rev() {
            let mut acc = vec![0usize; n + 1];
            acc[1] = 1;
            for &c in g.children(v) {
                let mut next = acc.clone();
                for (a, &x) in acc.iter().enumerate() {
                    for (b, &y) in f[c as usize].iter().enumerate().skip(1) {
                        if a + b <= n {
                            next[a + b] = next[a + b].saturating_add(x.saturating_mul(y));
                        }
                    }
                }
                acc = next;
            }
            f[v as usize] = acc;
        }
        f[1][n]
    }

    pub fn validate_cell(&self, c: &Cell) -> Result<()> {
        let max = self.graph.vertex_count() as Label;
        if c.particles() != self.n {
            return Err(Error::Cell(format!("{c} has {} particles, expected {}", c.particles(), self.n)));
        }
        if c.dim() > 2 {
            return Err(Error::Cell(format!("{c} has dimension above 2")));
        }
        if c.vertices().iter().any(|&v| v == 0 || v > max) {
            return Err(Error::Cell(format!("{c} uses a vertex outside 1..={max}")));
        }
        if let Some(e) = c.edges().iter().find(|e| !self.graph.has_edge(e.tau, e.iota)) {
            return Err(Error::Cell(format!("{e} is not an edge of the graph")));
        }
        Ok(())
    }

    /// All cells of dimension `dim`, in lexicographic order.
    pub fn enumerate(&self, dim: usize) -> Vec<Cell> {
        if dim > self.n {
            return Vec::new();
        }
        let g = &*self.graph;
        let edge_sets: Vec<Vec<Edge>> = g
            .edges()
            .iter()
            .copied()
            .combinations(dim)
            .filter(|es| es.iter().tuple_combinations().all(|(a, b)| !a.meets(b)))
            .collect();
        edge_sets
            .into_par_iter()
            .flat_map_iter(|es| {
                let free: Vec<Label> = g.labels().filter(|&v| !es.iter().any(|e| e.touches(v))).collect();
                free.into_iter()
                    .combinations(self.n - dim)
                    .map(move |vs| Cell::from_sorted(es.clone(), vs))
                    .collect::<Vec<_>>()
            })
            .collect()
    }

    pub fn critical_cells(&self, dim: usize) -> Vec<Cell> {
        self.enumerate(dim).into_par_iter().filter(|c| self.is_critical(c)).collect()
    }

    /// A vertex is blocked when it cannot slide down `e(v)`: it is the root
    /// or `(c - {v}) + e(v)` would not be a cell.
    pub fn is_blocked(&self, c: &Cell, v: Label) -> bool {
        match self.graph.parent(v) {
            None => true,
            Some(p) => c.occupies(p),
        }
    }

    pub fn is_order_respecting(&self, c: &Cell, e: Edge) -> bool {
        self.graph.is_tree_edge(e)
            && !c
                .vertices()
                .iter()
                .any(|&v| e.tau < v && v < e.iota && self.graph.parent(v) == Some(e.tau))
    }

    pub fn is_critical(&self, c: &Cell) -> bool {
        c.vertices().iter().all(|&v| self.is_blocked(c, v))
            && c.edges().iter().all(|&e| !self.is_order_respecting(c, e))
    }

    pub fn lowest_unblocked(&self, c: &Cell) -> Option<Label> {
        c.vertices().iter().copied().find(|&v| !self.is_blocked(c, v))
    }

    /// `c` with its lowest unblocked vertex replaced by `e(v)`.
    fn raise(&self, c: &Cell) -> Option<Cell> {
        let v = self.lowest_unblocked(c)?;
        Some(c.replace_vertex(v, self.graph.parent_edge(v)?))
    }

    pub fn classify(&self, c: &Cell) -> Result<MorseClass> {
        if self.is_critical(c) {
            return Ok(MorseClass::Critical);
        }
        match c.dim() {
            0 => {}
            1 => {
                let e = c.edges()[0];
                if self.graph.is_tree_edge(e) {
                    let face = c.replace_edge(e, e.iota);
                    if self.raise(&face).as_ref() == Some(c) {
                        return Ok(MorseClass::Collapsible { preimage: face });
                    }
                }
            }
            2 => {
                for &e in c.edges() {
                    if !self.graph.is_tree_edge(e) {
                        continue;
                    }
                    let face = c.replace_edge(e, e.iota);
                    if let MorseClass::Redundant { image } = self.classify(&face)? {
                        if &image == c {
                            return Ok(MorseClass::Collapsible { preimage: face });
                        }
                    }
                }
            }
            d => return Err(Error::Cell(format!("cells of dimension {d} are not handled"))),
        }
        match self.raise(c) {
            Some(image) => Ok(MorseClass::Redundant { image }),
            None => Err(Error::Matching(format!("{c} is neither critical, collapsible nor redundant"))),
        }
    }

    /// `W(c)` for a redundant cell.
    pub fn matching_image(&self, c: &Cell) -> Result<Cell> {
        match self.classify(c)? {
            MorseClass::Redundant { image } => Ok(image),
            other => Err(Error::Matching(format!("{c} is not redundant ({other:?})"))),
        }
    }

    /// Boundary word of a 2-cell with `e` the smaller edge:
    /// `{e,ι(e')} {e',τ(e)} {e,τ(e')}^-1 {e',ι(e)}^-1`.
    pub fn boundary_word_literal(&self, c: &Cell) -> Result<Word<Cell>> {
        let (e, f) = self.edge_pair(c)?;
        // {e, x, v} keeps e and puts the other edge's particle at x.
        let at = |gone: Edge, x: Label| c.replace_edge(gone, x);
        Ok(Word::from(vec![
            Letter::pos(at(f, f.iota)),
            Letter::pos(at(e, e.tau)),
            Letter::neg(at(f, f.tau)),
            Letter::neg(at(e, e.iota)),
        ]))
    }

    /// The boundary loop used for relators: the same square traversed the
    /// other way, starting where the particle on `e` sits at `ι(e)` and the
    /// one on `e'` at `τ(e')`.
    pub fn boundary_word(&self, c: &Cell) -> Result<Word<Cell>> {
        let (e, f) = self.edge_pair(c)?;
        let at = |gone: Edge, x: Label| c.replace_edge(gone, x);
        Ok(Word::from(vec![
            Letter::pos(at(f, f.tau)),
            Letter::neg(at(e, e.tau)),
            Letter::neg(at(f, f.iota)),
            Letter::pos(at(e, e.iota)),
        ]))
    }

    fn edge_pair(&self, c: &Cell) -> Result<(Edge, Edge)> {
        if c.dim() != 2 {
            return Err(Error::Cell(format!("{c} is not a 2-cell")));
        }
        Ok((c.edges()[0], c.edges()[1]))
    }

    /// Collapsible 1-cells leading from the base to `config` along the
    /// reversed W0 flow.
    pub fn path_to_base(&self, config: &Cell) -> Result<Word<Cell>> {
        if config.dim() != 0 {
            return Err(Error::Cell(format!("{config} is not a configuration")));
        }
        let mut down = Vec::new();
        let mut cur = config.clone();
        // Each step lowers the label sum, which bounds the walk.
        let bound: u64 = config.vertices().iter().map(|&v| v as u64).sum();
        while let Some(edge_cell) = self.raise(&cur) {
            if down.len() as u64 > bound {
                return Err(Error::Matching(format!("W0 flow from {config} does not terminate")));
            }
            cur = edge_cell.terminal();
            down.push(Letter::pos(edge_cell));
        }
        if cur != self.base() {
            return Err(Error::Matching(format!("W0 flow from {config} ends at {cur}, not the base")));
        }
        Ok(Word::from(down).inverse())
    }

    /// Number of particles of a 1-cell waiting in the subtree below `tau(e)`.
    pub fn cell_size(&self, c: &Cell) -> usize {
        let Some(&e) = c.edges().first() else {
            return 0;
        };
        c.vertices()
            .iter()
            .filter(|&&v| {
                let mut x = v;
                while let Some(p) = self.graph.parent(x) {
                    if p == e.tau {
                        return self.graph.branch_index(x) > 0;
                    }
                    x = p;
                }
                false
            })
            .count()
    }

    /// Exhaustive check that W is a well-defined acyclic matching on cells
    /// of dimension at most 2.
    pub fn validate_matching(&self) -> Result<MatchingSummary> {
        let mut summary = MatchingSummary::default();
        let mut redundant: [HashMap<Cell, Cell>; 2] = [HashMap::new(), HashMap::new()];
        for dim in 0..=2 {
            let cells = self.enumerate(dim);
            let classes: Vec<MorseClass> =
                cells.par_iter().map(|c| self.classify(c)).collect::<Result<_>>()?;
            for (c, class) in cells.into_iter().zip(classes) {
                match class {
                    MorseClass::Critical => summary.critical[dim] += 1,
                    MorseClass::Collapsible { preimage } => {
                        summary.collapsible[dim] += 1;
                        if self.matching_image(&preimage)? != c {
                            return Err(Error::Matching(format!("{c} and {preimage} are not matched both ways")));
                        }
                    }
                    MorseClass::Redundant { image } => {
                        summary.redundant[dim] += 1;
                        if dim < 2 {
                            match self.classify(&image)? {
                                MorseClass::Collapsible { preimage } if preimage == c => {}
                                _ => return Err(Error::Matching(format!("W({c}) = {image} is not collapsible onto it"))),
                            }
                            redundant[dim].insert(c, image);
                        }
                    }
                }
            }
        }
        for map in &redundant {
            check_acyclic(map)?;
        }
        if summary.critical[0] != 1 {
            return Err(Error::CriticalZeroCells { expected: format!("{{1..{}}}", self.n), found: summary.critical[0] });
        }
        Ok(summary)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MatchingSummary {
    pub critical: [usize; 3],
    pub redundant: [usize; 3],
    pub collapsible: [usize; 3],
}

fn faces(c: &Cell) -> Vec<Cell> {
    c.edges().iter().flat_map(|&e| [c.replace_edge(e, e.tau), c.replace_edge(e, e.iota)]).collect()
}

/// The gradient path digraph `s -> f` for faces `f != s` of `W(s)` must be acyclic.
fn check_acyclic(w: &HashMap<Cell, Cell>) -> Result<()> {
    let mut done: HashSet<&Cell> = HashSet::new();
    let mut on_stack: HashSet<&Cell> = HashSet::new();
    let succ = |s: &Cell| -> Vec<Cell> {
        faces(&w[s]).into_iter().filter(|f| f != s && w.contains_key(f)).collect()
    };
    let mut starts: Vec<&Cell> = w.keys().collect();
    starts.sort();
    for start in starts {
        if done.contains(start) {
            continue;
        }
        let mut stack: Vec<(&Cell, Vec<Cell>)> = vec![(start, succ(start))];
        on_stack.insert(start);
        while let Some((node, next)) = stack.last_mut() {
            if let Some(f) = next.pop() {
                let (key, _) = w.get_key_value(&f).unwrap();
                if on_stack.contains(key) {
                    return Err(Error::Matching(format!("gradient path through {key} is cyclic")));
                }
                if !done.contains(key) {
                    on_stack.insert(key);
                    let s = succ(key);
                    stack.push((key, s));
                }
            } else {
                let node = *node;
                on_stack.remove(node);
                done.insert(node);
                stack.pop();
            }
        }
    }
    Ok(())
}
