//! Adding a particle: the `+` map from critical cells at `n` to critical
//! cells at `n + 1`, and a report of how presentations change with `n`.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::complex::{Cell, DiscreteComplex};
use crate::error::{Error, Result};
use crate::graph::OrderedGraph;
use crate::morse::{minimal_presentation, Rewriter};
use crate::word::Word;

/// `c ∪ {v}` for the smallest `v` making it critical in `upper`.
pub fn plus_cell(upper: &DiscreteComplex, c: &Cell) -> Result<Cell> {
    upper
        .graph()
        .labels()
        .filter(|&v| !c.occupies(v))
        .map(|v| c.add_vertex(v))
        .find(|x| upper.is_critical(x))
        .ok_or_else(|| Error::NoPlusVertex(c.to_string()))
}

pub fn plus_word(upper: &DiscreteComplex, w: &Word<Cell>) -> Result<Word<Cell>> {
    let mut out = Word::empty();
    for l in w.iter() {
        out.push(crate::word::Letter::new(plus_cell(upper, &l.atom)?, l.inverse));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityRow {
    pub n: usize,
    pub critical_one_cells: usize,
    pub critical_two_cells: usize,
    pub minimal_generators: usize,
    pub minimal_relators: usize,
    /// Critical 2-cells that are not `+` of a critical 2-cell one level down.
    pub new_relators: Vec<Cell>,
    /// Number of critical 2-cells whose lifted relator was verified.
    pub lifted: usize,
    /// Whether `+` maps the minimal generators one level down onto these.
    pub generators_correspond: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    pub rows: Vec<StabilityRow>,
    pub two_connected: bool,
}

fn is_two_connected(g: &OrderedGraph) -> bool {
    let n = g.vertex_count();
    if n < 3 {
        return false;
    }
    g.labels().all(|cut| {
        let start = if cut == 1 { 2 } else { 1 };
        let mut seen = vec![false; n + 1];
        seen[cut as usize] = true;
        seen[start as usize] = true;
        let mut stack = vec![start];
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in g.neighbours(v) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n - 1
    })
}

pub fn stability_report(graph: Arc<OrderedGraph>, lo: usize, hi: usize, max_steps: usize) -> Result<StabilityReport> {
    if lo == 0 || lo > hi {
        return Err(Error::Input(format!("bad particle range {lo}..{hi}")));
    }
    let two_connected = is_two_connected(&graph);
    if !two_connected {
        log::warn!("graph is not 2-connected; generator counts need not stabilize");
    }
    // Validate the top level first so an insufficient subdivision fails fast.
    DiscreteComplex::new(graph.clone(), hi)?;

    let mut rows = Vec::new();
    let mut prev: Option<(DiscreteComplex, Vec<Cell>, Vec<Cell>)> = None;
    for n in lo..=hi {
        let cx = DiscreteComplex::new(graph.clone(), n)?;
        let min = minimal_presentation(&cx, max_steps)?;
        let twos = cx.critical_cells(2);
        let gens = min.generator_cells();
        let mut row = StabilityRow {
            n,
            critical_one_cells: min.morse.generators.len(),
            critical_two_cells: twos.len(),
            minimal_generators: gens.len(),
            minimal_relators: min.group().relators.len(),
            new_relators: twos.clone(),
            lifted: 0,
            generators_correspond: None,
        };
        if let Some((low, low_twos, low_gens)) = &prev {
            let mut rw_low = Rewriter::with_max_steps(low, max_steps);
            let mut rw = Rewriter::with_max_steps(&cx, max_steps);
            let mut lifted = BTreeSet::new();
            for t in low_twos {
                let tp = plus_cell(&cx, t)?;
                let added = tp.vertices().iter().copied().find(|&v| !t.has_vertex(v)).unwrap();
                // The boundary lifts cell by cell ...
                let b = cx.boundary_word(&tp)?;
                if b != low.boundary_word(t)?.map(|c| c.add_vertex(added)) {
                    return Err(Error::Lifting(format!("boundary of {tp} is not the lift of the boundary of {t}")));
                }
                // ... and so does its critical image.
                let up = rw.rewrite(&b)?;
                let lifted_low = plus_word(&cx, &rw_low.rewrite(&low.boundary_word(t)?)?)?;
                if up != lifted_low {
                    return Err(Error::Lifting(format!("rewritten boundary of {tp} is {up}, expected {lifted_low}")));
                }
                if !lifted.insert(tp.clone()) {
                    return Err(Error::Lifting(format!("+ is not injective at {tp}")));
                }
            }
            row.lifted = lifted.len();
            row.new_relators.retain(|t| !lifted.contains(t));
            let image: Result<BTreeSet<Cell>> = low_gens.iter().map(|c| plus_cell(&cx, c)).collect();
            row.generators_correspond = Some(image? == gens.iter().cloned().collect());
        }
        rows.push(row);
        prev = Some((cx, twos, gens));
    }
    Ok(StabilityReport { rows, two_connected })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::parse_graph;
    use crate::morse::DEFAULT_MAX_STEPS;

    fn graph(json: &str) -> Arc<OrderedGraph> {
        Arc::new(OrderedGraph::new(&parse_graph(json).unwrap()).unwrap())
    }

    #[test]
    fn plus_examples() {
        let g = graph(fixtures::THETA);
        let c3 = DiscreteComplex::new(g.clone(), 3).unwrap();
        let c4 = DiscreteComplex::new(g, 4).unwrap();
        let p = |cx: &DiscreteComplex, s: &str| plus_cell(cx, &s.parse().unwrap()).unwrap().to_string();
        assert_eq!(p(&c3, "{e(5,9), 6}"), "{e(5,9), 1, 6}");
        assert_eq!(p(&c3, "{e(1,8), 2}"), "{e(1,8), 2, 3}");
        assert_eq!(p(&c4, "{e(1,8), e(5,9), 6}"), "{e(1,8), e(5,9), 2, 6}");
    }

    #[test]
    fn theta_report() {
        let r = stability_report(graph(fixtures::THETA), 2, 4, DEFAULT_MAX_STEPS).unwrap();
        assert!(r.two_connected);
        let gens: Vec<usize> = r.rows.iter().map(|x| x.minimal_generators).collect();
        assert_eq!(gens, vec![3, 3, 3]);
        assert_eq!(r.rows[1].generators_correspond, Some(true));
        assert_eq!(r.rows[1].new_relators.len(), 2);
        assert_eq!(r.rows[2].lifted, 2);
        assert_eq!(r.rows[2].new_relators.len(), 4);
        assert_eq!(r.rows[2].generators_correspond, Some(true));
    }

    #[test]
    fn path_report_is_empty() {
        let r = stability_report(graph(fixtures::PATH), 1, 3, DEFAULT_MAX_STEPS).unwrap();
        assert!(!r.two_connected);
        assert!(r.rows.iter().all(|x| x.critical_one_cells == 0 && x.new_relators.is_empty()));
    }

    #[test]
    fn refuses_tight_subdivision() {
        assert!(stability_report(graph(fixtures::THETA), 2, 6, DEFAULT_MAX_STEPS).is_err());
    }
}
