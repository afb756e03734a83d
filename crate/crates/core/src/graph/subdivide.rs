//! Sufficient subdivision: every path between distinct essential vertices
//! needs at least `n - 1` edges and every cycle at least `n + 1`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{Graph, VertexId};

/// A chain of degree-2 vertices between essential vertices that is too short.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainViolation {
    pub from: VertexId,
    pub to: VertexId,
    pub length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleViolation {
    /// Cycle as a closed vertex walk, first vertex not repeated.
    pub vertices: Vec<VertexId>,
    pub length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubdivisionReport {
    pub target_n: usize,
    pub path_violations: Vec<ChainViolation>,
    pub cycle_violations: Vec<CycleViolation>,
}

impl SubdivisionReport {
    pub fn is_sufficient(&self) -> bool {
        self.path_violations.is_empty() && self.cycle_violations.is_empty()
    }
}

/// Maximal walk whose interior vertices all have degree 2.
#[derive(Clone, Debug)]
struct Chain {
    start: VertexId,
    end: VertexId,
    edges: Vec<usize>,
    /// Closed chain: a loop at an essential vertex or a whole cycle component.
    closed: bool,
}

fn other_end(e: [VertexId; 2], v: VertexId) -> VertexId {
    if e[0] == v {
        e[1]
    } else {
        e[0]
    }
}

fn incident(g: &Graph) -> BTreeMap<VertexId, Vec<usize>> {
    let mut inc: BTreeMap<VertexId, Vec<usize>> = g.vertices().iter().map(|&v| (v, Vec::new())).collect();
    for (i, &[a, b]) in g.edges().iter().enumerate() {
        inc.get_mut(&a).unwrap().push(i);
        if b != a {
            inc.get_mut(&b).unwrap().push(i);
        }
    }
    inc
}

fn chains(g: &Graph) -> Vec<Chain> {
    let inc = incident(g);
    let essential: BTreeSet<VertexId> = g.vertices().iter().copied().filter(|&v| g.degree(v) != 2).collect();
    let mut used = vec![false; g.edges().len()];
    let mut out = Vec::new();

    let walk = |start: VertexId, first: usize, used: &mut Vec<bool>| -> Chain {
        let mut edges = vec![first];
        used[first] = true;
        let mut prev = first;
        let mut cur = other_end(g.edges()[first], start);
        while !essential.contains(&cur) && cur != start {
            let Some(&next) = inc[&cur].iter().find(|&&e| e != prev && !used[e]) else {
                break;
            };
            used[next] = true;
            edges.push(next);
            cur = other_end(g.edges()[next], cur);
            prev = next;
        }
        Chain { start, end: cur, edges, closed: cur == start }
    };

    for &v in &essential {
        for &e in &inc[&v] {
            if !used[e] {
                out.push(walk(v, e, &mut used));
            }
        }
    }
    // Components without essential vertices are plain cycles.
    for &v in g.vertices() {
        if let Some(&e) = inc[&v].iter().find(|&&e| !used[e]) {
            out.push(walk(v, e, &mut used));
        }
    }
    out
}

/// Simple cycles of at most `max_len` edges, as (vertex walk, edge ids).
fn short_cycles(g: &Graph, max_len: usize) -> Vec<(Vec<VertexId>, Vec<usize>)> {
    let inc = incident(g);
    let mut found: BTreeMap<Vec<usize>, Vec<VertexId>> = BTreeMap::new();

    fn dfs(
        g: &Graph,
        inc: &BTreeMap<VertexId, Vec<usize>>,
        start: VertexId,
        path_v: &mut Vec<VertexId>,
        path_e: &mut Vec<usize>,
        max_len: usize,
        found: &mut BTreeMap<Vec<usize>, Vec<VertexId>>,
    ) {
        let cur = *path_v.last().unwrap();
        for &e in &inc[&cur] {
            if path_e.contains(&e) {
                continue;
            }
            let next = other_end(g.edges()[e], cur);
            if next == start {
                let mut key = path_e.clone();
                key.push(e);
                key.sort_unstable();
                found.entry(key).or_insert_with(|| path_v.clone());
            } else if next > start && !path_v.contains(&next) && path_e.len() + 1 < max_len {
                path_v.push(next);
                path_e.push(e);
                dfs(g, inc, start, path_v, path_e, max_len, found);
                path_v.pop();
                path_e.pop();
            }
        }
    }

    if max_len == 0 {
        return Vec::new();
    }
    for &s in g.vertices() {
        dfs(g, &inc, s, &mut vec![s], &mut Vec::new(), max_len, &mut found);
    }
    let mut out: Vec<_> = found.into_iter().map(|(e, v)| (v, e)).collect();
    out.sort_by(|a, b| a.1.len().cmp(&b.1.len()).then_with(|| a.0.cmp(&b.0)));
    out
}

pub fn check_subdivision(g: &Graph, n: usize) -> SubdivisionReport {
    let path_violations = chains(g)
        .into_iter()
        .filter(|c| !c.closed && c.start != c.end && c.edges.len() + 1 < n)
        .map(|c| ChainViolation { from: c.start.min(c.end), to: c.start.max(c.end), length: c.edges.len() })
        .collect();
    let cycle_violations = short_cycles(g, n)
        .into_iter()
        .map(|(vertices, edges)| CycleViolation { vertices, length: edges.len() })
        .collect();
    SubdivisionReport { target_n: n, path_violations, cycle_violations }
}

/// Insert degree-2 vertices until the graph is sufficiently subdivided for
/// `n` particles. Returns the input unchanged when nothing is needed.
pub fn subdivide_for(g: &Graph, n: usize) -> Graph {
    let chains = chains(g);
    let mut target: Vec<usize> = chains
        .iter()
        .map(|c| {
            let need = if c.closed || c.start == c.end { n + 1 } else { n.saturating_sub(1) };
            c.edges.len().max(need)
        })
        .collect();

    // Raise short cycles through several chains, spreading the deficit.
    while let Some((weight, members)) = lightest_short_cycle(&chains, &target, n) {
        let deficit = n + 1 - weight;
        let k = members.len();
        for (j, &c) in members.iter().enumerate() {
            target[c] += deficit / k + usize::from(j < deficit % k);
        }
    }

    let mut extra = vec![0usize; g.edges().len()];
    for (c, chain) in chains.iter().enumerate() {
        let add = target[c] - chain.edges.len();
        let len = chain.edges.len();
        for (j, &e) in chain.edges.iter().enumerate() {
            extra[e] += add / len + usize::from(j < add % len);
        }
    }
    if extra.iter().all(|&x| x == 0) {
        return g.clone();
    }
    rebuild(g, &extra)
}

/// Cheapest simple cycle of the chain multigraph with fewer than `n + 1`
/// edges, if any.
fn lightest_short_cycle(chains: &[Chain], target: &[usize], n: usize) -> Option<(usize, Vec<usize>)> {
    let mut best: Option<(usize, Vec<usize>)> = None;
    let nodes: BTreeSet<VertexId> = chains.iter().flat_map(|c| [c.start, c.end]).collect();
    for &s in &nodes {
        // Stack of (current node, weight, chains used, nodes visited).
        let mut stack = vec![(s, 0usize, Vec::<usize>::new(), vec![s])];
        while let Some((cur, w, used, seen)) = stack.pop() {
            for (ci, c) in chains.iter().enumerate() {
                if used.contains(&ci) {
                    continue;
                }
                let next = if c.start == cur {
                    c.end
                } else if c.end == cur {
                    c.start
                } else {
                    continue;
                };
                let nw = w + target[ci];
                if nw > n {
                    continue;
                }
                let mut nu = used.clone();
                nu.push(ci);
                if next == s {
                    nu.sort_unstable();
                    if best.as_ref().is_none_or(|(bw, bm)| (nw, &nu) < (*bw, bm)) {
                        best = Some((nw, nu));
                    }
                } else if next > s && !seen.contains(&next) {
                    let mut ns = seen.clone();
                    ns.push(next);
                    stack.push((next, nw, nu, ns));
                }
            }
        }
    }
    best
}

fn rebuild(g: &Graph, extra: &[usize]) -> Graph {
    let mut next_id = g.vertices().iter().copied().max().unwrap_or(0) + 1;
    let mut vertices = g.vertices().to_vec();
    let mut edges = Vec::new();
    let mut tree = Vec::new();
    let mut rotation: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    let slots = rotation_slots(g);
    let mut replace: BTreeMap<(VertexId, usize), VertexId> = BTreeMap::new();

    for (i, &[a, b]) in g.edges().iter().enumerate() {
        let k = extra[i];
        if k == 0 {
            edges.push([a, b]);
            tree.push(g.is_tree_edge(i));
            continue;
        }
        let inner: Vec<VertexId> = (0..k).map(|j| next_id + j as VertexId).collect();
        next_id += k as VertexId;
        vertices.extend(&inner);
        let mut chain = vec![a];
        chain.extend(&inner);
        chain.push(b);
        // A subdivided deleted edge keeps exactly one deleted piece: next
        // to the root when it touches it, otherwise in the middle.
        let deleted_at = if g.is_tree_edge(i) {
            usize::MAX
        } else if a == g.root() {
            0
        } else if b == g.root() {
            k
        } else {
            k / 2
        };
        for j in 0..=k {
            edges.push([chain[j], chain[j + 1]]);
            tree.push(j != deleted_at);
        }
        for j in 1..=k {
            rotation.insert(chain[j], vec![chain[j - 1], chain[j + 1]]);
        }
        replace.insert((a, slots[&(i, 0)]), inner[0]);
        replace.insert((b, slots[&(i, 1)]), inner[k - 1]);
    }
    for &v in g.vertices() {
        let rot = g
            .rotation(v)
            .iter()
            .enumerate()
            .map(|(pos, &w)| replace.get(&(v, pos)).copied().unwrap_or(w))
            .collect();
        rotation.insert(v, rot);
    }
    vertices.sort_unstable();
    Graph::from_parts(vertices, edges, tree, rotation, g.root())
        .expect("subdivision preserves a valid spanning tree")
}

/// Position in the rotation list of each edge end `(edge, 0|1)`. Repeated
/// neighbours are matched to parallel edges in index order.
fn rotation_slots(g: &Graph) -> BTreeMap<(usize, usize), usize> {
    let mut taken: BTreeSet<(VertexId, usize)> = BTreeSet::new();
    let mut slots = BTreeMap::new();
    for (i, &[a, b]) in g.edges().iter().enumerate() {
        for (end, (v, w)) in [(a, b), (b, a)].into_iter().enumerate() {
            let pos = g
                .rotation(v)
                .iter()
                .enumerate()
                .position(|(p, &x)| x == w && !taken.contains(&(v, p)))
                .expect("validated rotation lists every incidence");
            taken.insert((v, pos));
            slots.insert((i, end), pos);
        }
    }
    slots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::{parse_graph, OrderedGraph};

    #[test]
    fn theta_fixture_is_sufficient_up_to_five() {
        let g = parse_graph(fixtures::THETA).unwrap();
        for n in 1..=5 {
            assert!(check_subdivision(&g, n).is_sufficient(), "n={n}");
        }
        assert!(!check_subdivision(&g, 6).is_sufficient());
    }

    #[test]
    fn theta_fixture_fails_cycle_condition_at_twelve() {
        let g = parse_graph(fixtures::THETA).unwrap();
        let r = check_subdivision(&g, 12);
        assert_eq!(r.cycle_violations.len(), 3);
        assert!(r.cycle_violations.iter().all(|c| c.length == 8));
    }

    #[test]
    fn path_is_sufficient_while_particles_fit() {
        let g = parse_graph(fixtures::PATH).unwrap();
        for n in 1..=5 {
            assert!(check_subdivision(&g, n).is_sufficient());
        }
    }

    #[test]
    fn raw_theta_is_subdivided_for_five() {
        let g = parse_graph(fixtures::RAW_THETA).unwrap();
        let r = check_subdivision(&g, 5);
        assert!(!r.is_sufficient());
        let s = subdivide_for(&g, 5);
        assert!(s.is_simple());
        assert!(check_subdivision(&s, 5).is_sufficient());
        // Three chains of at least four edges each.
        assert!(s.edges().len() >= 12);
        assert_eq!(s.vertices().len(), 2 + 9);
        assert!(short_cycles(&s, 12).iter().all(|(_, e)| e.len() >= 6));
        assert_eq!(s.tree_degree(s.root()), 1);
        OrderedGraph::new(&s).unwrap();
    }

    #[test]
    fn subdivision_is_idempotent() {
        let g = parse_graph(fixtures::THETA).unwrap();
        assert_eq!(subdivide_for(&g, 4), g);
        let once = subdivide_for(&parse_graph(fixtures::RAW_THETA).unwrap(), 4);
        assert_eq!(subdivide_for(&once, 4), once);
    }

    #[test]
    fn single_edge_needs_nothing_for_one_particle() {
        let g = parse_graph(r#"{"vertices":[1,2],"edges":[[1,2]],"tree_edges":[[1,2]],"root":1}"#).unwrap();
        assert_eq!(subdivide_for(&g, 1), g);
    }

    #[test]
    fn loop_is_expanded_to_a_long_cycle() {
        let g = parse_graph(
            r#"{"vertices":[1,2],"edges":[[1,2],[2,2]],"rotation":{"1":[2],"2":[1,2,2]},
                "tree_edges":[[1,2]],"root":1}"#,
        )
        .unwrap();
        let s = subdivide_for(&g, 3);
        assert!(check_subdivision(&s, 3).is_sufficient());
        assert!(s.is_simple());
        OrderedGraph::new(&s).unwrap();
    }

    #[test]
    fn subdivided_graphs_pass_the_check() {
        for json in [fixtures::THETA, fixtures::Y, fixtures::PATH, fixtures::LASSO, fixtures::RAW_THETA] {
            let g = parse_graph(json).unwrap();
            for n in 1..=7 {
                let s = subdivide_for(&g, n);
                assert!(check_subdivision(&s, n).is_sufficient(), "n={n}");
                assert_eq!(subdivide_for(&s, n), s);
            }
        }
    }
}
