use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Graph, VertexId};
use crate::error::{Error, Result};

/// Position of a vertex in the canonical total order; the root is 1.
pub type Label = u32;

/// An edge of the ordered graph, oriented from `iota` down to `tau`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub tau: Label,
    pub iota: Label,
}

impl Edge {
    pub fn new(a: Label, b: Label) -> Edge {
        Edge { tau: a.min(b), iota: a.max(b) }
    }

    pub fn touches(&self, v: Label) -> bool {
        self.tau == v || self.iota == v
    }

    pub fn meets(&self, other: &Edge) -> bool {
        self.touches(other.tau) || self.touches(other.iota)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e({},{})", self.tau, self.iota)
    }
}

/// The labelling produced by [`order_vertices`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexOrder {
    /// Vertex id -> label in `1..=|V|`.
    pub labels: BTreeMap<VertexId, Label>,
    /// Per input edge: `(tau, iota)` with `tau < iota`.
    pub orientation: Vec<(Label, Label)>,
    /// For each non-root label `v`, the index of the tree edge `e(v)` with `iota(e(v)) = v`.
    pub parent_edge: BTreeMap<Label, usize>,
}

/// Depth-first numbering of the spanning tree from the root.
///
/// At each vertex the branch towards the root is branch 0; the remaining
/// branches are visited clockwise from it, lowest branch first.
pub fn order_vertices(g: &Graph) -> VertexOrder {
    let children = tree_children(g);
    let mut labels = BTreeMap::new();
    let mut stack = vec![g.root()];
    let mut next: Label = 1;
    while let Some(v) = stack.pop() {
        labels.insert(v, next);
        next += 1;
        for &c in children[&v].iter().rev() {
            stack.push(c);
        }
    }

    let orientation = g
        .edges()
        .iter()
        .map(|&[a, b]| {
            let (la, lb) = (labels[&a], labels[&b]);
            (la.min(lb), la.max(lb))
        })
        .collect::<Vec<_>>();
    let parent_edge = g
        .tree_edge_ids()
        .map(|i| (orientation[i].1, i))
        .collect();
    VertexOrder { labels, orientation, parent_edge }
}

/// Children of every vertex in branch order.
fn tree_children(g: &Graph) -> BTreeMap<VertexId, Vec<VertexId>> {
    let mut tree_adj: BTreeMap<VertexId, Vec<VertexId>> = g.vertices().iter().map(|&v| (v, Vec::new())).collect();
    for i in g.tree_edge_ids() {
        let [a, b] = g.edges()[i];
        tree_adj.get_mut(&a).unwrap().push(b);
        tree_adj.get_mut(&b).unwrap().push(a);
    }

    let mut children: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    let mut stack = vec![(g.root(), None::<VertexId>)];
    while let Some((v, parent)) = stack.pop() {
        let rot = g.rotation(v);
        let start = match parent {
            Some(p) => rot.iter().position(|&w| w == p).map_or(0, |i| i + 1),
            None => 0,
        };
        let mut kids = Vec::new();
        for k in 0..rot.len() {
            let w = rot[(start + k) % rot.len()];
            if Some(w) != parent && tree_adj[&v].contains(&w) && !kids.contains(&w) {
                kids.push(w);
            }
        }
        for &c in &kids {
            stack.push((c, Some(v)));
        }
        children.insert(v, kids);
    }
    children
}

/// A simple graph relabelled by its vertex order, with the tree data the
/// Morse matching needs in constant time.
#[derive(Clone, Debug)]
pub struct OrderedGraph {
    source: Graph,
    order: VertexOrder,
    ids: Vec<VertexId>,
    parent: Vec<Label>,
    children: Vec<Vec<Label>>,
    branch: Vec<usize>,
    adjacency: Vec<Vec<Label>>,
    edges: Vec<Edge>,
}

impl OrderedGraph {
    pub fn new(g: &Graph) -> Result<OrderedGraph> {
        if !g.is_simple() {
            return Err(Error::Graph(
                "graph has loops or parallel edges; subdivide it before building the complex".into(),
            ));
        }
        let order = order_vertices(g);
        let n = g.vertices().len();
        let mut ids = vec![0; n + 1];
        for (&id, &l) in &order.labels {
            ids[l as usize] = id;
        }
        let mut parent = vec![0; n + 1];
        for (&child, &e) in &order.parent_edge {
            parent[child as usize] = order.orientation[e].0;
        }
        let mut children = vec![Vec::new(); n + 1];
        for v in 2..=n as Label {
            children[parent[v as usize] as usize].push(v);
        }
        let mut branch = vec![0; n + 1];
        for (p, kids) in children.iter().enumerate() {
            // Branch 0 points to the root, so children start at index 1;
            // the root's single branch is its branch 0.
            let offset = usize::from(p != 1);
            for (i, &c) in kids.iter().enumerate() {
                branch[c as usize] = i + offset;
            }
        }
        let mut adjacency = vec![Vec::new(); n + 1];
        let mut edges = Vec::with_capacity(order.orientation.len());
        for &(t, i) in &order.orientation {
            adjacency[t as usize].push(i);
            adjacency[i as usize].push(t);
            edges.push(Edge { tau: t, iota: i });
        }
        for a in &mut adjacency {
            a.sort_unstable();
        }
        edges.sort_unstable();
        Ok(OrderedGraph { source: g.clone(), order, ids, parent, children, branch, adjacency, edges })
    }

    pub fn source(&self) -> &Graph {
        &self.source
    }

    pub fn order(&self) -> &VertexOrder {
        &self.order
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len() - 1
    }

    pub fn labels(&self) -> std::ops::RangeInclusive<Label> {
        1..=self.vertex_count() as Label
    }

    pub fn root(&self) -> Label {
        1
    }

    pub fn id_of(&self, v: Label) -> VertexId {
        self.ids[v as usize]
    }

    pub fn label_of(&self, id: VertexId) -> Option<Label> {
        self.order.labels.get(&id).copied()
    }

    pub fn parent(&self, v: Label) -> Option<Label> {
        match self.parent[v as usize] {
            0 => None,
            p => Some(p),
        }
    }

    /// `e(v)`: the tree edge whose initial vertex is `v`.
    pub fn parent_edge(&self, v: Label) -> Option<Edge> {
        self.parent(v).map(|p| Edge { tau: p, iota: v })
    }

    pub fn children(&self, v: Label) -> &[Label] {
        &self.children[v as usize]
    }

    /// Index of the branch at `parent(v)` that contains `v`.
    pub fn branch_index(&self, v: Label) -> usize {
        self.branch[v as usize]
    }

    pub fn neighbours(&self, v: Label) -> &[Label] {
        &self.adjacency[v as usize]
    }

    pub fn degree(&self, v: Label) -> usize {
        self.adjacency[v as usize].len()
    }

    pub fn tree_degree(&self, v: Label) -> usize {
        self.children[v as usize].len() + usize::from(self.parent(v).is_some())
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn has_edge(&self, a: Label, b: Label) -> bool {
        self.adjacency.get(a as usize).is_some_and(|adj| adj.binary_search(&b).is_ok())
    }

    pub fn is_tree_edge(&self, e: Edge) -> bool {
        self.parent[e.iota as usize] == e.tau
    }

    pub fn deleted_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied().filter(|&e| !self.is_tree_edge(e))
    }

    /// Tree path between two vertices, both ends included.
    pub fn tree_path(&self, a: Label, b: Label) -> Vec<Label> {
        let mut up_a = vec![a];
        let mut up_b = vec![b];
        let (mut x, mut y) = (a, b);
        while x != y {
            if x > y {
                x = self.parent[x as usize];
                up_a.push(x);
            } else {
                y = self.parent[y as usize];
                up_b.push(y);
            }
        }
        up_b.pop();
        up_a.extend(up_b.into_iter().rev());
        up_a
    }
}
