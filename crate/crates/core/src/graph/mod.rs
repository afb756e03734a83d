//! Graph ingestion and the combinatorial data that drives the complex:
//! spanning tree, root, rotation system and the derived vertex order.

mod order;
mod subdivide;
mod tree;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use order::{order_vertices, Edge, Label, OrderedGraph, VertexOrder};
pub use subdivide::{check_subdivision, subdivide_for, ChainViolation, CycleViolation, SubdivisionReport};
pub use tree::{check_tree_conditions, TreeConditions};

pub type VertexId = u32;

/// A finite multigraph with a spanning tree, a root and a rotation system.
///
/// Edges are addressed by their index in `edges`. Parallel edges and loops
/// are allowed here; the cube complex requires a simple graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<VertexId>,
    edges: Vec<[VertexId; 2]>,
    tree: Vec<bool>,
    rotation: BTreeMap<VertexId, Vec<VertexId>>,
    root: VertexId,
}

/// On-disk graph description.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<[VertexId; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rotation: Option<BTreeMap<String, Vec<VertexId>>>,
    pub tree_edges: Vec<[VertexId; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root: Option<VertexId>,
}

/// Parse and validate the JSON graph format.
pub fn parse_graph(json: &str) -> Result<Graph> {
    let file: GraphFile = serde_json::from_str(json)?;
    Graph::from_file(&file)
}

impl Graph {
    pub fn from_file(file: &GraphFile) -> Result<Graph> {
        let vertices: BTreeSet<VertexId> = file.vertices.iter().copied().collect();
        if vertices.len() != file.vertices.len() {
            return Err(Error::Graph("duplicate vertex ids".into()));
        }
        if vertices.is_empty() {
            return Err(Error::Graph("graph has no vertices".into()));
        }
        for e in &file.edges {
            for v in e {
                if !vertices.contains(v) {
                    return Err(Error::Graph(format!("edge [{}, {}] uses unknown vertex {v}", e[0], e[1])));
                }
            }
        }

        let mut tree = vec![false; file.edges.len()];
        for t in &file.tree_edges {
            let pos = file
                .edges
                .iter()
                .enumerate()
                .position(|(i, e)| !tree[i] && same_pair(*e, *t))
                .ok_or_else(|| Error::Graph(format!("tree edge [{}, {}] is not an edge of the graph", t[0], t[1])))?;
            tree[pos] = true;
        }

        let rotation = match &file.rotation {
            Some(rot) => {
                let mut parsed = BTreeMap::new();
                for (k, v) in rot {
                    let id: VertexId = k
                        .trim()
                        .parse()
                        .map_err(|_| Error::Graph(format!("rotation key {k:?} is not a vertex id")))?;
                    parsed.insert(id, v.clone());
                }
                let missing: Vec<_> = vertices.iter().filter(|v| !parsed.contains_key(v)).copied().collect();
                if !missing.is_empty() {
                    log::warn!("rotation missing for vertices {missing:?}; using ascending neighbour order");
                    let defaults = default_rotation(&vertices, &file.edges);
                    for v in missing {
                        parsed.insert(v, defaults[&v].clone());
                    }
                }
                parsed
            }
            None => {
                log::warn!("no rotation system given; using ascending neighbour order (results depend on the embedding)");
                default_rotation(&vertices, &file.edges)
            }
        };

        let mut g = Graph {
            vertices: vertices.into_iter().collect(),
            edges: file.edges.clone(),
            tree,
            rotation,
            root: 0,
        };
        g.root = match file.root {
            Some(r) => r,
            None => g
                .vertices
                .iter()
                .copied()
                .find(|&v| g.tree_degree(v) == 1)
                .unwrap_or(g.vertices[0]),
        };
        g.validate()?;
        Ok(g)
    }

    pub(crate) fn from_parts(
        vertices: Vec<VertexId>,
        edges: Vec<[VertexId; 2]>,
        tree: Vec<bool>,
        rotation: BTreeMap<VertexId, Vec<VertexId>>,
        root: VertexId,
    ) -> Result<Graph> {
        let g = Graph { vertices, edges, tree, rotation, root };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<()> {
        if !self.vertices.contains(&self.root) {
            return Err(Error::Graph(format!("root {} is not a vertex", self.root)));
        }
        if !self.is_connected(false) {
            return Err(Error::Graph("graph has multiple components".into()));
        }

        // Spanning tree: |V|-1 non-loop edges connecting every vertex.
        let tree_count = self.tree.iter().filter(|&&t| t).count();
        if self.tree_edge_ids().any(|i| self.edges[i][0] == self.edges[i][1]) {
            return Err(Error::Graph("a loop cannot be a tree edge".into()));
        }
        if tree_count + 1 != self.vertices.len() || !self.is_connected(true) {
            return Err(Error::Graph("tree edges are non-spanning (must form a spanning tree)".into()));
        }
        if self.vertices.len() > 1 && self.tree_degree(self.root) != 1 {
            return Err(Error::Graph(format!(
                "root {} has degree {} in the tree, expected 1",
                self.root,
                self.tree_degree(self.root)
            )));
        }

        // Rotation must list every incidence exactly once.
        let incid = self.incidence_multiset();
        for v in &self.vertices {
            let mut listed = self.rotation.get(v).cloned().unwrap_or_default();
            listed.sort_unstable();
            let expected = incid.get(v).cloned().unwrap_or_default();
            if listed != expected {
                return Err(Error::Graph(format!(
                    "rotation at {v} lists {listed:?} but incident neighbours are {expected:?}"
                )));
            }
        }
        Ok(())
    }

    fn incidence_multiset(&self) -> BTreeMap<VertexId, Vec<VertexId>> {
        let mut m: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
        for &[a, b] in &self.edges {
            m.entry(a).or_default().push(b);
            m.entry(b).or_default().push(a);
        }
        for list in m.values_mut() {
            list.sort_unstable();
        }
        m
    }

    fn is_connected(&self, tree_only: bool) -> bool {
        let idx: BTreeMap<VertexId, usize> = self.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (i, &[a, b]) in self.edges.iter().enumerate() {
            if tree_only && !self.tree[i] {
                continue;
            }
            let (ra, rb) = (find(&mut parent, idx[&a]), find(&mut parent, idx[&b]));
            parent[ra] = rb;
        }
        let r0 = find(&mut parent, 0);
        (0..self.vertices.len()).all(|i| find(&mut parent, i) == r0)
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[[VertexId; 2]] {
        &self.edges
    }

    pub fn is_tree_edge(&self, edge: usize) -> bool {
        self.tree[edge]
    }

    pub fn tree_edge_ids(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.edges.len()).filter(|&i| self.tree[i])
    }

    pub fn rotation(&self, v: VertexId) -> &[VertexId] {
        self.rotation.get(&v).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    /// Degree in the whole graph; a loop counts twice.
    pub fn degree(&self, v: VertexId) -> usize {
        self.edges.iter().map(|e| (e[0] == v) as usize + (e[1] == v) as usize).sum()
    }

    pub fn tree_degree(&self, v: VertexId) -> usize {
        self.tree_edge_ids()
            .map(|i| self.edges[i])
            .filter(|e| e[0] == v || e[1] == v)
            .count()
    }

    /// True when the graph has no loops and no parallel edges.
    pub fn is_simple(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges.iter().all(|&[a, b]| a != b && seen.insert((a.min(b), a.max(b))))
    }

    pub fn to_file(&self) -> GraphFile {
        GraphFile {
            vertices: self.vertices.clone(),
            edges: self.edges.clone(),
            rotation: Some(self.rotation.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()),
            tree_edges: self.tree_edge_ids().map(|i| self.edges[i]).collect(),
            root: Some(self.root),
        }
    }
}

fn same_pair(a: [VertexId; 2], b: [VertexId; 2]) -> bool {
    (a[0] == b[0] && a[1] == b[1]) || (a[0] == b[1] && a[1] == b[0])
}

fn default_rotation(vertices: &BTreeSet<VertexId>, edges: &[[VertexId; 2]]) -> BTreeMap<VertexId, Vec<VertexId>> {
    let mut m: BTreeMap<VertexId, Vec<VertexId>> = vertices.iter().map(|&v| (v, Vec::new())).collect();
    for &[a, b] in edges {
        m.get_mut(&a).expect("validated vertex").push(b);
        m.get_mut(&b).expect("validated vertex").push(a);
    }
    for list in m.values_mut() {
        list.sort_unstable();
    }
    m
}
