use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{Edge, Label};

/// A cube of the discretized configuration space: disjoint edges and
/// vertices, each holding one particle.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    edges: Vec<Edge>,
    vertices: Vec<Label>,
}

impl Cell {
    /// Builds a cell, sorting the constituents and checking disjointness.
    pub fn new(mut edges: Vec<Edge>, mut vertices: Vec<Label>) -> Result<Cell> {
        edges.sort_unstable();
        vertices.sort_unstable();
        let mut used: Vec<Label> = vertices.clone();
        for e in &edges {
            if e.tau == e.iota {
                return Err(Error::Cell(format!("degenerate edge {e}")));
            }
            used.push(e.tau);
            used.push(e.iota);
        }
        used.sort_unstable();
        if used.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Cell(format!("constituents of {} are not disjoint", Cell { edges, vertices })));
        }
        Ok(Cell { edges, vertices })
    }

    /// Caller guarantees sorted, disjoint constituents.
    pub(crate) fn from_sorted(edges: Vec<Edge>, vertices: Vec<Label>) -> Cell {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Cell { edges, vertices }
    }

    pub fn vertex_cell(vertices: Vec<Label>) -> Result<Cell> {
        Cell::new(Vec::new(), vertices)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertices(&self) -> &[Label] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.edges.len()
    }

    pub fn particles(&self) -> usize {
        self.edges.len() + self.vertices.len()
    }

    pub fn has_vertex(&self, v: Label) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// True when `v` is a vertex of the cell or an endpoint of one of its edges.
    pub fn occupies(&self, v: Label) -> bool {
        self.has_vertex(v) || self.edges.iter().any(|e| e.touches(v))
    }

    /// Replace vertex `v` by the edge `e`, raising the dimension.
    pub fn replace_vertex(&self, v: Label, e: Edge) -> Cell {
        let vertices = self.vertices.iter().copied().filter(|&x| x != v).collect();
        let mut edges = self.edges.clone();
        let pos = edges.binary_search(&e).unwrap_or_else(|p| p);
        edges.insert(pos, e);
        Cell::from_sorted(edges, vertices)
    }

    /// Replace edge `e` by the vertex `v` (one of its endpoints).
    pub fn replace_edge(&self, e: Edge, v: Label) -> Cell {
        let edges = self.edges.iter().copied().filter(|&x| x != e).collect();
        self.with_edges_and_vertex(edges, v)
    }

    pub fn add_vertex(&self, v: Label) -> Cell {
        self.with_edges_and_vertex(self.edges.clone(), v)
    }

    fn with_edges_and_vertex(&self, edges: Vec<Edge>, v: Label) -> Cell {
        let mut vertices = self.vertices.clone();
        let pos = vertices.binary_search(&v).unwrap_or_else(|p| p);
        vertices.insert(pos, v);
        Cell::from_sorted(edges, vertices)
    }

    /// Configuration at the initial end of a 1-cell (edge at `iota`).
    pub fn initial(&self) -> Cell {
        let e = self.edges[0];
        self.replace_edge(e, e.iota)
    }

    /// Configuration at the terminal end of a 1-cell (edge at `tau`).
    pub fn terminal(&self) -> Cell {
        let e = self.edges[0];
        self.replace_edge(e, e.tau)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for e in &self.edges {
            write!(f, "{}{e}", if first { "" } else { ", " })?;
            first = false;
        }
        for v in &self.vertices {
            write!(f, "{}{v}", if first { "" } else { ", " })?;
            first = false;
        }
        write!(f, "}}")
    }
}

impl FromStr for Cell {
    type Err = Error;

    fn from_str(s: &str) -> Result<Cell> {
        let bad = || Error::Cell(format!("cannot parse cell `{s}`"));
        let body = s.trim().strip_prefix('{').and_then(|r| r.strip_suffix('}')).ok_or_else(bad)?;
        let mut edges = Vec::new();
        let mut vertices = Vec::new();
        let mut rest = body.trim();
        while !rest.is_empty() {
            if let Some(r) = rest.strip_prefix("e(") {
                let close = r.find(')').ok_or_else(bad)?;
                let (a, b) = r[..close].split_once(',').ok_or_else(bad)?;
                let a: Label = a.trim().parse().map_err(|_| bad())?;
                let b: Label = b.trim().parse().map_err(|_| bad())?;
                edges.push(Edge::new(a, b));
                rest = &r[close + 1..];
            } else {
                let end = rest.find(',').unwrap_or(rest.len());
                vertices.push(rest[..end].trim().parse().map_err(|_| bad())?);
                rest = &rest[end..];
            }
            rest = rest.trim_start();
            if let Some(r) = rest.strip_prefix(',') {
                rest = r.trim_start();
                if rest.is_empty() {
                    return Err(bad());
                }
            } else if !rest.is_empty() {
                return Err(bad());
            }
        }
        Cell::new(edges, vertices)
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Cell {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Cell, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
