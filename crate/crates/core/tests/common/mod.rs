#![allow(dead_code)]

use std::sync::Arc;

use braidforge::complex::DiscreteComplex;
use braidforge::graph::{parse_graph, OrderedGraph};
use braidforge::morse::{minimal_presentation, MinimalMorse, DEFAULT_MAX_STEPS};
use braidforge::physical::{parse_loops, solve_physical_presentation, PhysicalPresentation};

pub fn complex(json: &str, n: usize) -> DiscreteComplex {
    let g = OrderedGraph::new(&parse_graph(json).unwrap()).unwrap();
    DiscreteComplex::new(Arc::new(g), n).unwrap()
}

pub fn minimal(json: &str, n: usize) -> (DiscreteComplex, MinimalMorse) {
    let c = complex(json, n);
    let m = minimal_presentation(&c, DEFAULT_MAX_STEPS).unwrap();
    (c, m)
}

pub fn physical(json: &str, n: usize, loops: &str) -> PhysicalPresentation {
    let (c, m) = minimal(json, n);
    solve_physical_presentation(&c, &m, &parse_loops(loops).unwrap(), DEFAULT_MAX_STEPS).unwrap()
}
