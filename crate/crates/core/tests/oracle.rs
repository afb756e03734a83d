mod common;

use std::sync::Arc;

use braidforge::fixtures;
use braidforge::graph::{parse_graph, subdivide_for, OrderedGraph};
use braidforge::morse::{morse_presentation, DEFAULT_MAX_STEPS};
use braidforge::oracle::oracle_presentation;
use braidforge::presentation::{homology_h1, smith_normal_form};
use braidforge::DiscreteComplex;

fn nontrivial(m: &[Vec<i64>]) -> Vec<String> {
    smith_normal_form(m).invariant_factors.iter().filter(|d| **d != 1.into()).map(|d| d.to_string()).collect()
}

#[test]
fn abelianizations_agree_on_all_fixtures() {
    for json in [fixtures::THETA, fixtures::Y, fixtures::PATH, fixtures::LASSO] {
        for n in 1..=4 {
            let g = subdivide_for(&parse_graph(json).unwrap(), n);
            let c = DiscreteComplex::new(Arc::new(OrderedGraph::new(&g).unwrap()), n).unwrap();
            let morse = morse_presentation(&c, DEFAULT_MAX_STEPS).unwrap().to_fp_group(&c);
            let brute = oracle_presentation(&c).unwrap();
            assert_eq!(homology_h1(&morse), homology_h1(&brute), "n={n}");
            // Same torsion part of the Smith form; the free parts differ only by generator count.
            assert_eq!(nontrivial(&morse.abelianization_matrix()), nontrivial(&brute.abelianization_matrix()));
        }
    }
}

#[test]
fn subdivided_raw_theta_matches_fixture() {
    let g = subdivide_for(&parse_graph(fixtures::RAW_THETA).unwrap(), 3);
    let c = DiscreteComplex::new(Arc::new(OrderedGraph::new(&g).unwrap()), 3).unwrap();
    let h = homology_h1(&morse_presentation(&c, DEFAULT_MAX_STEPS).unwrap().to_fp_group(&c));
    let (_, m) = common::minimal(fixtures::THETA, 3);
    assert_eq!(h, homology_h1(m.group()));
}
