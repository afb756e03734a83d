mod common;

use braidforge::fixtures;
use braidforge::morse::{morse_presentation, DEFAULT_MAX_STEPS};
use braidforge::presentation::homology_h1;

fn h1(json: &str, n: usize) -> String {
    let c = common::complex(json, n);
    homology_h1(&morse_presentation(&c, DEFAULT_MAX_STEPS).unwrap().to_fp_group(&c)).to_string()
}

#[test]
fn theta_is_rank_three() {
    for n in 2..=4 {
        assert_eq!(h1(fixtures::THETA, n), "Z^3");
    }
    assert_eq!(h1(fixtures::THETA, 1), "Z^2");
}

#[test]
fn trees_and_lasso() {
    assert_eq!(h1(fixtures::PATH, 3), "0");
    assert_eq!(h1(fixtures::Y, 1), "0");
    assert_eq!(h1(fixtures::Y, 2), "Z");
    assert_eq!(h1(fixtures::LASSO, 1), "Z");
    assert_eq!(h1(fixtures::LASSO, 3), "Z^3");
}

#[test]
fn minimal_presentation_keeps_homology() {
    for (json, n) in [(fixtures::THETA, 4), (fixtures::LASSO, 3), (fixtures::Y, 3)] {
        let (c, m) = common::minimal(json, n);
        let full = homology_h1(&morse_presentation(&c, DEFAULT_MAX_STEPS).unwrap().to_fp_group(&c));
        assert_eq!(full, homology_h1(m.group()));
        assert_eq!(m.tietze.target_reached(), Some(true));
    }
}
