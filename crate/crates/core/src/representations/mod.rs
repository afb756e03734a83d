//! Unitary matrices on generators: evaluating relators, solving for
//! representations, the locally abelian ansatz and the Θ component labels.

mod abelian;
mod solve;
mod theta;

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentation::FPGroup;
use crate::word::Word;

pub use abelian::{locally_abelian_solve, LocallyAbelian, PhaseConstraint, ResidualEquation};
pub use solve::{haar_unitary, solve_representation, SolveOptions, SolveOutcome};
pub use theta::{classify_theta_component, ThetaComponent, ThetaRoles};

pub type CMatrix = DMatrix<Complex64>;

pub const UNITARITY_TOL: f64 = 1e-10;

/// One `k x k` matrix per generator, in generator order.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryAssignment {
    pub k: usize,
    pub names: Vec<String>,
    pub matrices: Vec<CMatrix>,
}

impl UnitaryAssignment {
    pub fn new(names: Vec<String>, matrices: Vec<CMatrix>) -> Result<UnitaryAssignment> {
        let k = matrices.first().map_or(1, |m| m.nrows());
        if names.len() != matrices.len() {
            return Err(Error::Representation("one matrix per generator is required".into()));
        }
        for (n, m) in names.iter().zip(&matrices) {
            if m.nrows() != k || m.ncols() != k {
                return Err(Error::Representation(format!("matrix for {n} is not {k}x{k}")));
            }
        }
        Ok(UnitaryAssignment { k, names, matrices })
    }

    /// Largest `|U^† U - I|_F` over the generators.
    pub fn unitarity_defect(&self) -> f64 {
        let id = CMatrix::identity(self.k, self.k);
        self.matrices.iter().map(|u| (u.adjoint() * u - &id).norm()).fold(0.0, f64::max)
    }

    /// Matrices reordered to the generators of `p`.
    pub fn aligned(&self, p: &FPGroup) -> Result<Vec<CMatrix>> {
        p.generators
            .iter()
            .map(|g| {
                self.names
                    .iter()
                    .position(|n| n == g)
                    .map(|i| self.matrices[i].clone())
                    .ok_or_else(|| Error::Unassigned(g.clone()))
            })
            .collect()
    }

    pub fn to_json(&self) -> AssignmentJson {
        AssignmentJson {
            k: self.k,
            matrices: self
                .names
                .iter()
                .zip(&self.matrices)
                .map(|(n, m)| {
                    let entries = (0..self.k)
                        .flat_map(|i| (0..self.k).map(move |j| (i, j)))
                        .map(|(i, j)| [m[(i, j)].re, m[(i, j)].im])
                        .collect();
                    (n.clone(), entries)
                })
                .collect(),
        }
    }

    pub fn from_json(a: &AssignmentJson) -> Result<UnitaryAssignment> {
        let k = a.k;
        let mut names = Vec::new();
        let mut mats = Vec::new();
        for (n, entries) in &a.matrices {
            if entries.len() != k * k {
                return Err(Error::Input(format!("matrix for {n} has {} entries, expected {}", entries.len(), k * k)));
            }
            names.push(n.clone());
            mats.push(CMatrix::from_row_iterator(k, k, entries.iter().map(|e| Complex64::new(e[0], e[1]))));
        }
        let out = UnitaryAssignment { k, names, matrices: mats };
        let d = out.unitarity_defect();
        if d > UNITARITY_TOL {
            return Err(Error::Input(format!("assignment is not unitary (defect {d:.3e})")));
        }
        Ok(out)
    }
}

/// Wire format: generator name to `k*k` entries `[re, im]`, row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AssignmentJson {
    pub k: usize,
    pub matrices: BTreeMap<String, Vec<[f64; 2]>>,
}

/// Ordered product, inverses taken as conjugate transposes.
pub fn eval_word(w: &Word<usize>, mats: &[CMatrix]) -> Result<CMatrix> {
    let k = mats.first().map_or(1, |m| m.nrows());
    let mut acc = CMatrix::identity(k, k);
    for l in w.iter() {
        let u = mats.get(l.atom).ok_or_else(|| Error::Unassigned(format!("#{}", l.atom)))?;
        acc = if l.inverse { acc * u.adjoint() } else { acc * u };
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidualReport {
    /// `|R_i(U) - I|_F` per relator.
    pub deviations: Vec<f64>,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

pub fn residuals(p: &FPGroup, mats: &[CMatrix], tol: f64) -> Result<ResidualReport> {
    let k = mats.first().map_or(1, |m| m.nrows());
    let id = CMatrix::identity(k, k);
    let deviations = p
        .relators
        .iter()
        .map(|r| eval_word(r, mats).map(|m| (m - &id).norm()))
        .collect::<Result<Vec<_>>>()?;
    let max_deviation = deviations.iter().copied().fold(0.0, f64::max);
    Ok(ResidualReport { pass: max_deviation <= tol, deviations, max_deviation, tolerance: tol })
}

pub fn verify_representation(p: &FPGroup, a: &UnitaryAssignment, tol: f64) -> Result<ResidualReport> {
    residuals(p, &a.aligned(p)?, tol)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::word::Letter;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    pub(crate) fn diag(d: &[Complex64]) -> CMatrix {
        CMatrix::from_diagonal(&nalgebra::DVector::from_row_slice(d))
    }

    pub(crate) fn swap() -> CMatrix {
        CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)])
    }

    #[test]
    fn inverse_cancels() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let u = haar_unitary(3, &mut rng);
        let w: Word<usize> = vec![Letter::pos(0), Letter::neg(0)].into();
        assert!((eval_word(&w, &[u]).unwrap() - CMatrix::identity(3, 3)).norm() < 1e-14);
    }

    #[test]
    fn diagonal_commutator_is_trivial() {
        let a = diag(&[c(0., 1.), c(-1., 0.)]);
        let b = diag(&[Complex64::from_polar(1.0, 0.3), Complex64::from_polar(1.0, 2.0)]);
        let w = crate::word::commutator(&Word::single(0), &Word::single(1));
        assert!((eval_word(&w, &[a, b]).unwrap() - CMatrix::identity(2, 2)).norm() < 1e-15);
        assert!(eval_word(&Word::single(5), &[CMatrix::identity(2, 2)]).is_err());
    }

    #[test]
    fn json_roundtrip_and_validation() {
        let a = UnitaryAssignment::new(vec!["x".into()], vec![swap()]).unwrap();
        let j = serde_json::to_string(&a.to_json()).unwrap();
        assert_eq!(j, r#"{"k":2,"matrices":{"x":[[0.0,0.0],[1.0,0.0],[1.0,0.0],[0.0,0.0]]}}"#);
        assert_eq!(UnitaryAssignment::from_json(&serde_json::from_str(&j).unwrap()).unwrap(), a);
        let bad: AssignmentJson = serde_json::from_str(r#"{"k":1,"matrices":{"x":[[2.0,0.0]]}}"#).unwrap();
        assert!(UnitaryAssignment::from_json(&bad).is_err());
    }

    #[test]
    fn free_group_always_passes() {
        let p = FPGroup::new(vec!["a".into(), "b".into()]);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = UnitaryAssignment::new(p.generators.clone(), vec![haar_unitary(2, &mut rng), haar_unitary(2, &mut rng)]).unwrap();
        let r = verify_representation(&p, &a, 1e-12).unwrap();
        assert!(r.pass && r.max_deviation == 0.0);
        let missing = UnitaryAssignment::new(vec!["a".into()], vec![haar_unitary(2, &mut rng)]).unwrap();
        assert!(matches!(verify_representation(&p, &missing, 1e-8), Err(Error::Unassigned(_))));
    }
}
