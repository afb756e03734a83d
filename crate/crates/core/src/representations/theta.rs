use std::fmt;

use serde::Serialize;

use super::{verify_representation, CMatrix, UnitaryAssignment};
use crate::error::{Error, Result};
use crate::presentation::FPGroup;

/// Spectral gap below which two eigenvalues count as equal.
pub const DEGENERACY_TOL: f64 = 1e-6;

/// Which generators play the rotation and the two loop roles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaRoles {
    pub gamma: String,
    pub alpha1: String,
    pub alpha2: String,
}

impl Default for ThetaRoles {
    /// Generator names of the minimal four-particle presentation.
    fn default() -> Self {
        ThetaRoles {
            gamma: "{e(5,9), 1, 2, 6}".into(),
            alpha1: "{e(1,8), 2, 3, 4}".into(),
            alpha2: "{e(1,11), 2, 3, 4}".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "component")]
pub enum ThetaComponent {
    /// `U_gamma` is scalar.
    Scalar,
    /// Nondegenerate spectrum; `permutation[j]` is where `Ad_{U1 U2}` sends
    /// the eigenvector of eigenvalue `j`.
    Permutation { eigenvalues: Vec<[f64; 2]>, permutation: Vec<usize> },
    /// Degenerate spectrum; the permutation acts on eigenspaces.
    Degenerate { multiplicities: Vec<usize>, permutation: Vec<usize> },
    /// `U1 U2` does not permute the eigenspaces of `U_gamma`.
    Unclassified { reason: String },
}

fn perm_name(p: &[usize]) -> String {
    let moved: Vec<usize> = (0..p.len()).filter(|&i| p[i] != i).collect();
    match moved.len() {
        0 => "id".into(),
        2 => "transposition".into(),
        _ => format!("P{p:?}"),
    }
}

impl fmt::Display for ThetaComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThetaComponent::Scalar => write!(f, "M_0"),
            ThetaComponent::Permutation { permutation, .. } => write!(f, "M_{}", perm_name(permutation)),
            ThetaComponent::Degenerate { multiplicities, permutation } => {
                let d = multiplicities.iter().max().copied().unwrap_or(1);
                write!(f, "M_{}^({d})", perm_name(permutation))
            }
            ThetaComponent::Unclassified { reason } => write!(f, "unclassified ({reason})"),
        }
    }
}

/// Groups indices whose eigenvalues lie within the degeneracy threshold.
fn clusters(ev: &[num_complex::Complex64]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for i in 0..ev.len() {
        match out.iter_mut().find(|c| c.iter().any(|&j| (ev[i] - ev[j]).norm() < DEGENERACY_TOL)) {
            Some(c) => c.push(i),
            None => out.push(vec![i]),
        }
    }
    out
}

pub fn classify_theta_component(
    p: &FPGroup,
    a: &UnitaryAssignment,
    roles: &ThetaRoles,
    tol: f64,
) -> Result<ThetaComponent> {
    let report = verify_representation(p, a, tol)?;
    if !report.pass {
        return Err(Error::Representation(format!(
            "assignment fails verification (max deviation {:.3e})",
            report.max_deviation
        )));
    }
    let get = |n: &str| -> Result<&CMatrix> {
        a.names.iter().position(|x| x == n).map(|i| &a.matrices[i]).ok_or_else(|| Error::Unassigned(n.into()))
    };
    let (g, x) = (get(&roles.gamma)?, get(&roles.alpha1)? * get(&roles.alpha2)?);
    let (q, t) = g.clone().schur().unpack();
    let ev: Vec<_> = (0..a.k).map(|i| t[(i, i)]).collect();
    let groups = clusters(&ev);
    if groups.len() == 1 {
        return Ok(ThetaComponent::Scalar);
    }
    let m = q.adjoint() * x * &q;
    let block = |r: &[usize], c: &[usize]| -> f64 {
        r.iter().flat_map(|&i| c.iter().map(move |&j| (i, j))).map(|(i, j)| m[(i, j)].norm_sqr()).sum::<f64>().sqrt()
    };
    let mut perm = Vec::with_capacity(groups.len());
    for (cj, col) in groups.iter().enumerate() {
        let hits: Vec<usize> = (0..groups.len()).filter(|&ci| block(&groups[ci], col) > DEGENERACY_TOL).collect();
        match hits.as_slice() {
            [ci] if groups[*ci].len() == col.len() => perm.push(*ci),
            _ => {
                return Ok(ThetaComponent::Unclassified {
                    reason: format!("U1 U2 mixes eigenspace {cj} of U_gamma across {} eigenspaces", hits.len()),
                })
            }
        }
    }
    if groups.iter().all(|c| c.len() == 1) {
        // Singleton clusters come out in eigenvalue order, so cluster and
        // eigenvalue indices coincide.
        Ok(ThetaComponent::Permutation { eigenvalues: ev.iter().map(|z| [z.re, z.im]).collect(), permutation: perm })
    } else {
        Ok(ThetaComponent::Degenerate { multiplicities: groups.iter().map(Vec::len).collect(), permutation: perm })
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::{c, diag, swap};
    use super::*;
    use crate::word::Word;

    fn theta_like() -> FPGroup {
        let mut p = FPGroup::new(vec!["g".into(), "a".into(), "b".into()]);
        let (g, x) = (Word::single(0), Word::single(1).concat(&Word::single(2)));
        let y = Word::single(2).concat(&Word::single(1));
        let r = crate::word::commutator(&g, &x).concat(&crate::word::commutator(&g.inverse(), &y));
        p.push_relator(r, None);
        p
    }

    fn roles() -> ThetaRoles {
        ThetaRoles { gamma: "g".into(), alpha1: "a".into(), alpha2: "b".into() }
    }

    fn assign(m: [CMatrix; 3]) -> UnitaryAssignment {
        UnitaryAssignment::new(vec!["g".into(), "a".into(), "b".into()], m.to_vec()).unwrap()
    }

    #[test]
    fn witnesses() {
        let p = theta_like();
        let id = CMatrix::identity(2, 2);
        let gd = diag(&[c(0., 1.), c(0., -1.)]);
        let scalar = assign([id.clone() * c(0.6, 0.8), swap(), swap()]);
        assert_eq!(classify_theta_component(&p, &scalar, &roles(), 1e-12).unwrap(), ThetaComponent::Scalar);
        let fixed = assign([gd.clone(), id.clone(), id.clone()]);
        assert_eq!(classify_theta_component(&p, &fixed, &roles(), 1e-12).unwrap().to_string(), "M_id");
        let swapped = assign([gd.clone(), swap(), id.clone()]);
        assert_eq!(classify_theta_component(&p, &swapped, &roles(), 1e-12).unwrap().to_string(), "M_transposition");
        let h = CMatrix::from_row_slice(2, 2, &[c(1., 0.), c(1., 0.), c(1., 0.), c(-1., 0.)]) * c(0.5f64.sqrt(), 0.);
        let bad = assign([diag(&[c(1., 0.), c(0., 1.)]), h, id]);
        assert!(matches!(classify_theta_component(&p, &bad, &roles(), 1e-8), Err(Error::Representation(_))));
    }

    #[test]
    fn degenerate_blocks() {
        let p = theta_like();
        let id = CMatrix::identity(3, 3);
        let g = diag(&[c(1., 0.), c(1., 0.), c(-1., 0.)]);
        let comp = classify_theta_component(&p, &assign([g, id.clone(), id]), &roles(), 1e-12).unwrap();
        assert_eq!(comp.to_string(), "M_id^(2)");
    }
}
