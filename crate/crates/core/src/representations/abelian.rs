use std::collections::BTreeMap;
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use super::{residuals, CMatrix, ResidualReport, UnitaryAssignment};
use crate::error::{Error, Result};
use crate::physical::{LoopKind, PhysicalPresentation};
use crate::word::Word;

/// `sum c_j phi_j = 0 (mod 2 pi)`, normalised so the first nonzero
/// coefficient is positive.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct PhaseConstraint {
    pub coefficients: Vec<(String, i64)>,
}

impl fmt::Display for PhaseConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (name, c)) in self.coefficients.iter().enumerate() {
            let sign = if *c < 0 { "-" } else if i > 0 { "+" } else { "" };
            if i > 0 {
                write!(f, " {sign} ")?;
            } else {
                write!(f, "{sign}")?;
            }
            if c.abs() != 1 {
                write!(f, "{}*", c.abs())?;
            }
            write!(f, "phi({name})")?;
        }
        write!(f, " = 0 mod 2pi")
    }
}

/// A relator that still involves general unitaries: `word = exp(-i sum c_j phi_j) I`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidualEquation {
    pub relator: usize,
    pub word: Word<String>,
    pub phases: Vec<(String, i64)>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LocallyAbelian {
    pub k: usize,
    /// Loops sent to scalar matrices `exp(i phi) I`.
    pub phase_loops: Vec<String>,
    /// Loops left as general unitaries.
    pub free_loops: Vec<String>,
    pub constraints: Vec<PhaseConstraint>,
    /// Relators satisfied for every choice of phases and unitaries.
    pub trivial_relators: Vec<usize>,
    pub residual_equations: Vec<ResidualEquation>,
    #[serde(skip)]
    group: crate::presentation::FPGroup,
    #[serde(skip)]
    is_phase: Vec<bool>,
}

impl LocallyAbelian {
    /// Free unitaries with no residual equation touching them.
    pub fn unconstrained(&self) -> Vec<String> {
        self.free_loops
            .iter()
            .filter(|n| !self.residual_equations.iter().any(|e| e.word.iter().any(|l| &l.atom == *n)))
            .cloned()
            .collect()
    }

    /// Evaluates every relator of the physical presentation on the ansatz.
    pub fn verify(&self, phases: &BTreeMap<String, f64>, free: &UnitaryAssignment, tol: f64) -> Result<ResidualReport> {
        let k = self.k;
        let mats = self
            .group
            .generators
            .iter()
            .zip(&self.is_phase)
            .map(|(name, &scalar)| {
                if scalar {
                    let phi = phases.get(name).ok_or_else(|| Error::Unassigned(name.clone()))?;
                    Ok(DMatrix::from_diagonal_element(k, k, Complex64::from_polar(1.0, *phi)))
                } else {
                    let i = free.names.iter().position(|n| n == name).ok_or_else(|| Error::Unassigned(name.clone()))?;
                    let m: &CMatrix = &free.matrices[i];
                    if m.nrows() != k {
                        return Err(Error::Representation(format!("matrix for {name} is not {k}x{k}")));
                    }
                    Ok(m.clone())
                }
            })
            .collect::<Result<Vec<_>>>()?;
        residuals(&self.group, &mats, tol)
    }
}

fn normalise(mut c: Vec<(String, i64)>) -> Vec<(String, i64)> {
    if c.first().is_some_and(|x| x.1 < 0) {
        for x in &mut c {
            x.1 = -x.1;
        }
    }
    c
}

/// Substitutes scalars for the Y-loops. Scalars are central, so each relator
/// splits into a phase sum and the word left in the other loops.
pub fn locally_abelian_solve(pp: &PhysicalPresentation, k: usize) -> Result<LocallyAbelian> {
    if k == 0 {
        return Err(Error::Input("matrix dimension must be at least 1".into()));
    }
    let is_phase: Vec<bool> = pp.loops.iter().map(|l| l.kind == LoopKind::Y).collect();
    let group = pp.group();
    let mut constraints = Vec::new();
    let mut trivial = Vec::new();
    let mut residual_equations = Vec::new();
    for (ri, r) in pp.relators.iter().enumerate() {
        let phases: Vec<(String, i64)> = (0..pp.loops.len())
            .filter(|&g| is_phase[g])
            .map(|g| (pp.loops[g].name.clone(), r.word.exponent_sum(&g)))
            .filter(|x| x.1 != 0)
            .collect();
        let rest: Word<usize> = r.word.iter().filter(|l| !is_phase[l.atom]).cloned().collect();
        let rest = rest.cyclically_reduced();
        match (rest.is_empty(), phases.is_empty()) {
            (true, true) => trivial.push(ri),
            (true, false) => constraints.push(PhaseConstraint { coefficients: normalise(phases) }),
            (false, _) => residual_equations.push(ResidualEquation { relator: ri, word: pp.named(&rest), phases }),
        }
    }
    constraints.sort();
    constraints.dedup();
    let names = |want: bool| -> Vec<String> {
        pp.loops.iter().zip(&is_phase).filter(|x| *x.1 == want).map(|x| x.0.name.clone()).collect()
    };
    Ok(LocallyAbelian {
        k,
        phase_loops: names(true),
        free_loops: names(false),
        constraints,
        trivial_relators: trivial,
        residual_equations,
        group,
        is_phase,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constraint_display() {
        let c = PhaseConstraint { coefficients: normalise(vec![("a".into(), -1), ("b".into(), 2)]) };
        assert_eq!(c.to_string(), "phi(a) - 2*phi(b) = 0 mod 2pi");
    }
}
