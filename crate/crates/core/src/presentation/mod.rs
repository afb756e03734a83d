//! Finitely presented groups: Tietze elimination, abelianization and H1.

mod snf;
mod tietze;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{Letter, Word};

pub use snf::{smith_normal_form, SmithForm};
pub use tietze::{tietze_minimize, Elimination, TietzeResult};

/// A presentation with named generators and relators over generator indices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FPGroup {
    pub generators: Vec<String>,
    pub relators: Vec<Word<usize>>,
    /// Where each relator came from, e.g. a critical 2-cell.
    pub provenance: Vec<Option<String>>,
    /// Elimination priority per generator; larger goes first.
    pub sizes: Vec<usize>,
}

impl FPGroup {
    pub fn new(generators: Vec<String>) -> FPGroup {
        let sizes = vec![0; generators.len()];
        FPGroup { generators, relators: Vec::new(), provenance: Vec::new(), sizes }
    }

    pub fn push_relator(&mut self, w: Word<usize>, source: Option<String>) {
        self.relators.push(w);
        self.provenance.push(source);
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(i) = self.generators.iter().position(|g| g.is_empty()) {
            return Err(Error::Input(format!("generator {i} has an empty name")));
        }
        for (i, r) in self.relators.iter().enumerate() {
            if let Some(l) = r.iter().find(|l| l.atom >= self.generators.len()) {
                return Err(Error::Input(format!("relator {i} uses generator index {} out of range", l.atom)));
            }
        }
        Ok(())
    }

    pub fn named(&self, w: &Word<usize>) -> Word<String> {
        w.map(|&i| self.generators[i].clone())
    }

    /// Rows are relators, columns generators.
    pub fn abelianization_matrix(&self) -> Vec<Vec<i64>> {
        self.relators
            .iter()
            .map(|r| {
                let mut row = vec![0i64; self.generators.len()];
                for l in r.iter() {
                    row[l.atom] += l.sign();
                }
                row
            })
            .collect()
    }

    pub fn to_json(&self) -> PresentationJson {
        PresentationJson {
            generators: self.generators.clone(),
            relators: self
                .relators
                .iter()
                .map(|r| r.iter().map(|l| (l.atom, l.sign())).collect())
                .collect(),
        }
    }

    pub fn from_json(p: &PresentationJson) -> Result<FPGroup> {
        let mut g = FPGroup::new(p.generators.clone());
        for r in &p.relators {
            let w: Word<usize> = r
                .iter()
                .map(|&(i, s)| match s {
                    1 => Ok(Letter::pos(i)),
                    -1 => Ok(Letter::neg(i)),
                    _ => Err(Error::Input(format!("relator exponent {s} is not +1 or -1"))),
                })
                .collect::<Result<_>>()?;
            g.push_relator(w, None);
        }
        g.validate()?;
        Ok(g)
    }
}

impl fmt::Display for FPGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| self.named(r).to_string()).collect();
        write!(f, "⟨")?;
        for (i, g) in self.generators.iter().enumerate() {
            write!(f, "{}{g}", if i == 0 { " " } else { ", " })?;
        }
        write!(f, " |")?;
        for (i, r) in rels.iter().enumerate() {
            write!(f, "{}{r}", if i == 0 { " " } else { ", " })?;
        }
        write!(f, " ⟩")
    }
}

/// Wire format shared by every command that reads or writes presentations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub generators: Vec<String>,
    pub relators: Vec<Vec<(usize, i64)>>,
}

/// `Z^free_rank` plus cyclic factors of the given orders.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyClass {
    pub free_rank: usize,
    #[serde(serialize_with = "bigints_as_strings")]
    pub torsion: Vec<BigInt>,
}

fn bigints_as_strings<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl HomologyClass {
    /// Number of cyclic summands, the lower bound on generators.
    pub fn rank_bound(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn only_two_torsion(&self) -> bool {
        self.torsion.iter().all(|d| *d == BigInt::from(2))
    }
}

impl fmt::Display for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            m => parts.push(format!("Z^{m}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let d = &self.torsion[i];
            let k = self.torsion[i..].iter().take_while(|x| *x == d).count();
            parts.push(if k == 1 { format!("Z_{d}") } else { format!("Z_{d}^{k}") });
            i += k;
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" (+) "))
        }
    }
}

pub fn homology_h1(p: &FPGroup) -> HomologyClass {
    let snf = smith_normal_form(&p.abelianization_matrix());
    HomologyClass {
        free_rank: p.generators.len() - snf.rank,
        torsion: snf.invariant_factors.into_iter().filter(|d| !d.is_one()).map(|d| d.abs()).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[(usize, i64)]) -> Word<usize> {
        v.iter().map(|&(i, s)| Letter::new(i, s < 0)).collect()
    }

    #[test]
    fn abelianization_rows() {
        let mut g = FPGroup::new(vec!["a".into(), "b".into()]);
        g.push_relator(w(&[(0, 1), (1, 1), (0, -1), (1, -1)]), None);
        g.push_relator(w(&[(0, 1), (0, 1), (1, -1)]), None);
        assert_eq!(g.abelianization_matrix(), vec![vec![0, 0], vec![2, -1]]);
    }

    #[test]
    fn homology_display() {
        let h = |m, t: &[i64]| HomologyClass { free_rank: m, torsion: t.iter().map(|&x| BigInt::from(x)).collect() };
        assert_eq!(h(0, &[]).to_string(), "0");
        assert_eq!(h(1, &[]).to_string(), "Z");
        assert_eq!(h(3, &[]).to_string(), "Z^3");
        assert_eq!(h(2, &[2, 2, 2]).to_string(), "Z^2 (+) Z_2^3");
        assert_eq!(h(0, &[2, 6]).to_string(), "Z_2 (+) Z_6");
    }

    #[test]
    fn homology_of_small_groups() {
        let mut g = FPGroup::new(vec!["a".into(), "b".into()]);
        g.push_relator(w(&[(0, 1), (0, 1)]), None);
        let h = homology_h1(&g);
        assert_eq!(h.to_string(), "Z (+) Z_2");
        assert!(h.only_two_torsion());
        assert_eq!(homology_h1(&FPGroup::new(vec![])).to_string(), "0");
    }

    #[test]
    fn json_roundtrip() {
        let mut g = FPGroup::new(vec!["a".into(), "b".into()]);
        g.push_relator(w(&[(0, 1), (1, -1)]), None);
        let j = serde_json::to_string(&g.to_json()).unwrap();
        assert_eq!(j, r#"{"generators":["a","b"],"relators":[[[0,1],[1,-1]]]}"#);
        let back = FPGroup::from_json(&serde_json::from_str(&j).unwrap()).unwrap();
        assert_eq!(back.relators, g.relators);
        let bad: PresentationJson = serde_json::from_str(r#"{"generators":["a"],"relators":[[[3,1]]]}"#).unwrap();
        assert!(FPGroup::from_json(&bad).is_err());
    }
}
