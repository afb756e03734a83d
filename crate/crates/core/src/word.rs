//! Free-group words over an arbitrary alphabet.
//!
//! The same type carries words of oriented 1-cells, words over abstract
//! generator indices, and words over named loops.

use std::fmt;

use serde::{Deserialize, Serialize};

/// A letter: an atom with an exponent of `+1` or `-1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter<A> {
    pub atom: A,
    pub inverse: bool,
}

impl<A> Letter<A> {
    pub fn new(atom: A, inverse: bool) -> Self {
        Self { atom, inverse }
    }

    pub fn pos(atom: A) -> Self {
        Self { atom, inverse: false }
    }

    pub fn neg(atom: A) -> Self {
        Self { atom, inverse: true }
    }

    /// `+1` or `-1`.
    pub fn sign(&self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

impl<A: Clone> Letter<A> {
    pub fn inv(&self) -> Self {
        Self { atom: self.atom.clone(), inverse: !self.inverse }
    }

    pub fn map<B>(&self, f: impl FnOnce(&A) -> B) -> Letter<B> {
        Letter { atom: f(&self.atom), inverse: self.inverse }
    }
}

impl<A: PartialEq> Letter<A> {
    pub fn cancels(&self, other: &Self) -> bool {
        self.atom == other.atom && self.inverse != other.inverse
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word<A> {
    pub letters: Vec<Letter<A>>,
}

impl<A> Default for Word<A> {
    fn default() -> Self {
        Self { letters: Vec::new() }
    }
}

impl<A> Word<A> {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Letter<A>> {
        self.letters.iter()
    }

    pub fn push(&mut self, letter: Letter<A>) {
        self.letters.push(letter);
    }
}

impl<A> FromIterator<Letter<A>> for Word<A> {
    fn from_iter<I: IntoIterator<Item = Letter<A>>>(iter: I) -> Self {
        Self { letters: iter.into_iter().collect() }
    }
}

impl<A> From<Vec<Letter<A>>> for Word<A> {
    fn from(letters: Vec<Letter<A>>) -> Self {
        Self { letters }
    }
}

impl<A> IntoIterator for Word<A> {
    type Item = Letter<A>;
    type IntoIter = std::vec::IntoIter<Letter<A>>;

    fn into_iter(self) -> Self::IntoIter {
        self.letters.into_iter()
    }
}

impl<'a, A> IntoIterator for &'a Word<A> {
    type Item = &'a Letter<A>;
    type IntoIter = std::slice::Iter<'a, Letter<A>>;

    fn into_iter(self) -> Self::IntoIter {
        self.letters.iter()
    }
}

impl<A: Clone> Word<A> {
    pub fn single(atom: A) -> Self {
        Self { letters: vec![Letter::pos(atom)] }
    }

    pub fn inverse(&self) -> Self {
        self.letters.iter().rev().map(Letter::inv).collect()
    }

    /// Concatenation without reduction.
    pub fn concat(&self, other: &Self) -> Self {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        Self { letters }
    }

    pub fn pow(&self, exp: i64) -> Self {
        let base = if exp < 0 { self.inverse() } else { self.clone() };
        let mut out = Self::empty();
        for _ in 0..exp.unsigned_abs() {
            out.letters.extend(base.letters.iter().cloned());
        }
        out
    }

    pub fn map<B>(&self, mut f: impl FnMut(&A) -> B) -> Word<B> {
        self.letters.iter().map(|l| l.map(&mut f)).collect()
    }

    /// Replace every atom by a word; inverse letters get the inverse word.
    pub fn substitute<B: Clone>(&self, mut f: impl FnMut(&A) -> Word<B>) -> Word<B> {
        let mut out = Word::empty();
        for l in &self.letters {
            let w = f(&l.atom);
            if l.inverse {
                out.letters.extend(w.inverse().letters);
            } else {
                out.letters.extend(w.letters);
            }
        }
        out
    }
}

impl<A: Clone + PartialEq> Word<A> {
    /// Free reduction with a stack; the result is the unique reduced form.
    pub fn reduced(&self) -> Self {
        let mut out: Vec<Letter<A>> = Vec::with_capacity(self.letters.len());
        for l in &self.letters {
            if out.last().is_some_and(|top| top.cancels(l)) {
                out.pop();
            } else {
                out.push(l.clone());
            }
        }
        Self { letters: out }
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| !w[0].cancels(&w[1]))
    }

    /// Free and cyclic reduction.
    pub fn cyclically_reduced(&self) -> Self {
        let mut w = self.reduced().letters;
        let mut start = 0;
        let mut end = w.len();
        while end - start >= 2 && w[start].cancels(&w[end - 1]) {
            start += 1;
            end -= 1;
        }
        w.truncate(end);
        w.drain(..start);
        Self { letters: w }
    }

    pub fn rotated(&self, k: usize) -> Self {
        if self.letters.is_empty() {
            return self.clone();
        }
        let k = k % self.letters.len();
        let mut letters = self.letters[k..].to_vec();
        letters.extend_from_slice(&self.letters[..k]);
        Self { letters }
    }

    /// True when `self` and `other` agree as cyclic words, possibly after
    /// inverting one of them. Both are cyclically reduced first.
    pub fn cyclic_eq_up_to_inverse(&self, other: &Self) -> bool {
        let a = self.cyclically_reduced();
        let b = other.cyclically_reduced();
        if a.len() != b.len() {
            return false;
        }
        if a.is_empty() {
            return true;
        }
        let binv = b.inverse();
        (0..a.len()).any(|k| {
            let r = a.rotated(k);
            r == b || r == binv
        })
    }

    /// Number of occurrences of `atom` (either sign).
    pub fn occurrences(&self, atom: &A) -> usize {
        self.letters.iter().filter(|l| &l.atom == atom).count()
    }

    /// Signed occurrence count (exponent sum) of `atom`.
    pub fn exponent_sum(&self, atom: &A) -> i64 {
        self.letters.iter().filter(|l| &l.atom == atom).map(Letter::sign).sum()
    }
}

impl<A: fmt::Display> fmt::Display for Word<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", l.atom)?;
            if l.inverse {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}

/// Commutator `a b a^-1 b^-1`, unreduced.
pub fn commutator<A: Clone>(a: &Word<A>, b: &Word<A>) -> Word<A> {
    a.concat(b).concat(&a.inverse()).concat(&b.inverse())
}

/// Conjugation `h g h^-1`, unreduced.
pub fn conjugate<A: Clone>(h: &Word<A>, g: &Word<A>) -> Word<A> {
    h.concat(g).concat(&h.inverse())
}
