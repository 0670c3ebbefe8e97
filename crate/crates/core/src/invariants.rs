//! Abelianization and linking numbers.
//!
//! Both are homotopy invariants of pure virtual braids. Linking is taken
//! through the abelianization: a positive λ_ij has one classical crossing
//! with strand i over strand j and contributes `Link(i,j) = −1`, so
//! `Link(i,j) = −e_ij` for every word.
//!
//! The generator value is sometimes also stated with a companion
//! `Link(j,i) = 1`. A single crossing can only contribute to the ordered
//! pair (over, under), so that entry is not part of the invariant here.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::word::{BraidWord, Strand};

/// Sparse map from ordered pair (i, j) to the exponent sum of λ_ij.
/// Zero entries are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExponentVector {
    entries: BTreeMap<(Strand, Strand), i64>,
}

impl ExponentVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn get(&self, i: Strand, j: Strand) -> i64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn add(&mut self, i: Strand, j: Strand, delta: i64) {
        let e = self.entries.entry((i, j)).or_insert(0);
        *e += delta;
        if *e == 0 {
            self.entries.remove(&(i, j));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Nonzero entries in (i, j) order.
    pub fn iter(&self) -> impl Iterator<Item = ((Strand, Strand), i64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn sum(&self, other: &ExponentVector) -> ExponentVector {
        let mut out = self.clone();
        for ((i, j), v) in other.iter() {
            out.add(i, j, v);
        }
        out
    }
}

/// Sparse map from ordered strand pair (a, b) to Link(a, b).
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinkingMatrix {
    entries: BTreeMap<(Strand, Strand), i64>,
}

impl LinkingMatrix {
    pub fn get(&self, a: Strand, b: Strand) -> i64 {
        self.entries.get(&(a, b)).copied().unwrap_or(0)
    }

    pub fn add(&mut self, a: Strand, b: Strand, delta: i64) {
        let e = self.entries.entry((a, b)).or_insert(0);
        *e += delta;
        if *e == 0 {
            self.entries.remove(&(a, b));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((Strand, Strand), i64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    /// First nonzero entry in (a, b) order.
    pub fn first_nonzero(&self) -> Option<((Strand, Strand), i64)> {
        self.iter().next()
    }
}

/// Sign of a classical crossing with both strands oriented downward:
/// −1 when the over strand runs from left to right, +1 otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CrossingSign {
    Negative,
    Positive,
}

impl CrossingSign {
    pub fn from_over_direction(over_moves_right: bool) -> CrossingSign {
        if over_moves_right {
            CrossingSign::Negative
        } else {
            CrossingSign::Positive
        }
    }

    pub fn value(self) -> i64 {
        match self {
            CrossingSign::Negative => -1,
            CrossingSign::Positive => 1,
        }
    }
}

pub fn exponent_vector(w: &BraidWord) -> ExponentVector {
    let mut v = ExponentVector::zero();
    for l in w.letters() {
        v.add(l.over(), l.under(), l.exponent());
    }
    v
}

pub fn linking_matrix(w: &BraidWord) -> LinkingMatrix {
    let mut m = LinkingMatrix::default();
    for ((i, j), e) in exponent_vector(w).iter() {
        m.add(i, j, -e);
    }
    m
}

/// Necessary (never sufficient) condition for being homotopic to the
/// identity braid: all linking numbers vanish.
pub fn is_possibly_identity_homotopic(w: &BraidWord) -> bool {
    linking_matrix(w).is_zero()
}

/// `link a b v` and `exp i j v` records, one per nonzero entry.
pub fn invariants_report(w: &BraidWord) -> String {
    let mut out = String::new();
    for ((a, b), v) in linking_matrix(w).iter() {
        writeln!(out, "link {a} {b} {v}").unwrap();
    }
    for ((i, j), v) in exponent_vector(w).iter() {
        writeln!(out, "exp {i} {j} {v}").unwrap();
    }
    out
}

pub fn linking_report(m: &LinkingMatrix) -> String {
    let mut out = String::new();
    for ((a, b), v) in m.iter() {
        writeln!(out, "link {a} {b} {v}").unwrap();
    }
    out
}

pub fn exponent_report(v: &ExponentVector) -> String {
    let mut out = String::new();
    for ((i, j), e) in v.iter() {
        writeln!(out, "exp {i} {j} {e}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_word;
    use crate::word::{commutator, expand_sigma};

    #[test]
    fn single_generator() {
        let w = parse_word("n=2; l(1,2)").unwrap();
        let v = exponent_vector(&w);
        assert_eq!(v.get(1, 2), 1);
        assert_eq!(v.iter().count(), 1);
        let m = linking_matrix(&w);
        assert_eq!(m.get(1, 2), -1);
        assert_eq!(m.get(2, 1), 0);
        assert!(!is_possibly_identity_homotopic(&w));
    }

    #[test]
    fn identity_and_trivial_words() {
        assert!(linking_matrix(&BraidWord::identity(4)).is_zero());
        let w = parse_word("n=2; l(1,2) l(1,2)^-1").unwrap();
        assert!(is_possibly_identity_homotopic(&w));
    }

    #[test]
    fn sigma_exponents() {
        let v = exponent_vector(&expand_sigma(1, 3, 3).unwrap());
        assert_eq!(v.iter().collect::<Vec<_>>(), vec![((1, 3), 1), ((3, 1), -1)]);
    }

    #[test]
    fn commutator_vanishes() {
        let x = parse_word("n=3; l(1,2) l(3,1)^-1 l(2,3)").unwrap();
        let y = parse_word("n=3; l(2,1) l(2,1) l(1,3)").unwrap();
        assert!(exponent_vector(&commutator(&x, &y).unwrap()).is_zero());
    }

    #[test]
    fn report_is_sorted() {
        let w = parse_word("n=3; l(2,3) l(1,2)^-1 l(2,3)").unwrap();
        assert_eq!(invariants_report(&w), "link 1 2 1\nlink 2 3 -2\nexp 1 2 -1\nexp 2 3 2\n");
    }
}
