//! Bounded word-equivalence search over the relation moves.
//!
//! States are freely reduced words. One expansion step applies either a
//! single relation move, or a free insertion followed by a relation move that
//! uses an inserted letter; the result is freely reduced again and every
//! elementary step is recorded so the certificate replays verbatim.
//!
//! The search grows both ends breadth-first and always expands the smaller
//! frontier. When the two trees meet, the rest of that level is finished and
//! the shortest certificate (ties broken by the move order) is returned.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::BraidError;
use crate::invariants::exponent_vector;
use crate::presentation::{all_letters, reduction_steps, MoveCertificate, Presentation, RelationMove};
use crate::word::{BraidWord, Lambda, Strand};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    /// Maximum number of expansion steps on the combined path.
    pub max_depth: usize,
    /// Maximum number of distinct states stored.
    pub max_states: usize,
    /// No intermediate word may exceed this many letters.
    pub max_word_length: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_depth: 6, max_states: 100_000, max_word_length: 40 }
    }
}

impl SearchBudget {
    pub fn new(max_depth: usize, max_states: usize, max_word_length: usize) -> Result<Self, BraidError> {
        if max_depth == 0 || max_states == 0 || max_word_length == 0 {
            return Err(BraidError::BadSpec("search budgets must be positive".into()));
        }
        Ok(SearchBudget { max_depth, max_states, max_word_length })
    }
}

/// An abelianization coordinate where the two words differ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistinctWitness {
    pub pair: (Strand, Strand),
    pub left: i64,
    pub right: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum EquivalenceVerdict {
    Equivalent(MoveCertificate),
    Distinct(DistinctWitness),
    Unknown { states: usize, depth: usize },
}

impl EquivalenceVerdict {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, EquivalenceVerdict::Equivalent(_))
    }

    pub fn is_distinct(&self) -> bool {
        matches!(self, EquivalenceVerdict::Distinct(_))
    }
}

pub fn equivalent_bounded(
    a: &BraidWord,
    b: &BraidWord,
    budget: &SearchBudget,
) -> Result<EquivalenceVerdict, BraidError> {
    equivalent_bounded_with(&Presentation::corrected(), a, b, budget)
}

pub fn equivalent_bounded_with(
    pres: &Presentation,
    a: &BraidWord,
    b: &BraidWord,
    budget: &SearchBudget,
) -> Result<EquivalenceVerdict, BraidError> {
    if a.strands() != b.strands() {
        return Err(BraidError::StrandMismatch { left: a.strands(), right: b.strands() });
    }
    if a == b {
        return Ok(EquivalenceVerdict::Equivalent(MoveCertificate {
            start: a.clone(),
            steps: Vec::new(),
            end: b.clone(),
        }));
    }
    let (ea, eb) = (exponent_vector(a), exponent_vector(b));
    if ea != eb {
        let pair = ea
            .iter()
            .chain(eb.iter())
            .map(|(p, _)| p)
            .filter(|&(i, j)| ea.get(i, j) != eb.get(i, j))
            .min()
            .expect("vectors differ somewhere");
        return Ok(EquivalenceVerdict::Distinct(DistinctWitness {
            pair,
            left: ea.get(pair.0, pair.1),
            right: eb.get(pair.0, pair.1),
        }));
    }

    let (ra, steps_a) = reduction_steps(a);
    let (rb, steps_b) = reduction_steps(b);
    let mut search = Bidirectional::new(pres, budget, ra.clone(), rb.clone());
    let Some(middle) = search.run() else {
        return Ok(EquivalenceVerdict::Unknown { states: search.nodes.len(), depth: search.depth_reached() });
    };

    let mut steps = steps_a;
    steps.extend(middle);
    steps.extend(steps_b.iter().rev().map(|m| m.inverse()));
    let cert = MoveCertificate { start: a.clone(), steps, end: b.clone() };
    debug_assert!(cert.verify().is_ok());
    Ok(EquivalenceVerdict::Equivalent(cert))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    A,
    B,
}

struct Node {
    word: Vec<Lambda>,
    parent: Option<usize>,
    /// Elementary steps from the parent's word to this word.
    steps: Vec<RelationMove>,
    side: Side,
    depth: usize,
}

struct Bidirectional<'a> {
    pres: &'a Presentation,
    budget: &'a SearchBudget,
    strands: usize,
    nodes: Vec<Node>,
    seen: HashMap<Vec<Lambda>, usize>,
    frontier_a: Vec<usize>,
    frontier_b: Vec<usize>,
    depth_a: usize,
    depth_b: usize,
}

impl<'a> Bidirectional<'a> {
    fn new(pres: &'a Presentation, budget: &'a SearchBudget, a: BraidWord, b: BraidWord) -> Self {
        let strands = a.strands();
        let mut s = Bidirectional {
            pres,
            budget,
            strands,
            nodes: Vec::new(),
            seen: HashMap::new(),
            frontier_a: vec![0],
            frontier_b: Vec::new(),
            depth_a: 0,
            depth_b: 0,
        };
        s.push(Node { word: a.into_letters(), parent: None, steps: Vec::new(), side: Side::A, depth: 0 });
        let bw = b.into_letters();
        if let Some(&idx) = s.seen.get(&bw) {
            // both ends reduce to the same word
            s.frontier_b = vec![idx];
        } else {
            let idx = s.push(Node { word: bw, parent: None, steps: Vec::new(), side: Side::B, depth: 0 });
            s.frontier_b = vec![idx];
        }
        s
    }

    fn push(&mut self, node: Node) -> usize {
        let idx = self.nodes.len();
        self.seen.insert(node.word.clone(), idx);
        self.nodes.push(node);
        idx
    }

    fn depth_reached(&self) -> usize {
        self.depth_a + self.depth_b
    }

    /// Path of elementary steps from the root of `idx`'s tree to `idx`.
    fn path_from_root(&self, mut idx: usize) -> Vec<RelationMove> {
        let mut chunks = Vec::new();
        while let Some(p) = self.nodes[idx].parent {
            chunks.push(self.nodes[idx].steps.clone());
            idx = p;
        }
        chunks.into_iter().rev().flatten().collect()
    }

    /// Steps from word `a` to word `b` through the meeting of nodes `x` (side A)
    /// and `y` (side B) joined by `link` (steps from x's word to y's word).
    fn join(&self, x: usize, link: &[RelationMove], y: usize) -> Vec<RelationMove> {
        let mut steps = self.path_from_root(x);
        steps.extend_from_slice(link);
        steps.extend(self.path_from_root(y).iter().rev().map(|m| m.inverse()));
        steps
    }

    fn run(&mut self) -> Option<Vec<RelationMove>> {
        if self.nodes[self.frontier_a[0]].side == self.nodes[self.frontier_b[0]].side {
            return Some(Vec::new());
        }
        while self.depth_a + self.depth_b < self.budget.max_depth {
            let side = if self.frontier_a.len() <= self.frontier_b.len() { Side::A } else { Side::B };
            let frontier = match side {
                Side::A => std::mem::take(&mut self.frontier_a),
                Side::B => std::mem::take(&mut self.frontier_b),
            };
            if frontier.is_empty() {
                return None;
            }
            let mut next = Vec::new();
            let mut meetings: Vec<Vec<RelationMove>> = Vec::new();
            let mut exhausted = false;
            for &idx in &frontier {
                for (word, steps) in self.expand(idx) {
                    if let Some(&other) = self.seen.get(&word) {
                        let o = &self.nodes[other];
                        if o.side != side {
                            let path = match side {
                                Side::A => self.join(idx, &steps, other),
                                Side::B => {
                                    let back: Vec<_> = steps.iter().rev().map(|m| m.inverse()).collect();
                                    self.join(other, &back, idx)
                                }
                            };
                            meetings.push(path);
                        }
                        continue;
                    }
                    if !meetings.is_empty() {
                        continue;
                    }
                    if self.nodes.len() >= self.budget.max_states {
                        exhausted = true;
                        continue;
                    }
                    let depth = self.nodes[idx].depth + 1;
                    let child = self.push(Node { word, parent: Some(idx), steps, side, depth });
                    next.push(child);
                }
            }
            match side {
                Side::A => {
                    self.frontier_a = next;
                    self.depth_a += 1;
                }
                Side::B => {
                    self.frontier_b = next;
                    self.depth_b += 1;
                }
            }
            if let Some(best) = meetings.into_iter().min_by(|p, q| p.len().cmp(&q.len()).then_with(|| p.cmp(q))) {
                return Some(best);
            }
            if exhausted && self.frontier_a.is_empty() && self.frontier_b.is_empty() {
                return None;
            }
        }
        None
    }

    /// Children of node `idx`: (reduced word, elementary steps from idx's word).
    fn expand(&self, idx: usize) -> Vec<(Vec<Lambda>, Vec<RelationMove>)> {
        let word = BraidWord::from_parts(self.strands, self.nodes[idx].word.clone());
        let cap = self.budget.max_word_length;
        let mut out = Vec::new();
        let finish = |w: BraidWord, mut steps: Vec<RelationMove>, out: &mut Vec<_>| {
            let (r, red) = reduction_steps(&w);
            steps.extend(red);
            out.push((r.into_letters(), steps));
        };

        for m in self.pres.applicable_moves(&word) {
            if matches!(m, RelationMove::FreeDelete { .. }) {
                continue;
            }
            let w = self.pres.apply_move(&word, &m).expect("move listed as applicable");
            finish(w, vec![m], &mut out);
        }

        if word.len() + 2 <= cap {
            let gens = all_letters(self.strands);
            for pos in 0..=word.len() {
                for &letter in &gens {
                    let ins = RelationMove::FreeInsert { pos, letter };
                    let w = self.pres.apply_move(&word, &ins).expect("insert in range");
                    for m in self.pres.relation_moves_near(&w, pos, pos + 2) {
                        let v = self.pres.apply_move(&w, &m).expect("move listed as applicable");
                        finish(v, vec![ins, m], &mut out);
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::mixed_sides;
    use crate::presentation::MixedForm;
    use crate::text::parse_word;
    use crate::word::expand_sigma;

    #[test]
    fn identical_words_have_empty_certificate() {
        let w = parse_word("n=3; l(1,2) l(1,2)^-1 l(3,1)").unwrap();
        match equivalent_bounded(&w, &w, &SearchBudget::default()).unwrap() {
            EquivalenceVerdict::Equivalent(c) => assert!(c.steps.is_empty()),
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn abelianization_separates() {
        let a = parse_word("n=3; l(1,2)").unwrap();
        let b = parse_word("n=3; l(1,3)").unwrap();
        match equivalent_bounded(&a, &b, &SearchBudget::default()).unwrap() {
            EquivalenceVerdict::Distinct(w) => {
                assert_eq!(w.pair, (1, 2));
                assert_ne!(w.left, w.right);
            }
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn mismatched_strands_is_an_error() {
        let a = parse_word("n=2; l(1,2)").unwrap();
        let b = parse_word("n=3; l(1,3)").unwrap();
        assert!(equivalent_bounded(&a, &b, &SearchBudget::default()).is_err());
    }

    #[test]
    fn mixed_instance_at_depth_one() {
        let (l, r) = mixed_sides(MixedForm::Corrected, 1, 2, 3);
        let a = BraidWord::new(3, l.to_vec()).unwrap();
        let b = BraidWord::new(3, r.to_vec()).unwrap();
        let budget = SearchBudget::new(1, 1000, 10).unwrap();
        match equivalent_bounded(&a, &b, &budget).unwrap() {
            EquivalenceVerdict::Equivalent(c) => {
                assert_eq!(c.steps.len(), 1);
                c.verify().unwrap();
            }
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn free_equal_words_need_no_search() {
        let a = parse_word("n=3; l(1,2) l(2,3) l(2,3)^-1").unwrap();
        let b = parse_word("n=3; l(3,1) l(3,1)^-1 l(1,2)").unwrap();
        let budget = SearchBudget::new(1, 10, 10).unwrap();
        match equivalent_bounded(&a, &b, &budget).unwrap() {
            EquivalenceVerdict::Equivalent(c) => c.verify().unwrap(),
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn distant_sigmas_commute() {
        let s12 = expand_sigma(1, 2, 4).unwrap();
        let s34 = expand_sigma(3, 4, 4).unwrap();
        let a = s12.multiply(&s34).unwrap();
        let b = s34.multiply(&s12).unwrap();
        let budget = SearchBudget::new(8, 100_000, 12).unwrap();
        match equivalent_bounded(&a, &b, &budget).unwrap() {
            EquivalenceVerdict::Equivalent(c) => {
                assert_eq!(c.steps.len(), 4);
                c.verify().unwrap();
            }
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn commuting_conjugator_collapses() {
        let a = parse_word("n=4; l(1,2) l(3,4) l(1,2)^-1").unwrap();
        let b = parse_word("n=4; l(3,4)").unwrap();
        let budget = SearchBudget::new(2, 10_000, 8).unwrap();
        match equivalent_bounded(&a, &b, &budget).unwrap() {
            EquivalenceVerdict::Equivalent(c) => c.verify().unwrap(),
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn insertion_is_used_when_needed() {
        // λ34 has no relation moves of its own
        let a = parse_word("n=4; l(3,4)").unwrap();
        let b = parse_word("n=4; l(1,2) l(3,4) l(1,2)^-1").unwrap();
        let budget = SearchBudget::new(1, 10_000, 8).unwrap();
        match equivalent_bounded(&a, &b, &budget).unwrap() {
            EquivalenceVerdict::Equivalent(c) => {
                assert!(matches!(c.steps[0], RelationMove::FreeInsert { .. }));
                c.verify().unwrap();
            }
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn out_of_budget_is_unknown() {
        // equal exponent vectors, not equal in the group (no relation involves
        // λ12 and λ21 alone on two strands)
        let a = parse_word("n=2; l(1,2) l(2,1)").unwrap();
        let b = parse_word("n=2; l(2,1) l(1,2)").unwrap();
        let budget = SearchBudget::new(3, 5_000, 8).unwrap();
        assert!(matches!(equivalent_bounded(&a, &b, &budget).unwrap(), EquivalenceVerdict::Unknown { .. }));
    }

    #[test]
    fn verdict_is_deterministic() {
        let s12 = expand_sigma(1, 2, 4).unwrap();
        let s34 = expand_sigma(3, 4, 4).unwrap();
        let a = s12.multiply(&s34).unwrap();
        let b = s34.multiply(&s12).unwrap();
        let budget = SearchBudget::new(8, 100_000, 12).unwrap();
        let x = equivalent_bounded(&a, &b, &budget).unwrap();
        let y = equivalent_bounded(&a, &b, &budget).unwrap();
        assert_eq!(x, y);
    }
}
