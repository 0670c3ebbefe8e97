//! Defining relations of VPₙ as position-indexed rewriting moves.
//!
//! Two relation families generate all non-free moves:
//!
//! * commute: `λ_jk λ_in = λ_in λ_jk` for four distinct indices (applied to
//!   either exponent, since inverses of commuting elements commute);
//! * mixed: `λ_ki^s(ki) λ_kj^s(kj) λ_ij^s(ij) = λ_ij^s(ij) λ_kj^s(kj) λ_ki^s(ki)`
//!   for distinct i, j, k, with `s(ab) = +1` if a < b and −1 otherwise, plus
//!   the same relation with both sides inverted.
//!
//! The mixed relation is sometimes written with `s(ij)` as the exponent of
//! the middle right-hand letter. That variant does not balance exponent sums
//! and is kept only as [`MixedForm::Printed`] for auditing.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::BraidError;
use crate::invariants::exponent_vector;
use crate::text::{format_word, parse_word};
use crate::word::{BraidWord, Lambda, Sign, Strand};

/// `+1` if `i < j`, `−1` otherwise.
pub fn sign_s(i: Strand, j: Strand) -> Result<i64, BraidError> {
    if i == j {
        return Err(BraidError::EqualIndices(i));
    }
    Ok(if i < j { 1 } else { -1 })
}

fn s(i: Strand, j: Strand) -> Sign {
    if i < j {
        Sign::Pos
    } else {
        Sign::Neg
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Direction {
    /// left-hand side to right-hand side
    Forward,
    Backward,
}

impl Direction {
    fn flip(self) -> Direction {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum MixedForm {
    /// Exponent-balanced form, used for all search.
    #[default]
    Corrected,
    /// Middle right-hand exponent `s(ij)`; fails abelianization.
    Printed,
}

/// A single rewriting step. Variant order then position then parameters is
/// the tie-breaking order used by the search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RelationMove {
    /// Swap the letters at `pos` and `pos + 1`.
    Commute { pos: usize },
    /// Replace the three letters at `pos` by the other side of the mixed
    /// relation for the triple (i, j, k).
    Mixed { pos: usize, i: Strand, j: Strand, k: Strand, dir: Direction, inverted: bool },
    /// Insert `letter letter⁻¹` before `pos`.
    FreeInsert { pos: usize, letter: Lambda },
    /// Remove `letter letter⁻¹` at `pos`.
    FreeDelete { pos: usize, letter: Lambda },
}

impl RelationMove {
    pub fn position(&self) -> usize {
        match *self {
            RelationMove::Commute { pos }
            | RelationMove::Mixed { pos, .. }
            | RelationMove::FreeInsert { pos, .. }
            | RelationMove::FreeDelete { pos, .. } => pos,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            RelationMove::Commute { .. } => "commute",
            RelationMove::Mixed { .. } => "mixed",
            RelationMove::FreeInsert { .. } => "insert",
            RelationMove::FreeDelete { .. } => "delete",
        }
    }

    /// The move undoing `self` on the word `self` produced.
    pub fn inverse(&self) -> RelationMove {
        match *self {
            RelationMove::Commute { pos } => RelationMove::Commute { pos },
            RelationMove::Mixed { pos, i, j, k, dir, inverted } => {
                RelationMove::Mixed { pos, i, j, k, dir: dir.flip(), inverted }
            }
            RelationMove::FreeInsert { pos, letter } => RelationMove::FreeDelete { pos, letter },
            RelationMove::FreeDelete { pos, letter } => RelationMove::FreeInsert { pos, letter },
        }
    }

    /// Half-open range of letter positions the move reads in the source word.
    fn window(&self) -> (usize, usize) {
        match *self {
            RelationMove::Commute { pos } => (pos, pos + 2),
            RelationMove::Mixed { pos, .. } => (pos, pos + 3),
            RelationMove::FreeInsert { pos, .. } => (pos, pos),
            RelationMove::FreeDelete { pos, .. } => (pos, pos + 2),
        }
    }

    fn overlaps(&self, lo: usize, hi: usize) -> bool {
        let (a, b) = self.window();
        a < hi && lo < b
    }
}

impl fmt::Display for RelationMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            RelationMove::Commute { pos } => write!(f, "commute @{pos}"),
            RelationMove::Mixed { pos, i, j, k, dir, inverted } => {
                let d = match dir {
                    Direction::Forward => "fwd",
                    Direction::Backward => "bwd",
                };
                write!(f, "mixed @{pos} {i} {j} {k} {d}")?;
                if inverted {
                    write!(f, " inv")?;
                }
                Ok(())
            }
            RelationMove::FreeInsert { pos, letter } => write!(f, "insert @{pos} {letter}"),
            RelationMove::FreeDelete { pos, letter } => write!(f, "delete @{pos} {letter}"),
        }
    }
}

/// Left and right sides of the mixed relation for (i, j, k).
pub fn mixed_sides(form: MixedForm, i: Strand, j: Strand, k: Strand) -> ([Lambda; 3], [Lambda; 3]) {
    let ki = Lambda::pos(k, i).pow(s(k, i));
    let kj = Lambda::pos(k, j).pow(s(k, j));
    let ij = Lambda::pos(i, j).pow(s(i, j));
    let middle = match form {
        MixedForm::Corrected => kj,
        MixedForm::Printed => Lambda::pos(k, j).pow(s(i, j)),
    };
    ([ki, kj, ij], [ij, middle, ki])
}

fn inverse3(w: [Lambda; 3]) -> [Lambda; 3] {
    [w[2].inverse(), w[1].inverse(), w[0].inverse()]
}

/// Commute-relation sides for `λ_jk λ_in = λ_in λ_jk`.
pub fn commute_sides(j: Strand, k: Strand, i: Strand, n: Strand) -> ([Lambda; 2], [Lambda; 2]) {
    let a = Lambda::pos(j, k);
    let b = Lambda::pos(i, n);
    ([a, b], [b, a])
}

fn distinct3(a: Strand, b: Strand, c: Strand) -> bool {
    a != b && b != c && a != c
}

/// The relation set in use: which form of the mixed relation applies.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Presentation {
    pub form: MixedForm,
}

impl Presentation {
    pub fn corrected() -> Self {
        Presentation { form: MixedForm::Corrected }
    }

    pub fn printed() -> Self {
        Presentation { form: MixedForm::Printed }
    }

    fn mixed_source_target(
        &self,
        i: Strand,
        j: Strand,
        k: Strand,
        dir: Direction,
        inverted: bool,
    ) -> ([Lambda; 3], [Lambda; 3]) {
        let (mut lhs, mut rhs) = mixed_sides(self.form, i, j, k);
        if inverted {
            lhs = inverse3(lhs);
            rhs = inverse3(rhs);
        }
        match dir {
            Direction::Forward => (lhs, rhs),
            Direction::Backward => (rhs, lhs),
        }
    }

    /// Mixed moves whose source pattern matches `letters[pos..pos + 3]`.
    fn mixed_at(&self, letters: &[Lambda], pos: usize, strands: usize, out: &mut Vec<RelationMove>) {
        let Some(win) = letters.get(pos..pos + 3) else { return };
        let (x, y) = (win[0], win[1]);
        // Every source pattern starts with λ_ki or λ_ij and has λ_kj in the middle.
        let candidates = [(x.under(), y.under(), x.over()), (x.over(), x.under(), y.over())];
        let mut found = Vec::new();
        for (i, j, k) in candidates {
            if !distinct3(i, j, k) || [i, j, k].iter().any(|&t| t as usize > strands) {
                continue;
            }
            for inverted in [false, true] {
                for dir in [Direction::Forward, Direction::Backward] {
                    let (src, _) = self.mixed_source_target(i, j, k, dir, inverted);
                    if src == win {
                        found.push(RelationMove::Mixed { pos, i, j, k, dir, inverted });
                    }
                }
            }
        }
        found.sort();
        found.dedup();
        out.extend(found);
    }

    fn commute_at(letters: &[Lambda], pos: usize, out: &mut Vec<RelationMove>) {
        let Some(win) = letters.get(pos..pos + 2) else { return };
        let (a, b) = (win[0], win[1]);
        let ids = [a.over(), a.under(), b.over(), b.under()];
        if ids.iter().enumerate().all(|(x, p)| ids[x + 1..].iter().all(|q| q != p)) {
            out.push(RelationMove::Commute { pos });
        }
    }

    /// Commute, mixed and free-deletion moves legal on `w`, sorted.
    pub fn applicable_moves(&self, w: &BraidWord) -> Vec<RelationMove> {
        let letters = w.letters();
        let mut out = Vec::new();
        for pos in 0..letters.len() {
            Self::commute_at(letters, pos, &mut out);
            self.mixed_at(letters, pos, w.strands(), &mut out);
            if pos + 1 < letters.len() && letters[pos].cancels(letters[pos + 1]) {
                out.push(RelationMove::FreeDelete { pos, letter: letters[pos] });
            }
        }
        out.sort();
        out
    }

    /// As [`Presentation::applicable_moves`], plus every free insertion that
    /// keeps the word within `max_word_length` letters.
    pub fn applicable_moves_bounded(&self, w: &BraidWord, max_word_length: usize) -> Vec<RelationMove> {
        let mut out = self.applicable_moves(w);
        if w.len() + 2 <= max_word_length {
            let gens = all_letters(w.strands());
            for pos in 0..=w.len() {
                out.extend(gens.iter().map(|&letter| RelationMove::FreeInsert { pos, letter }));
            }
            out.sort();
        }
        out
    }

    /// Relation moves (commute and mixed only) whose window meets `lo..hi`.
    pub(crate) fn relation_moves_near(&self, w: &BraidWord, lo: usize, hi: usize) -> Vec<RelationMove> {
        let letters = w.letters();
        let mut out = Vec::new();
        for pos in lo.saturating_sub(2)..hi.min(letters.len()) {
            Self::commute_at(letters, pos, &mut out);
            self.mixed_at(letters, pos, w.strands(), &mut out);
        }
        out.retain(|m| m.overlaps(lo, hi));
        out.sort();
        out.dedup();
        out
    }

    pub fn apply_move(&self, w: &BraidWord, m: &RelationMove) -> Result<BraidWord, BraidError> {
        let illegal = || BraidError::IllegalMove { mv: m.to_string(), word: format_word(w) };
        let mut letters = w.letters().to_vec();
        match *m {
            RelationMove::Commute { pos } => {
                let mut legal = Vec::new();
                Self::commute_at(&letters, pos, &mut legal);
                if legal.is_empty() {
                    return Err(illegal());
                }
                letters.swap(pos, pos + 1);
            }
            RelationMove::Mixed { pos, i, j, k, dir, inverted } => {
                if !distinct3(i, j, k) || [i, j, k].iter().any(|&t| t == 0 || t as usize > w.strands()) {
                    return Err(illegal());
                }
                let (src, dst) = self.mixed_source_target(i, j, k, dir, inverted);
                if letters.get(pos..pos + 3) != Some(&src[..]) {
                    return Err(illegal());
                }
                letters[pos..pos + 3].copy_from_slice(&dst);
            }
            RelationMove::FreeInsert { pos, letter } => {
                if pos > letters.len() || letter.top() as usize > w.strands() {
                    return Err(illegal());
                }
                letters.splice(pos..pos, [letter, letter.inverse()]);
            }
            RelationMove::FreeDelete { pos, letter } => {
                if letters.get(pos..pos + 2) != Some(&[letter, letter.inverse()][..]) {
                    return Err(illegal());
                }
                letters.drain(pos..pos + 2);
            }
        }
        Ok(BraidWord::from_parts(w.strands(), letters))
    }
}

/// All 2n(n−1) signed generators on `strands` strands, in canonical order.
pub fn all_letters(strands: usize) -> Vec<Lambda> {
    let n = strands as Strand;
    let mut out = Vec::new();
    for a in 1..=n {
        for b in 1..=n {
            if a != b {
                out.push(Lambda::neg(a, b));
                out.push(Lambda::pos(a, b));
            }
        }
    }
    out
}

pub fn applicable_moves(w: &BraidWord) -> Vec<RelationMove> {
    Presentation::corrected().applicable_moves(w)
}

pub fn apply_move(w: &BraidWord, m: &RelationMove) -> Result<BraidWord, BraidError> {
    Presentation::corrected().apply_move(w, m)
}

/// Free reduction written out as explicit deletions, leftmost first.
pub fn reduction_steps(w: &BraidWord) -> (BraidWord, Vec<RelationMove>) {
    let mut stack: Vec<Lambda> = Vec::with_capacity(w.len());
    let mut steps = Vec::new();
    for &l in w.letters() {
        match stack.last() {
            Some(&top) if top.cancels(l) => {
                stack.pop();
                steps.push(RelationMove::FreeDelete { pos: stack.len(), letter: top });
            }
            _ => stack.push(l),
        }
    }
    (BraidWord::from_parts(w.strands(), stack), steps)
}

/// A replayable sequence of moves from `start` to `end`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveCertificate {
    pub start: BraidWord,
    pub steps: Vec<RelationMove>,
    pub end: BraidWord,
}

impl MoveCertificate {
    pub fn replay_with(&self, pres: &Presentation) -> Result<BraidWord, BraidError> {
        let mut w = self.start.clone();
        for (n, m) in self.steps.iter().enumerate() {
            w = pres.apply_move(&w, m).map_err(|e| BraidError::BadCertificate(format!("step {n}: {e}")))?;
        }
        Ok(w)
    }

    /// Replays every step with the corrected relations and checks the end word.
    pub fn verify(&self) -> Result<(), BraidError> {
        let got = self.replay_with(&Presentation::corrected())?;
        if got != self.end {
            return Err(BraidError::BadCertificate(format!(
                "replay ends at {} instead of {}",
                format_word(&got),
                format_word(&self.end)
            )));
        }
        Ok(())
    }

    /// The certificate read backwards.
    pub fn reversed(&self) -> MoveCertificate {
        MoveCertificate {
            start: self.end.clone(),
            steps: self.steps.iter().rev().map(|m| m.inverse()).collect(),
            end: self.start.clone(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format_word(&self.start);
        out.push('\n');
        for m in &self.steps {
            out.push_str(&m.to_string());
            out.push('\n');
        }
        out.push_str(&format_word(&self.end));
        out.push('\n');
        out
    }

    pub fn from_text(text: &str) -> Result<MoveCertificate, BraidError> {
        let lines: Vec<(usize, &str)> =
            text.lines().enumerate().map(|(n, l)| (n, l.trim())).filter(|(_, l)| !l.is_empty()).collect();
        if lines.len() < 2 {
            return Err(BraidError::BadCertificate("need a start and an end word".into()));
        }
        let start = parse_word(lines[0].1)?;
        let end = parse_word(lines[lines.len() - 1].1)?;
        let steps = lines[1..lines.len() - 1]
            .iter()
            .map(|&(n, l)| parse_move(l).map_err(|e| BraidError::BadCertificate(format!("line {}: {e}", n + 1))))
            .collect::<Result<_, _>>()?;
        Ok(MoveCertificate { start, steps, end })
    }
}

fn parse_move(line: &str) -> Result<RelationMove, String> {
    let mut parts = line.split_whitespace();
    let kind = parts.next().ok_or("empty line")?;
    let pos = parts
        .next()
        .and_then(|p| p.strip_prefix('@'))
        .and_then(|p| p.parse::<usize>().ok())
        .ok_or("expected @<position>")?;
    let rest: Vec<&str> = parts.collect();
    let letter = |rest: &[&str]| -> Result<Lambda, String> {
        let tok = rest.first().ok_or("missing generator")?;
        let w = parse_word(&format!("n={}; {tok}", Strand::MAX)).map_err(|e| e.to_string())?;
        match w.letters() {
            [l] => Ok(*l),
            _ => Err(format!("bad generator {tok}")),
        }
    };
    match kind {
        "commute" => Ok(RelationMove::Commute { pos }),
        "insert" => Ok(RelationMove::FreeInsert { pos, letter: letter(&rest)? }),
        "delete" => Ok(RelationMove::FreeDelete { pos, letter: letter(&rest)? }),
        "mixed" => {
            if rest.len() < 4 {
                return Err("mixed needs i j k and a direction".into());
            }
            let idx = |t: &str| t.parse::<Strand>().map_err(|_| format!("bad index {t}"));
            let (i, j, k) = (idx(rest[0])?, idx(rest[1])?, idx(rest[2])?);
            let dir = match rest[3] {
                "fwd" => Direction::Forward,
                "bwd" => Direction::Backward,
                d => return Err(format!("bad direction {d}")),
            };
            let inverted = match rest.get(4) {
                None => false,
                Some(&"inv") => true,
                Some(t) => return Err(format!("unexpected token {t}")),
            };
            Ok(RelationMove::Mixed { pos, i, j, k, dir, inverted })
        }
        other => Err(format!("unknown move kind {other}")),
    }
}

/// One relation instance whose two sides abelianize differently.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationViolation {
    pub relation: String,
    pub indices: Vec<Strand>,
    pub lhs: Vec<Lambda>,
    pub rhs: Vec<Lambda>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReport {
    pub form: MixedForm,
    pub max_strands: usize,
    pub instances_checked: usize,
    pub violations: Vec<RelationViolation>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every instance of both relation families on up to `max_strands`
/// strands for equal exponent vectors on the two sides.
pub fn validate_relation_set(form: MixedForm, max_strands: usize) -> RelationReport {
    let n = max_strands as Strand;
    let word = |ls: &[Lambda]| BraidWord::from_parts(max_strands, ls.to_vec());
    let mut checked = 0;
    let mut violations = Vec::new();
    for j in 1..=n {
        for k in 1..=n {
            for i in 1..=n {
                for m in 1..=n {
                    let ids = [j, k, i, m];
                    if ids.iter().enumerate().any(|(x, p)| ids[x + 1..].contains(p)) {
                        continue;
                    }
                    let (l, r) = commute_sides(j, k, i, m);
                    checked += 1;
                    if exponent_vector(&word(&l)) != exponent_vector(&word(&r)) {
                        violations.push(RelationViolation {
                            relation: "commute".into(),
                            indices: ids.to_vec(),
                            lhs: l.to_vec(),
                            rhs: r.to_vec(),
                        });
                    }
                }
            }
        }
    }
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                if !distinct3(i, j, k) {
                    continue;
                }
                let (l, r) = mixed_sides(form, i, j, k);
                checked += 1;
                if exponent_vector(&word(&l)) != exponent_vector(&word(&r)) {
                    violations.push(RelationViolation {
                        relation: "mixed".into(),
                        indices: vec![i, j, k],
                        lhs: l.to_vec(),
                        rhs: r.to_vec(),
                    });
                }
            }
        }
    }
    RelationReport { form, max_strands, instances_checked: checked, violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_word;

    #[test]
    fn sign_s_values() {
        assert_eq!(sign_s(1, 2).unwrap(), 1);
        assert_eq!(sign_s(3, 1).unwrap(), -1);
        assert!(sign_s(2, 2).is_err());
        for i in 1..6 {
            for j in 1..6 {
                if i != j {
                    assert_eq!(sign_s(i, j).unwrap(), -sign_s(j, i).unwrap());
                }
            }
        }
    }

    #[test]
    fn mixed_sides_for_123() {
        let (l, r) = mixed_sides(MixedForm::Corrected, 1, 2, 3);
        assert_eq!(l, [Lambda::neg(3, 1), Lambda::neg(3, 2), Lambda::pos(1, 2)]);
        assert_eq!(r, [Lambda::pos(1, 2), Lambda::neg(3, 2), Lambda::neg(3, 1)]);
        let (_, p) = mixed_sides(MixedForm::Printed, 1, 2, 3);
        assert_eq!(p[1], Lambda::pos(3, 2));
    }

    #[test]
    fn commute_detected() {
        let w = parse_word("n=4; l(1,2) l(3,4)").unwrap();
        let moves = applicable_moves(&w);
        assert!(moves.contains(&RelationMove::Commute { pos: 0 }));
        let swapped = apply_move(&w, &RelationMove::Commute { pos: 0 }).unwrap();
        assert_eq!(swapped, parse_word("n=4; l(3,4) l(1,2)").unwrap());
        // shared index: no commute
        let w = parse_word("n=4; l(1,2) l(2,4)").unwrap();
        assert!(applicable_moves(&w).is_empty());
        assert!(apply_move(&w, &RelationMove::Commute { pos: 0 }).is_err());
    }

    #[test]
    fn short_word_has_no_relation_moves() {
        assert!(applicable_moves(&parse_word("n=2; l(1,2)").unwrap()).is_empty());
    }

    #[test]
    fn mixed_detected_and_applied() {
        let lhs = parse_word("n=3; l(3,1)^-1 l(3,2)^-1 l(1,2)").unwrap();
        let rhs = parse_word("n=3; l(1,2) l(3,2)^-1 l(3,1)^-1").unwrap();
        let m = RelationMove::Mixed { pos: 0, i: 1, j: 2, k: 3, dir: Direction::Forward, inverted: false };
        assert!(applicable_moves(&lhs).contains(&m));
        assert_eq!(apply_move(&lhs, &m).unwrap(), rhs);
        assert_eq!(apply_move(&rhs, &m.inverse()).unwrap(), lhs);
        // inverted relation
        let inv = RelationMove::Mixed { pos: 0, i: 1, j: 2, k: 3, dir: Direction::Forward, inverted: true };
        assert_eq!(apply_move(&lhs.invert(), &inv).unwrap(), rhs.invert());
    }

    #[test]
    fn every_move_has_an_inverse() {
        let w = parse_word("n=4; l(3,1)^-1 l(3,2)^-1 l(1,2) l(4,1) l(2,3) l(2,3)^-1").unwrap();
        for m in Presentation::corrected().applicable_moves_bounded(&w, 12) {
            let v = apply_move(&w, &m).unwrap();
            assert_eq!(apply_move(&v, &m.inverse()).unwrap(), w, "{m}");
            assert_eq!(exponent_vector(&v), exponent_vector(&w), "{m}");
        }
    }

    #[test]
    fn inserts_respect_length_cap() {
        let w = parse_word("n=2; l(1,2)").unwrap();
        let pres = Presentation::corrected();
        assert!(pres.applicable_moves_bounded(&w, 2).is_empty());
        // 2 positions × 4 generators
        assert_eq!(pres.applicable_moves_bounded(&w, 3).len(), 8);
    }

    #[test]
    fn reduction_steps_replay() {
        let w = parse_word("n=3; l(1,2) l(2,3) l(2,3)^-1 l(1,2)^-1 l(1,3) l(3,1) l(3,1)^-1").unwrap();
        let (r, steps) = reduction_steps(&w);
        assert_eq!(r, w.free_reduce());
        let cert = MoveCertificate { start: w, steps, end: r };
        cert.verify().unwrap();
        cert.reversed().verify().unwrap();
    }

    #[test]
    fn certificate_text_round_trip() {
        let lhs = parse_word("n=3; l(3,1)^-1 l(3,2)^-1 l(1,2)").unwrap();
        let steps = vec![
            RelationMove::Mixed { pos: 0, i: 1, j: 2, k: 3, dir: Direction::Forward, inverted: false },
            RelationMove::FreeInsert { pos: 3, letter: Lambda::neg(2, 1) },
            RelationMove::FreeDelete { pos: 3, letter: Lambda::neg(2, 1) },
        ];
        let mut w = lhs.clone();
        for m in &steps {
            w = apply_move(&w, m).unwrap();
        }
        let cert = MoveCertificate { start: lhs, steps, end: w };
        let text = cert.to_text();
        assert_eq!(
            text,
            "n=3; l(3,1)^-1 l(3,2)^-1 l(1,2)\nmixed @0 1 2 3 fwd\ninsert @3 l(2,1)^-1\n\
             delete @3 l(2,1)^-1\nn=3; l(1,2) l(3,2)^-1 l(3,1)^-1\n"
        );
        assert_eq!(MoveCertificate::from_text(&text).unwrap(), cert);
        cert.verify().unwrap();
    }

    #[test]
    fn tampered_certificate_fails() {
        let w = parse_word("n=4; l(1,2) l(3,4)").unwrap();
        let cert = MoveCertificate { start: w.clone(), steps: vec![RelationMove::Commute { pos: 0 }], end: w };
        assert!(cert.verify().is_err());
    }

    #[test]
    fn relation_validation() {
        let good = validate_relation_set(MixedForm::Corrected, 6);
        assert!(good.passed());
        // 6·5·4·3 commute + 6·5·4 mixed instances
        assert_eq!(good.instances_checked, 360 + 120);
        let bad = validate_relation_set(MixedForm::Printed, 6);
        assert!(bad.violations.iter().all(|v| v.relation == "mixed"));
        assert!(bad.violations.iter().any(|v| v.indices == vec![1, 2, 3]));
        for v in &bad.violations {
            let (i, j, k) = (v.indices[0], v.indices[1], v.indices[2]);
            assert_ne!(sign_s(i, j).unwrap(), sign_s(k, j).unwrap());
        }
    }
}
