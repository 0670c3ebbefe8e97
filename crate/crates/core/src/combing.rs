//! Combing a pure virtual braid into `b = w₂ w₃ … wₙ`.
//!
//! `VPₙ` splits as `Vₙ* ⋊ VPₙ₋₁`, where `Vₙ*` is the normal closure of the
//! letters touching strand n. Deleting strand n is the projection onto
//! `VPₙ₋₁`; with `c` the projection of `b` embedded back into n strands,
//! `wₙ = c⁻¹ b` lies in the kernel. Recursing on `c` telescopes, so the parts
//! multiply back to `b` exactly after free reduction.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::BraidError;
use crate::invariants::exponent_vector;
use crate::search::{equivalent_bounded, EquivalenceVerdict, SearchBudget};
use crate::text::format_word;
use crate::word::{BraidWord, Lambda, Strand};

/// One conjugate `v a v⁻¹` with `a` a letter touching the top strand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugateFactor {
    pub conjugator: BraidWord,
    pub letter: Lambda,
}

/// `w = ∏ vⱼ aⱼ vⱼ⁻¹ · residual`, exact after free reduction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugateProduct {
    pub top: usize,
    pub factors: Vec<ConjugateFactor>,
    /// Product of the letters not touching `top`; zero exponent vector.
    pub residual: BraidWord,
}

impl ConjugateProduct {
    pub fn length(&self) -> usize {
        self.factors.len()
    }

    /// Multiplies the factors and residual back out (unreduced).
    pub fn reassemble(&self) -> BraidWord {
        let n = self.residual.strands();
        let mut letters = Vec::new();
        for f in &self.factors {
            letters.extend_from_slice(f.conjugator.letters());
            letters.push(f.letter);
            letters.extend(f.conjugator.letters().iter().rev().map(|l| l.inverse()));
        }
        letters.extend_from_slice(self.residual.letters());
        BraidWord::from_parts(n, letters)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KernelCheck {
    /// The projection freely reduces, or was searched, to the empty word.
    Verified,
    /// Only the zero-exponent necessary condition is known.
    Unverified,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CombedPart {
    /// Top strand j of this part; no letter touches a strand above j.
    pub top: usize,
    pub word: BraidWord,
    pub conjugate_form: ConjugateProduct,
    pub kernel: KernelCheck,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelDecomposition {
    pub strands: usize,
    /// w₂, w₃, …, wₙ, each on `strands` strands.
    pub parts: Vec<CombedPart>,
}

impl KernelDecomposition {
    pub fn lengths(&self) -> Vec<usize> {
        self.parts.iter().map(|p| p.conjugate_form.length()).collect()
    }

    /// w₂ w₃ … wₙ, unreduced.
    pub fn product(&self) -> BraidWord {
        let letters = self.parts.iter().flat_map(|p| p.word.letters().iter().copied()).collect();
        BraidWord::from_parts(self.strands, letters)
    }

    pub fn part(&self, top: usize) -> Option<&CombedPart> {
        self.parts.iter().find(|p| p.top == top)
    }

    /// Text report: one block per part with its word, length and factors.
    pub fn report(&self) -> String {
        let mut out = String::new();
        for p in &self.parts {
            writeln!(out, "part {}", p.top).unwrap();
            writeln!(out, "  word {}", format_word(&p.word)).unwrap();
            writeln!(out, "  length {}", p.conjugate_form.length()).unwrap();
            for f in &p.conjugate_form.factors {
                let a = BraidWord::from_parts(self.strands, vec![f.letter]);
                writeln!(out, "  factor {} | {}", format_word(&f.conjugator), format_word(&a)).unwrap();
            }
            writeln!(out, "  residual {}", format_word(&p.conjugate_form.residual)).unwrap();
        }
        out
    }
}

pub fn comb(b: &BraidWord) -> Result<KernelDecomposition, BraidError> {
    let n = b.strands();
    if n < 2 {
        return Err(BraidError::TooFewStrands(n));
    }
    // Walk down from n, projecting at each step.
    let mut words = Vec::with_capacity(n - 1);
    let mut current = b.clone();
    for top in (2..=n).rev() {
        let projected = current.delete_strand(top)?;
        let c = projected.embed(top)?;
        let kernel_word = c.invert().multiply(&current)?.free_reduce();
        words.push((top, kernel_word.embed(n)?));
        current = projected;
    }
    words.reverse();

    let parts = words
        .into_iter()
        .map(|(top, word)| {
            let conjugate_form = kernel_conjugate_form(&word, top)?;
            // by construction the projection is c⁻¹c
            let kernel = if word.delete_strand(top)?.free_reduce().is_empty() {
                KernelCheck::Verified
            } else {
                KernelCheck::Unverified
            };
            Ok(CombedPart { top, word, conjugate_form, kernel })
        })
        .collect::<Result<_, BraidError>>()?;
    Ok(KernelDecomposition { strands: n, parts })
}

fn check_top(w: &BraidWord, top: usize) -> Result<Strand, BraidError> {
    if top < 2 || top > w.strands() {
        return Err(BraidError::IndexOutOfRange { index: top, strands: w.strands() });
    }
    if w.max_index() > top {
        return Err(BraidError::IndexOutOfRange { index: w.max_index(), strands: top });
    }
    let t = top as Strand;
    let residual_exp = exponent_vector(&BraidWord::from_parts(
        w.strands(),
        w.letters().iter().copied().filter(|l| !l.touches(t)).collect(),
    ));
    if !residual_exp.is_zero() {
        return Err(BraidError::NotInKernel { strand: top });
    }
    Ok(t)
}

/// Scans `w = u₁ a₁ u₂ a₂ … a_k u_{k+1}` (the aⱼ touching strand `top`) into
/// factors `(u₁…uⱼ, aⱼ)` and residual `u₁…u_{k+1}`.
pub fn kernel_conjugate_form(w: &BraidWord, top: usize) -> Result<ConjugateProduct, BraidError> {
    let t = check_top(w, top)?;
    let mut prefix: Vec<Lambda> = Vec::new();
    let mut factors = Vec::new();
    for &l in w.letters() {
        if l.touches(t) {
            factors.push(ConjugateFactor { conjugator: BraidWord::from_parts(w.strands(), prefix.clone()), letter: l });
        } else {
            prefix.push(l);
        }
    }
    Ok(ConjugateProduct { top, factors, residual: BraidWord::from_parts(w.strands(), prefix) })
}

/// Number of letters touching strand `top`.
pub fn kernel_length(w: &BraidWord, top: usize) -> Result<usize, BraidError> {
    let t = check_top(w, top)?;
    Ok(w.letters().iter().filter(|l| l.touches(t)).count())
}

/// Greedy attempt to shorten a kernel word.
///
/// Starting from the freely reduced word, repeatedly looks for a pair
/// `a … a⁻¹` of top-strand letters whose deletion leaves a word with the
/// same exponent vector that bounded search proves equivalent to the current
/// word. Moves allowed: free reduction, the commute and mixed relations, and
/// free insertions, all within `budget`. No minimality is claimed.
pub fn heuristic_length_reduction(w: &BraidWord, top: usize, budget: &SearchBudget) -> Result<BraidWord, BraidError> {
    let t = check_top(w, top)?;
    let mut current = w.free_reduce();
    'outer: loop {
        let letters = current.letters();
        let tops: Vec<usize> = (0..letters.len()).filter(|&p| letters[p].touches(t)).collect();
        for (x, &p) in tops.iter().enumerate() {
            for &q in &tops[x + 1..] {
                if !letters[p].cancels(letters[q]) {
                    continue;
                }
                let candidate: Vec<Lambda> =
                    letters.iter().enumerate().filter(|&(r, _)| r != p && r != q).map(|(_, &l)| l).collect();
                let candidate = BraidWord::from_parts(current.strands(), candidate).free_reduce();
                if let EquivalenceVerdict::Equivalent(_) = equivalent_bounded(&current, &candidate, budget)? {
                    current = candidate;
                    continue 'outer;
                }
            }
        }
        return Ok(current);
    }
}
