//! Words over the λ-generators of the pure virtual braid group VPₙ.
//!
//! A [`BraidWord`] is an unreduced sequence of signed generators together
//! with its strand count. Every binary operation checks that strand counts
//! agree; reduction is always explicit (see [`BraidWord::free_reduce`]).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::BraidError;

/// 1-based strand label.
pub type Strand = u16;

/// Exponent of a generator occurrence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    Neg,
    Pos,
}

impl Sign {
    pub fn from_int(e: i64) -> Option<Sign> {
        match e {
            1 => Some(Sign::Pos),
            -1 => Some(Sign::Neg),
            _ => None,
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

/// One occurrence of λ_ij or λ_ij⁻¹. Strand `over` passes over strand
/// `under` at the single classical crossing of the generator.
///
/// The derived ordering is (over, under, sign), which is the canonical
/// generator order used throughout the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Lambda {
    over: Strand,
    under: Strand,
    sign: Sign,
}

impl Lambda {
    pub fn new(over: Strand, under: Strand, sign: Sign) -> Result<Lambda, BraidError> {
        if over == under {
            return Err(BraidError::EqualIndices(over));
        }
        if over == 0 || under == 0 {
            return Err(BraidError::ZeroIndex);
        }
        Ok(Lambda { over, under, sign })
    }

    /// λ_ij with exponent +1.
    pub fn pos(over: Strand, under: Strand) -> Lambda {
        Lambda::new(over, under, Sign::Pos).expect("valid generator indices")
    }

    /// λ_ij with exponent −1.
    pub fn neg(over: Strand, under: Strand) -> Lambda {
        Lambda::new(over, under, Sign::Neg).expect("valid generator indices")
    }

    pub fn over(self) -> Strand {
        self.over
    }

    pub fn under(self) -> Strand {
        self.under
    }

    pub fn sign(self) -> Sign {
        self.sign
    }

    pub fn exponent(self) -> i64 {
        self.sign.value()
    }

    pub fn inverse(self) -> Lambda {
        Lambda { sign: self.sign.flip(), ..self }
    }

    pub fn touches(self, strand: Strand) -> bool {
        self.over == strand || self.under == strand
    }

    /// The largest strand index the generator involves.
    pub fn top(self) -> Strand {
        self.over.max(self.under)
    }

    pub fn cancels(self, other: Lambda) -> bool {
        self.inverse() == other
    }

    /// Same generator with the given exponent sign applied on top.
    pub fn pow(self, sign: Sign) -> Lambda {
        match sign {
            Sign::Pos => self,
            Sign::Neg => self.inverse(),
        }
    }
}

impl fmt::Display for Lambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "l({},{})", self.over, self.under)?;
        if self.sign == Sign::Neg {
            write!(f, "^-1")?;
        }
        Ok(())
    }
}

/// An element of VPₙ given as a (not necessarily reduced) word.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Lambda>,
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::format_word(self))
    }
}

impl BraidWord {
    pub fn identity(strands: usize) -> BraidWord {
        BraidWord { strands, letters: Vec::new() }
    }

    pub fn new(strands: usize, letters: Vec<Lambda>) -> Result<BraidWord, BraidError> {
        if strands == 0 {
            return Err(BraidError::NoStrands);
        }
        for l in &letters {
            if l.top() as usize > strands {
                return Err(BraidError::IndexOutOfRange { index: l.top() as usize, strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// Caller guarantees the letters fit in `strands`.
    pub(crate) fn from_parts(strands: usize, letters: Vec<Lambda>) -> BraidWord {
        debug_assert!(letters.iter().all(|l| l.top() as usize <= strands));
        BraidWord { strands, letters }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Lambda] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Lambda> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    fn check_same(&self, other: &BraidWord) -> Result<(), BraidError> {
        if self.strands != other.strands {
            return Err(BraidError::StrandMismatch { left: self.strands, right: other.strands });
        }
        Ok(())
    }

    /// Concatenation, `self` on top. No reduction.
    pub fn multiply(&self, other: &BraidWord) -> Result<BraidWord, BraidError> {
        self.check_same(other)?;
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord::from_parts(self.strands, letters))
    }

    pub fn invert(&self) -> BraidWord {
        let letters = self.letters.iter().rev().map(|l| l.inverse()).collect();
        BraidWord::from_parts(self.strands, letters)
    }

    /// Cancels adjacent pairs g^e g^-e until none remain.
    pub fn free_reduce(&self) -> BraidWord {
        let mut out: Vec<Lambda> = Vec::with_capacity(self.len());
        for &l in &self.letters {
            match out.last() {
                Some(&top) if top.cancels(l) => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        BraidWord::from_parts(self.strands, out)
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| !w[0].cancels(w[1]))
    }

    /// `g · self · g⁻¹`, unreduced.
    pub fn conjugate_by(&self, g: &BraidWord) -> Result<BraidWord, BraidError> {
        g.multiply(self)?.multiply(&g.invert())
    }

    /// Removes strand `strand`: drops every letter touching it and shifts
    /// higher labels down by one.
    pub fn delete_strand(&self, strand: usize) -> Result<BraidWord, BraidError> {
        if strand == 0 || strand > self.strands {
            return Err(BraidError::IndexOutOfRange { index: strand, strands: self.strands });
        }
        if self.strands < 2 {
            return Err(BraidError::NoStrands);
        }
        let s = strand as Strand;
        let shift = |x: Strand| if x > s { x - 1 } else { x };
        let letters = self
            .letters
            .iter()
            .filter(|l| !l.touches(s))
            .map(|l| Lambda { over: shift(l.over), under: shift(l.under), sign: l.sign })
            .collect();
        Ok(BraidWord::from_parts(self.strands - 1, letters))
    }

    /// Index-preserving inclusion VPₙ → VPₘ for m ≥ n.
    pub fn embed(&self, strands: usize) -> Result<BraidWord, BraidError> {
        if strands < self.strands {
            return Err(BraidError::IndexOutOfRange { index: self.strands, strands });
        }
        Ok(BraidWord::from_parts(strands, self.letters.clone()))
    }

    /// Largest strand index touched by any letter (0 for the empty word).
    pub fn max_index(&self) -> usize {
        self.letters.iter().map(|l| l.top() as usize).max().unwrap_or(0)
    }
}

pub fn multiply(a: &BraidWord, b: &BraidWord) -> Result<BraidWord, BraidError> {
    a.multiply(b)
}

pub fn invert(w: &BraidWord) -> BraidWord {
    w.invert()
}

pub fn free_reduce(w: &BraidWord) -> BraidWord {
    w.free_reduce()
}

/// `g · w · g⁻¹`.
pub fn conjugate(g: &BraidWord, w: &BraidWord) -> Result<BraidWord, BraidError> {
    w.conjugate_by(g)
}

/// `[x, y] = x y x⁻¹ y⁻¹`, unreduced.
pub fn commutator(x: &BraidWord, y: &BraidWord) -> Result<BraidWord, BraidError> {
    x.multiply(y)?.multiply(&x.invert())?.multiply(&y.invert())
}

pub fn delete_strand(w: &BraidWord, strand: usize) -> Result<BraidWord, BraidError> {
    w.delete_strand(strand)
}

/// The classical pure braid generator σ_ij written in λ-generators:
/// `g (λ_ij λ_ji⁻¹) g⁻¹` with `g = λ_{i,i+1} λ_{i,i+2} … λ_{i,j−1}`.
pub fn expand_sigma(i: usize, j: usize, strands: usize) -> Result<BraidWord, BraidError> {
    if i >= j {
        return Err(BraidError::SigmaOrder { i, j });
    }
    if i == 0 || j > strands {
        return Err(BraidError::IndexOutOfRange { index: if i == 0 { 0 } else { j }, strands });
    }
    let (si, sj) = (i as Strand, j as Strand);
    let prefix: Vec<Lambda> = (si + 1..sj).map(|k| Lambda::pos(si, k)).collect();
    let mut letters = Vec::with_capacity(2 * prefix.len() + 2);
    letters.extend_from_slice(&prefix);
    letters.push(Lambda::pos(si, sj));
    letters.push(Lambda::neg(sj, si));
    letters.extend(prefix.iter().rev().map(|l| l.inverse()));
    Ok(BraidWord::from_parts(strands, letters))
}
