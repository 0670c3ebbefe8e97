//! Text format for braid words.
//!
//! ```text
//! # comment
//! n=3; l(1,3) l(2,3)^-1 s(1,2)
//! ```
//!
//! `l(i,j)` is λ_ij, `^-1` inverts a token, and `s(i,j)` is σ_ij, expanded
//! into λ-letters at parse time.

use crate::error::BraidError;
use crate::word::{expand_sigma, BraidWord, Lambda, Sign, Strand};

/// Result of parsing, remembering whether σ sugar was expanded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedWord {
    pub word: BraidWord,
    pub used_sigma: bool,
}

impl ParsedWord {
    /// Formats the word, refusing when the source used `s(i,j)` tokens
    /// unless `allow_lossy` is set.
    pub fn format(&self, allow_lossy: bool) -> Result<String, BraidError> {
        if self.used_sigma && !allow_lossy {
            return Err(BraidError::LossyRoundTrip);
        }
        Ok(format_word(&self.word))
    }
}

pub fn format_word(w: &BraidWord) -> String {
    let mut out = format!("n={};", w.strands());
    for l in w.letters() {
        out.push(' ');
        out.push_str(&l.to_string());
    }
    out
}

pub fn parse_word(text: &str) -> Result<BraidWord, BraidError> {
    parse_word_detailed(text).map(|p| p.word)
}

pub fn parse_word_detailed(text: &str) -> Result<ParsedWord, BraidError> {
    let stripped = strip_comments(text);
    let mut cur = Cursor { src: stripped.as_bytes(), pos: 0 };

    cur.skip_ws();
    cur.expect(b'n')?;
    cur.skip_ws();
    cur.expect(b'=')?;
    cur.skip_ws();
    let n_pos = cur.pos;
    let n = cur.number()?;
    if n == 0 {
        return Err(BraidError::Syntax { pos: n_pos, msg: "strand count must be positive".into() });
    }
    if n > Strand::MAX as usize {
        return Err(BraidError::Syntax { pos: n_pos, msg: "strand count too large".into() });
    }
    cur.skip_ws();
    cur.expect(b';')?;

    let mut letters = Vec::new();
    let mut used_sigma = false;
    loop {
        cur.skip_ws();
        let Some(c) = cur.peek() else { break };
        let tok_pos = cur.pos;
        let kind = match c {
            b'l' | b's' => c,
            _ => {
                return Err(BraidError::Syntax {
                    pos: tok_pos,
                    msg: format!("expected l(..) or s(..), found {:?}", c as char),
                })
            }
        };
        cur.pos += 1;
        cur.skip_ws();
        cur.expect(b'(')?;
        cur.skip_ws();
        let i = cur.number()?;
        cur.skip_ws();
        cur.expect(b',')?;
        cur.skip_ws();
        let j = cur.number()?;
        cur.skip_ws();
        cur.expect(b')')?;
        let sign = if cur.src[cur.pos..].starts_with(b"^-1") {
            cur.pos += 3;
            Sign::Neg
        } else {
            Sign::Pos
        };
        for idx in [i, j] {
            if idx == 0 || idx > n {
                return Err(BraidError::IndexOutOfRange { index: idx, strands: n });
            }
        }
        if kind == b'l' {
            letters.push(Lambda::new(i as Strand, j as Strand, sign)?);
        } else {
            used_sigma = true;
            let s = expand_sigma(i, j, n)?;
            let s = if sign == Sign::Neg { s.invert() } else { s };
            letters.extend_from_slice(s.letters());
        }
        if let Some(c) = cur.peek() {
            if !c.is_ascii_whitespace() {
                return Err(BraidError::Syntax { pos: cur.pos, msg: "expected whitespace between tokens".into() });
            }
        }
    }
    Ok(ParsedWord { word: BraidWord::new(n, letters)?, used_sigma })
}

/// Replaces `#...` line comments by spaces so byte offsets stay valid.
fn strip_comments(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut in_comment = false;
    for c in text.chars() {
        if c == '#' {
            in_comment = true;
        }
        if c == '\n' {
            in_comment = false;
        }
        if in_comment {
            out.extend(std::iter::repeat_n(' ', c.len_utf8()));
        } else {
            out.push(c);
        }
    }
    out
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), BraidError> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => Err(BraidError::Syntax {
                pos: self.pos,
                msg: format!("expected {:?}, found {:?}", c as char, x as char),
            }),
            None => {
                Err(BraidError::Syntax { pos: self.pos, msg: format!("expected {:?}, found end of input", c as char) })
            }
        }
    }

    fn number(&mut self) -> Result<usize, BraidError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(BraidError::Syntax { pos: start, msg: "expected a number".into() });
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| BraidError::Syntax { pos: start, msg: "number too large".into() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_examples() {
        let w = parse_word("n=2; l(1,2)").unwrap();
        assert_eq!(w, BraidWord::new(2, vec![Lambda::pos(1, 2)]).unwrap());
        let w = parse_word("n=3; l(1,3) l(2,3)^-1").unwrap();
        assert_eq!(w.letters(), &[Lambda::pos(1, 3), Lambda::neg(2, 3)]);
        assert_eq!(w.strands(), 3);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse_word("n=2; l(1,1)"), Err(BraidError::EqualIndices(1))));
        assert!(matches!(parse_word("n=2; l(1,3)"), Err(BraidError::IndexOutOfRange { index: 3, strands: 2 })));
        assert!(matches!(parse_word("n=2 l(1,2)"), Err(BraidError::Syntax { pos: 4, .. })));
        assert!(matches!(parse_word("n=2; x(1,2)"), Err(BraidError::Syntax { pos: 5, .. })));
        assert!(matches!(parse_word("n=2; l(1,2)l(2,1)"), Err(BraidError::Syntax { .. })));
        assert!(matches!(parse_word("n=0;"), Err(BraidError::Syntax { .. })));
        assert!(matches!(parse_word("n=3; s(2,1)"), Err(BraidError::SigmaOrder { .. })));
    }

    #[test]
    fn formats_examples() {
        assert_eq!(format_word(&BraidWord::identity(3)), "n=3;");
        assert_eq!(format_word(&parse_word("n=2;   l(1,2)").unwrap()), "n=2; l(1,2)");
    }

    #[test]
    fn comments_and_whitespace() {
        let w = parse_word("# header\nn = 3 ;\n l( 1 , 3 ) # first\n l(3,2)^-1\n").unwrap();
        assert_eq!(w.letters(), &[Lambda::pos(1, 3), Lambda::neg(3, 2)]);
    }

    #[test]
    fn sigma_sugar_is_flagged() {
        let p = parse_word_detailed("n=3; s(1,3)^-1").unwrap();
        assert!(p.used_sigma);
        assert_eq!(p.word, expand_sigma(1, 3, 3).unwrap().invert());
        assert!(matches!(p.format(false), Err(BraidError::LossyRoundTrip)));
        assert_eq!(p.format(true).unwrap(), "n=3; l(1,2) l(3,1) l(1,3)^-1 l(1,2)^-1");
        let q = parse_word_detailed("n=3; l(1,2)").unwrap();
        assert_eq!(q.format(false).unwrap(), "n=3; l(1,2)");
    }
}
