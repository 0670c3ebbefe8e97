//! Braid diagrams: abstract layout and SVG output.
//!
//! Strands run top to bottom in columns 1..n. Each letter λ_ij^±1 becomes a
//! tile that moves the higher-numbered strand b of the pair {a, b} next to
//! a through virtual crossings, crosses the two once classically and once
//! virtually, and routes b back, so every strand leaves the tile in the
//! column it entered. For exponent +1 the classical crossing is placed so the
//! over strand (the first index) runs left to right, which has sign −1; the
//! inverse tile is the same tile read bottom to top.
//!
//! A tile for a pair at distance d = |i − j| has one classical and 2d − 1
//! virtual crossings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::invariants::{CrossingSign, LinkingMatrix};
use crate::word::{BraidWord, Lambda, Sign, Strand};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CrossingKind {
    /// Classical, strand in the left column on top.
    ClassicalOverLeft,
    ClassicalOverRight,
    Virtual,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Crossing {
    pub row: usize,
    /// Left column of the two columns swapped in this row.
    pub column: usize,
    pub kind: CrossingKind,
    /// Strand entering from the left column.
    pub left: Strand,
    pub right: Strand,
    /// `None` for virtual crossings.
    pub sign: Option<CrossingSign>,
}

impl Crossing {
    pub fn over_under(&self) -> Option<(Strand, Strand)> {
        match self.kind {
            CrossingKind::ClassicalOverLeft => Some((self.left, self.right)),
            CrossingKind::ClassicalOverRight => Some((self.right, self.left)),
            CrossingKind::Virtual => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramModel {
    pub strands: usize,
    /// One crossing per row.
    pub rows: usize,
    /// For each strand, its column at levels 0..=rows; level r sits between
    /// rows r−1 and r.
    pub strand_paths: Vec<Vec<usize>>,
    pub crossings: Vec<Crossing>,
}

impl DiagramModel {
    pub fn identity(strands: usize) -> DiagramModel {
        DiagramModel { strands, rows: 0, strand_paths: (1..=strands).map(|c| vec![c]).collect(), crossings: Vec::new() }
    }

    /// `self` on top of `other`. Both must have the same strand count.
    pub fn stack(&self, other: &DiagramModel) -> DiagramModel {
        assert_eq!(self.strands, other.strands, "stacking diagrams with different strand counts");
        let mut out = self.clone();
        for (path, below) in out.strand_paths.iter_mut().zip(&other.strand_paths) {
            path.extend_from_slice(&below[1..]);
        }
        out.crossings.extend(other.crossings.iter().map(|c| Crossing { row: c.row + self.rows, ..*c }));
        out.rows += other.rows;
        out
    }

    pub fn classical_count(&self) -> usize {
        self.crossings.iter().filter(|c| c.kind != CrossingKind::Virtual).count()
    }

    pub fn virtual_count(&self) -> usize {
        self.crossings.iter().filter(|c| c.kind == CrossingKind::Virtual).count()
    }

    /// Per ordered (over, under) pair, the sum of classical crossing signs.
    pub fn crossing_sign_sums(&self) -> LinkingMatrix {
        let mut m = LinkingMatrix::default();
        for c in &self.crossings {
            if let (Some((over, under)), Some(sign)) = (c.over_under(), c.sign) {
                m.add(over, under, sign.value());
            }
        }
        m
    }
}

/// Column swaps for the +1 tile of `l`: (left column, classical?).
fn tile_ops(l: Lambda) -> Vec<(usize, bool)> {
    let a = l.over().min(l.under()) as usize;
    let b = l.over().max(l.under()) as usize;
    let over_is_left = l.over() as usize == a;
    let mut ops = Vec::with_capacity(2 * (b - a));
    for c in (a + 1..b).rev() {
        ops.push((c, false));
    }
    if over_is_left {
        ops.push((a, true));
        ops.push((a, false));
    } else {
        ops.push((a, false));
        ops.push((a, true));
    }
    for c in a + 1..b {
        ops.push((c, false));
    }
    ops
}

fn tile(strands: usize, l: Lambda) -> DiagramModel {
    let mut ops = tile_ops(l);
    if l.sign() == Sign::Neg {
        ops.reverse();
    }
    // at[c] = strand in column c (1-based)
    let mut at: Vec<Strand> = (0..=strands as Strand).collect();
    let mut paths: Vec<Vec<usize>> = (1..=strands).map(|c| vec![c]).collect();
    let mut crossings = Vec::with_capacity(ops.len());
    for (row, &(col, classical)) in ops.iter().enumerate() {
        let (left, right) = (at[col], at[col + 1]);
        let (kind, sign) = if classical {
            let over_left = left == l.over();
            let kind = if over_left { CrossingKind::ClassicalOverLeft } else { CrossingKind::ClassicalOverRight };
            (kind, Some(CrossingSign::from_over_direction(over_left)))
        } else {
            (CrossingKind::Virtual, None)
        };
        crossings.push(Crossing { row, column: col, kind, left, right, sign });
        at.swap(col, col + 1);
        for c in 1..=strands {
            paths[at[c] as usize - 1].push(c);
        }
    }
    debug_assert!((1..=strands).all(|c| at[c] as usize == c));
    DiagramModel { strands, rows: ops.len(), strand_paths: paths, crossings }
}

pub fn layout(w: &BraidWord) -> DiagramModel {
    w.letters().iter().fold(DiagramModel::identity(w.strands()), |d, &l| d.stack(&tile(w.strands(), l)))
}

/// Pixel geometry for [`to_svg`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvgStyle {
    pub column_width: f64,
    pub row_height: f64,
    pub stroke_width: f64,
}

impl Default for SvgStyle {
    fn default() -> Self {
        SvgStyle { column_width: 40.0, row_height: 40.0, stroke_width: 2.0 }
    }
}

impl SvgStyle {
    pub fn scaled(x: f64, y: f64) -> Self {
        let d = SvgStyle::default();
        SvgStyle { column_width: d.column_width * x, row_height: d.row_height * y, ..d }
    }
}

/// Under-strand segment is drawn outside this fraction of its length.
const GAP: (f64, f64) = (0.35, 0.65);

pub fn to_svg(d: &DiagramModel, style: &SvgStyle) -> Vec<u8> {
    let margin = style.column_width / 2.0;
    let rows = d.rows.max(1);
    let width = margin * 2.0 + style.column_width * (d.strands.saturating_sub(1)) as f64;
    let height = margin * 2.0 + style.row_height * rows as f64;
    let x = |col: usize| margin + style.column_width * (col - 1) as f64;
    let y = |level: usize| margin + style.row_height * level as f64;

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.1}" height="{height:.1}" viewBox="0 0 {width:.1} {height:.1}">"#
    )
    .unwrap();
    writeln!(out, r#"<g fill="none" stroke="black" stroke-width="{:.1}" stroke-linecap="round">"#, style.stroke_width)
        .unwrap();

    if d.rows == 0 {
        for c in 1..=d.strands {
            writeln!(out, r#"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}"/>"#, x(c), y(0), x(c), y(1)).unwrap();
        }
    }

    let mut under_at_row: Vec<Option<Strand>> = vec![None; d.rows];
    for c in &d.crossings {
        under_at_row[c.row] = c.over_under().map(|(_, u)| u);
    }
    for (s, path) in d.strand_paths.iter().enumerate() {
        let strand = (s + 1) as Strand;
        writeln!(out, r#"<g class="strand" data-strand="{strand}">"#).unwrap();
        for r in 0..d.rows {
            let (x0, y0, x1, y1) = (x(path[r]), y(r), x(path[r + 1]), y(r + 1));
            if under_at_row[r] == Some(strand) {
                let lerp = |t: f64| (x0 + (x1 - x0) * t, y0 + (y1 - y0) * t);
                let (ax, ay) = lerp(GAP.0);
                let (bx, by) = lerp(GAP.1);
                writeln!(out, r#"<line x1="{x0:.1}" y1="{y0:.1}" x2="{ax:.1}" y2="{ay:.1}"/>"#).unwrap();
                writeln!(out, r#"<line x1="{bx:.1}" y1="{by:.1}" x2="{x1:.1}" y2="{y1:.1}"/>"#).unwrap();
            } else {
                writeln!(out, r#"<line x1="{x0:.1}" y1="{y0:.1}" x2="{x1:.1}" y2="{y1:.1}"/>"#).unwrap();
            }
        }
        writeln!(out, "</g>").unwrap();
    }
    for c in d.crossings.iter().filter(|c| c.kind == CrossingKind::Virtual) {
        let cx = (x(c.column) + x(c.column + 1)) / 2.0;
        let cy = (y(c.row) + y(c.row + 1)) / 2.0;
        let r = style.column_width.min(style.row_height) * 0.2;
        writeln!(out, r#"<circle class="virtual" cx="{cx:.1}" cy="{cy:.1}" r="{r:.1}"/>"#).unwrap();
    }
    writeln!(out, "</g>").unwrap();
    writeln!(out, "</svg>").unwrap();
    out.into_bytes()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::linking_matrix;
    use crate::text::parse_word;

    #[test]
    fn identity_layout() {
        let d = layout(&BraidWord::identity(3));
        assert_eq!(d.rows, 0);
        assert!(d.crossings.is_empty());
        assert_eq!(d.strand_paths, vec![vec![1], vec![2], vec![3]]);
        let svg = String::from_utf8(to_svg(&d, &SvgStyle::default())).unwrap();
        assert_eq!(svg.matches("<line").count(), 3);
    }

    #[test]
    fn single_generator_tile() {
        let d = layout(&parse_word("n=2; l(1,2)").unwrap());
        assert_eq!(d.classical_count(), 1);
        assert_eq!(d.virtual_count(), 1);
        let c = d.crossings[0];
        assert_eq!(c.kind, CrossingKind::ClassicalOverLeft);
        assert_eq!(c.over_under(), Some((1, 2)));
        assert_eq!(c.sign, Some(CrossingSign::Negative));
        assert_eq!(d.strand_paths, vec![vec![1, 2, 1], vec![2, 1, 2]]);
    }

    #[test]
    fn inverse_and_reversed_tiles() {
        let d = layout(&parse_word("n=2; l(1,2)^-1").unwrap());
        let c = d.crossings.iter().find(|c| c.kind != CrossingKind::Virtual).unwrap();
        assert_eq!(c.over_under(), Some((1, 2)));
        assert_eq!(c.sign, Some(CrossingSign::Positive));
        let d = layout(&parse_word("n=2; l(2,1)").unwrap());
        let c = d.crossings.iter().find(|c| c.kind != CrossingKind::Virtual).unwrap();
        assert_eq!(c.over_under(), Some((2, 1)));
        assert_eq!(c.sign, Some(CrossingSign::Negative));
    }

    #[test]
    fn tile_size_matches_hand_count() {
        // |i−j| = d gives one classical and 2d − 1 virtual crossings
        for (text, v) in [("n=3; l(1,3)", 3), ("n=3; l(3,1)^-1", 3), ("n=3; l(2,3)", 1), ("n=5; l(5,1)", 7)] {
            let d = layout(&parse_word(text).unwrap());
            assert_eq!(d.classical_count(), 1, "{text}");
            assert_eq!(d.virtual_count(), v, "{text}");
        }
    }

    #[test]
    fn signs_reproduce_linking() {
        let w = parse_word("n=4; l(1,3) l(4,2)^-1 l(3,1) l(1,3) l(2,4)^-1 l(2,1)").unwrap();
        assert_eq!(layout(&w).crossing_sign_sums(), linking_matrix(&w));
    }

    #[test]
    fn svg_has_gaps_and_circles() {
        let d = layout(&parse_word("n=3; l(1,3)").unwrap());
        let svg = String::from_utf8(to_svg(&d, &SvgStyle::default())).unwrap();
        assert_eq!(svg.matches("<circle").count(), 3);
        // 3 strands × 4 rows, plus one extra piece for the broken under strand
        assert_eq!(svg.matches("<line").count(), 13);
    }
}
