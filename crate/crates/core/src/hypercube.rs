//! The hypercube Q_n: vertices as 0/1 sequences, the even/odd bipartition
//! in lexicographic order, and the support pattern of its bipartite
//! adjacency matrix.
//!
//! A vertex's canonical form is its length-n bit string; the first sequence
//! position is the most significant bit, so lexicographic order on strings
//! coincides with numeric order on bitmasks.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::bits;
use crate::gf::{Field, GfMatrix};

/// Largest supported dimension; support patterns and certificate matrices
/// grow as 4^n, so this is already a 134 MB pattern.
pub const MAX_DIMENSION: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

/// A vertex of Q_n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubeVertex {
    n: usize,
    bits: u32,
}

impl CubeVertex {
    pub fn new(n: usize, bits: u32) -> CubeVertex {
        assert!(n >= 1 && n <= MAX_DIMENSION, "dimension {n} out of range");
        assert!(bits < 1 << n, "bits {bits:#b} out of range for Q_{n}");
        CubeVertex { n, bits }
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn parity(&self) -> Parity {
        if self.bits.count_ones() % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// The n vertices at Hamming distance 1, in sequence-position order
    /// (first position flipped first).
    pub fn neighbors(&self) -> Vec<CubeVertex> {
        (0..self.n)
            .map(|pos| CubeVertex {
                n: self.n,
                bits: self.bits ^ (1 << (self.n - 1 - pos)),
            })
            .collect()
    }

    /// Position of this vertex within its part of the bipartition, both
    /// sorted lexicographically.
    pub fn lex_index(&self) -> (Parity, usize) {
        let below_even = count_even_popcount_below(self.bits);
        match self.parity() {
            Parity::Even => (Parity::Even, below_even),
            Parity::Odd => (Parity::Odd, self.bits as usize - below_even),
        }
    }
}

/// Number of integers in [0, x) with an even number of one bits.
///
/// Each pair (2k, 2k+1) contributes exactly one; an odd x leaves x-1 over.
fn count_even_popcount_below(x: u32) -> usize {
    let pairs = (x / 2) as usize;
    if x % 2 == 1 && (x - 1).count_ones() % 2 == 0 {
        pairs + 1
    } else {
        pairs
    }
}

impl fmt::Display for CubeVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:0width$b}", self.bits, width = self.n)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("bad vertex `{0}`: expected a nonempty 0/1 string of length <= {MAX_DIMENSION}")]
pub struct VertexParseError(pub String);

impl FromStr for CubeVertex {
    type Err = VertexParseError;

    fn from_str(s: &str) -> Result<CubeVertex, VertexParseError> {
        if s.is_empty() || s.len() > MAX_DIMENSION {
            return Err(VertexParseError(s.to_owned()));
        }
        let mut bits = 0u32;
        for ch in s.chars() {
            bits = bits << 1
                | match ch {
                    '0' => 0,
                    '1' => 1,
                    _ => return Err(VertexParseError(s.to_owned())),
                };
        }
        Ok(CubeVertex { n: s.len(), bits })
    }
}

/// The two parts of Q_n's bipartition, each in lexicographic order.
#[derive(Debug, Clone)]
pub struct Bipartition {
    n: usize,
    even: Vec<CubeVertex>,
    odd: Vec<CubeVertex>,
}

impl Bipartition {
    pub fn new(n: usize) -> Bipartition {
        assert!(n >= 1 && n <= MAX_DIMENSION, "dimension {n} out of range");
        let mut even = Vec::with_capacity(1 << (n - 1));
        let mut odd = Vec::with_capacity(1 << (n - 1));
        for bits in 0..1u32 << n {
            let v = CubeVertex { n, bits };
            match v.parity() {
                Parity::Even => even.push(v),
                Parity::Odd => odd.push(v),
            }
        }
        Bipartition { n, even, odd }
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn even_part(&self) -> &[CubeVertex] {
        &self.even
    }

    pub fn odd_part(&self) -> &[CubeVertex] {
        &self.odd
    }
}

/// 0/1 pattern recording where the edge indeterminate sits in a weighted
/// bipartite adjacency matrix: 1 marks an edge, 0 a structural zero.
#[derive(Clone, PartialEq, Eq)]
pub struct SupportPattern {
    rows: usize,
    cols: usize,
    stride: usize,
    present: Vec<u64>,
}

impl SupportPattern {
    pub fn zeros(rows: usize, cols: usize) -> SupportPattern {
        let stride = bits::words_for(cols);
        SupportPattern {
            rows,
            cols,
            stride,
            present: vec![0; rows * stride],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        bits::get_bit(&self.present[r * self.stride..], c)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        debug_assert!(r < self.rows && c < self.cols);
        bits::set_bit(&mut self.present[r * self.stride..(r + 1) * self.stride], c, v);
    }

    pub(crate) fn row_words(&self, r: usize) -> &[u64] {
        &self.present[r * self.stride..(r + 1) * self.stride]
    }

    pub fn count_ones(&self) -> usize {
        self.present.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn row_degree(&self, r: usize) -> usize {
        self.row_words(r).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| (0..r).all(|c| self.get(r, c) == self.get(c, r)))
    }

    /// The pattern itself as a 0/1 matrix over the given field (every
    /// present entry becomes 1).
    pub fn to_ones_matrix(&self, field: Field) -> GfMatrix {
        let mut m = GfMatrix::zeros(field, self.rows, self.cols);
        for r in 0..self.rows {
            for c in bits::ones(self.row_words(r)) {
                m.set(r, c, 1);
            }
        }
        m
    }

    /// Check that `values` is a nonzero assignment of this pattern: nonzero
    /// exactly on the support, zero exactly off it.
    pub fn check_assignment(&self, values: &GfMatrix) -> Result<(), AssignError> {
        if values.rows() != self.rows || values.cols() != self.cols {
            return Err(AssignError::DimensionMismatch {
                pattern_rows: self.rows,
                pattern_cols: self.cols,
                value_rows: values.rows(),
                value_cols: values.cols(),
            });
        }
        for r in 0..self.rows {
            for c in 0..self.cols {
                let on_support = self.get(r, c);
                let nonzero = values.get(r, c) != 0;
                if on_support != nonzero {
                    return Err(if on_support {
                        AssignError::ZeroOnSupport { row: r, col: c }
                    } else {
                        AssignError::NonzeroOffSupport { row: r, col: c }
                    });
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AssignError {
    #[error("pattern is {pattern_rows}x{pattern_cols} but values are {value_rows}x{value_cols}")]
    DimensionMismatch {
        pattern_rows: usize,
        pattern_cols: usize,
        value_rows: usize,
        value_cols: usize,
    },
    #[error("zero entry on the support at ({row}, {col})")]
    ZeroOnSupport { row: usize, col: usize },
    #[error("nonzero entry off the support at ({row}, {col})")]
    NonzeroOffSupport { row: usize, col: usize },
}

impl fmt::Debug for SupportPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SupportPattern {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            for c in 0..self.cols {
                write!(f, "{}", self.get(r, c) as u8)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Serializes in the matrix text format with a `gfp 2` header, 1 marking a
/// present entry.
impl fmt::Display for SupportPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_ones_matrix(Field::Gf2).fmt(f)
    }
}

/// The support pattern of Q_n's bipartite adjacency matrix: rows indexed by
/// the even part, columns by the odd part, both lexicographic; entry (i, j)
/// present iff the vertices are adjacent.
pub fn support_matrix(n: usize) -> SupportPattern {
    assert!(n >= 1 && n <= MAX_DIMENSION, "dimension {n} out of range");
    let half = 1usize << (n - 1);
    let mut s = SupportPattern::zeros(half, half);
    let bip = Bipartition::new(n);
    for (i, v) in bip.even_part().iter().enumerate() {
        for u in v.neighbors() {
            let (parity, j) = u.lex_index();
            debug_assert_eq!(parity, Parity::Odd);
            s.set(i, j, true);
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> CubeVertex {
        s.parse().unwrap()
    }

    #[test]
    fn parity_examples() {
        assert_eq!(v("000").parity(), Parity::Even);
        assert_eq!(v("101").parity(), Parity::Even);
        assert_eq!(v("100").parity(), Parity::Odd);
    }

    #[test]
    fn neighbor_order_flips_first_position_first() {
        let ns: Vec<String> = v("00").neighbors().iter().map(|u| u.to_string()).collect();
        assert_eq!(ns, ["10", "01"]);
        let ns: Vec<String> = v("000").neighbors().iter().map(|u| u.to_string()).collect();
        assert_eq!(ns, ["100", "010", "001"]);
        let ns: Vec<String> = v("0").neighbors().iter().map(|u| u.to_string()).collect();
        assert_eq!(ns, ["1"]);
    }

    #[test]
    fn string_form_roundtrips() {
        for n in 1..=6 {
            for bits in 0..1u32 << n {
                let vertex = CubeVertex::new(n, bits);
                assert_eq!(vertex.to_string().parse::<CubeVertex>().unwrap(), vertex);
            }
        }
        assert!("".parse::<CubeVertex>().is_err());
        assert!("012".parse::<CubeVertex>().is_err());
    }

    #[test]
    fn lex_index_examples() {
        assert_eq!(v("00").lex_index(), (Parity::Even, 0));
        assert_eq!(v("11").lex_index(), (Parity::Even, 1));
        assert_eq!(v("01").lex_index(), (Parity::Odd, 0));
        assert_eq!(v("10").lex_index(), (Parity::Odd, 1));
        // E_3 sorted = {000, 011, 101, 110}
        assert_eq!(v("011").lex_index(), (Parity::Even, 1));
    }

    #[test]
    fn lex_index_matches_bipartition_position() {
        for n in 1..=8 {
            let bip = Bipartition::new(n);
            assert_eq!(bip.even_part().len(), 1 << (n - 1));
            assert_eq!(bip.odd_part().len(), 1 << (n - 1));
            for (i, u) in bip.even_part().iter().enumerate() {
                assert_eq!(u.lex_index(), (Parity::Even, i));
            }
            for (j, u) in bip.odd_part().iter().enumerate() {
                assert_eq!(u.lex_index(), (Parity::Odd, j));
            }
        }
    }

    #[test]
    fn bipartition_is_sorted_by_string_form() {
        let bip = Bipartition::new(5);
        for part in [bip.even_part(), bip.odd_part()] {
            let strings: Vec<String> = part.iter().map(|u| u.to_string()).collect();
            let mut sorted = strings.clone();
            sorted.sort();
            assert_eq!(strings, sorted);
        }
    }

    #[test]
    fn support_small_cases() {
        let s1 = support_matrix(1);
        assert_eq!((s1.rows(), s1.cols()), (1, 1));
        assert!(s1.get(0, 0));

        let s2 = support_matrix(2);
        assert_eq!((s2.rows(), s2.cols()), (2, 2));
        assert!((0..2).all(|r| (0..2).all(|c| s2.get(r, c))));
    }

    #[test]
    fn support_recursion_block_structure() {
        // W_{n+1} = [[W_n, I], [I, W_n]] under the lex index mapping
        for n in 1..=9 {
            let small = support_matrix(n);
            let big = support_matrix(n + 1);
            let half = 1 << (n - 1);
            for r in 0..2 * half {
                for c in 0..2 * half {
                    let expect = match (r < half, c < half) {
                        (true, true) | (false, false) => small.get(r % half, c % half),
                        _ => r % half == c % half,
                    };
                    assert_eq!(big.get(r, c), expect, "n={n} at ({r},{c})");
                }
            }
        }
    }

    #[test]
    fn support_is_symmetric_and_regular() {
        for n in 1..=9 {
            let s = support_matrix(n);
            assert!(s.is_symmetric(), "W_{n} not symmetric");
            assert_eq!(s.count_ones(), n << (n - 1), "edge count of Q_{n}");
            for r in 0..s.rows() {
                assert_eq!(s.row_degree(r), n);
            }
            for c in 0..s.cols() {
                let col_sum = (0..s.rows()).filter(|&r| s.get(r, c)).count();
                assert_eq!(col_sum, n);
            }
        }
    }

    #[test]
    fn assignment_checks() {
        let s2 = support_matrix(2);
        let ones = GfMatrix::from_entries(Field::Gf3, 2, 2, &[1, 1, 1, 1]).unwrap();
        assert_eq!(s2.check_assignment(&ones), Ok(()));

        let holed = GfMatrix::from_entries(Field::Gf3, 2, 2, &[1, 0, 1, 1]).unwrap();
        assert_eq!(
            s2.check_assignment(&holed),
            Err(AssignError::ZeroOnSupport { row: 0, col: 1 })
        );

        let id = GfMatrix::identity(2, Field::Gf3);
        assert_eq!(
            support_matrix(1).check_assignment(&id),
            Err(AssignError::DimensionMismatch {
                pattern_rows: 1,
                pattern_cols: 1,
                value_rows: 2,
                value_cols: 2,
            })
        );

        let off = SupportPattern::zeros(1, 1);
        let one = GfMatrix::from_entries(Field::Gf3, 1, 1, &[1]).unwrap();
        assert_eq!(
            off.check_assignment(&one),
            Err(AssignError::NonzeroOffSupport { row: 0, col: 0 })
        );
    }

    #[test]
    fn support_serializes_as_gf2_text() {
        assert_eq!(support_matrix(2).to_string(), "gfp 2 2 2\n11\n11\n");
    }
}
