//! Dense linear algebra over GF(2) and GF(3).
//!
//! Matrices are stored row-major as bitplanes: one plane for GF(2), two
//! (low bit, high bit) for GF(3) with 0 ↦ (0,0), 1 ↦ (1,0), 2 ↦ (0,1).
//! Row elimination steps then run word-parallel: a GF(2) row update is a
//! single XOR pass, a GF(3) update is a short fixed sequence of OR/XOR
//! ops per word, and multiplying a GF(3) row by 2 swaps its planes.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::bits;

/// The coefficient field: integers modulo 2 or modulo 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Gf2,
    Gf3,
}

impl Field {
    pub fn modulus(self) -> u8 {
        match self {
            Field::Gf2 => 2,
            Field::Gf3 => 3,
        }
    }

    pub fn from_modulus(p: u8) -> Option<Field> {
        match p {
            2 => Some(Field::Gf2),
            3 => Some(Field::Gf3),
            _ => None,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.modulus())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("dimension mismatch: {left_rows}x{left_cols} against {right_rows}x{right_cols}")]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("field mismatch: {0} against {1}")]
    FieldMismatch(Field, Field),
    #[error("entry {value} out of range for {field}")]
    InvalidEntry { value: u8, field: Field },
    #[error("matrix parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Dense matrix over GF(2) or GF(3), bit-packed by row.
#[derive(Clone, PartialEq, Eq)]
pub struct GfMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    /// Words per row.
    stride: usize,
    /// Low bitplane, `rows * stride` words; unused tail bits stay zero.
    lo: Vec<u64>,
    /// High bitplane; empty for GF(2).
    hi: Vec<u64>,
}

impl GfMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> GfMatrix {
        let stride = bits::words_for(cols);
        GfMatrix {
            field,
            rows,
            cols,
            stride,
            lo: vec![0; rows * stride],
            hi: match field {
                Field::Gf2 => Vec::new(),
                Field::Gf3 => vec![0; rows * stride],
            },
        }
    }

    /// The k×k identity matrix over the given field.
    pub fn identity(k: usize, field: Field) -> GfMatrix {
        let mut m = GfMatrix::zeros(field, k, k);
        for i in 0..k {
            m.set(i, i, 1);
        }
        m
    }

    /// Build from a row-major element list.
    pub fn from_entries(
        field: Field,
        rows: usize,
        cols: usize,
        entries: &[u8],
    ) -> Result<GfMatrix, MatrixError> {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        let mut m = GfMatrix::zeros(field, rows, cols);
        for (i, &e) in entries.iter().enumerate() {
            if e >= field.modulus() {
                return Err(MatrixError::InvalidEntry { value: e, field });
            }
            m.set(i / cols, i % cols, e);
        }
        Ok(m)
    }

    /// Unpack to a row-major element list.
    pub fn entries(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.rows * self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.push(self.get(r, c));
            }
        }
        out
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        debug_assert!(r < self.rows && c < self.cols);
        let w = r * self.stride + (c >> 6);
        let lo = self.lo[w] >> (c & 63) & 1;
        match self.field {
            Field::Gf2 => lo as u8,
            Field::Gf3 => (lo | (self.hi[w] >> (c & 63) & 1) << 1) as u8,
        }
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        debug_assert!(r < self.rows && c < self.cols);
        assert!(v < self.field.modulus(), "entry {v} out of range");
        let w = r * self.stride + (c >> 6);
        let mask = 1u64 << (c & 63);
        self.lo[w] = self.lo[w] & !mask | if v & 1 == 1 { mask } else { 0 };
        if self.field == Field::Gf3 {
            self.hi[w] = self.hi[w] & !mask | if v == 2 { mask } else { 0 };
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let s = self.stride;
        for k in 0..s {
            self.lo.swap(a * s + k, b * s + k);
        }
        if self.field == Field::Gf3 {
            for k in 0..s {
                self.hi.swap(a * s + k, b * s + k);
            }
        }
    }

    /// Row `r` restricted to words `w0..`, as (lo, hi) slices. `hi` is empty for GF(2).
    fn row_planes(&self, r: usize, w0: usize) -> (&[u64], &[u64]) {
        let base = r * self.stride;
        let lo = &self.lo[base + w0..base + self.stride];
        let hi = match self.field {
            Field::Gf2 => &[][..],
            Field::Gf3 => &self.hi[base + w0..base + self.stride],
        };
        (lo, hi)
    }

    /// Bitmask of nonzero entries in row `r` (both planes OR-ed).
    fn row_nonzero_mask(&self, r: usize) -> Vec<u64> {
        let (lo, hi) = self.row_planes(r, 0);
        match self.field {
            Field::Gf2 => lo.to_vec(),
            Field::Gf3 => lo.iter().zip(hi).map(|(&l, &h)| l | h).collect(),
        }
    }

    /// Standard matrix product reduced mod p.
    ///
    /// Walks the nonzero entries of each left row, so sparse left factors
    /// (the certificate matrices have n nonzeros per row) multiply fast.
    pub fn mat_mul(&self, rhs: &GfMatrix) -> Result<GfMatrix, MatrixError> {
        if self.field != rhs.field {
            return Err(MatrixError::FieldMismatch(self.field, rhs.field));
        }
        if self.cols != rhs.rows {
            return Err(MatrixError::DimensionMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: rhs.rows,
                right_cols: rhs.cols,
            });
        }
        let mut out = GfMatrix::zeros(self.field, self.rows, rhs.cols);
        let os = out.stride;
        let rs = rhs.stride;
        for i in 0..self.rows {
            let mask = self.row_nonzero_mask(i);
            let dst = i * os;
            for k in bits::ones(&mask) {
                let coeff = self.get(i, k);
                let src = k * rs;
                match self.field {
                    Field::Gf2 => {
                        for w in 0..os {
                            out.lo[dst + w] ^= rhs.lo[src + w];
                        }
                    }
                    Field::Gf3 => {
                        let (src_lo, src_hi) = if coeff == 1 {
                            (&rhs.lo[src..src + rs], &rhs.hi[src..src + rs])
                        } else {
                            // adding 2·row is adding the plane-swapped row
                            (&rhs.hi[src..src + rs], &rhs.lo[src..src + rs])
                        };
                        gf3_add_row(
                            &mut out.lo[dst..dst + os],
                            &mut out.hi[dst..dst + os],
                            src_lo,
                            src_hi,
                        );
                    }
                }
            }
        }
        Ok(out)
    }

    /// Entrywise c·M mod p.
    pub fn scalar_mul(c: u8, m: &GfMatrix) -> GfMatrix {
        assert!(c < m.field.modulus(), "scalar {c} out of range");
        match (m.field, c) {
            (_, 0) => GfMatrix::zeros(m.field, m.rows, m.cols),
            (_, 1) => m.clone(),
            (Field::Gf3, 2) => {
                let mut out = m.clone();
                std::mem::swap(&mut out.lo, &mut out.hi);
                out
            }
            _ => unreachable!(),
        }
    }

    /// Assemble `[[tl, tr], [bl, br]]`.
    pub fn block2x2(
        tl: &GfMatrix,
        tr: &GfMatrix,
        bl: &GfMatrix,
        br: &GfMatrix,
    ) -> Result<GfMatrix, MatrixError> {
        let field = tl.field;
        for m in [tr, bl, br] {
            if m.field != field {
                return Err(MatrixError::FieldMismatch(field, m.field));
            }
        }
        let check = |ok: bool, a: &GfMatrix, b: &GfMatrix| {
            if ok {
                Ok(())
            } else {
                Err(MatrixError::DimensionMismatch {
                    left_rows: a.rows,
                    left_cols: a.cols,
                    right_rows: b.rows,
                    right_cols: b.cols,
                })
            }
        };
        check(tl.rows == tr.rows, tl, tr)?;
        check(bl.rows == br.rows, bl, br)?;
        check(tl.cols == bl.cols, tl, bl)?;
        check(tr.cols == br.cols, tr, br)?;

        let rows = tl.rows + bl.rows;
        let cols = tl.cols + tr.cols;
        let mut out = GfMatrix::zeros(field, rows, cols);
        let mut blit = |left: &GfMatrix, right: &GfMatrix, row_off: usize| {
            for r in 0..left.rows {
                let dst = (row_off + r) * out.stride;
                let (l_lo, l_hi) = left.row_planes(r, 0);
                let (r_lo, r_hi) = right.row_planes(r, 0);
                bits::or_shifted(&mut out.lo[dst..dst + out.stride], 0, l_lo, left.cols);
                bits::or_shifted(&mut out.lo[dst..dst + out.stride], left.cols, r_lo, right.cols);
                if field == Field::Gf3 {
                    bits::or_shifted(&mut out.hi[dst..dst + out.stride], 0, l_hi, left.cols);
                    bits::or_shifted(
                        &mut out.hi[dst..dst + out.stride],
                        left.cols,
                        r_hi,
                        right.cols,
                    );
                }
            }
        };
        blit(tl, tr, 0);
        blit(bl, br, tl.rows);
        Ok(out)
    }

    /// Submatrix on the given row and column indices, in the given order.
    pub fn select(&self, row_idx: &[usize], col_idx: &[usize]) -> GfMatrix {
        let mut out = GfMatrix::zeros(self.field, row_idx.len(), col_idx.len());
        for (i, &r) in row_idx.iter().enumerate() {
            for (j, &c) in col_idx.iter().enumerate() {
                out.set(i, j, self.get(r, c));
            }
        }
        out
    }

    /// Rank over GF(p) by Gaussian elimination.
    ///
    /// Pivot rule is fixed: columns left to right, first nonzero entry
    /// scanning rows top-down. Deterministic.
    pub fn rank(&self) -> usize {
        self.clone().forward_eliminate().0
    }

    /// Determinant in GF(p), via the same elimination as `rank`.
    pub fn det(&self) -> u8 {
        assert!(self.is_square(), "det requires a square matrix");
        let (rank, det) = self.clone().forward_eliminate();
        if rank < self.rows {
            0
        } else {
            det
        }
    }

    /// The inverse, or `None` when the matrix is singular.
    pub fn inverse(&self) -> Option<GfMatrix> {
        assert!(self.is_square(), "inverse requires a square matrix");
        let n = self.rows;
        let mut work = self.clone();
        let mut inv = GfMatrix::identity(n, self.field);
        let p = self.field.modulus();
        let mut pivot_row = 0usize;
        for col in 0..n {
            let r = (pivot_row..n).find(|&i| work.get(i, col) != 0)?;
            work.swap_rows(r, pivot_row);
            inv.swap_rows(r, pivot_row);
            let pv = work.get(pivot_row, col);
            if pv == 2 {
                // 2⁻¹ = 2 in GF(3): normalizing is a plane swap
                work.swap_row_planes(pivot_row);
                inv.swap_row_planes(pivot_row);
            }
            // eliminate the pivot column from every other row
            for i in 0..n {
                if i == pivot_row {
                    continue;
                }
                let coeff = work.get(i, col);
                if coeff == 0 {
                    continue;
                }
                let neg = p - coeff; // row_i += (p - coeff) · pivot row
                work.add_scaled_row(pivot_row, i, neg, col >> 6);
                inv.add_scaled_row(pivot_row, i, neg, 0);
            }
            pivot_row += 1;
        }
        Some(inv)
    }

    /// In-place forward elimination; returns (rank, signed pivot product mod p).
    fn forward_eliminate(&mut self) -> (usize, u8) {
        let p = self.field.modulus();
        let mut det: u8 = 1;
        let mut pivot_row = 0usize;
        for col in 0..self.cols {
            if pivot_row == self.rows {
                det = 0;
                break;
            }
            let Some(r) = (pivot_row..self.rows).find(|&i| self.get(i, col) != 0) else {
                det = 0;
                continue;
            };
            if r != pivot_row {
                self.swap_rows(r, pivot_row);
                det = det * (p - 1) % p;
            }
            let pv = self.get(pivot_row, col);
            det = det * pv % p;
            let w0 = col >> 6;
            for i in pivot_row + 1..self.rows {
                let coeff = self.get(i, col);
                if coeff == 0 {
                    continue;
                }
                // coeff/pv: over GF(3) both 1 and 2 are their own inverse
                let factor = coeff * pv % p;
                self.add_scaled_row(pivot_row, i, p - factor, w0);
            }
            pivot_row += 1;
        }
        (pivot_row, det)
    }

    /// `row[dst] += c · row[src]` from word `w0` on; `c` must be nonzero.
    fn add_scaled_row(&mut self, src: usize, dst: usize, c: u8, w0: usize) {
        debug_assert!(src != dst && c != 0 && c < self.field.modulus());
        let s = self.stride;
        let (sa, sb) = (src * s + w0, (src + 1) * s);
        let (da, db) = (dst * s + w0, (dst + 1) * s);
        match self.field {
            Field::Gf2 => {
                let (src_row, dst_row) = borrow_two(&mut self.lo, sa..sb, da..db);
                for (d, &v) in dst_row.iter_mut().zip(src_row.iter()) {
                    *d ^= v;
                }
            }
            Field::Gf3 => {
                let (src_lo, dst_lo) = borrow_two(&mut self.lo, sa..sb, da..db);
                let (src_hi, dst_hi) = borrow_two(&mut self.hi, sa..sb, da..db);
                if c == 1 {
                    gf3_add_row(dst_lo, dst_hi, src_lo, src_hi);
                } else {
                    gf3_add_row(dst_lo, dst_hi, src_hi, src_lo);
                }
            }
        }
    }

    /// Multiply row `r` by 2 over GF(3) by swapping its planes.
    fn swap_row_planes(&mut self, r: usize) {
        debug_assert_eq!(self.field, Field::Gf3);
        let base = r * self.stride;
        for k in base..base + self.stride {
            std::mem::swap(&mut self.lo[k], &mut self.hi[k]);
        }
    }
}

/// Word-parallel `dst += src` over GF(3) bitplanes.
#[inline]
fn gf3_add_row(dst_lo: &mut [u64], dst_hi: &mut [u64], src_lo: &[u64], src_hi: &[u64]) {
    for k in 0..dst_lo.len() {
        let (al, ah) = (dst_lo[k], dst_hi[k]);
        let (bl, bh) = (src_lo[k], src_hi[k]);
        let t = (al | bh) ^ (ah | bl);
        dst_lo[k] = t ^ (ah | bh);
        dst_hi[k] = t ^ (al | bl);
    }
}

/// Disjoint mutable views `(&v[a], &mut v[b])` of one vector.
fn borrow_two(
    v: &mut [u64],
    a: std::ops::Range<usize>,
    b: std::ops::Range<usize>,
) -> (&[u64], &mut [u64]) {
    debug_assert!(a.end <= b.start || b.end <= a.start);
    if a.start < b.start {
        let (head, tail) = v.split_at_mut(b.start);
        (&head[a.start..a.end], &mut tail[..b.end - b.start])
    } else {
        let (head, tail) = v.split_at_mut(a.start);
        (&tail[..a.end - a.start], &mut head[b.start..b.end])
    }
}

impl fmt::Debug for GfMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GfMatrix {} {}x{}", self.field, self.rows, self.cols)?;
        for r in 0..self.rows {
            for c in 0..self.cols {
                write!(f, "{}", self.get(r, c))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Text format: `gfp <p> <rows> <cols>` then one digit string per row,
/// newline-terminated, no trailing whitespace.
impl fmt::Display for GfMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gfp {} {} {}", self.field.modulus(), self.rows, self.cols)?;
        let mut line = String::with_capacity(self.cols + 1);
        for r in 0..self.rows {
            line.clear();
            for c in 0..self.cols {
                line.push((b'0' + self.get(r, c)) as char);
            }
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

impl FromStr for GfMatrix {
    type Err = MatrixError;

    fn from_str(s: &str) -> Result<GfMatrix, MatrixError> {
        let mut lines = s.lines();
        let header = lines
            .next()
            .ok_or_else(|| parse_err(1, "missing header"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 4 || fields[0] != "gfp" {
            return Err(parse_err(1, "expected `gfp <p> <rows> <cols>`"));
        }
        let p: u8 = fields[1]
            .parse()
            .map_err(|_| parse_err(1, "bad modulus"))?;
        let field =
            Field::from_modulus(p).ok_or_else(|| parse_err(1, format!("unsupported modulus {p}")))?;
        let rows: usize = fields[2].parse().map_err(|_| parse_err(1, "bad row count"))?;
        let cols: usize = fields[3].parse().map_err(|_| parse_err(1, "bad column count"))?;
        let mut m = GfMatrix::zeros(field, rows, cols);
        for r in 0..rows {
            let line = lines
                .next()
                .ok_or_else(|| parse_err(r + 2, "missing matrix row"))?;
            let bytes = line.as_bytes();
            if bytes.len() != cols {
                return Err(parse_err(
                    r + 2,
                    format!("expected {cols} digits, got {}", bytes.len()),
                ));
            }
            for (c, &b) in bytes.iter().enumerate() {
                let v = b.wrapping_sub(b'0');
                if v >= p {
                    return Err(parse_err(r + 2, format!("bad digit `{}`", b as char)));
                }
                m.set(r, c, v);
            }
        }
        if let Some(extra) = lines.next() {
            if !extra.trim().is_empty() {
                return Err(parse_err(rows + 2, "trailing content after matrix"));
            }
        }
        Ok(m)
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> MatrixError {
    MatrixError::Parse {
        line,
        msg: msg.into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf3(rows: usize, cols: usize, e: &[u8]) -> GfMatrix {
        GfMatrix::from_entries(Field::Gf3, rows, cols, e).unwrap()
    }

    #[test]
    fn identity_matrices() {
        assert_eq!(GfMatrix::identity(1, Field::Gf3).entries(), vec![1]);
        assert_eq!(
            GfMatrix::identity(2, Field::Gf3).entries(),
            vec![1, 0, 0, 1]
        );
        assert_eq!(
            GfMatrix::identity(2, Field::Gf2).entries(),
            vec![1, 0, 0, 1]
        );
    }

    #[test]
    fn mat_mul_small() {
        let one = gf3(1, 1, &[1]);
        assert_eq!(one.mat_mul(&one).unwrap(), one);

        let m = gf3(2, 2, &[1, 2, 2, 1]);
        let sq = m.mat_mul(&m).unwrap();
        assert_eq!(sq.entries(), vec![2, 1, 1, 2]);

        let id = GfMatrix::identity(2, Field::Gf3);
        assert_eq!(id.mat_mul(&m).unwrap(), m);
        assert_eq!(m.mat_mul(&id).unwrap(), m);
    }

    #[test]
    fn mat_mul_shape_and_field_errors() {
        let a = gf3(2, 2, &[1, 0, 0, 1]);
        let b = gf3(1, 2, &[1, 1]);
        assert!(matches!(
            a.mat_mul(&b),
            Err(MatrixError::DimensionMismatch { .. })
        ));
        let c = GfMatrix::identity(2, Field::Gf2);
        assert!(matches!(a.mat_mul(&c), Err(MatrixError::FieldMismatch(..))));
    }

    #[test]
    fn rank_examples() {
        for k in [1, 2, 5, 9] {
            assert_eq!(GfMatrix::identity(k, Field::Gf3).rank(), k);
            assert_eq!(GfMatrix::identity(k, Field::Gf2).rank(), k);
        }
        assert_eq!(gf3(2, 2, &[1, 1, 1, 1]).rank(), 1);
        assert_eq!(GfMatrix::zeros(Field::Gf3, 3, 4).rank(), 0);
    }

    #[test]
    fn inverse_examples() {
        let one = gf3(1, 1, &[1]);
        assert_eq!(one.inverse().unwrap(), one);

        let m = gf3(2, 2, &[2, 1, 1, 1]);
        let inv = m.inverse().unwrap();
        assert_eq!(inv.entries(), vec![1, 2, 2, 2]);
        assert_eq!(
            m.mat_mul(&inv).unwrap(),
            GfMatrix::identity(2, Field::Gf3)
        );

        assert_eq!(gf3(2, 2, &[1, 1, 1, 1]).inverse(), None);
    }

    #[test]
    fn det_examples() {
        for k in [1, 3, 6] {
            assert_eq!(GfMatrix::identity(k, Field::Gf3).det(), 1);
            assert_eq!(GfMatrix::identity(k, Field::Gf2).det(), 1);
        }
        assert_eq!(gf3(2, 2, &[2, 1, 1, 1]).det(), 1);
        assert_eq!(gf3(2, 2, &[1, 1, 1, 1]).det(), 0);
        // det of the empty matrix is the empty product
        assert_eq!(GfMatrix::zeros(Field::Gf3, 0, 0).det(), 1);
    }

    #[test]
    fn det_picks_up_swap_sign() {
        // [[0,1],[1,0]] has det -1 = 2 over GF(3)
        assert_eq!(gf3(2, 2, &[0, 1, 1, 0]).det(), 2);
        // and det 1 over GF(2)
        let m = GfMatrix::from_entries(Field::Gf2, 2, 2, &[0, 1, 1, 0]).unwrap();
        assert_eq!(m.det(), 1);
    }

    #[test]
    fn block_assembly() {
        let one = gf3(1, 1, &[1]);
        let b = GfMatrix::block2x2(&one, &one, &one, &one).unwrap();
        assert_eq!(b.entries(), vec![1, 1, 1, 1]);

        let two = GfMatrix::scalar_mul(2, &one);
        let a2 = GfMatrix::block2x2(&two, &one, &one, &one).unwrap();
        assert_eq!(a2.entries(), vec![2, 1, 1, 1]);

        let wide = gf3(1, 2, &[1, 2]);
        assert!(GfMatrix::block2x2(&one, &one, &one, &wide).is_err());
    }

    #[test]
    fn block_assembly_unaligned_widths() {
        // 3-column left block forces cross-word shifts once assembled twice
        let l = gf3(2, 3, &[1, 2, 0, 0, 1, 2]);
        let r = gf3(2, 2, &[2, 2, 1, 0]);
        let top = GfMatrix::block2x2(
            &l,
            &r,
            &GfMatrix::zeros(Field::Gf3, 1, 3),
            &gf3(1, 2, &[1, 1]),
        )
        .unwrap();
        assert_eq!(top.rows(), 3);
        assert_eq!(top.cols(), 5);
        assert_eq!(
            top.entries(),
            vec![1, 2, 0, 2, 2, 0, 1, 2, 1, 0, 0, 0, 0, 1, 1]
        );
    }

    #[test]
    fn scalar_mul_examples() {
        let one = gf3(1, 1, &[1]);
        assert_eq!(GfMatrix::scalar_mul(2, &one).entries(), vec![2]);
        let m = gf3(2, 2, &[1, 2, 2, 2]);
        assert_eq!(GfMatrix::scalar_mul(1, &m), m);
        assert_eq!(GfMatrix::scalar_mul(2, &m).entries(), vec![2, 1, 1, 1]);
        assert_eq!(GfMatrix::scalar_mul(0, &m).entries(), vec![0; 4]);
    }

    #[test]
    fn pack_unpack_roundtrip_wide() {
        // wider than one word so tail handling is exercised
        let entries: Vec<u8> = (0..3 * 70).map(|i| (i % 3) as u8).collect();
        let m = gf3(3, 70, &entries);
        assert_eq!(m.entries(), entries);

        let bits: Vec<u8> = (0..2 * 130).map(|i| (i % 2) as u8).collect();
        let b = GfMatrix::from_entries(Field::Gf2, 2, 130, &bits).unwrap();
        assert_eq!(b.entries(), bits);
    }

    #[test]
    fn text_format_roundtrip() {
        let m = gf3(2, 3, &[1, 0, 2, 2, 1, 0]);
        let text = m.to_string();
        assert_eq!(text, "gfp 3 2 3\n102\n210\n");
        assert_eq!(text.parse::<GfMatrix>().unwrap(), m);

        let b = GfMatrix::identity(2, Field::Gf2);
        assert_eq!(b.to_string(), "gfp 2 2 2\n10\n01\n");
    }

    #[test]
    fn text_format_rejects_garbage() {
        assert!("".parse::<GfMatrix>().is_err());
        assert!("gfp 5 1 1\n1\n".parse::<GfMatrix>().is_err());
        assert!("gfp 3 1 2\n1\n".parse::<GfMatrix>().is_err());
        assert!("gfp 3 1 2\n13\n".parse::<GfMatrix>().is_err());
        assert!("gfp 3 1 1\n1\n1\n".parse::<GfMatrix>().is_err());
        assert!("gfp 2 1 1\n2\n".parse::<GfMatrix>().is_err());
    }

    #[test]
    fn from_entries_rejects_out_of_range() {
        assert!(matches!(
            GfMatrix::from_entries(Field::Gf2, 1, 2, &[1, 2]),
            Err(MatrixError::InvalidEntry { .. })
        ));
    }

    #[test]
    fn select_submatrix() {
        let m = gf3(3, 3, &[0, 1, 2, 1, 1, 0, 2, 0, 1]);
        let s = m.select(&[0, 2], &[1, 2]);
        assert_eq!(s.entries(), vec![1, 2, 0, 1]);
    }
}
