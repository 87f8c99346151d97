//! Dense bit-packed {+1, -1} matrices.
//!
//! Each row is stored in whole `u64` words, one bit per entry with `+1 ↦ 1`
//! and `-1 ↦ 0`. Padding bits past the last column are always zero, so a row
//! dot product reduces to `cols - 2 * popcount(row_i ^ row_j)`.

use std::fmt;
use std::ops::{Neg, Range};

use crate::error::{Error, Result};

/// Upper bound on either side of a [`SignMatrix`].
pub const MAX_SIDE: usize = 1 << 15;

const WORD_BITS: usize = u64::BITS as usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_i8(v: i8) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    fn from_bit(bit: bool) -> Sign {
        if bit {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    fn bit(self) -> bool {
        self == Sign::Plus
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

#[inline]
fn low_mask(n: usize) -> u64 {
    if n >= WORD_BITS {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SignMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl SignMatrix {
    /// A `rows x cols` matrix with every entry equal to `sign`.
    pub fn filled(rows: usize, cols: usize, sign: Sign) -> Result<Self> {
        if rows > MAX_SIDE || cols > MAX_SIDE {
            return Err(Error::MatrixTooLarge {
                rows,
                cols,
                bound: MAX_SIDE,
            });
        }
        let stride = cols.div_ceil(WORD_BITS);
        let mut m = SignMatrix {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        };
        if sign == Sign::Plus {
            for i in 0..rows {
                m.fill_run(i, 0, cols, Sign::Plus);
            }
        }
        Ok(m)
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Sign,
    ) -> Result<Self> {
        let mut m = Self::filled(rows, cols, Sign::Minus)?;
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) == Sign::Plus {
                    m.set_bit(i, j, true);
                }
            }
        }
        Ok(m)
    }

    /// Builds a matrix from rows of `1` / `-1` values.
    pub fn from_rows<R: AsRef<[i8]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::Shape(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            if let Some(&v) = r.iter().find(|&&v| Sign::from_i8(v).is_none()) {
                return Err(Error::Shape(format!("entry {v} in row {i} is not +-1")));
            }
        }
        Self::from_fn(rows.len(), cols, |i, j| {
            Sign::from_i8(rows[i].as_ref()[j]).expect("validated")
        })
    }

    /// Sylvester's Hadamard matrix of order `2^log2_order`.
    pub fn sylvester(log2_order: u32) -> Result<Self> {
        let h2 = SignMatrix::from_rows(&[[1, 1], [1, -1]])?;
        let mut h = SignMatrix::filled(1, 1, Sign::Plus)?;
        for _ in 0..log2_order {
            h = h.kronecker(&h2)?;
        }
        Ok(h)
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

    /// Packed words of row `i`; bit `j % 64` of word `j / 64` holds column `j`.
    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    fn check_index(&self, i: usize, j: usize) -> Result<()> {
        if i < self.rows && j < self.cols {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                row: i,
                col: j,
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    fn check_row(&self, i: usize) -> Result<()> {
        if i < self.rows {
            Ok(())
        } else {
            Err(Error::RowOutOfRange {
                index: i,
                len: self.rows,
            })
        }
    }

    fn check_col(&self, j: usize) -> Result<()> {
        if j < self.cols {
            Ok(())
        } else {
            Err(Error::ColOutOfRange {
                index: j,
                len: self.cols,
            })
        }
    }

    #[inline]
    fn bit(&self, i: usize, j: usize) -> bool {
        (self.data[i * self.stride + j / WORD_BITS] >> (j % WORD_BITS)) & 1 == 1
    }

    #[inline]
    fn set_bit(&mut self, i: usize, j: usize, v: bool) {
        let w = &mut self.data[i * self.stride + j / WORD_BITS];
        let mask = 1u64 << (j % WORD_BITS);
        if v {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    pub fn entry(&self, i: usize, j: usize) -> Result<Sign> {
        self.check_index(i, j)?;
        Ok(Sign::from_bit(self.bit(i, j)))
    }

    pub fn set_entry(&mut self, i: usize, j: usize, sign: Sign) -> Result<()> {
        self.check_index(i, j)?;
        self.set_bit(i, j, sign.bit());
        Ok(())
    }

    /// Up to 64 bits of row `i` starting at column `start`, low bit first.
    #[inline]
    fn read_run(&self, i: usize, start: usize, n: usize) -> u64 {
        let base = i * self.stride;
        let w = start / WORD_BITS;
        let off = start % WORD_BITS;
        let mut v = self.data[base + w] >> off;
        if off != 0 && off + n > WORD_BITS {
            v |= self.data[base + w + 1] << (WORD_BITS - off);
        }
        v & low_mask(n)
    }

    #[inline]
    fn write_run(&mut self, i: usize, start: usize, n: usize, value: u64) {
        let base = i * self.stride;
        let w = start / WORD_BITS;
        let off = start % WORD_BITS;
        let value = value & low_mask(n);
        let mask = low_mask(n) << off;
        let word = &mut self.data[base + w];
        *word = (*word & !mask) | (value << off);
        if off != 0 && off + n > WORD_BITS {
            let spill = off + n - WORD_BITS;
            let mask = low_mask(spill);
            let word = &mut self.data[base + w + 1];
            *word = (*word & !mask) | (value >> (WORD_BITS - off));
        }
    }

    fn fill_run(&mut self, i: usize, start: usize, len: usize, sign: Sign) {
        let fill = if sign.bit() { u64::MAX } else { 0 };
        let mut done = 0;
        while done < len {
            let n = (len - done).min(WORD_BITS);
            self.write_run(i, start + done, n, fill);
            done += n;
        }
    }

    /// Sets `len` entries of row `i` starting at column `start` to `sign`.
    pub fn fill_segment(&mut self, i: usize, start: usize, len: usize, sign: Sign) -> Result<()> {
        self.check_row(i)?;
        self.check_span(start, len)?;
        self.fill_run(i, start, len, sign);
        Ok(())
    }

    fn check_span(&self, start: usize, len: usize) -> Result<()> {
        match start.checked_add(len) {
            Some(end) if end <= self.cols => Ok(()),
            _ => Err(Error::ColOutOfRange {
                index: start.saturating_add(len),
                len: self.cols,
            }),
        }
    }

    /// Copies `len` entries of `src` row `src_row` (from column `src_start`)
    /// into row `dst_row` at column `dst_start`, optionally negated.
    #[allow(clippy::too_many_arguments)]
    pub fn copy_segment(
        &mut self,
        dst_row: usize,
        dst_start: usize,
        src: &SignMatrix,
        src_row: usize,
        src_start: usize,
        len: usize,
        negate: bool,
    ) -> Result<()> {
        self.check_row(dst_row)?;
        self.check_span(dst_start, len)?;
        src.check_row(src_row)?;
        src.check_span(src_start, len)?;
        let flip = if negate { u64::MAX } else { 0 };
        let mut done = 0;
        while done < len {
            let n = (len - done).min(WORD_BITS);
            let v = src.read_run(src_row, src_start + done, n) ^ flip;
            self.write_run(dst_row, dst_start + done, n, v);
            done += n;
        }
        Ok(())
    }

    /// `Σ_t M[i,t] · M[j,t]`.
    pub fn dot_rows(&self, i: usize, j: usize) -> Result<i64> {
        self.check_row(i)?;
        self.check_row(j)?;
        Ok(self.dot_rows_unchecked(i, j))
    }

    #[inline]
    pub(crate) fn dot_rows_unchecked(&self, i: usize, j: usize) -> i64 {
        let a = self.row_words(i);
        let b = self.row_words(j);
        let mut diff = 0u32;
        if let Some(last) = self.stride.checked_sub(1) {
            for t in 0..last {
                diff += (a[t] ^ b[t]).count_ones();
            }
            let tail = self.cols - last * WORD_BITS;
            diff += ((a[last] ^ b[last]) & low_mask(tail)).count_ones();
        }
        self.cols as i64 - 2 * diff as i64
    }

    /// Dot product of rows `i` and `j` restricted to the columns in `range`.
    pub fn dot_rows_range(&self, i: usize, j: usize, range: Range<usize>) -> Result<i64> {
        self.check_row(i)?;
        self.check_row(j)?;
        if range.start > range.end {
            return Err(Error::Shape(format!("empty column range {range:?}")));
        }
        self.check_span(range.start, range.end - range.start)?;
        let mut diff = 0u32;
        let mut c = range.start;
        while c < range.end {
            let n = (range.end - c).min(WORD_BITS);
            diff += (self.read_run(i, c, n) ^ self.read_run(j, c, n)).count_ones();
            c += n;
        }
        Ok((range.end - range.start) as i64 - 2 * diff as i64)
    }

    pub fn row_sum(&self, i: usize) -> Result<i64> {
        self.check_row(i)?;
        let plus: u32 = self.row_words(i).iter().map(|w| w.count_ones()).sum();
        Ok(2 * plus as i64 - self.cols as i64)
    }

    pub fn col_sum(&self, j: usize) -> Result<i64> {
        self.check_col(j)?;
        let plus = (0..self.rows).filter(|&i| self.bit(i, j)).count();
        Ok(2 * plus as i64 - self.rows as i64)
    }

    pub fn negate_row(&mut self, i: usize) -> Result<()> {
        self.check_row(i)?;
        let cols = self.cols;
        self.fill_xor_row(i, cols);
        Ok(())
    }

    fn fill_xor_row(&mut self, i: usize, cols: usize) {
        let stride = self.stride;
        let row = &mut self.data[i * stride..(i + 1) * stride];
        for w in row.iter_mut() {
            *w = !*w;
        }
        if let Some(last) = row.last_mut() {
            *last &= low_mask(cols - (stride - 1) * WORD_BITS);
        }
    }

    pub fn negate_col(&mut self, j: usize) -> Result<()> {
        self.check_col(j)?;
        let mask = 1u64 << (j % WORD_BITS);
        for i in 0..self.rows {
            self.data[i * self.stride + j / WORD_BITS] ^= mask;
        }
        Ok(())
    }

    /// `-M`.
    pub fn negated(&self) -> SignMatrix {
        let mut m = self.clone();
        for i in 0..m.rows {
            m.fill_xor_row(i, m.cols);
        }
        m
    }

    pub fn transpose(&self) -> SignMatrix {
        let mut t = SignMatrix::filled(self.cols, self.rows, Sign::Minus).expect("same bound");
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.bit(i, j) {
                    t.set_bit(j, i, true);
                }
            }
        }
        t
    }

    /// Rows `rows` and columns `cols` of `self` as a new matrix.
    pub fn submatrix(&self, rows: Range<usize>, cols: Range<usize>) -> Result<SignMatrix> {
        if rows.start > rows.end || rows.end > self.rows {
            return Err(Error::RowOutOfRange {
                index: rows.end,
                len: self.rows,
            });
        }
        if cols.start > cols.end || cols.end > self.cols {
            return Err(Error::ColOutOfRange {
                index: cols.end,
                len: self.cols,
            });
        }
        let width = cols.end - cols.start;
        let mut out = SignMatrix::filled(rows.end - rows.start, width, Sign::Minus)?;
        for (dst, src) in rows.enumerate() {
            out.copy_segment(dst, 0, self, src, cols.start, width, false)?;
        }
        Ok(out)
    }

    /// Row `i` of the result is row `perm[i]` of `self`.
    pub fn permute_rows(&self, perm: &[usize]) -> Result<SignMatrix> {
        check_permutation(perm, self.rows)?;
        let mut out = self.clone();
        for (dst, &src) in perm.iter().enumerate() {
            out.data[dst * self.stride..(dst + 1) * self.stride]
                .copy_from_slice(self.row_words(src));
        }
        Ok(out)
    }

    /// Column `j` of the result is column `perm[j]` of `self`.
    pub fn permute_cols(&self, perm: &[usize]) -> Result<SignMatrix> {
        check_permutation(perm, self.cols)?;
        SignMatrix::from_fn(self.rows, self.cols, |i, j| {
            Sign::from_bit(self.bit(i, perm[j]))
        })
    }

    /// The block matrix `[x_ij · other]`.
    pub fn kronecker(&self, other: &SignMatrix) -> Result<SignMatrix> {
        let too_large = || Error::MatrixTooLarge {
            rows: self.rows.saturating_mul(other.rows),
            cols: self.cols.saturating_mul(other.cols),
            bound: MAX_SIDE,
        };
        let rows = self.rows.checked_mul(other.rows).ok_or_else(too_large)?;
        let cols = self.cols.checked_mul(other.cols).ok_or_else(too_large)?;
        let mut out = SignMatrix::filled(rows, cols, Sign::Minus)?;
        for i1 in 0..self.rows {
            for i2 in 0..other.rows {
                let dst = i1 * other.rows + i2;
                for j1 in 0..self.cols {
                    out.copy_segment(
                        dst,
                        j1 * other.cols,
                        other,
                        i2,
                        0,
                        other.cols,
                        !self.bit(i1, j1),
                    )?;
                }
            }
        }
        Ok(out)
    }

    /// First row and first column all `+1`.
    pub fn is_normalized(&self) -> bool {
        (0..self.cols).all(|j| self.bit(0, j)) && (0..self.rows).all(|i| self.bit(i, 0))
    }

    /// Normal form with first row and column all `+1`.
    ///
    /// Negates the whole matrix if `a_00 = -1`, then every row `i >= 1` with
    /// `a_i0 = -1`, then every column `j >= 1` with `a_0j = -1`. Row flips
    /// never touch row 0 and column flips never touch column 0, so the result
    /// does not depend on the order of the flips.
    pub fn normalize(&self) -> Result<SignMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if self.rows == 0 {
            return Ok(self.clone());
        }
        let mut a = if self.bit(0, 0) {
            self.clone()
        } else {
            self.negated()
        };
        for i in 1..a.rows {
            if !a.bit(i, 0) {
                a.negate_row(i)?;
            }
        }
        for j in 1..a.cols {
            if !a.bit(0, j) {
                a.negate_col(j)?;
            }
        }
        Ok(a)
    }

    /// The matrix with the first row and first column removed.
    ///
    /// Requires a normalized square matrix.
    pub fn core(&self) -> Result<SignMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if self.rows == 0 || !self.is_normalized() {
            return Err(Error::NotNormalized);
        }
        self.submatrix(1..self.rows, 1..self.cols)
    }

    pub fn to_i8_rows(&self) -> Vec<Vec<i8>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| Sign::from_bit(self.bit(i, j)).to_i8())
                    .collect()
            })
            .collect()
    }
}

fn check_permutation(perm: &[usize], len: usize) -> Result<()> {
    if perm.len() != len {
        return Err(Error::Shape(format!(
            "permutation has length {}, expected {len}",
            perm.len()
        )));
    }
    let mut seen = vec![false; len];
    for &p in perm {
        if p >= len || std::mem::replace(&mut seen[p], true) {
            return Err(Error::Shape(format!("{perm:?} is not a permutation")));
        }
    }
    Ok(())
}

impl fmt::Debug for SignMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SignMatrix {}x{}", self.rows, self.cols)?;
        write!(f, "{self}")
    }
}

/// `+` / `-` grid, one line per row.
impl fmt::Display for SignMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut line = String::with_capacity(self.cols);
        for i in 0..self.rows {
            line.clear();
            line.extend((0..self.cols).map(|j| if self.bit(i, j) { '+' } else { '-' }));
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}
