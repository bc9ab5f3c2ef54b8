//! Bit-packed linear algebra over GF(2).
//!
//! Vectors pack bit `i` into word `i / 64` at position `i % 64`. Matrices are
//! row-major: each row is a [`BitVec`] of length `cols`. Everything here is
//! deterministic, including pivot selection in [`BitMatrix::rref`] and the
//! ordering of [`BitMatrix::kernel_basis`].

use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// Dense vector over GF(2). Bits past `len` are always zero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for w in v.words.iter_mut() {
            *w = u64::MAX;
        }
        v.mask_tail();
        v
    }

    /// Standard basis vector `e_index`.
    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in indices {
            v.set(i, true);
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        Self::from_indices(
            bits.len(),
            bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i),
        )
    }

    /// Low `len` bits of `bits`; `len <= 64`.
    pub fn from_u64(len: usize, bits: u64) -> Self {
        assert!(len <= WORD, "from_u64 needs len <= 64, got {len}");
        let mut v = Self::zeros(len);
        if len > 0 {
            v.words[0] = bits;
            v.mask_tail();
        }
        v
    }

    /// Packs into a single word; `None` when `len > 64`.
    pub fn to_u64(&self) -> Option<u64> {
        match self.len {
            0 => Some(0),
            l if l <= WORD => Some(self.words[0]),
            _ => None,
        }
    }

    /// Parses a string of `0`/`1` characters (whitespace ignored).
    pub fn parse(s: &str) -> Result<Self> {
        let mut bits = Vec::new();
        for (col, ch) in s.chars().enumerate() {
            match ch {
                '0' => bits.push(false),
                '1' => bits.push(true),
                c if c.is_whitespace() => {}
                c => {
                    return Err(Error::parse(
                        1,
                        col + 1,
                        format!("unexpected character {c:?}"),
                    ))
                }
            }
        }
        Ok(Self::from_bools(&bits))
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(
            i < self.len,
            "bit index {i} out of range (len {})",
            self.len
        );
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(
            i < self.len,
            "bit index {i} out of range (len {})",
            self.len
        );
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(
            i < self.len,
            "bit index {i} out of range (len {})",
            self.len
        );
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// `self += other` over GF(2).
    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "xor of vectors with different lengths");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BitVec) -> bool {
        assert_eq!(self.len, other.len, "dot of vectors with different lengths");
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    /// Indices of set bits in ascending order.
    pub fn ones_iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let tz = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD + tz)
            })
        })
    }

    pub fn support(&self) -> Vec<usize> {
        self.ones_iter().collect()
    }

    /// Copy of bits `[start, start + len)`.
    pub fn slice(&self, start: usize, len: usize) -> BitVec {
        assert!(start + len <= self.len, "slice out of range");
        BitVec::from_indices(
            len,
            self.ones_iter()
                .filter(|&i| i >= start && i < start + len)
                .map(|i| i - start),
        )
    }

    pub fn concat(&self, other: &BitVec) -> BitVec {
        BitVec::from_indices(
            self.len + other.len,
            self.ones_iter()
                .chain(other.ones_iter().map(|i| i + self.len)),
        )
    }

    /// Kronecker product of two vectors; coordinate `i * b.len() + j`.
    pub fn kron(&self, other: &BitVec) -> BitVec {
        let n2 = other.len;
        let mut out = BitVec::zeros(self.len * n2);
        for i in self.ones_iter() {
            for j in other.ones_iter() {
                out.set(i * n2 + j, true);
            }
        }
        out
    }

    fn mask_tail(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl serde::Serialize for BitVec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

/// Dense row-major matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVec>,
}

/// Reduced row-echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub rref: BitMatrix,
    pub pivot_cols: Vec<usize>,
    pub rank: usize,
}

impl Rref {
    /// Columns without a pivot, ascending.
    pub fn free_cols(&self) -> Vec<usize> {
        let mut pivots = self.pivot_cols.iter().peekable();
        (0..self.rref.cols())
            .filter(|c| {
                if pivots.peek() == Some(&c) {
                    pivots.next();
                    false
                } else {
                    true
                }
            })
            .collect()
    }

    /// Reduces `v` against the pivot rows; the result is zero iff `v` lies in the row space.
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        let mut r = v.clone();
        for (row, &p) in self.rref.rows.iter().zip(&self.pivot_cols) {
            if r.get(p) {
                r.xor_assign(row);
            }
        }
        r
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: vec![BitVec::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            cols: n,
            rows: (0..n).map(|i| BitVec::unit(n, i)).collect(),
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Result<Self> {
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != cols) {
            return Err(Error::dims(format!(
                "row {i} has length {}, expected {cols}",
                r.len()
            )));
        }
        Ok(Self { cols, rows })
    }

    /// Builds a matrix from nested 0/1 values; panics on ragged input.
    pub fn from_nested(rows: &[&[u8]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged matrix literal");
                BitVec::from_indices(
                    cols,
                    r.iter()
                        .enumerate()
                        .filter(|(_, &b)| b != 0)
                        .map(|(i, _)| i),
                )
            })
            .collect();
        Self { cols, rows }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[BitVec]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::dims(format!(
                    "column {j} has length {}, expected {rows}",
                    c.len()
                )));
            }
            for i in c.ones_iter() {
                m.set(i, j, true);
            }
        }
        Ok(m)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &BitVec> {
        self.rows.iter()
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.rows[i].set(j, value)
    }

    pub fn flip(&mut self, i: usize, j: usize) {
        self.rows[i].flip(j)
    }

    pub fn column(&self, j: usize) -> BitVec {
        BitVec::from_indices(
            self.rows(),
            self.rows
                .iter()
                .enumerate()
                .filter(|(_, r)| r.get(j))
                .map(|(i, _)| i),
        )
    }

    pub fn weight(&self) -> usize {
        self.rows.iter().map(BitVec::weight).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVec::is_zero)
    }

    pub fn row_weights(&self) -> Vec<usize> {
        self.rows.iter().map(BitVec::weight).collect()
    }

    pub fn col_weights(&self) -> Vec<usize> {
        let mut w = vec![0; self.cols];
        for r in &self.rows {
            for j in r.ones_iter() {
                w[j] += 1;
            }
        }
        w
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows());
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.ones_iter() {
                t.set(j, i, true);
            }
        }
        t
    }

    /// GF(2) product `self · other`.
    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.rows() {
            return Err(Error::dims(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows(),
                self.cols,
                other.rows(),
                other.cols
            )));
        }
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc = BitVec::zeros(other.cols);
                for k in r.ones_iter() {
                    acc.xor_assign(&other.rows[k]);
                }
                acc
            })
            .collect();
        Ok(BitMatrix {
            cols: other.cols,
            rows,
        })
    }

    /// Matrix-vector product `self · v`.
    pub fn mul_vec(&self, v: &BitVec) -> Result<BitVec> {
        if self.cols != v.len() {
            return Err(Error::dims(format!(
                "cannot apply {}x{} matrix to vector of length {}",
                self.rows(),
                self.cols,
                v.len()
            )));
        }
        Ok(BitVec::from_indices(
            self.rows(),
            self.rows
                .iter()
                .enumerate()
                .filter(|(_, r)| r.dot(v))
                .map(|(i, _)| i),
        ))
    }

    /// Kronecker product: `(A⊗B)[i·p + k, j·q + l] = A[i,j]·B[k,l]` where `B` is `p×q`.
    pub fn kron(&self, other: &BitMatrix) -> BitMatrix {
        let (p, q) = (other.rows(), other.cols);
        let mut out = BitMatrix::zeros(self.rows() * p, self.cols * q);
        for (i, a_row) in self.rows.iter().enumerate() {
            for j in a_row.ones_iter() {
                for (k, b_row) in other.rows.iter().enumerate() {
                    for l in b_row.ones_iter() {
                        out.set(i * p + k, j * q + l, true);
                    }
                }
            }
        }
        out
    }

    /// Horizontal concatenation `(self | other)`.
    pub fn hstack(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.rows() != other.rows() {
            return Err(Error::dims(format!(
                "hstack of {} and {} rows",
                self.rows(),
                other.rows()
            )));
        }
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a.concat(b))
            .collect();
        Ok(BitMatrix {
            cols: self.cols + other.cols,
            rows,
        })
    }

    /// Reduced row-echelon form. Columns are scanned left to right; the pivot
    /// for a column is the first remaining row with a one there.
    pub fn rref(&self) -> Rref {
        let mut rows = self.rows.clone();
        let mut pivot_cols = Vec::new();
        let mut next = 0;
        for c in 0..self.cols {
            if next == rows.len() {
                break;
            }
            let Some(p) = (next..rows.len()).find(|&r| rows[r].get(c)) else {
                continue;
            };
            rows.swap(next, p);
            let pivot = rows[next].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != next && row.get(c) {
                    row.xor_assign(&pivot);
                }
            }
            pivot_cols.push(c);
            next += 1;
        }
        rows.truncate(next);
        let rank = next;
        let mut full = rows;
        full.resize(self.rows(), BitVec::zeros(self.cols));
        Rref {
            rref: BitMatrix {
                cols: self.cols,
                rows: full,
            },
            pivot_cols,
            rank,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of `{v : self·v = 0}`: one vector per free column of the RREF,
    /// in ascending order of that column.
    pub fn kernel_basis(&self) -> Vec<BitVec> {
        let rref = self.rref();
        rref.free_cols()
            .into_iter()
            .map(|f| {
                let mut v = BitVec::unit(self.cols, f);
                for (row, &p) in rref.rref.rows.iter().zip(&rref.pivot_cols) {
                    if row.get(f) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }

    /// Whether `v` is a GF(2) combination of the rows.
    pub fn in_row_space(&self, v: &BitVec) -> Result<bool> {
        if v.len() != self.cols {
            return Err(Error::dims(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok(self.rref().contains(v))
    }

    /// Nonzero rows of the RREF.
    pub fn row_space_basis(&self) -> Vec<BitVec> {
        let r = self.rref();
        r.rref.rows.into_iter().take(r.rank).collect()
    }

    /// Row-major flattening; inverse of [`reshape`].
    pub fn flatten(&self) -> BitVec {
        let n2 = self.cols;
        BitVec::from_indices(
            self.rows() * n2,
            self.rows
                .iter()
                .enumerate()
                .flat_map(|(i, r)| r.ones_iter().map(move |j| i * n2 + j)),
        )
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix {}x{} [", self.rows(), self.cols)?;
        for r in &self.rows {
            write!(f, " {r}")?;
        }
        write!(f, " ]")
    }
}

/// Reinterprets `v ∈ F2^{n1} ⊗ F2^{n2}` as the `n1×n2` matrix `V[i,j] = v[i·n2 + j]`.
pub fn reshape(v: &BitVec, n1: usize, n2: usize) -> Result<BitMatrix> {
    if v.len() != n1 * n2 {
        return Err(Error::dims(format!(
            "cannot reshape length {} into {n1}x{n2}",
            v.len()
        )));
    }
    let mut m = BitMatrix::zeros(n1, n2);
    for k in v.ones_iter() {
        m.set(k / n2, k % n2, true);
    }
    Ok(m)
}
