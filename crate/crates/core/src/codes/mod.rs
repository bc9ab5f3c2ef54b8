//! Classical binary linear codes given by a parity-check matrix.
//!
//! The checks are the literal rows of `H`; nothing here row-reduces them away,
//! because energy (the number of violated checks) depends on the generating set.

mod families;
mod format;

pub use families::{
    hamming_7_4, open_repetition, random_ldpc, random_matrix, ring_repetition, single_parity,
};
pub use format::{
    emit_alist, emit_dense, emit_dense_matrix, parse_alist, parse_auto, parse_dense,
    parse_dense_matrix, sniff_format, InputFormat,
};

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{ensure_within_cap, Error, Result};
use crate::f2::{BitMatrix, BitVec};

/// A natural number or infinity. Used for distances and barriers of codes
/// that carry no logical information.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtNat {
    Finite(usize),
    Infinite,
}

impl ExtNat {
    pub fn finite(self) -> Option<usize> {
        match self {
            ExtNat::Finite(v) => Some(v),
            ExtNat::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtNat::Finite(_))
    }
}

impl From<Option<usize>> for ExtNat {
    fn from(v: Option<usize>) -> Self {
        v.map_or(ExtNat::Infinite, ExtNat::Finite)
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Finite(v) => write!(f, "{v}"),
            ExtNat::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for ExtNat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtNat::Finite(v) => s.serialize_u64(*v as u64),
            ExtNat::Infinite => s.serialize_str("inf"),
        }
    }
}

/// `[n, k, d]` of a classical code.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodeParams {
    pub n: usize,
    pub k: usize,
    pub d: ExtNat,
}

/// Parity-check matrix with cached rank, kernel basis and sparsity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalCode {
    h: BitMatrix,
    rank: usize,
    kernel: Vec<BitVec>,
    max_row_weight: usize,
    max_col_weight: usize,
}

impl ClassicalCode {
    pub fn from_matrix(h: BitMatrix) -> Result<Self> {
        if h.rows() == 0 || h.cols() == 0 {
            return Err(Error::EmptyMatrix);
        }
        let rank = h.rank();
        let kernel = h.kernel_basis();
        let max_row_weight = h.row_weights().into_iter().max().unwrap_or(0);
        let max_col_weight = h.col_weights().into_iter().max().unwrap_or(0);
        Ok(Self {
            h,
            rank,
            kernel,
            max_row_weight,
            max_col_weight,
        })
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.h
    }

    /// Number of bits.
    pub fn n(&self) -> usize {
        self.h.cols()
    }

    /// Number of checks.
    pub fn r(&self) -> usize {
        self.h.rows()
    }

    pub fn k(&self) -> usize {
        self.kernel.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn kernel_basis(&self) -> &[BitVec] {
        &self.kernel
    }

    /// `w_c`: largest number of bits in one check.
    pub fn max_row_weight(&self) -> usize {
        self.max_row_weight
    }

    /// `w_q`: largest number of checks on one bit.
    pub fn max_col_weight(&self) -> usize {
        self.max_col_weight
    }

    /// The code whose parity-check matrix is `Hᵀ`.
    pub fn transpose_code(&self) -> ClassicalCode {
        ClassicalCode::from_matrix(self.h.transpose()).expect("transpose of non-empty matrix")
    }

    pub fn syndrome(&self, x: &BitVec) -> Result<BitVec> {
        self.h.mul_vec(x)
    }

    pub fn is_codeword(&self, x: &BitVec) -> Result<bool> {
        Ok(self.syndrome(x)?.is_zero())
    }

    /// Iterates all `2^k` codewords in Gray-code order over the kernel basis,
    /// starting from zero.
    pub fn codewords(&self) -> impl Iterator<Item = BitVec> + '_ {
        let k = self.k();
        let mut current = BitVec::zeros(self.n());
        let total: u64 = if k >= 64 { u64::MAX } else { 1u64 << k };
        (0..total).map(move |i| {
            if i > 0 {
                let bit = i.trailing_zeros() as usize;
                current.xor_assign(&self.kernel[bit]);
            }
            current.clone()
        })
    }

    /// `[n, k, d]` by enumerating the `2^k - 1` nonzero codewords.
    pub fn parameters(&self, cap: u64) -> Result<CodeParams> {
        let k = self.k();
        ensure_within_cap(k, cap)?;
        let d = self.codewords().skip(1).map(|c| c.weight()).min();
        Ok(CodeParams {
            n: self.n(),
            k,
            d: d.into(),
        })
    }
}
