//! Hypergraph product of two classical codes.
//!
//! With `H1` of shape `r1×n1` and `H2` of shape `r2×n2`:
//!
//! ```text
//! HX = ( H1 ⊗ I_n2 | I_r1 ⊗ H2ᵀ )      (r1·n2 rows)
//! HZ = ( I_n1 ⊗ H2 | H1ᵀ ⊗ I_r2 )      (n1·r2 rows)
//! ```
//!
//! Qubits `[0, n1·n2)` form the bit-bit block (`VV(i, j) = i·n2 + j`) and
//! qubits `[n1·n2, N)` the check-check block (`CC(a, b) = n1·n2 + a·r2 + b`).

use serde::Serialize;

use crate::codes::{ClassicalCode, ExtNat};
use crate::error::{Error, Result};
use crate::f2::{BitMatrix, BitVec};

/// The two qubit blocks of a product code.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Block {
    /// Bit ⊗ bit qubits, an `n1×n2` grid.
    VV,
    /// Check ⊗ check qubits, an `r1×r2` grid.
    CC,
}

/// `[[n, k, d]]` of a quantum code.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuantumParams {
    pub n: usize,
    pub k: usize,
    pub d: ExtNat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HgpCode {
    h1: ClassicalCode,
    h2: ClassicalCode,
    h1t: ClassicalCode,
    h2t: ClassicalCode,
    hx: BitMatrix,
    hz: BitMatrix,
}

impl HgpCode {
    pub fn build(h1: &ClassicalCode, h2: &ClassicalCode) -> Self {
        let (m1, m2) = (h1.matrix(), h2.matrix());
        let (n1, r1, n2, r2) = (h1.n(), h1.r(), h2.n(), h2.r());
        let hx = m1
            .kron(&BitMatrix::identity(n2))
            .hstack(&BitMatrix::identity(r1).kron(&m2.transpose()))
            .expect("HX blocks have r1·n2 rows");
        let hz = BitMatrix::identity(n1)
            .kron(m2)
            .hstack(&m1.transpose().kron(&BitMatrix::identity(r2)))
            .expect("HZ blocks have n1·r2 rows");
        Self {
            h1: h1.clone(),
            h2: h2.clone(),
            h1t: h1.transpose_code(),
            h2t: h2.transpose_code(),
            hx,
            hz,
        }
    }

    /// Copy of this code with replaced check matrices. Intended for checking
    /// how the verifiers react to corrupted input; no CSS validation happens.
    pub fn with_check_matrices(&self, hx: BitMatrix, hz: BitMatrix) -> Result<Self> {
        if hx.rows() != self.hx.rows()
            || hx.cols() != self.hx.cols()
            || hz.rows() != self.hz.rows()
            || hz.cols() != self.hz.cols()
        {
            return Err(Error::dims(
                "replacement check matrices must keep their shapes",
            ));
        }
        Ok(Self {
            hx,
            hz,
            ..self.clone()
        })
    }

    pub fn h1(&self) -> &ClassicalCode {
        &self.h1
    }

    pub fn h2(&self) -> &ClassicalCode {
        &self.h2
    }

    pub fn h1_transpose(&self) -> &ClassicalCode {
        &self.h1t
    }

    pub fn h2_transpose(&self) -> &ClassicalCode {
        &self.h2t
    }

    pub fn hx(&self) -> &BitMatrix {
        &self.hx
    }

    pub fn hz(&self) -> &BitMatrix {
        &self.hz
    }

    pub fn n1(&self) -> usize {
        self.h1.n()
    }

    pub fn r1(&self) -> usize {
        self.h1.r()
    }

    pub fn n2(&self) -> usize {
        self.h2.n()
    }

    pub fn r2(&self) -> usize {
        self.h2.r()
    }

    /// Size of the bit-bit block, which is also the offset of the check-check block.
    pub fn vv_len(&self) -> usize {
        self.n1() * self.n2()
    }

    pub fn cc_len(&self) -> usize {
        self.r1() * self.r2()
    }

    pub fn num_qubits(&self) -> usize {
        self.vv_len() + self.cc_len()
    }

    /// `k1·k2 + k1ᵀ·k2ᵀ`.
    pub fn num_logicals(&self) -> usize {
        self.h1.k() * self.h2.k() + self.h1t.k() * self.h2t.k()
    }

    pub fn css_check(&self) -> bool {
        self.css_violation().is_none()
    }

    /// First `(x_row, z_row)` pair whose supports overlap oddly, if any.
    pub fn css_violation(&self) -> Option<(usize, usize)> {
        for (i, rx) in self.hx.row_iter().enumerate() {
            for (j, rz) in self.hz.row_iter().enumerate() {
                if rx.dot(rz) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// `w_c`: heaviest check over both HX and HZ.
    pub fn max_check_weight(&self) -> usize {
        self.hx
            .row_weights()
            .into_iter()
            .chain(self.hz.row_weights())
            .max()
            .unwrap_or(0)
    }

    /// `w_q`: the largest number of checks (X and Z together) touching one qubit.
    pub fn max_qubit_degree(&self) -> usize {
        self.hx
            .col_weights()
            .into_iter()
            .zip(self.hz.col_weights())
            .map(|(a, b)| a + b)
            .max()
            .unwrap_or(0)
    }

    /// `(w_c, w_q)`.
    pub fn sparsity(&self) -> (usize, usize) {
        (self.max_check_weight(), self.max_qubit_degree())
    }

    /// `[[n1·n2 + r1·r2, k1·k2 + k1ᵀ·k2ᵀ, min(d1, d2, d1ᵀ, d2ᵀ)]]`; infinite
    /// parent distances are skipped.
    pub fn parameters(&self, cap: u64) -> Result<QuantumParams> {
        let k = self.num_logicals();
        if k == 0 {
            return Err(Error::NoLogicals);
        }
        let mut d = ExtNat::Infinite;
        for c in [&self.h1, &self.h2, &self.h1t, &self.h2t] {
            d = d.min(c.parameters(cap)?.d);
        }
        Ok(QuantumParams {
            n: self.num_qubits(),
            k,
            d,
        })
    }

    pub fn qubit_index(&self, block: Block, a: usize, b: usize) -> Result<usize> {
        let (rows, cols, offset) = match block {
            Block::VV => (self.n1(), self.n2(), 0),
            Block::CC => (self.r1(), self.r2(), self.vv_len()),
        };
        if a >= rows || b >= cols {
            return Err(Error::IndexOutOfRange(format!(
                "{block:?}({a}, {b}) outside {rows}x{cols}"
            )));
        }
        Ok(offset + a * cols + b)
    }

    pub fn index_to_block(&self, q: usize) -> Result<(Block, usize, usize)> {
        if q < self.vv_len() {
            Ok((Block::VV, q / self.n2(), q % self.n2()))
        } else if q < self.num_qubits() {
            let c = q - self.vv_len();
            Ok((Block::CC, c / self.r2(), c % self.r2()))
        } else {
            Err(Error::IndexOutOfRange(format!(
                "qubit {q} of {}",
                self.num_qubits()
            )))
        }
    }

    /// Splits a length-`N` vector into its VV and CC parts.
    pub fn split(&self, v: &BitVec) -> (BitVec, BitVec) {
        (
            v.slice(0, self.vv_len()),
            v.slice(self.vv_len(), self.cc_len()),
        )
    }
}
