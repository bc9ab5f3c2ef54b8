//! Path deformation onto a single line of one block.
//!
//! Write the Z part of an operator as two grids, `Z1` (`n1×n2`, bit-bit) and
//! `Z2` (`r1×r2`, check-check). Its energy is `wt(H1·Z1 + Z2·H2)`. For a
//! codeword `L` of `H2` the columns of `Z1` picked out by `L` collapse into
//! the single column `Z1·L`, whose energy `wt(H1·Z1·L)` can only be smaller.
//! Placing that column at some `α ∈ C(L)` and clearing everything else maps
//! any path onto a path on one column without raising its cost.
//!
//! The check-check block and the X sector use the same move with rows and
//! columns swapped:
//!
//! | kind | block | collapse | codeword of |
//! |------|-------|----------|-------------|
//! | Z    | VV    | columns  | `H2`        |
//! | Z    | CC    | rows     | `H1ᵀ`       |
//! | X    | VV    | rows     | `H1`        |
//! | X    | CC    | columns  | `H2ᵀ`       |
//!
//! The codeword code is the one whose free columns carry the unit vectors of
//! the canonical basis on that block, so α is taken among those free columns.
//! With that choice a deformed canonical operator is again canonical.

use serde::Serialize;

use crate::barrier::{energy_quantum, PathRecord};
use crate::codes::ClassicalCode;
use crate::error::{Error, Result};
use crate::f2::{reshape, BitMatrix, BitVec};
use crate::hgp::{Block, HgpCode};
use crate::logicals::{compose_canonical, CanonicalBasis, CanonicalOp, PauliKind, PauliVec};

/// Grid direction that gets collapsed.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Axis {
    Row,
    Col,
}

pub fn collapse_axis(kind: PauliKind, block: Block) -> Axis {
    match (kind, block) {
        (PauliKind::Z, Block::VV) | (PauliKind::X, Block::CC) => Axis::Col,
        (PauliKind::Z, Block::CC) | (PauliKind::X, Block::VV) => Axis::Row,
    }
}

pub fn codeword_code(code: &HgpCode, kind: PauliKind, block: Block) -> &ClassicalCode {
    match (kind, block) {
        (PauliKind::Z, Block::VV) => code.h2(),
        (PauliKind::Z, Block::CC) => code.h1_transpose(),
        (PauliKind::X, Block::VV) => code.h1(),
        (PauliKind::X, Block::CC) => code.h2_transpose(),
    }
}

/// A codeword, its index set and the line that receives the collapsed sum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeformSpec {
    pub kind: PauliKind,
    pub block: Block,
    pub axis: Axis,
    pub codeword: BitVec,
    pub alpha: usize,
    pub index_set: Vec<usize>,
}

impl DeformSpec {
    /// Validates the codeword and picks α: the smallest index of `C(L)` that
    /// is a free column of the codeword code's reduced form. A nonzero
    /// codeword is determined by its free coordinates, so one always exists.
    pub fn new(code: &HgpCode, kind: PauliKind, block: Block, codeword: BitVec) -> Result<Self> {
        let parent = codeword_code(code, kind, block);
        if codeword.len() != parent.n() {
            return Err(Error::dims(format!(
                "codeword has length {}, expected {}",
                codeword.len(),
                parent.n()
            )));
        }
        if !parent.is_codeword(&codeword)? {
            return Err(Error::NotACodeword(codeword.to_string()));
        }
        let free = parent.matrix().rref().free_cols();
        let index_set = column_index_set(&codeword);
        let alpha = index_set
            .iter()
            .copied()
            .find(|j| free.contains(j))
            .ok_or_else(|| Error::InvalidDeformation("zero codeword".into()))?;
        Ok(Self {
            kind,
            block,
            axis: collapse_axis(kind, block),
            codeword,
            alpha,
            index_set,
        })
    }

    /// Same spec with a different receiving line.
    pub fn with_alpha(mut self, alpha: usize) -> Result<Self> {
        if !self.index_set.contains(&alpha) {
            return Err(Error::InvalidDeformation(format!(
                "alpha {alpha} is not in the index set"
            )));
        }
        self.alpha = alpha;
        Ok(self)
    }
}

/// `C(L) = {j : L_j = 1}`.
pub fn column_index_set(codeword: &BitVec) -> Vec<usize> {
    codeword.support()
}

/// `Z·L`: the sum of the columns of `Z` selected by `L`.
pub fn collapse_columns(z: &BitMatrix, codeword: &BitVec) -> Result<BitVec> {
    z.mul_vec(codeword)
}

/// `Lᵀ·Z`: the sum of the rows of `Z` selected by `L`.
pub fn collapse_rows(z: &BitMatrix, codeword: &BitVec) -> Result<BitVec> {
    z.transpose().mul_vec(codeword)
}

fn grid_shape(code: &HgpCode, block: Block) -> (usize, usize, usize) {
    match block {
        Block::VV => (code.n1(), code.n2(), 0),
        Block::CC => (code.r1(), code.r2(), code.vv_len()),
    }
}

/// Collapses the `spec.kind` part of `p` onto line α of `spec.block`. The
/// other Pauli type and the other block are dropped.
pub fn deform_pauli(code: &HgpCode, p: &PauliVec, spec: &DeformSpec) -> Result<PauliVec> {
    let n = code.num_qubits();
    if p.num_qubits() != n {
        return Err(Error::dims("operator length differs from the code"));
    }
    let (rows, cols, offset) = grid_shape(code, spec.block);
    let grid = reshape(&p.part(spec.kind).slice(offset, rows * cols), rows, cols)?;
    let mut out = BitVec::zeros(n);
    match spec.axis {
        Axis::Col => {
            let line = collapse_columns(&grid, &spec.codeword)?;
            for i in line.ones_iter() {
                out.set(offset + i * cols + spec.alpha, true);
            }
        }
        Axis::Row => {
            let line = collapse_rows(&grid, &spec.codeword)?;
            for j in line.ones_iter() {
                out.set(offset + spec.alpha * cols + j, true);
            }
        }
    }
    Ok(PauliVec::pure(spec.kind, out))
}

/// Deforms every state, recomputes energies and drops repeated states.
pub fn deform_path(
    code: &HgpCode,
    path: &PathRecord<PauliVec>,
    spec: &DeformSpec,
) -> Result<PathRecord<PauliVec>> {
    let states = path
        .states
        .iter()
        .map(|p| deform_pauli(code, p, spec))
        .collect::<Result<Vec<_>>>()?;
    let energies = states
        .iter()
        .map(|p| energy_quantum(code, p))
        .collect::<Result<Vec<_>>>()?;
    Ok(PathRecord::new(states, energies).canonicalize())
}

/// One row of a deformation trace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub step: usize,
    pub original_energy: usize,
    pub deformed_energy: usize,
}

/// Per-state energies before and after deformation, without dropping repeats.
pub fn deformation_trace(
    code: &HgpCode,
    path: &PathRecord<PauliVec>,
    spec: &DeformSpec,
) -> Result<Vec<TraceStep>> {
    path.states
        .iter()
        .zip(&path.energies)
        .enumerate()
        .map(|(step, (p, &original_energy))| {
            let d = deform_pauli(code, p, spec)?;
            Ok(TraceStep {
                step,
                original_energy,
                deformed_energy: energy_quantum(code, &d)?,
            })
        })
        .collect()
}

/// `(wt(H1·Z1·L), wt(H1·Z1 + Z2·H2))` for a codeword `L` of `H2`.
pub fn weight_reduction_gap(
    code: &HgpCode,
    z1: &BitMatrix,
    z2: &BitMatrix,
    codeword: &BitVec,
) -> Result<(usize, usize)> {
    let (h1, h2) = (code.h1().matrix(), code.h2().matrix());
    if (z1.rows(), z1.cols()) != (code.n1(), code.n2())
        || (z2.rows(), z2.cols()) != (code.r1(), code.r2())
    {
        return Err(Error::ShapeMismatch(format!(
            "Z1 must be {}x{} and Z2 {}x{}",
            code.n1(),
            code.n2(),
            code.r1(),
            code.r2()
        )));
    }
    if !h2.mul_vec(codeword)?.is_zero() {
        return Err(Error::NotACodeword(codeword.to_string()));
    }
    let lhs = h1.mul_vec(&collapse_columns(z1, codeword)?)?.weight();
    let mut full = h1.mul(z1)?;
    let right = z2.mul(h2)?;
    for (i, row) in right.row_iter().enumerate() {
        for j in row.ones_iter() {
            full.flip(i, j);
        }
    }
    Ok((lhs, full.weight()))
}

/// The coefficient matrix on `block`, oriented so that rows index the kernel
/// vectors and columns index the unit vectors.
fn oriented_coefficients(op: &CanonicalOp, block: Block) -> BitMatrix {
    let m = match block {
        Block::VV => &op.lambda,
        Block::CC => &op.kappa,
    };
    match collapse_axis(op.kind, block) {
        Axis::Col => m.clone(),
        Axis::Row => m.transpose(),
    }
}

fn unit_positions(basis: &CanonicalBasis, block: Block, count: usize) -> Vec<usize> {
    (0..count)
        .map(|u| match block {
            Block::VV => basis.vv_unit_position(u),
            Block::CC => basis.cc_unit_position(u),
        })
        .collect()
}

/// `c_t = Σ_{u : pos(u) ∈ C(L)} M[t][u]`.
fn activation(m: &BitMatrix, positions: &[usize], codeword: &BitVec) -> BitVec {
    let mut c = BitVec::zeros(m.rows());
    for (t, row) in m.row_iter().enumerate() {
        let hits = row
            .ones_iter()
            .filter(|&u| codeword.get(positions[u]))
            .count();
        c.set(t, hits % 2 == 1);
    }
    c
}

fn block_for(op: &CanonicalOp) -> Result<Block> {
    if !op.lambda.is_zero() {
        Ok(Block::VV)
    } else if !op.kappa.is_zero() {
        Ok(Block::CC)
    } else {
        Err(Error::TrivialOperator)
    }
}

/// Index combinations of `0..k` by size, then lexicographically.
fn graded_lex(k: usize) -> impl Iterator<Item = Vec<usize>> {
    (1..=k).flat_map(move |size| {
        let mut idx: Vec<usize> = (0..size).collect();
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = idx.clone();
            // advance to the next combination
            match (0..size).rev().find(|&i| idx[i] < k - size + i) {
                Some(i) => {
                    idx[i] += 1;
                    for j in i + 1..size {
                        idx[j] = idx[j - 1] + 1;
                    }
                }
                None => done = true,
            }
            Some(out)
        })
    })
}

/// A codeword for which the deformed endpoint of `op` is nontrivial. Uses the
/// bit-bit block when `lambda ≠ 0`, else the check-check block, and the first
/// kernel-basis combination (fewest terms, then lexicographic) that works.
pub fn find_activating_codeword(code: &HgpCode, op: &CanonicalOp) -> Result<DeformSpec> {
    let block = block_for(op)?;
    let basis = CanonicalBasis::new(code, op.kind);
    let m = oriented_coefficients(op, block);
    let positions = unit_positions(&basis, block, m.cols());
    let parent = codeword_code(code, op.kind, block);
    let kernel = parent.kernel_basis();
    for combo in graded_lex(kernel.len()) {
        let mut codeword = BitVec::zeros(parent.n());
        for i in combo {
            codeword.xor_assign(&kernel[i]);
        }
        if !activation(&m, &positions, &codeword).is_zero() {
            return DeformSpec::new(code, op.kind, block, codeword);
        }
    }
    Err(Error::InvalidDeformation("no activating codeword".into()))
}

/// The canonical operator that `deform_pauli(op)` must equal: every
/// coefficient moves onto the unit vector at α, with weights `c_t`.
pub fn predicted_endpoint(
    code: &HgpCode,
    op: &CanonicalOp,
    spec: &DeformSpec,
) -> Result<CanonicalOp> {
    let basis = CanonicalBasis::new(code, op.kind);
    let m = oriented_coefficients(op, spec.block);
    let positions = unit_positions(&basis, spec.block, m.cols());
    let target = positions
        .iter()
        .position(|&p| p == spec.alpha)
        .ok_or_else(|| {
            Error::InvalidDeformation(format!("alpha {} carries no unit vector", spec.alpha))
        })?;
    let c = activation(&m, &positions, &spec.codeword);
    let mut out = BitMatrix::zeros(m.rows(), m.cols());
    for t in c.ones_iter() {
        out.set(t, target, true);
    }
    let out = match spec.axis {
        Axis::Col => out,
        Axis::Row => out.transpose(),
    };
    let (lambda, kappa) = match spec.block {
        Block::VV => (out, BitMatrix::zeros(op.kappa.rows(), op.kappa.cols())),
        Block::CC => (BitMatrix::zeros(op.lambda.rows(), op.lambda.cols()), out),
    };
    compose_canonical(code, &basis, lambda, kappa)
}

/// Whether all nonzero coefficients of `op` share one unit vector, so the
/// operator is `x̄ ⊗ y` for a single unit `y` and a codeword `x̄`.
pub fn is_line_operator(op: &CanonicalOp) -> bool {
    let Ok(block) = block_for(op) else {
        return false;
    };
    let other = match block {
        Block::VV => &op.kappa,
        Block::CC => &op.lambda,
    };
    if !other.is_zero() {
        return false;
    }
    let m = oriented_coefficients(op, block);
    (0..m.cols()).filter(|&u| !m.column(u).is_zero()).count() == 1
}
