//! Pauli operators in symplectic form and the canonical logical bases of a
//! hypergraph product code.
//!
//! Canonical Z logicals are sums of `x̄_k ⊗ y_j` on the bit-bit block and
//! `a_ℓ ⊗ b̄_m` on the check-check block, where `x̄_k` spans `ker H1`, `b̄_m`
//! spans `ker H2ᵀ`, and `y_j`, `a_ℓ` are unit vectors at the free columns of
//! `rref(H2)` and `rref(H1ᵀ)`. The free-column choice keeps `y_j ∉ Im(H2ᵀ)` and
//! `a_ℓ ∉ Im(H1)` and makes the set complete.
//!
//! X logicals mirror this: `u_i ⊗ x̄'_j` on the bit-bit block with `u_i` a unit
//! vector at a free column of `rref(H1)` and `x̄'_j ∈ ker H2`, and `ā_ℓ ⊗ e_m`
//! on the check-check block with `ā_ℓ ∈ ker H1ᵀ` and `e_m` at a free column of
//! `rref(H2ᵀ)`. In both sectors `lambda` is `k1×k2` and `kappa` is `k1ᵀ×k2ᵀ`.

use std::fmt;

use serde::Serialize;

use crate::error::{ensure_within_cap, Error, Result};
use crate::f2::{BitMatrix, BitVec, Rref};
use crate::hgp::{Block, HgpCode};

/// Which Pauli type an operator or search sector uses.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum PauliKind {
    X,
    Z,
}

impl PauliKind {
    pub fn other(self) -> PauliKind {
        match self {
            PauliKind::X => PauliKind::Z,
            PauliKind::Z => PauliKind::X,
        }
    }
}

impl fmt::Display for PauliKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PauliKind::X => "X",
            PauliKind::Z => "Z",
        })
    }
}

/// A Pauli operator on `N` qubits as `(x | z)`, phases dropped.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliVec {
    pub x: BitVec,
    pub z: BitVec,
}

impl PauliVec {
    pub fn identity(n: usize) -> Self {
        Self {
            x: BitVec::zeros(n),
            z: BitVec::zeros(n),
        }
    }

    pub fn from_z(z: BitVec) -> Self {
        Self {
            x: BitVec::zeros(z.len()),
            z,
        }
    }

    pub fn from_x(x: BitVec) -> Self {
        Self {
            z: BitVec::zeros(x.len()),
            x,
        }
    }

    /// A pure operator of the given kind.
    pub fn pure(kind: PauliKind, bits: BitVec) -> Self {
        match kind {
            PauliKind::X => Self::from_x(bits),
            PauliKind::Z => Self::from_z(bits),
        }
    }

    pub fn part(&self, kind: PauliKind) -> &BitVec {
        match kind {
            PauliKind::X => &self.x,
            PauliKind::Z => &self.z,
        }
    }

    pub fn part_mut(&mut self, kind: PauliKind) -> &mut BitVec {
        match kind {
            PauliKind::X => &mut self.x,
            PauliKind::Z => &mut self.z,
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.x.len()
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.num_qubits())
            .filter(|&q| self.x.get(q) || self.z.get(q))
            .collect()
    }

    pub fn weight(&self) -> usize {
        self.support().len()
    }

    /// Product up to phase.
    pub fn mul(&self, other: &PauliVec) -> PauliVec {
        PauliVec {
            x: self.x.xor(&other.x),
            z: self.z.xor(&other.z),
        }
    }

    /// `I`, `X`, `Y` or `Z` at qubit `q`.
    pub fn letter(&self, q: usize) -> char {
        match (self.x.get(q), self.z.get(q)) {
            (false, false) => 'I',
            (true, false) => 'X',
            (true, true) => 'Y',
            (false, true) => 'Z',
        }
    }

    /// Qubits where the single-qubit factors differ.
    pub fn differing_qubits(&self, other: &PauliVec) -> Vec<usize> {
        let dx = self.x.xor(&other.x);
        let dz = self.z.xor(&other.z);
        (0..self.num_qubits())
            .filter(|&q| dx.get(q) || dz.get(q))
            .collect()
    }

    pub fn commutes_with(&self, other: &PauliVec) -> bool {
        self.x.dot(&other.z) == self.z.dot(&other.x)
    }
}

impl fmt::Display for PauliVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in 0..self.num_qubits() {
            write!(f, "{}", self.letter(q))?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliVec({self})")
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum PauliClass {
    Identity,
    Stabilizer,
    NontrivialLogical,
    NonCommuting,
}

/// Check matrix that detects errors of type `kind`: `HX` sees Z errors, `HZ` sees X errors.
pub fn detecting_checks(code: &HgpCode, kind: PauliKind) -> &BitMatrix {
    match kind {
        PauliKind::Z => code.hx(),
        PauliKind::X => code.hz(),
    }
}

/// Stabilizer generators of the same type as `kind`.
pub fn same_type_checks(code: &HgpCode, kind: PauliKind) -> &BitMatrix {
    match kind {
        PauliKind::Z => code.hz(),
        PauliKind::X => code.hx(),
    }
}

pub fn classify(code: &HgpCode, p: &PauliVec) -> Result<PauliClass> {
    if p.num_qubits() != code.num_qubits() {
        return Err(Error::dims(format!(
            "Pauli on {} qubits for a code on {}",
            p.num_qubits(),
            code.num_qubits()
        )));
    }
    if !code.hx().mul_vec(&p.z)?.is_zero() || !code.hz().mul_vec(&p.x)?.is_zero() {
        return Ok(PauliClass::NonCommuting);
    }
    if p.is_identity() {
        return Ok(PauliClass::Identity);
    }
    if code.hx().in_row_space(&p.x)? && code.hz().in_row_space(&p.z)? {
        Ok(PauliClass::Stabilizer)
    } else {
        Ok(PauliClass::NontrivialLogical)
    }
}

/// The vectors from which canonical operators of one kind are assembled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalBasis {
    pub kind: PauliKind,
    /// Length-`n1` factors of bit-bit terms, indexed by the rows of `lambda`.
    pub vv_left: Vec<BitVec>,
    /// Length-`n2` factors of bit-bit terms, indexed by the columns of `lambda`.
    pub vv_right: Vec<BitVec>,
    /// Length-`r1` factors of check-check terms, indexed by the rows of `kappa`.
    pub cc_left: Vec<BitVec>,
    /// Length-`r2` factors of check-check terms, indexed by the columns of `kappa`.
    pub cc_right: Vec<BitVec>,
}

fn free_units(rref: &Rref) -> Vec<BitVec> {
    let n = rref.rref.cols();
    rref.free_cols()
        .into_iter()
        .map(|c| BitVec::unit(n, c))
        .collect()
}

impl CanonicalBasis {
    pub fn new(code: &HgpCode, kind: PauliKind) -> Self {
        let (h1, h2, h1t, h2t) = (
            code.h1(),
            code.h2(),
            code.h1_transpose(),
            code.h2_transpose(),
        );
        match kind {
            PauliKind::Z => Self {
                kind,
                vv_left: h1.kernel_basis().to_vec(),
                vv_right: free_units(&h2.matrix().rref()),
                cc_left: free_units(&h1t.matrix().rref()),
                cc_right: h2t.kernel_basis().to_vec(),
            },
            PauliKind::X => Self {
                kind,
                vv_left: free_units(&h1.matrix().rref()),
                vv_right: h2.kernel_basis().to_vec(),
                cc_left: h1t.kernel_basis().to_vec(),
                cc_right: free_units(&h2t.matrix().rref()),
            },
        }
    }

    pub fn lambda_shape(&self) -> (usize, usize) {
        (self.vv_left.len(), self.vv_right.len())
    }

    pub fn kappa_shape(&self) -> (usize, usize) {
        (self.cc_left.len(), self.cc_right.len())
    }

    pub fn num_logicals(&self) -> usize {
        let (a, b) = self.lambda_shape();
        let (c, d) = self.kappa_shape();
        a * b + c * d
    }

    /// Position of the unit vector for a bit-bit term: the column of the VV grid
    /// for Z-type, the row for X-type.
    pub fn vv_unit_position(&self, index: usize) -> usize {
        let unit = match self.kind {
            PauliKind::Z => &self.vv_right[index],
            PauliKind::X => &self.vv_left[index],
        };
        unit.ones_iter().next().expect("unit vector")
    }

    /// Position of the unit vector for a check-check term: the row of the CC
    /// grid for Z-type, the column for X-type.
    pub fn cc_unit_position(&self, index: usize) -> usize {
        let unit = match self.kind {
            PauliKind::Z => &self.cc_left[index],
            PauliKind::X => &self.cc_right[index],
        };
        unit.ones_iter().next().expect("unit vector")
    }
}

/// A canonical logical operator with its coefficients and realized Pauli.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalOp {
    pub kind: PauliKind,
    pub lambda: BitMatrix,
    pub kappa: BitMatrix,
    pub realized: PauliVec,
}

/// Alias kept for the common case.
pub type CanonicalZOp = CanonicalOp;

impl CanonicalOp {
    pub fn coefficient_count(&self) -> usize {
        self.lambda.weight() + self.kappa.weight()
    }

    pub fn is_elementary(&self) -> bool {
        self.coefficient_count() == 1
    }

    pub fn is_trivial(&self) -> bool {
        self.coefficient_count() == 0
    }

    /// The block that an elementary operator lives on.
    pub fn elementary_block(&self) -> Option<Block> {
        if !self.is_elementary() {
            None
        } else if self.lambda.is_zero() {
            Some(Block::CC)
        } else {
            Some(Block::VV)
        }
    }
}

fn coefficient_matrix(what: &str, m: &BitMatrix, shape: (usize, usize)) -> Result<()> {
    if (m.rows(), m.cols()) != shape {
        return Err(Error::ShapeMismatch(format!(
            "{what} is {}x{}, expected {}x{}",
            m.rows(),
            m.cols(),
            shape.0,
            shape.1
        )));
    }
    Ok(())
}

/// Realizes `Σ λ_kj left_k ⊗ right_j` on the bit-bit block and
/// `Σ κ_ℓm left_ℓ ⊗ right_m` on the check-check block.
pub fn compose_canonical(
    code: &HgpCode,
    basis: &CanonicalBasis,
    lambda: BitMatrix,
    kappa: BitMatrix,
) -> Result<CanonicalOp> {
    coefficient_matrix("lambda", &lambda, basis.lambda_shape())?;
    coefficient_matrix("kappa", &kappa, basis.kappa_shape())?;
    let mut vv = BitVec::zeros(code.vv_len());
    for (k, row) in lambda.row_iter().enumerate() {
        for j in row.ones_iter() {
            vv.xor_assign(&basis.vv_left[k].kron(&basis.vv_right[j]));
        }
    }
    let mut cc = BitVec::zeros(code.cc_len());
    for (l, row) in kappa.row_iter().enumerate() {
        for m in row.ones_iter() {
            cc.xor_assign(&basis.cc_left[l].kron(&basis.cc_right[m]));
        }
    }
    Ok(CanonicalOp {
        kind: basis.kind,
        lambda,
        kappa,
        realized: PauliVec::pure(basis.kind, vv.concat(&cc)),
    })
}

/// All elementary canonical operators of one kind: bit-bit terms first
/// (row-major over `lambda`), then check-check terms.
pub fn canonical_basis_ops(code: &HgpCode, kind: PauliKind) -> Result<Vec<CanonicalOp>> {
    let basis = CanonicalBasis::new(code, kind);
    if basis.num_logicals() == 0 {
        return Err(Error::NoLogicals);
    }
    let (lr, lc) = basis.lambda_shape();
    let (kr, kc) = basis.kappa_shape();
    let mut out = Vec::with_capacity(basis.num_logicals());
    for k in 0..lr {
        for j in 0..lc {
            let mut lambda = BitMatrix::zeros(lr, lc);
            lambda.set(k, j, true);
            out.push(compose_canonical(
                code,
                &basis,
                lambda,
                BitMatrix::zeros(kr, kc),
            )?);
        }
    }
    for l in 0..kr {
        for m in 0..kc {
            let mut kappa = BitMatrix::zeros(kr, kc);
            kappa.set(l, m, true);
            out.push(compose_canonical(
                code,
                &basis,
                BitMatrix::zeros(lr, lc),
                kappa,
            )?);
        }
    }
    Ok(out)
}

pub fn canonical_z_basis(code: &HgpCode) -> Result<Vec<CanonicalOp>> {
    canonical_basis_ops(code, PauliKind::Z)
}

pub fn canonical_x_basis(code: &HgpCode) -> Result<Vec<CanonicalOp>> {
    canonical_basis_ops(code, PauliKind::X)
}

/// Every nonzero coefficient choice, in order of the combination index over
/// the elementary operators. Fails when `2^k > cap`.
pub fn all_canonical_ops(code: &HgpCode, kind: PauliKind, cap: u64) -> Result<Vec<CanonicalOp>> {
    let basis = CanonicalBasis::new(code, kind);
    let k = basis.num_logicals();
    if k == 0 {
        return Err(Error::NoLogicals);
    }
    ensure_within_cap(k, cap)?;
    let (lr, lc) = basis.lambda_shape();
    let (kr, kc) = basis.kappa_shape();
    let mut out = Vec::new();
    for combo in 1u64..(1u64 << k) {
        let mut lambda = BitMatrix::zeros(lr, lc);
        let mut kappa = BitMatrix::zeros(kr, kc);
        for bit in 0..k {
            if combo >> bit & 1 == 1 {
                if bit < lr * lc {
                    lambda.set(bit / lc, bit % lc, true);
                } else {
                    let b = bit - lr * lc;
                    kappa.set(b / kc, b % kc, true);
                }
            }
        }
        out.push(compose_canonical(code, &basis, lambda, kappa)?);
    }
    Ok(out)
}

/// Iterator over `ker(detecting) \ rowspace(same_type)` for one kind.
pub struct LogicalIter {
    kind: PauliKind,
    kernel: Vec<BitVec>,
    stabilizers: Rref,
    current: BitVec,
    next_index: u64,
    total: u64,
}

impl Iterator for LogicalIter {
    type Item = PauliVec;

    fn next(&mut self) -> Option<PauliVec> {
        while self.next_index < self.total {
            let i = self.next_index;
            self.next_index += 1;
            if i > 0 {
                self.current
                    .xor_assign(&self.kernel[i.trailing_zeros() as usize]);
            }
            if !self.stabilizers.contains(&self.current) {
                return Some(PauliVec::pure(self.kind, self.current.clone()));
            }
        }
        None
    }
}

/// Enumerates all nontrivial logical operators of one pure kind in Gray-code
/// order over a kernel basis. Fails when the kernel has more than `cap` elements.
pub fn enumerate_logicals(code: &HgpCode, kind: PauliKind, cap: u64) -> Result<LogicalIter> {
    let kernel = detecting_checks(code, kind).kernel_basis();
    ensure_within_cap(kernel.len(), cap)?;
    Ok(LogicalIter {
        kind,
        total: 1u64 << kernel.len(),
        kernel,
        stabilizers: same_type_checks(code, kind).rref(),
        current: BitVec::zeros(code.num_qubits()),
        next_index: 0,
    })
}

pub fn enumerate_z_logicals(code: &HgpCode, cap: u64) -> Result<LogicalIter> {
    enumerate_logicals(code, PauliKind::Z, cap)
}
