//! Explicit paths: the line sweeps behind the upper bound and the
//! generator-by-generator route to a stabilizer.

use serde::Serialize;

use super::{classical_barrier_to, energy_quantum, PathRecord};
use crate::codes::ClassicalCode;
use crate::error::{Error, Result};
use crate::f2::BitVec;
use crate::hgp::{Block, HgpCode};
use crate::logicals::{CanonicalBasis, CanonicalOp, PauliKind, PauliVec};

/// The parent code whose energy governs a line of the given block:
/// `H1` and `H2ᵀ` for Z-type, `H2` and `H1ᵀ` for X-type.
pub fn line_code(code: &HgpCode, kind: PauliKind, block: Block) -> &ClassicalCode {
    match (kind, block) {
        (PauliKind::Z, Block::VV) => code.h1(),
        (PauliKind::Z, Block::CC) => code.h2_transpose(),
        (PauliKind::X, Block::VV) => code.h2(),
        (PauliKind::X, Block::CC) => code.h1_transpose(),
    }
}

/// Qubit holding bit `i` of a line at position `pos`. Z-type lines run down
/// VV columns and along CC rows; X-type lines the other way round.
pub fn line_qubit(
    code: &HgpCode,
    kind: PauliKind,
    block: Block,
    pos: usize,
    i: usize,
) -> Result<usize> {
    match (kind, block) {
        (PauliKind::Z, Block::VV) => code.qubit_index(Block::VV, i, pos),
        (PauliKind::Z, Block::CC) => code.qubit_index(Block::CC, pos, i),
        (PauliKind::X, Block::VV) => code.qubit_index(Block::VV, pos, i),
        (PauliKind::X, Block::CC) => code.qubit_index(Block::CC, i, pos),
    }
}

/// Lifts the classical minimax witness for `codeword` onto one line of the
/// product. Every state is `codeword_i ⊗ e_pos` (or its mirror), so the energy
/// along the line equals the classical energy.
pub fn line_sweep_path(
    code: &HgpCode,
    kind: PauliKind,
    block: Block,
    codeword: &BitVec,
    pos: usize,
    cap: u64,
) -> Result<PathRecord<PauliVec>> {
    let parent = line_code(code, kind, block);
    let classical = classical_barrier_to(parent, codeword, cap)?;
    let n = code.num_qubits();
    let mut states = Vec::with_capacity(classical.witness.states.len());
    for bits in &classical.witness.states {
        let mut v = BitVec::zeros(n);
        for i in bits.ones_iter() {
            v.set(line_qubit(code, kind, block, pos, i)?, true);
        }
        states.push(PauliVec::pure(kind, v));
    }
    let energies = states
        .iter()
        .map(|s| energy_quantum(code, s))
        .collect::<Result<Vec<_>>>()?;
    Ok(PathRecord::new(states, energies))
}

/// Sweep path for an elementary canonical operator.
pub fn sweep_path_for_canonical(
    code: &HgpCode,
    op: &CanonicalOp,
    cap: u64,
) -> Result<PathRecord<PauliVec>> {
    let block = op.elementary_block().ok_or(Error::NotElementary)?;
    let basis = CanonicalBasis::new(code, op.kind);
    let m = match block {
        Block::VV => &op.lambda,
        Block::CC => &op.kappa,
    };
    let (row, col) = (0..m.rows())
        .flat_map(|r| m.row(r).ones_iter().map(move |c| (r, c)))
        .next()
        .expect("elementary has one coefficient");
    let (codeword, pos) = match (op.kind, block) {
        (PauliKind::Z, Block::VV) => (&basis.vv_left[row], basis.vv_unit_position(col)),
        (PauliKind::Z, Block::CC) => (&basis.cc_right[col], basis.cc_unit_position(row)),
        (PauliKind::X, Block::VV) => (&basis.vv_right[col], basis.vv_unit_position(row)),
        (PauliKind::X, Block::CC) => (&basis.cc_left[row], basis.cc_unit_position(col)),
    };
    line_sweep_path(code, op.kind, block, codeword, pos, cap)
}

/// Generator-by-generator path to a stabilizer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilizerPath {
    pub path: PathRecord<PauliVec>,
    /// Energy after each applied generator.
    pub baselines: Vec<usize>,
}

/// Applies the generators selected by `combo` (HX rows first, then HZ rows)
/// one qubit at a time in ascending order.
pub fn stabilizer_path(code: &HgpCode, s: &PauliVec, combo: &BitVec) -> Result<StabilizerPath> {
    let (nx, nz) = (code.hx().rows(), code.hz().rows());
    if combo.len() != nx + nz {
        return Err(Error::dims(format!(
            "generator selection has length {}, expected {}",
            combo.len(),
            nx + nz
        )));
    }
    let n = code.num_qubits();
    if s.num_qubits() != n {
        return Err(Error::dims("stabilizer length differs from the code"));
    }
    let mut product = PauliVec::identity(n);
    for g in combo.ones_iter() {
        if g < nx {
            product.x.xor_assign(code.hx().row(g));
        } else {
            product.z.xor_assign(code.hz().row(g - nx));
        }
    }
    if &product != s {
        return Err(Error::NotAStabilizer);
    }
    let mut cur = PauliVec::identity(n);
    let mut states = vec![cur.clone()];
    let mut baselines = Vec::new();
    for g in combo.ones_iter() {
        let (kind, row) = if g < nx {
            (PauliKind::X, code.hx().row(g))
        } else {
            (PauliKind::Z, code.hz().row(g - nx))
        };
        for q in row.ones_iter() {
            cur.part_mut(kind).flip(q);
            states.push(cur.clone());
        }
        baselines.push(energy_quantum(code, &cur)?);
    }
    let energies = states
        .iter()
        .map(|p| energy_quantum(code, p))
        .collect::<Result<Vec<_>>>()?;
    Ok(StabilizerPath {
        path: PathRecord::new(states, energies),
        baselines,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{open_repetition, ring_repetition};
    use crate::f2::BitMatrix;
    use crate::logicals::{canonical_x_basis, canonical_z_basis, compose_canonical};

    fn toric() -> HgpCode {
        HgpCode::build(&ring_repetition(3), &ring_repetition(3))
    }

    #[test]
    fn toric_sweep() {
        let t = toric();
        let ops = canonical_z_basis(&t).unwrap();
        let p = sweep_path_for_canonical(&t, &ops[0], 1 << 10).unwrap();
        assert_eq!(p.num_steps(), 3);
        assert_eq!(p.max_energy, 2);
        assert_eq!(p.endpoint(), &ops[0].realized);
        assert_eq!(p.first_bad_step(), None);
        for op in canonical_x_basis(&t).unwrap() {
            let p = sweep_path_for_canonical(&t, &op, 1 << 10).unwrap();
            assert_eq!((p.max_energy, p.endpoint()), (2, &op.realized));
        }
    }

    #[test]
    fn surface_sweep() {
        let s = HgpCode::build(&open_repetition(3), &open_repetition(3));
        let op = &canonical_z_basis(&s).unwrap()[0];
        assert_eq!(
            sweep_path_for_canonical(&s, op, 1 << 10)
                .unwrap()
                .max_energy,
            1
        );
    }

    #[test]
    fn non_elementary_rejected() {
        let t = toric();
        let basis = CanonicalBasis::new(&t, PauliKind::Z);
        let zero =
            compose_canonical(&t, &basis, BitMatrix::zeros(1, 1), BitMatrix::zeros(1, 1)).unwrap();
        assert_eq!(
            sweep_path_for_canonical(&t, &zero, 1 << 10),
            Err(Error::NotElementary)
        );
        let two =
            compose_canonical(&t, &basis, BitMatrix::identity(1), BitMatrix::identity(1)).unwrap();
        assert_eq!(
            sweep_path_for_canonical(&t, &two, 1 << 10),
            Err(Error::NotElementary)
        );
    }

    #[test]
    fn stabilizer_path_examples() {
        let t = toric();
        let nx = t.hx().rows();
        let total = nx + t.hz().rows();
        let combo = BitVec::unit(total, 0);
        let s = PauliVec::from_x(t.hx().row(0).clone());
        let sp = stabilizer_path(&t, &s, &combo).unwrap();
        assert_eq!(sp.path.max_energy, 4);
        assert_eq!(sp.baselines, vec![0]);
        let empty = stabilizer_path(&t, &PauliVec::identity(18), &BitVec::zeros(total)).unwrap();
        assert_eq!((empty.path.max_energy, empty.path.num_steps()), (0, 0));
        assert_eq!(
            stabilizer_path(&t, &PauliVec::identity(18), &combo),
            Err(Error::NotAStabilizer)
        );
    }

    #[test]
    fn disjoint_plaquettes() {
        let t = toric();
        let nx = t.hx().rows();
        let total = nx + t.hz().rows();
        // Two Z generators with disjoint supports.
        let (a, b) = (0..t.hz().rows())
            .flat_map(|a| (a + 1..t.hz().rows()).map(move |b| (a, b)))
            .find(|&(a, b)| t.hz().row(a).xor(t.hz().row(b)).weight() == 8)
            .unwrap();
        let combo = BitVec::from_indices(total, [nx + a, nx + b]);
        let s = PauliVec::from_z(t.hz().row(a).xor(t.hz().row(b)));
        let sp = stabilizer_path(&t, &s, &combo).unwrap();
        assert_eq!(sp.path.max_energy, 4);
        assert_eq!(sp.baselines, vec![0, 0]);
    }
}
