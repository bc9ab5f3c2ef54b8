use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::VerifyReport;
use crate::barrier::{
    classical_barrier, energy_quantum, line_sweep_path, quantum_barrier, sector_barrier_within,
    stabilizer_path, PathRecord, PauliField, Sector, SectorField, SectorPair,
};
use crate::codes::{ClassicalCode, ExtNat};
use crate::deform::{
    deform_path, deformation_trace, find_activating_codeword, is_line_operator, predicted_endpoint,
    weight_reduction_gap, Axis,
};
use crate::error::{Error, Result};
use crate::f2::{BitMatrix, BitVec};
use crate::hgp::{Block, HgpCode};
use crate::logicals::{
    all_canonical_ops, canonical_basis_ops, classify, enumerate_logicals, CanonicalBasis,
    CanonicalOp, PauliClass, PauliKind, PauliVec,
};

const KINDS: [PauliKind; 2] = [PauliKind::Z, PauliKind::X];
const BLOCKS: [Block; 2] = [Block::VV, Block::CC];

/// Largest generator count enumerated exhaustively by the stabilizer check.
const LEMMA1_EXHAUSTIVE_GENERATORS: usize = 20;
const LEMMA1_SAMPLES: usize = 4096;

fn css_gate(code: &HgpCode, report: &mut VerifyReport) -> bool {
    match code.css_violation() {
        None => true,
        Some((i, j)) => {
            let x_check = PauliVec::from_x(code.hx().row(i).clone());
            report.fail(json!({
                "reason": "X and Z checks anticommute",
                "x_check": i,
                "z_check": j,
                "x_row": code.hx().row(i),
                "z_row": code.hz().row(j),
                "x_check_energy": energy_quantum(code, &x_check).unwrap_or(0),
            }));
            false
        }
    }
}

fn sparsity_product(code: &HgpCode) -> usize {
    let (wc, wq) = code.sparsity();
    wc * wq
}

/// `HX·HZᵀ = 0`.
pub fn check_css(code: &HgpCode, instance: &str) -> VerifyReport {
    let mut r = VerifyReport::new("css", instance);
    r.measure("x_checks", code.hx().rows());
    r.measure("z_checks", code.hz().rows());
    r.measure("qubits", code.num_qubits());
    css_gate(code, &mut r);
    r
}

/// Rows of `m` that are linearly independent, chosen greedily from the top.
fn independent_rows(m: &BitMatrix) -> Vec<usize> {
    let mut chosen: Vec<BitVec> = Vec::new();
    let mut out = Vec::new();
    for (i, row) in m.row_iter().enumerate() {
        let mut trial = chosen.clone();
        trial.push(row.clone());
        let mat = BitMatrix::from_rows(m.cols(), trial.clone()).expect("same width");
        if mat.rank() == trial.len() {
            chosen = trial;
            out.push(i);
        }
    }
    out
}

/// Generators as `(global index, Pauli)`; HX rows come before HZ rows.
fn independent_generators(code: &HgpCode) -> Vec<(usize, PauliVec)> {
    let nx = code.hx().rows();
    let mut gens: Vec<(usize, PauliVec)> = independent_rows(code.hx())
        .into_iter()
        .map(|i| (i, PauliVec::from_x(code.hx().row(i).clone())))
        .collect();
    gens.extend(
        independent_rows(code.hz())
            .into_iter()
            .map(|i| (nx + i, PauliVec::from_z(code.hz().row(i).clone()))),
    );
    gens
}

fn combo_product(code: &HgpCode, gens: &[(usize, PauliVec)], mask: u64) -> (PauliVec, BitVec) {
    let mut s = PauliVec::identity(code.num_qubits());
    let mut combo = BitVec::zeros(code.hx().rows() + code.hz().rows());
    for (b, (g, p)) in gens.iter().enumerate() {
        if mask >> b & 1 == 1 {
            s = s.mul(p);
            combo.set(*g, true);
        }
    }
    (s, combo)
}

/// Every stabilizer has barrier at most `w_c·w_q`. Exhaustive over the
/// stabilizer group when it has at most `2^20` elements, sampled otherwise.
pub fn check_lemma1(code: &HgpCode, instance: &str, cap: u64) -> Result<VerifyReport> {
    let mut r = VerifyReport::new("lemma1", instance);
    if !css_gate(code, &mut r) {
        return Ok(r);
    }
    let bound = sparsity_product(code);
    let (wc, wq) = code.sparsity();
    r.measure("w_c", wc);
    r.measure("w_q", wq);
    r.measure("bound", bound);
    let pair = SectorPair::new(code, cap)?;
    let gens = independent_generators(code);
    let exhaustive = gens.len() <= LEMMA1_EXHAUSTIVE_GENERATORS;
    let masks: Vec<u64> = if exhaustive {
        (0..1u64 << gens.len()).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        (0..LEMMA1_SAMPLES)
            .map(|_| rng.gen::<u64>() & ((1u64 << gens.len()) - 1))
            .collect()
    };
    let mut worst = (0usize, 0u64);
    for &mask in &masks {
        let (s, _) = combo_product(code, &gens, mask);
        let v = pair.value(&s)?;
        if v > worst.0 || (v == worst.0 && mask < worst.1) {
            worst = (v, mask);
        }
        if v > bound {
            r.fail(json!({
                "stabilizer": s.to_string(),
                "barrier": v,
                "bound": bound,
                "path": pair.path_to(code, &s)?,
            }));
        }
    }
    let (s, combo) = combo_product(code, &gens, worst.1);
    let constructive = stabilizer_path(code, &s, &combo)?;
    if constructive.path.max_energy > bound {
        r.fail(json!({
            "stabilizer": s.to_string(),
            "constructive_max": constructive.path.max_energy,
            "bound": bound,
            "path": constructive.path,
        }));
    }
    r.measure("exhaustive", exhaustive);
    r.measure("stabilizers_checked", masks.len());
    r.measure("max_barrier", worst.0);
    r.measure("worst_constructive_max", constructive.path.max_energy);
    r.witness = json!({
        "stabilizer": s.to_string(),
        "exact_path": pair.path_to(code, &s)?,
        "constructive": constructive,
    });
    Ok(r)
}

fn random_canonical_logical(
    code: &HgpCode,
    zs: &[CanonicalOp],
    xs: &[CanonicalOp],
    rng: &mut ChaCha8Rng,
) -> PauliVec {
    loop {
        let mut p = PauliVec::identity(code.num_qubits());
        for op in zs.iter().chain(xs) {
            if rng.gen::<bool>() {
                p = p.mul(&op.realized);
            }
        }
        if !p.is_identity() {
            return p;
        }
    }
}

fn random_stabilizer(code: &HgpCode, rng: &mut ChaCha8Rng) -> PauliVec {
    let mut s = PauliVec::identity(code.num_qubits());
    for row in code.hx().row_iter() {
        if rng.gen::<bool>() {
            s.x.xor_assign(row);
        }
    }
    for row in code.hz().row_iter() {
        if rng.gen::<bool>() {
            s.z.xor_assign(row);
        }
    }
    s
}

/// `Δ(L·s) ≤ max(Δ(L), w_c·w_q)` for sampled logicals `L` (random products
/// of canonical X and Z operators) and stabilizers `s` (uniform generator
/// subsets).
pub fn check_theorem1(
    code: &HgpCode,
    instance: &str,
    samples: usize,
    seed: u64,
    cap: u64,
) -> Result<VerifyReport> {
    let mut r = VerifyReport::new("thm1", instance);
    r.seed = Some(seed);
    if !css_gate(code, &mut r) {
        return Ok(r);
    }
    let zs = canonical_basis_ops(code, PauliKind::Z)?;
    let xs = canonical_basis_ops(code, PauliKind::X)?;
    let pair = SectorPair::new(code, cap)?;
    let wcwq = sparsity_product(code);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = 0usize;
    let mut max_l = 0;
    let mut max_ls = 0;
    let mut equal = 0usize;
    for _ in 0..samples {
        let l = random_canonical_logical(code, &zs, &xs, &mut rng);
        let s = random_stabilizer(code, &mut rng);
        let ls = l.mul(&s);
        let (dl, dls) = (pair.value(&l)?, pair.value(&ls)?);
        max_l = max_l.max(dl);
        max_ls = max_ls.max(dls);
        equal += usize::from(dl == dls);
        if dls > dl.max(wcwq) {
            violations += 1;
            r.fail(json!({
                "logical": l.to_string(),
                "stabilizer": s.to_string(),
                "delta_l": dl,
                "delta_ls": dls,
                "bound": dl.max(wcwq),
                "path_ls": pair.path_to(code, &ls)?,
            }));
        }
    }
    r.measure("samples", samples);
    r.measure("w_c_w_q", wcwq);
    r.measure("max_delta_l", max_l);
    r.measure("max_delta_ls", max_ls);
    r.measure("equal_pairs", equal);
    r.measure("violations", violations);
    Ok(r)
}

/// Fixed family of 2×3 parity-check matrices, including rank-deficient and
/// zero-row cases.
pub fn lemma4_family() -> Vec<BitMatrix> {
    vec![
        BitMatrix::from_nested(&[&[1, 1, 0], &[0, 1, 1]]),
        BitMatrix::from_nested(&[&[1, 1, 1], &[1, 1, 0]]),
        BitMatrix::from_nested(&[&[1, 0, 0], &[0, 1, 1]]),
        BitMatrix::from_nested(&[&[1, 1, 0], &[1, 1, 0]]),
        BitMatrix::from_nested(&[&[0, 0, 0], &[1, 0, 1]]),
        BitMatrix::from_nested(&[&[1, 1, 1], &[0, 0, 0]]),
    ]
}

fn matrix_from_bits(rows: usize, cols: usize, bits: u64) -> BitMatrix {
    let mut m = BitMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            if bits >> (i * cols + j) & 1 == 1 {
                m.set(i, j, true);
            }
        }
    }
    m
}

/// `wt(H1·Z1·L) ≤ wt(H1·Z1 + Z2·H2)` for every pair from `family`, every
/// `Z1`, every `Z2` and every nonzero codeword `L` of `H2`.
pub fn check_lemma4(family: &[BitMatrix]) -> VerifyReport {
    let mut r = VerifyReport::new("lemma4", "family-2x3");
    let mut cases = 0u64;
    let mut tight = 0u64;
    let mut violations = 0u64;
    for m1 in family {
        for m2 in family {
            let h1 = ClassicalCode::from_matrix(m1.clone()).expect("non-empty");
            let h2 = ClassicalCode::from_matrix(m2.clone()).expect("non-empty");
            let code = HgpCode::build(&h1, &h2);
            let words: Vec<BitVec> = h2.codewords().skip(1).collect();
            let (n1, n2, r1, r2) = (code.n1(), code.n2(), code.r1(), code.r2());
            for b1 in 0..1u64 << (n1 * n2) {
                let z1 = matrix_from_bits(n1, n2, b1);
                for b2 in 0..1u64 << (r1 * r2) {
                    let z2 = matrix_from_bits(r1, r2, b2);
                    for w in &words {
                        let (lhs, rhs) =
                            weight_reduction_gap(&code, &z1, &z2, w).expect("shapes fixed");
                        cases += 1;
                        tight += u64::from(lhs == rhs);
                        if lhs > rhs {
                            violations += 1;
                            r.fail(json!({
                                "h1": m1.to_string(),
                                "h2": m2.to_string(),
                                "z1": z1.to_string(),
                                "z2": z2.to_string(),
                                "codeword": w,
                                "lhs": lhs,
                                "rhs": rhs,
                            }));
                        }
                    }
                }
            }
        }
    }
    r.measure("family_size", family.len());
    r.measure("cases", cases);
    r.measure("tight_cases", tight);
    r.measure("violations", violations);
    r
}

/// A line operator `codeword ⊗ e_pos` (or its mirror) with the qubits of its line.
struct LineOp {
    block: Block,
    pos: usize,
    codeword: BitVec,
    line: Vec<usize>,
    op: PauliVec,
}

fn line_ops(code: &HgpCode, kind: PauliKind) -> Result<Vec<LineOp>> {
    let basis = CanonicalBasis::new(code, kind);
    let mut out = Vec::new();
    for block in BLOCKS {
        let (units, kernel) = match block {
            Block::VV => {
                let (a, b) = basis.lambda_shape();
                if kind == PauliKind::Z {
                    (b, a)
                } else {
                    (a, b)
                }
            }
            Block::CC => {
                let (a, b) = basis.kappa_shape();
                if kind == PauliKind::Z {
                    (a, b)
                } else {
                    (b, a)
                }
            }
        };
        if units == 0 || kernel == 0 {
            continue;
        }
        let parent = crate::barrier::line_code(code, kind, block);
        for u in 0..units {
            let pos = match block {
                Block::VV => basis.vv_unit_position(u),
                Block::CC => basis.cc_unit_position(u),
            };
            let line: Vec<usize> = (0..parent.n())
                .map(|i| crate::barrier::line_qubit(code, kind, block, pos, i))
                .collect::<Result<_>>()?;
            for codeword in parent.codewords().skip(1) {
                let mut v = BitVec::zeros(code.num_qubits());
                for i in codeword.ones_iter() {
                    v.set(line[i], true);
                }
                out.push(LineOp {
                    block,
                    pos,
                    codeword,
                    line: line.clone(),
                    op: PauliVec::pure(kind, v),
                });
            }
        }
    }
    Ok(out)
}

/// For every line operator `x̄ ⊗ e_α`, the unrestricted barrier equals the
/// barrier over paths confined to its line.
pub fn check_lemma2(code: &HgpCode, instance: &str, cap: u64) -> Result<VerifyReport> {
    let mut r = VerifyReport::new("lemma2", instance);
    if !css_gate(code, &mut r) {
        return Ok(r);
    }
    let mut checked = 0usize;
    let mut values = Vec::new();
    for kind in KINDS {
        let field = SectorField::new(code, kind, cap)?;
        for l in line_ops(code, kind)? {
            let target = l.op.part(kind);
            let full = field.value(target)?;
            let within = sector_barrier_within(code, kind, &l.line, target, cap)?;
            checked += 1;
            values.push(json!({
                "kind": kind,
                "block": l.block,
                "position": l.pos,
                "codeword": l.codeword,
                "barrier": full,
                "restricted": within.value,
            }));
            if full != within.value {
                r.fail(json!({
                    "operator": l.op.to_string(),
                    "barrier": full,
                    "restricted": within.value,
                    "full_path": field.path_to(target)?,
                    "restricted_path": within.witness,
                }));
            }
        }
    }
    r.measure("line_operators", checked);
    r.witness = Value::Array(values);
    Ok(r)
}

/// Every nontrivial canonical operator has barrier at least the smallest
/// barrier of a line operator. The optimal path of each operator is also
/// deformed with its activating codeword; the deformed path must not cost
/// more and must end at a nontrivial line operator.
pub fn check_lemma3(code: &HgpCode, instance: &str, cap: u64) -> Result<VerifyReport> {
    let mut r = VerifyReport::new("lemma3", instance);
    if !css_gate(code, &mut r) {
        return Ok(r);
    }
    let mut checked = 0usize;
    for kind in KINDS {
        let field = SectorField::new(code, kind, cap)?;
        let mut line_min = usize::MAX;
        for l in line_ops(code, kind)? {
            line_min = line_min.min(field.value(l.op.part(kind))?);
        }
        let mut canon_min = usize::MAX;
        for op in all_canonical_ops(code, kind, cap)? {
            let target = op.realized.part(kind);
            let v = field.value(target)?;
            canon_min = canon_min.min(v);
            checked += 1;
            if v < line_min {
                r.fail(json!({
                    "operator": op.realized.to_string(),
                    "barrier": v,
                    "line_minimum": line_min,
                }));
            }
            let path = field.path_to(target)?;
            let spec = find_activating_codeword(code, &op)?;
            let deformed = deform_path(code, &path, &spec)?;
            let end = deformed.endpoint();
            let ok = deformed.max_energy <= path.max_energy
                && classify(code, end)? == PauliClass::NontrivialLogical
                && is_line_operator(&predicted_endpoint(code, &op, &spec)?)
                && field.value(end.part(kind))? <= deformed.max_energy;
            if !ok {
                r.fail(json!({
                    "operator": op.realized.to_string(),
                    "spec": spec,
                    "original_path": path,
                    "deformed_path": deformed,
                }));
            }
        }
        let key = if kind == PauliKind::Z { "z" } else { "x" };
        r.measure(&format!("{key}_line_minimum"), line_min);
        r.measure(&format!("{key}_canonical_minimum"), canon_min);
    }
    r.measure("canonical_operators", checked);
    Ok(r)
}

fn parent_barrier(c: &ClassicalCode, cap: u64) -> Result<ExtNat> {
    match classical_barrier(c, cap) {
        Ok(b) => Ok(ExtNat::Finite(b.value)),
        Err(Error::NoLogicals) => Ok(ExtNat::Infinite),
        Err(e) => Err(e),
    }
}

/// Parent barriers in the order `Δ(H1), Δ(H2), Δ(H1ᵀ), Δ(H2ᵀ)`.
fn parent_barriers(code: &HgpCode, cap: u64) -> Result<[ExtNat; 4]> {
    Ok([
        parent_barrier(code.h1(), cap)?,
        parent_barrier(code.h2(), cap)?,
        parent_barrier(code.h1_transpose(), cap)?,
        parent_barrier(code.h2_transpose(), cap)?,
    ])
}

/// Predicted canonical barrier of one kind: the smaller of the two line
/// parents, counting a block only when it carries canonical operators.
fn predicted_canonical(code: &HgpCode, kind: PauliKind, parents: &[ExtNat; 4]) -> ExtNat {
    let vv = code.h1().k() * code.h2().k() > 0;
    let cc = code.h1_transpose().k() * code.h2_transpose().k() > 0;
    let (vv_parent, cc_parent) = match kind {
        PauliKind::Z => (parents[0], parents[3]),
        PauliKind::X => (parents[1], parents[2]),
    };
    let a = if vv { vv_parent } else { ExtNat::Infinite };
    let b = if cc { cc_parent } else { ExtNat::Infinite };
    a.min(b)
}

/// Lower bound for canonical operators from the parent codes.
pub fn check_proposition1(code: &HgpCode, instance: &str, cap: u64) -> Result<VerifyReport> {
    let mut r = VerifyReport::new("prop1", instance);
    if !css_gate(code, &mut r) {
        return Ok(r);
    }
    let parents = parent_barriers(code, cap)?;
    for kind in KINDS {
        let field = SectorField::new(code, kind, cap)?;
        let bound = match kind {
            PauliKind::Z => parents[0].min(parents[3]),
            PauliKind::X => parents[1].min(parents[2]),
        };
        let mut min_seen = usize::MAX;
        for op in all_canonical_ops(code, kind, cap)? {
            let v = field.value(op.realized.part(kind))?;
            min_seen = min_seen.min(v);
            if ExtNat::Finite(v) < bound {
                r.fail(json!({
                    "operator": op.realized.to_string(),
                    "barrier": v,
                    "bound": bound,
                    "path": field.path_to(op.realized.part(kind))?,
                }));
            }
        }
        let key = if kind == PauliKind::Z { "z" } else { "x" };
        r.measure(&format!("{key}_bound"), bound);
        r.measure(&format!("{key}_min_canonical"), min_seen);
    }
    Ok(r)
}

/// Quantum barrier against the parent barriers. Hard checks: the canonical Z
/// and X barriers equal their predicted parent minima, the sweep paths attain
/// them, and the full barrier equals the parent minimum whenever that minimum
/// exceeds `w_c·w_q`. Otherwise the full equality is reported only.
pub fn check_main_equality(
    h1: &ClassicalCode,
    h2: &ClassicalCode,
    instance: &str,
    cap: u64,
) -> Result<VerifyReport> {
    let code = HgpCode::build(h1, h2);
    let mut r = VerifyReport::new("main", instance);
    if code.num_logicals() == 0 {
        return Err(Error::NoLogicals);
    }
    if !css_gate(&code, &mut r) {
        return Ok(r);
    }
    let parents = parent_barriers(&code, cap)?;
    let min_parent = parents.iter().copied().min().expect("four values");
    let quantum = quantum_barrier(&code, Sector::Both, cap)?;
    let wcwq = sparsity_product(&code);
    let condition = matches!(min_parent, ExtNat::Finite(v) if v > wcwq);
    r.measure("parent_barriers", parents);
    r.measure("min_parent", min_parent);
    r.measure("quantum_barrier", quantum.value);
    r.measure("w_c_w_q", wcwq);
    r.measure("condition_holds", condition);
    let full_equal = ExtNat::Finite(quantum.value) == min_parent;
    r.measure("full_equality", full_equal);
    let mut canonical = Vec::new();
    for kind in KINDS {
        let field = SectorField::new(&code, kind, cap)?;
        let mut best = usize::MAX;
        for op in all_canonical_ops(&code, kind, cap)? {
            best = best.min(field.value(op.realized.part(kind))?);
        }
        let mut sweep_best = usize::MAX;
        for l in line_ops(&code, kind)? {
            let p = line_sweep_path(&code, kind, l.block, &l.codeword, l.pos, cap)?;
            sweep_best = sweep_best.min(p.max_energy);
        }
        let predicted = predicted_canonical(&code, kind, &parents);
        let key = if kind == PauliKind::Z { "z" } else { "x" };
        r.measure(&format!("canonical_{key}"), best);
        r.measure(&format!("predicted_{key}"), predicted);
        r.measure(&format!("sweep_{key}"), sweep_best);
        if ExtNat::Finite(best) != predicted || sweep_best != best {
            r.fail(json!({
                "kind": kind,
                "canonical_barrier": best,
                "predicted": predicted,
                "sweep_minimum": sweep_best,
            }));
        }
        canonical.push(best);
    }
    if quantum.value > canonical[0].min(canonical[1]) {
        r.fail(json!({
            "reason": "code barrier exceeds a canonical barrier",
            "quantum_barrier": quantum.value,
            "canonical": canonical,
        }));
    }
    if condition && !full_equal {
        r.fail(json!({
            "reason": "condition holds but full equality fails",
            "quantum_barrier": quantum.value,
            "min_parent": min_parent,
            "witness": quantum.witness,
        }));
    }
    r.witness = serde_json::to_value(&quantum).expect("plain data");
    Ok(r)
}

/// A random single-qubit-step path from the identity to `target` with
/// `detours` extra qubit flips that are undone later.
pub fn random_walk_path(
    code: &HgpCode,
    target: &PauliVec,
    detours: usize,
    rng: &mut ChaCha8Rng,
) -> Result<PathRecord<PauliVec>> {
    let n = code.num_qubits();
    let mut flips: Vec<(usize, PauliKind)> = target
        .x
        .ones_iter()
        .map(|q| (q, PauliKind::X))
        .chain(target.z.ones_iter().map(|q| (q, PauliKind::Z)))
        .collect();
    for _ in 0..detours {
        let q = rng.gen_range(0..n);
        let kind = if rng.gen::<bool>() {
            PauliKind::X
        } else {
            PauliKind::Z
        };
        flips.push((q, kind));
        flips.push((q, kind));
    }
    flips.shuffle(rng);
    let mut cur = PauliVec::identity(n);
    let mut states = vec![cur.clone()];
    for (q, kind) in flips {
        cur.part_mut(kind).flip(q);
        states.push(cur.clone());
    }
    let energies = states
        .iter()
        .map(|p| energy_quantum(code, p))
        .collect::<Result<Vec<_>>>()?;
    Ok(PathRecord::new(states, energies).canonicalize())
}

fn on_line(p: &PauliVec, kind: PauliKind, line: &[usize]) -> bool {
    p.part(kind.other()).is_zero() && p.part(kind).ones_iter().all(|q| line.contains(&q))
}

/// Random paths to canonical operators, deformed with an activating codeword:
/// confined to one line, pointwise no more energy, nontrivial line endpoint.
pub fn check_deformation(
    code: &HgpCode,
    instance: &str,
    samples: usize,
    seed: u64,
    cap: u64,
) -> Result<VerifyReport> {
    let mut r = VerifyReport::new("deform", instance);
    r.seed = Some(seed);
    if !css_gate(code, &mut r) {
        return Ok(r);
    }
    let mut ops = all_canonical_ops(code, PauliKind::Z, cap)?;
    ops.extend(all_canonical_ops(code, PauliKind::X, cap)?);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_drop = 0usize;
    for _ in 0..samples {
        let op = &ops[rng.gen_range(0..ops.len())];
        let detours = rng.gen_range(0..=2 * code.num_qubits());
        let path = random_walk_path(code, &op.realized, detours, &mut rng)?;
        let spec = find_activating_codeword(code, op)?;
        let deformed = deform_path(code, &path, &spec)?;
        let trace = deformation_trace(code, &path, &spec)?;
        let predicted = predicted_endpoint(code, op, &spec)?;
        let line: Vec<usize> = (0..code.num_qubits())
            .filter(|&q| {
                let (block, a, b) = code.index_to_block(q).expect("in range");
                block == spec.block
                    && match spec.axis {
                        Axis::Col => b == spec.alpha,
                        Axis::Row => a == spec.alpha,
                    }
            })
            .collect();
        let confined = deformed.states.iter().all(|p| on_line(p, op.kind, &line));
        let dominated = trace.iter().all(|t| t.deformed_energy <= t.original_energy);
        let endpoint_ok = deformed.endpoint() == &predicted.realized
            && classify(code, deformed.endpoint())? == PauliClass::NontrivialLogical
            && is_line_operator(&predicted);
        let steps_ok = deformed.first_bad_step().is_none();
        max_drop = max_drop.max(path.max_energy - deformed.max_energy.min(path.max_energy));
        if !(confined && dominated && endpoint_ok && steps_ok) {
            r.fail(json!({
                "operator": op.realized.to_string(),
                "spec": spec,
                "confined": confined,
                "dominated": dominated,
                "endpoint_ok": endpoint_ok,
                "steps_ok": steps_ok,
                "path": path,
                "trace": trace,
            }));
        }
    }
    r.measure("samples", samples);
    r.measure("largest_max_energy_drop", max_drop);
    Ok(r)
}

/// The full Pauli search agrees with the sector searches: on every pure
/// nontrivial logical, on every operator that commutes with the checks, and
/// for the code barrier.
pub fn check_css_restriction(code: &HgpCode, instance: &str, cap: u64) -> Result<VerifyReport> {
    let mut r = VerifyReport::new("css-restriction", instance);
    if !css_gate(code, &mut r) {
        return Ok(r);
    }
    let n = code.num_qubits();
    let full = PauliField::new(code, cap)?;
    let pair = SectorPair::new(code, cap)?;
    let mut pure = [0usize; 2];
    for (slot, kind) in KINDS.into_iter().enumerate() {
        let field = if kind == PauliKind::Z {
            &pair.z
        } else {
            &pair.x
        };
        for p in enumerate_logicals(code, kind, cap)? {
            pure[slot] += 1;
            let (a, b) = (full.value(&p)?, field.value(p.part(kind))?);
            if a != b {
                r.fail(json!({
                    "operator": p.to_string(),
                    "general": a,
                    "sector": b,
                    "general_path": full.path_to(&p)?,
                }));
            }
        }
    }
    let mut commuting = 0usize;
    for xm in 0..1u64 << n {
        let x = BitVec::from_u64(n, xm);
        if !code.hz().mul_vec(&x)?.is_zero() {
            continue;
        }
        for zm in 0..1u64 << n {
            let z = BitVec::from_u64(n, zm);
            if !code.hx().mul_vec(&z)?.is_zero() {
                continue;
            }
            let p = PauliVec { x: x.clone(), z };
            commuting += 1;
            let (a, b) = (full.value(&p)?, pair.value(&p)?);
            if a != b {
                r.fail(json!({
                    "operator": p.to_string(),
                    "general": a,
                    "sector_max": b,
                }));
            }
        }
    }
    let general = crate::barrier::pauli_barrier_general(
        code,
        &crate::barrier::PauliTarget::AnyNontrivialLogical,
        cap,
    )?;
    let both = quantum_barrier(code, Sector::Both, cap)?;
    if general.value != both.value {
        r.fail(json!({
            "reason": "code barrier differs",
            "general": general.value,
            "sector": both.value,
            "general_path": general.witness,
        }));
    }
    r.measure("qubits", n);
    r.measure("pure_z_logicals", pure[0]);
    r.measure("pure_x_logicals", pure[1]);
    r.measure("commuting_operators", commuting);
    r.measure("code_barrier", both.value);
    r.witness = serde_json::to_value(&general).expect("plain data");
    Ok(r)
}
