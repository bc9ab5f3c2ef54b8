mod common;

use proptest::prelude::*;

use common::naive;
use hgpb_core::barrier::{classical_barrier, energy_classical, DEFAULT_SECTOR_CAP};
use hgpb_core::deform::weight_reduction_gap;
use hgpb_core::f2::reshape;
use hgpb_core::logicals::{all_canonical_ops, canonical_basis_ops, classify};
use hgpb_core::verify::check_deformation;
use hgpb_core::{BitMatrix, BitVec, ClassicalCode, HgpCode, PauliClass, PauliKind};

fn matrix(rows: usize, cols: usize, bits: &[bool]) -> BitMatrix {
    let mut m = BitMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, bits[i * cols + j]);
        }
    }
    m
}

fn arb_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = BitMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(any::<bool>(), r * c).prop_map(move |b| matrix(r, c, &b))
    })
}

fn arb_shaped(rows: usize, cols: usize) -> impl Strategy<Value = BitMatrix> {
    prop::collection::vec(any::<bool>(), rows * cols).prop_map(move |b| matrix(rows, cols, &b))
}

fn arb_vec(len: usize) -> impl Strategy<Value = BitVec> {
    prop::collection::vec(any::<bool>(), len).prop_map(|b| BitVec::from_bools(&b))
}

fn arb_code(max_rows: usize, max_cols: usize) -> impl Strategy<Value = ClassicalCode> {
    arb_matrix(max_rows, max_cols).prop_map(|m| ClassicalCode::from_matrix(m).unwrap())
}

/// `A`, `B` and a vector of length `A.cols · B.cols`.
fn arb_kron_case() -> impl Strategy<Value = (BitMatrix, BitMatrix, BitVec)> {
    (arb_matrix(4, 4), arb_matrix(4, 4)).prop_flat_map(|(a, b)| {
        let len = a.cols() * b.cols();
        (Just(a), Just(b), arb_vec(len))
    })
}

fn small_product() -> impl Strategy<Value = HgpCode> {
    (arb_code(3, 4), arb_code(3, 4)).prop_map(|(a, b)| HgpCode::build(&a, &b))
}

proptest! {
    #[test]
    fn reshape_weight_identity((a, b, v) in arb_kron_case()) {
        let lhs = a.kron(&b).mul_vec(&v).unwrap().weight();
        let z = reshape(&v, a.cols(), b.cols()).unwrap();
        let rhs = a.mul(&z).unwrap().mul(&b.transpose()).unwrap().weight();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn rref_is_idempotent(m in arb_matrix(6, 8)) {
        let once = m.rref();
        let twice = once.rref.rref();
        prop_assert_eq!(&twice.rref, &once.rref);
        prop_assert_eq!(once.rank, common::rank(&naive(&m)));
    }

    #[test]
    fn kernel_and_rank_are_dual(m in arb_matrix(6, 8)) {
        let ker = m.kernel_basis();
        for k in &ker {
            prop_assert!(m.mul_vec(k).unwrap().is_zero());
        }
        prop_assert_eq!(m.rank() + ker.len(), m.cols());
        if !ker.is_empty() {
            let km = BitMatrix::from_rows(m.cols(), ker.clone()).unwrap();
            prop_assert_eq!(km.rank(), ker.len());
        }
    }

    #[test]
    fn kron_mixed_product((a, b, _) in arb_kron_case(), seed in any::<u64>()) {
        let u = BitVec::from_u64(a.cols(), seed & ((1 << a.cols()) - 1));
        let w = BitVec::from_u64(b.cols(), (seed >> 8) & ((1 << b.cols()) - 1));
        let lhs = a.kron(&b).mul_vec(&u.kron(&w)).unwrap();
        let rhs = a.mul_vec(&u).unwrap().kron(&b.mul_vec(&w).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn kron_is_associative(a in arb_matrix(2, 3), b in arb_matrix(2, 3), c in arb_matrix(2, 3)) {
        prop_assert_eq!(a.kron(&b).kron(&c), a.kron(&b.kron(&c)));
    }

    #[test]
    fn products_always_commute(a in arb_matrix(4, 5), b in arb_matrix(4, 5)) {
        let code = HgpCode::build(
            &ClassicalCode::from_matrix(a).unwrap(),
            &ClassicalCode::from_matrix(b).unwrap(),
        );
        prop_assert!(code.css_check());
        let prod = naive(&code.hx().mul(&code.hz().transpose()).unwrap());
        prop_assert!(prod.iter().flatten().all(|&e| e == 0));
    }

    #[test]
    fn syndrome_zero_iff_in_kernel_span(c in arb_code(4, 7)) {
        let span = common::row_space(&naive(
            &BitMatrix::from_rows(c.n(), c.kernel_basis().to_vec()).unwrap(),
        ));
        for x in 0u64..1 << c.n() {
            let v = BitVec::from_u64(c.n(), x);
            let zero = c.syndrome(&v).unwrap().is_zero();
            let in_span = if c.k() == 0 { x == 0 } else { span.contains(&x) };
            prop_assert_eq!(zero, in_span);
        }
    }

    #[test]
    fn double_transpose_is_identity(c in arb_code(5, 6)) {
        let back = c.transpose_code().transpose_code();
        prop_assert_eq!(back.matrix(), c.matrix());
    }

    #[test]
    fn classical_witness_is_valid(c in arb_code(5, 9)) {
        prop_assume!(c.k() > 0);
        let r = classical_barrier(&c, DEFAULT_SECTOR_CAP).unwrap();
        prop_assert_eq!(r.witness.first_bad_step(), None);
        prop_assert!(r.witness.energies_match(|x| energy_classical(&c, x).unwrap()));
        prop_assert!(r.witness.start().is_zero());
        prop_assert!(c.is_codeword(r.witness.endpoint()).unwrap());
        prop_assert!(!r.witness.endpoint().is_zero());
        prop_assert_eq!(r.value, r.witness.max_energy);
        prop_assert_eq!(Some(r.value), common::classical_barrier(&naive(c.matrix())));
    }

    #[test]
    fn canonical_basis_completes_stabilizers(code in small_product()) {
        prop_assume!(code.num_logicals() > 0);
        for kind in [PauliKind::Z, PauliKind::X] {
            let ops = canonical_basis_ops(&code, kind).unwrap();
            prop_assert_eq!(ops.len(), code.num_logicals());
            let (detect, same) = match kind {
                PauliKind::Z => (code.hx(), code.hz()),
                PauliKind::X => (code.hz(), code.hx()),
            };
            let mut rows: Vec<BitVec> = same.row_iter().cloned().collect();
            rows.extend(ops.iter().map(|o| o.realized.part(kind).clone()));
            let spanned = BitMatrix::from_rows(code.num_qubits(), rows).unwrap();
            prop_assert_eq!(
                common::rank(&naive(&spanned)),
                code.num_qubits() - common::rank(&naive(detect))
            );
            for o in &ops {
                prop_assert!(detect.mul_vec(o.realized.part(kind)).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn canonical_combinations_are_nontrivial(code in small_product()) {
        prop_assume!(code.num_logicals() > 0 && code.num_logicals() <= 8);
        for kind in [PauliKind::Z, PauliKind::X] {
            for op in all_canonical_ops(&code, kind, 1 << 12).unwrap() {
                prop_assert_eq!(classify(&code, &op.realized).unwrap(), PauliClass::NontrivialLogical);
            }
        }
    }

    #[test]
    fn weight_reduction_holds(
        (h1, h2, z1, z2, pick) in (arb_matrix(3, 4), arb_matrix(3, 4)).prop_flat_map(|(h1, h2)| {
            let (n1, n2, r1, r2) = (h1.cols(), h2.cols(), h1.rows(), h2.rows());
            (Just(h1), Just(h2), arb_shaped(n1, n2), arb_shaped(r1, r2), any::<u64>())
        })
    ) {
        let c1 = ClassicalCode::from_matrix(h1).unwrap();
        let c2 = ClassicalCode::from_matrix(h2).unwrap();
        prop_assume!(c2.k() > 0);
        let code = HgpCode::build(&c1, &c2);
        let words: Vec<BitVec> = c2.codewords().skip(1).collect();
        let w = &words[pick as usize % words.len()];
        let (lhs, rhs) = weight_reduction_gap(&code, &z1, &z2, w).unwrap();
        // Recompute both sides with plain loops.
        let (a, b, m, n) = (naive(c1.matrix()), naive(c2.matrix()), naive(&z1), naive(&z2));
        let line: Vec<u8> = (0..z1.rows())
            .map(|i| w.ones_iter().fold(0, |s, j| s ^ m[i][j]))
            .collect();
        let want_lhs = a.iter().filter(|row| row.iter().zip(&line).fold(0, |s, (x, y)| s ^ (x & y)) == 1).count();
        let mut want_rhs = 0;
        for i in 0..a.len() {
            for j in 0..z1.cols() {
                let hz: u8 = (0..z1.rows()).fold(0, |s, t| s ^ (a[i][t] & m[t][j]));
                let zh: u8 = (0..b.len()).fold(0, |s, t| s ^ (n[i][t] & b[t][j]));
                want_rhs += usize::from(hz ^ zh == 1);
            }
        }
        prop_assert_eq!((lhs, rhs), (want_lhs, want_rhs));
        prop_assert!(lhs <= rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn deformation_checker_passes_for_any_seed(seed in any::<u64>()) {
        let code = HgpCode::build(
            &hgpb_core::codes::open_repetition(3),
            &hgpb_core::codes::ring_repetition(3),
        );
        let r = check_deformation(&code, "p", 5, seed, DEFAULT_SECTOR_CAP).unwrap();
        prop_assert!(r.passed(), "{}", r.to_json_line());
    }
}

/// Exhaustive over `v` for all shapes up to 3×3 with a few fixed `A`, `B`.
#[test]
fn reshape_weight_identity_exhaustive() {
    for n1 in 1..=3 {
        for n2 in 1..=3 {
            for seed in 0..4 {
                let a = hgpb_core::codes::random_matrix(3, n1, 0.5, seed);
                let b = hgpb_core::codes::random_matrix(2, n2, 0.5, seed + 50);
                let ab = a.kron(&b);
                for x in 0u64..1 << (n1 * n2) {
                    let v = BitVec::from_u64(n1 * n2, x);
                    let z = reshape(&v, n1, n2).unwrap();
                    let rhs = a.mul(&z).unwrap().mul(&b.transpose()).unwrap().weight();
                    assert_eq!(ab.mul_vec(&v).unwrap().weight(), rhs);
                }
            }
        }
    }
}
