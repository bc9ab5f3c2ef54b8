use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ClassicalCode;
use crate::f2::BitMatrix;

fn code(h: BitMatrix) -> ClassicalCode {
    ClassicalCode::from_matrix(h).expect("family matrices are non-empty")
}

/// Repetition code on a ring: `n` checks `x_i + x_{i+1 mod n}`.
pub fn ring_repetition(n: usize) -> ClassicalCode {
    assert!(n >= 2, "ring repetition needs n >= 2");
    let mut h = BitMatrix::zeros(n, n);
    for i in 0..n {
        h.set(i, i, true);
        h.set(i, (i + 1) % n, true);
    }
    code(h)
}

/// Repetition code on an open chain: `n - 1` checks `x_i + x_{i+1}`.
pub fn open_repetition(n: usize) -> ClassicalCode {
    assert!(n >= 2, "open repetition needs n >= 2");
    let mut h = BitMatrix::zeros(n - 1, n);
    for i in 0..n - 1 {
        h.set(i, i, true);
        h.set(i, i + 1, true);
    }
    code(h)
}

/// A single check on all `n` bits.
pub fn single_parity(n: usize) -> ClassicalCode {
    let mut h = BitMatrix::zeros(1, n);
    for j in 0..n {
        h.set(0, j, true);
    }
    code(h)
}

/// The [7,4,3] Hamming code; column `j` is the binary expansion of `j + 1`.
pub fn hamming_7_4() -> ClassicalCode {
    let mut h = BitMatrix::zeros(3, 7);
    for j in 0..7 {
        let label = j + 1;
        for bit in 0..3 {
            if label >> bit & 1 == 1 {
                h.set(2 - bit, j, true);
            }
        }
    }
    code(h)
}

/// Sparse random matrix: every column gets `col_weight` distinct checks.
/// Row weights come out roughly `n·col_weight/r`.
pub fn random_ldpc(r: usize, n: usize, col_weight: usize, seed: u64) -> ClassicalCode {
    assert!(
        col_weight <= r,
        "column weight larger than number of checks"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut h = BitMatrix::zeros(r, n);
    for j in 0..n {
        for i in sample(&mut rng, r, col_weight).into_iter() {
            h.set(i, j, true);
        }
    }
    code(h)
}

/// Dense random `r×n` matrix with i.i.d. entries of probability `density`.
/// May contain zero rows or columns.
pub fn random_matrix(r: usize, n: usize, density: f64, seed: u64) -> BitMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut h = BitMatrix::zeros(r, n);
    for i in 0..r {
        for j in 0..n {
            if rng.gen_bool(density) {
                h.set(i, j, true);
            }
        }
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hamming_matrix_layout() {
        let h = hamming_7_4();
        assert_eq!(h.matrix().to_string(), "0001111\n0110011\n1010101");
    }

    #[test]
    fn ldpc_column_weights() {
        let c = random_ldpc(6, 8, 3, 7);
        assert!(c.matrix().col_weights().iter().all(|&w| w == 3));
        assert_eq!(random_ldpc(6, 8, 3, 7), c);
    }
}
