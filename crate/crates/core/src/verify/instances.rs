use crate::codes::{
    hamming_7_4, open_repetition, random_ldpc, ring_repetition, single_parity, ClassicalCode,
};
use crate::hgp::HgpCode;

/// A named pair of parent codes.
#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub h1: ClassicalCode,
    pub h2: ClassicalCode,
}

impl Instance {
    pub fn new(name: &str, h1: ClassicalCode, h2: ClassicalCode) -> Self {
        Self {
            name: name.to_string(),
            h1,
            h2,
        }
    }

    pub fn build(&self) -> HgpCode {
        HgpCode::build(&self.h1, &self.h2)
    }
}

/// Products small enough for exhaustive sector searches (at most 18 qubits).
/// They cover both `kᵀ = 0` and `kᵀ > 0` parents.
pub fn builtin_instances() -> Vec<Instance> {
    vec![
        Instance::new("toric-ring3xring3", ring_repetition(3), ring_repetition(3)),
        Instance::new(
            "surface-open3xopen3",
            open_repetition(3),
            open_repetition(3),
        ),
        Instance::new("ring3xopen3", ring_repetition(3), open_repetition(3)),
        Instance::new("open3xopen4", open_repetition(3), open_repetition(4)),
        Instance::new("hamming7x-parity2", hamming_7_4(), single_parity(2)),
        Instance::new(
            "ldpc3x4-seed1xopen3",
            random_ldpc(3, 4, 2, 1),
            open_repetition(3),
        ),
    ]
}

/// Products with at most 10 qubits, where the full Pauli search is feasible.
pub fn restriction_instances() -> Vec<Instance> {
    vec![
        Instance::new("open2xopen2", open_repetition(2), open_repetition(2)),
        Instance::new("open2xopen3", open_repetition(2), open_repetition(3)),
        Instance::new("open3xopen2", open_repetition(3), open_repetition(2)),
        Instance::new("parity3xopen2", single_parity(3), open_repetition(2)),
        Instance::new("parity3xparity3", single_parity(3), single_parity(3)),
    ]
}
