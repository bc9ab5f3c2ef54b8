//! Reference implementations that share no code with the library: plain
//! `Vec<Vec<u8>>` matrices, exhaustive enumeration and a threshold sweep
//! instead of a priority queue.

#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use hgpb_core::BitMatrix;

pub type Mat = Vec<Vec<u8>>;

pub fn naive(m: &BitMatrix) -> Mat {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j) as u8).collect())
        .collect()
}

pub fn transpose(m: &Mat) -> Mat {
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols)
        .map(|j| m.iter().map(|r| r[j]).collect())
        .collect()
}

pub fn rank(m: &Mat) -> usize {
    let mut a = m.clone();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| a[i][c] == 1) else {
            continue;
        };
        a.swap(r, p);
        let pivot = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && row[c] == 1 {
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x ^= p;
                }
            }
        }
        r += 1;
    }
    r
}

/// Row `i` as a bitmask over columns.
pub fn row_mask(m: &Mat, i: usize) -> u64 {
    m[i].iter()
        .enumerate()
        .filter(|(_, &b)| b == 1)
        .fold(0, |acc, (j, _)| acc | 1 << j)
}

/// Column `j` as a bitmask over rows.
fn col_mask(m: &Mat, j: usize) -> u64 {
    m.iter()
        .enumerate()
        .filter(|(_, r)| r[j] == 1)
        .fold(0, |acc, (i, _)| acc | 1 << i)
}

/// `wt(H·x)` for every `x` in `0..2^cols`.
pub fn energy_table(h: &Mat, cols: usize) -> Vec<u8> {
    assert!(h.len() <= 64 && cols <= 24);
    let syn: Vec<u64> = (0..cols)
        .map(|j| if h.is_empty() { 0 } else { col_mask(h, j) })
        .collect();
    (0u64..1 << cols)
        .map(|x| {
            let mut s = 0;
            for (j, m) in syn.iter().enumerate() {
                if x >> j & 1 == 1 {
                    s ^= m;
                }
            }
            s.count_ones() as u8
        })
        .collect()
}

/// All XOR combinations of the rows of `m`.
pub fn row_space(m: &Mat) -> HashSet<u64> {
    let mut span = HashSet::from([0u64]);
    for i in 0..m.len() {
        let r = row_mask(m, i);
        let more: Vec<u64> = span.iter().map(|s| s ^ r).collect();
        span.extend(more);
    }
    span
}

/// Smallest `T` such that some target is reachable from 0 through states of
/// energy at most `T`, moving one bit at a time.
pub fn threshold_barrier(n: usize, energy: &[u8], target: impl Fn(u64) -> bool) -> Option<usize> {
    let top = *energy.iter().max().unwrap_or(&0) as usize;
    for t in 0..=top {
        if energy[0] as usize > t {
            continue;
        }
        let mut seen = vec![false; 1 << n];
        let mut queue = VecDeque::from([0u64]);
        seen[0] = true;
        while let Some(s) = queue.pop_front() {
            if target(s) {
                return Some(t);
            }
            for q in 0..n {
                let nb = s ^ 1 << q;
                if !seen[nb as usize] && energy[nb as usize] as usize <= t {
                    seen[nb as usize] = true;
                    queue.push_back(nb);
                }
            }
        }
    }
    None
}

pub fn classical_barrier(h: &Mat) -> Option<usize> {
    let n = h[0].len();
    let e = energy_table(h, n);
    threshold_barrier(n, &e, |x| x != 0 && e[x as usize] == 0)
}

pub fn classical_distance(h: &Mat) -> Option<usize> {
    let n = h[0].len();
    let e = energy_table(h, n);
    (1u64..1 << n)
        .filter(|&x| e[x as usize] == 0)
        .map(|x| x.count_ones() as usize)
        .min()
}

/// Barrier of one sector: states are pure operators, `detect` gives the
/// energy and `same` the stabilizers of that type.
pub fn sector_barrier(detect: &Mat, same: &Mat) -> Option<usize> {
    let n = detect[0].len();
    let e = energy_table(detect, n);
    let stabs = row_space(same);
    threshold_barrier(n, &e, |x| e[x as usize] == 0 && !stabs.contains(&x))
}

/// Minimum weight over `ker(detect) \ rowspace(same)`.
pub fn sector_distance(detect: &Mat, same: &Mat) -> Option<usize> {
    let n = detect[0].len();
    let e = energy_table(detect, n);
    let stabs = row_space(same);
    (1u64..1 << n)
        .filter(|&x| e[x as usize] == 0 && !stabs.contains(&x))
        .map(|x| x.count_ones() as usize)
        .min()
}

pub fn mask_of(v: &hgpb_core::BitVec) -> u64 {
    v.ones_iter().fold(0, |acc, i| acc | 1 << i)
}

/// Minimax value of every state reachable from 0 under `moves`: the smallest
/// threshold at which the state joins the component of 0. `u8::MAX` marks
/// states that are never reached.
pub fn minimax_field(bits: usize, energy: &[u8], moves: &[u64]) -> Vec<u8> {
    let top = *energy.iter().max().unwrap_or(&0);
    let mut value = vec![u8::MAX; 1 << bits];
    for t in energy[0]..=top {
        let mut queue: VecDeque<u64> = (0..1u64 << bits)
            .filter(|&s| value[s as usize] != u8::MAX)
            .collect();
        if value[0] == u8::MAX {
            value[0] = t;
            queue.push_back(0);
        }
        while let Some(s) = queue.pop_front() {
            for m in moves {
                let nb = (s ^ m) as usize;
                if value[nb] == u8::MAX && energy[nb] <= t {
                    value[nb] = t;
                    queue.push_back(nb as u64);
                }
            }
        }
    }
    value
}

/// `wt(HX·z) + wt(HZ·x)` over states `x | z << n`.
pub fn pauli_energy_table(hx: &Mat, hz: &Mat) -> Vec<u8> {
    let n = hx[0].len();
    let ez = energy_table(hx, n);
    let ex = energy_table(hz, n);
    (0u64..1 << (2 * n))
        .map(|s| {
            let x = s & ((1 << n) - 1);
            let z = s >> n;
            ex[x as usize] + ez[z as usize]
        })
        .collect()
}

/// Single-qubit X, Z and Y flips on `n` qubits.
pub fn pauli_moves(n: usize) -> Vec<u64> {
    (0..n)
        .flat_map(|q| [1u64 << q, 1 << (q + n), 1 << q | 1 << (q + n)])
        .collect()
}
