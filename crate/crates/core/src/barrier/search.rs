//! Exact bottleneck (minimax) search over a state space of bitmasks.
//!
//! States are `u64` masks, moves are XOR masks. Expansion order is the key
//! `(max energy so far, path length, state)`, smallest first, so the first
//! target popped is optimal and ties resolve to the numerically smallest mask.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{ensure_within_cap, Result};
use crate::f2::BitMatrix;

/// An energy function over `{0,1}^dim` with a fixed move set.
pub trait Landscape {
    /// Number of state bits.
    fn dim(&self) -> usize;

    /// XOR masks applied by one step.
    fn moves(&self) -> &[u64];

    fn energy(&self, state: u64) -> u32;

    /// Fills `out[i]` with the energy after move `i`, returns the energy of `state`.
    fn neighbor_energies(&self, state: u64, out: &mut Vec<u32>) -> u32 {
        out.clear();
        out.extend(self.moves().iter().map(|m| self.energy(state ^ m)));
        self.energy(state)
    }
}

/// Energy `wt(M·s)` where bit `i` of the state selects column `i` of `M`.
#[derive(Clone, Debug)]
pub struct LinearLandscape {
    dim: usize,
    words: usize,
    bit_cols: Vec<u64>,
    moves: Vec<u64>,
    move_cols: Vec<u64>,
}

fn packed_columns(m: &BitMatrix) -> (usize, Vec<u64>) {
    let words = m.rows().div_ceil(64).max(1);
    let mut out = vec![0u64; words * m.cols()];
    for (i, row) in m.row_iter().enumerate() {
        for j in row.ones_iter() {
            out[j * words + i / 64] |= 1 << (i % 64);
        }
    }
    (words, out)
}

impl LinearLandscape {
    /// Single-bit moves over the columns of `m`.
    pub fn new(m: &BitMatrix) -> Self {
        let moves = (0..m.cols()).map(|i| 1u64 << i).collect();
        Self::with_moves(m, moves)
    }

    pub fn with_moves(m: &BitMatrix, moves: Vec<u64>) -> Self {
        assert!(m.cols() < 64, "state masks hold at most 63 bits");
        assert!(moves.len() <= u8::MAX as usize, "at most 255 moves");
        let (words, bit_cols) = packed_columns(m);
        let mut move_cols = vec![0u64; words * moves.len()];
        for (k, &mask) in moves.iter().enumerate() {
            let mut rest = mask;
            while rest != 0 {
                let j = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                for w in 0..words {
                    move_cols[k * words + w] ^= bit_cols[j * words + w];
                }
            }
        }
        Self {
            dim: m.cols(),
            words,
            bit_cols,
            moves,
            move_cols,
        }
    }

    fn syndrome(&self, state: u64, buf: &mut [u64]) {
        buf.fill(0);
        let mut rest = state;
        while rest != 0 {
            let j = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            for (b, c) in buf.iter_mut().zip(&self.bit_cols[j * self.words..]) {
                *b ^= c;
            }
        }
    }
}

impl Landscape for LinearLandscape {
    fn dim(&self) -> usize {
        self.dim
    }

    fn moves(&self) -> &[u64] {
        &self.moves
    }

    fn energy(&self, state: u64) -> u32 {
        let mut buf = vec![0u64; self.words];
        self.syndrome(state, &mut buf);
        buf.iter().map(|w| w.count_ones()).sum()
    }

    fn neighbor_energies(&self, state: u64, out: &mut Vec<u32>) -> u32 {
        let mut buf = vec![0u64; self.words];
        self.syndrome(state, &mut buf);
        out.clear();
        for k in 0..self.moves.len() {
            let col = &self.move_cols[k * self.words..(k + 1) * self.words];
            out.push(buf.iter().zip(col).map(|(a, b)| (a ^ b).count_ones()).sum());
        }
        buf.iter().map(|w| w.count_ones()).sum()
    }
}

/// Arbitrary energy function with single-bit moves.
pub struct FnLandscape<F> {
    dim: usize,
    moves: Vec<u64>,
    energy: F,
}

impl<F: Fn(u64) -> u32> FnLandscape<F> {
    pub fn new(dim: usize, energy: F) -> Self {
        assert!(dim < 64, "state masks hold at most 63 bits");
        Self {
            dim,
            moves: (0..dim).map(|i| 1u64 << i).collect(),
            energy,
        }
    }
}

impl<F: Fn(u64) -> u32> Landscape for FnLandscape<F> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn moves(&self) -> &[u64] {
        &self.moves
    }

    fn energy(&self, state: u64) -> u32 {
        (self.energy)(state)
    }
}

const UNSEEN: u16 = u16::MAX;

impl<T: Landscape + ?Sized> Landscape for &T {
    fn dim(&self) -> usize {
        (**self).dim()
    }

    fn moves(&self) -> &[u64] {
        (**self).moves()
    }

    fn energy(&self, state: u64) -> u32 {
        (**self).energy(state)
    }

    fn neighbor_energies(&self, state: u64, out: &mut Vec<u32>) -> u32 {
        (**self).neighbor_energies(state, out)
    }
}

/// Search state for one exploration from the zero state.
pub(crate) struct Explorer<L: Landscape> {
    land: L,
    best: Vec<u16>,
    len: Vec<u32>,
    parent: Vec<u8>,
    settled: Vec<u64>,
    explored: u64,
}

impl<L: Landscape> Explorer<L> {
    pub(crate) fn new(land: L, cap: u64) -> Result<Self> {
        ensure_within_cap(land.dim(), cap)?;
        let size = 1usize << land.dim();
        Ok(Self {
            land,
            best: vec![UNSEEN; size],
            len: vec![u32::MAX; size],
            parent: vec![u8::MAX; size],
            settled: vec![0; size.div_ceil(64)],
            explored: 0,
        })
    }

    fn is_settled(&self, s: u64) -> bool {
        self.settled[(s / 64) as usize] >> (s % 64) & 1 == 1
    }

    /// Runs until `target(state, energy)` accepts a popped state, or until
    /// everything reachable is settled (returns `None`).
    pub(crate) fn run(&mut self, mut target: impl FnMut(u64, u32) -> bool) -> Option<u64> {
        let e0 = to_u16(self.land.energy(0));
        self.best[0] = e0;
        self.len[0] = 0;
        let mut heap = BinaryHeap::new();
        heap.push(Reverse((e0, 0u32, 0u64)));
        let mut energies = Vec::with_capacity(self.land.moves().len());
        while let Some(Reverse((b, l, s))) = heap.pop() {
            if self.is_settled(s) {
                continue;
            }
            self.settled[(s / 64) as usize] |= 1 << (s % 64);
            self.explored += 1;
            let e = self.land.neighbor_energies(s, &mut energies);
            if target(s, e) {
                return Some(s);
            }
            for (k, (&mask, &ne)) in self.land.moves().iter().zip(&energies).enumerate() {
                let t = s ^ mask;
                if self.is_settled(t) {
                    continue;
                }
                let key = (b.max(to_u16(ne)), l + 1);
                let ti = t as usize;
                if key < (self.best[ti], self.len[ti]) {
                    self.best[ti] = key.0;
                    self.len[ti] = key.1;
                    self.parent[ti] = k as u8;
                    heap.push(Reverse((key.0, key.1, t)));
                }
            }
        }
        None
    }

    pub(crate) fn explored(&self) -> u64 {
        self.explored
    }

    pub(crate) fn value(&self, s: u64) -> Option<u32> {
        match self.best[s as usize] {
            UNSEEN => None,
            v => Some(v as u32),
        }
    }

    /// States from zero to `s` along stored parents.
    pub(crate) fn path_to(&self, s: u64) -> Vec<u64> {
        let mut out = vec![s];
        let mut cur = s;
        while cur != 0 {
            let k = self.parent[cur as usize] as usize;
            cur ^= self.land.moves()[k];
            out.push(cur);
        }
        out.reverse();
        out
    }
}

fn to_u16(e: u32) -> u16 {
    assert!(
        e < UNSEEN as u32,
        "energy {e} does not fit the search tables"
    );
    e as u16
}

/// Outcome of a targeted search, in raw mask form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawSearch {
    pub value: u32,
    pub path: Vec<u64>,
    pub energies: Vec<u32>,
    pub explored: u64,
}

/// Minimax path from zero to the nearest state accepted by `target`.
/// `None` when no reachable state is accepted.
pub fn search<L: Landscape>(
    land: &L,
    target: impl FnMut(u64, u32) -> bool,
    cap: u64,
) -> Result<Option<RawSearch>> {
    let mut ex = Explorer::new(land, cap)?;
    let Some(hit) = ex.run(target) else {
        return Ok(None);
    };
    let path = ex.path_to(hit);
    let energies: Vec<u32> = path.iter().map(|&s| land.energy(s)).collect();
    Ok(Some(RawSearch {
        value: ex.value(hit).expect("target was reached"),
        path,
        energies,
        explored: ex.explored(),
    }))
}

/// Minimax values from zero to every state, with witness paths.
pub struct MinimaxField<L: Landscape> {
    explorer: Explorer<L>,
}

impl<L: Landscape> MinimaxField<L> {
    pub fn explore(land: L, cap: u64) -> Result<Self> {
        let mut explorer = Explorer::new(land, cap)?;
        explorer.run(|_, _| false);
        Ok(Self { explorer })
    }

    pub fn landscape(&self) -> &L {
        &self.explorer.land
    }

    /// `None` for states the moves cannot reach.
    pub fn value(&self, s: u64) -> Option<u32> {
        self.explorer.value(s)
    }

    pub fn path_to(&self, s: u64) -> Vec<u64> {
        self.explorer.path_to(s)
    }

    pub fn explored(&self) -> u64 {
        self.explorer.explored()
    }
}
