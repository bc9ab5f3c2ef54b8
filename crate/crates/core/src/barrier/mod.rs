//! Energies, paths and exact energy barriers.
//!
//! A path is a sequence of operators starting at the identity in which
//! consecutive operators differ on at most one qubit. Its cost is the largest
//! energy it visits, endpoints included; the barrier of a target is the
//! smallest cost over all paths reaching it.
//!
//! For a CSS code the energy of `(x | z)` is `wt(HZ·x) + wt(HX·z)`, so the
//! searches run separately in the X and Z sectors. A nontrivial logical always
//! has a nontrivial pure part, and projecting a path onto one part keeps steps
//! single-qubit without raising energy, so the code barrier is the smaller of
//! the two sector barriers. [`pauli_barrier_general`] searches the full
//! `{I, X, Y, Z}^N` space and is used to cross-check that reduction.

mod paths;
mod search;

pub use paths::{
    line_code, line_qubit, line_sweep_path, stabilizer_path, sweep_path_for_canonical,
    StabilizerPath,
};
pub use search::{search, FnLandscape, Landscape, LinearLandscape, MinimaxField, RawSearch};

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;
use serde_json::{json, Value};

use crate::codes::ClassicalCode;
use crate::error::{ensure_within_cap, Error, Result};
use crate::f2::{BitMatrix, BitVec, Rref};
use crate::hgp::HgpCode;
use crate::logicals::{detecting_checks, same_type_checks, PauliKind, PauliVec};

/// Default state cap for sector and classical searches.
pub const DEFAULT_SECTOR_CAP: u64 = 1 << 24;
/// Default state cap for the full Pauli search (`4^10`).
pub const DEFAULT_PAULI_CAP: u64 = 1 << 20;

/// Something that can sit on a path.
pub trait PathState: Clone + PartialEq {
    fn num_qubits(&self) -> usize;

    /// Qubits on which `self` and `other` act differently.
    fn changed_qubits(&self, other: &Self) -> Vec<usize>;

    /// Single-qubit label at `q`.
    fn symbol(&self, q: usize) -> char;

    fn render(&self) -> String {
        (0..self.num_qubits()).map(|q| self.symbol(q)).collect()
    }
}

impl PathState for BitVec {
    fn num_qubits(&self) -> usize {
        self.len()
    }

    fn changed_qubits(&self, other: &Self) -> Vec<usize> {
        self.xor(other).support()
    }

    fn symbol(&self, q: usize) -> char {
        if self.get(q) {
            '1'
        } else {
            '0'
        }
    }
}

impl PathState for PauliVec {
    fn num_qubits(&self) -> usize {
        PauliVec::num_qubits(self)
    }

    fn changed_qubits(&self, other: &Self) -> Vec<usize> {
        self.differing_qubits(other)
    }

    fn symbol(&self, q: usize) -> char {
        self.letter(q)
    }
}

/// A path with the energy of every state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathRecord<S> {
    pub states: Vec<S>,
    pub energies: Vec<usize>,
    pub max_energy: usize,
}

impl<S: PathState> PathRecord<S> {
    pub fn new(states: Vec<S>, energies: Vec<usize>) -> Self {
        assert_eq!(states.len(), energies.len(), "one energy per state");
        let max_energy = energies.iter().copied().max().unwrap_or(0);
        Self {
            states,
            energies,
            max_energy,
        }
    }

    pub fn from_states(states: Vec<S>, energy: impl Fn(&S) -> usize) -> Self {
        let energies = states.iter().map(energy).collect();
        Self::new(states, energies)
    }

    pub fn start(&self) -> &S {
        &self.states[0]
    }

    pub fn endpoint(&self) -> &S {
        self.states.last().expect("paths are non-empty")
    }

    pub fn num_steps(&self) -> usize {
        self.states.len().saturating_sub(1)
    }

    /// Index of the first step that changes more than one qubit.
    pub fn first_bad_step(&self) -> Option<usize> {
        self.states
            .windows(2)
            .position(|w| w[0].changed_qubits(&w[1]).len() > 1)
            .map(|i| i + 1)
    }

    /// Whether the stored energies agree with `energy`.
    pub fn energies_match(&self, energy: impl Fn(&S) -> usize) -> bool {
        self.states
            .iter()
            .zip(&self.energies)
            .all(|(s, &e)| energy(s) == e)
            && self.max_energy == self.energies.iter().copied().max().unwrap_or(0)
    }

    /// Drops consecutive repeats.
    pub fn canonicalize(self) -> Self {
        let mut states: Vec<S> = Vec::with_capacity(self.states.len());
        let mut energies = Vec::with_capacity(self.energies.len());
        for (s, e) in self.states.into_iter().zip(self.energies) {
            if states.last() != Some(&s) {
                states.push(s);
                energies.push(e);
            }
        }
        Self::new(states, energies)
    }

    /// `[{step, flipped_qubit, pauli_change, energy}, ...]`; step 0 is the start.
    pub fn witness_json(&self) -> Value {
        let mut out = Vec::with_capacity(self.states.len());
        out.push(json!({
            "step": 0,
            "flipped_qubit": Value::Null,
            "pauli_change": Value::Null,
            "energy": self.energies[0],
        }));
        for (i, w) in self.states.windows(2).enumerate() {
            let changed = w[0].changed_qubits(&w[1]);
            let (qubit, change) = match changed.first() {
                Some(&q) => (
                    json!(q),
                    json!(format!("{}->{}", w[0].symbol(q), w[1].symbol(q))),
                ),
                None => (Value::Null, Value::Null),
            };
            out.push(json!({
                "step": i + 1,
                "flipped_qubit": qubit,
                "pauli_change": change,
                "energy": self.energies[i + 1],
            }));
        }
        Value::Array(out)
    }
}

impl<S: PathState> Serialize for PathRecord<S> {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        let mut st = s.serialize_struct("PathRecord", 2)?;
        st.serialize_field("max_energy", &self.max_energy)?;
        st.serialize_field("steps", &self.witness_json())?;
        st.end()
    }
}

/// Exact barrier with its witness path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarrierResult<S> {
    pub value: usize,
    pub witness: PathRecord<S>,
    pub target: S,
    pub explored: u64,
    pub exact: bool,
}

impl<S: PathState> Serialize for BarrierResult<S> {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        let mut st = s.serialize_struct("BarrierResult", 5)?;
        st.serialize_field("value", &self.value)?;
        st.serialize_field("target", &self.target.render())?;
        st.serialize_field("explored", &self.explored)?;
        st.serialize_field("exact", &self.exact)?;
        st.serialize_field("witness", &self.witness)?;
        st.end()
    }
}

/// Which logical operators a quantum barrier ranges over.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sector {
    Z,
    X,
    Both,
}

pub fn energy_classical(c: &ClassicalCode, x: &BitVec) -> Result<usize> {
    Ok(c.syndrome(x)?.weight())
}

/// `wt(HX·z) + wt(HZ·x)`.
pub fn energy_quantum(code: &HgpCode, p: &PauliVec) -> Result<usize> {
    Ok(code.hx().mul_vec(&p.z)?.weight() + code.hz().mul_vec(&p.x)?.weight())
}

fn check_len(what: &str, got: usize, want: usize) -> Result<()> {
    if got != want {
        return Err(Error::dims(format!(
            "{what} has length {got}, expected {want}"
        )));
    }
    Ok(())
}

fn bits_result(n: usize, raw: RawSearch) -> BarrierResult<BitVec> {
    let states: Vec<BitVec> = raw.path.iter().map(|&s| BitVec::from_u64(n, s)).collect();
    let energies = raw.energies.iter().map(|&e| e as usize).collect();
    BarrierResult {
        value: raw.value as usize,
        target: states.last().expect("non-empty path").clone(),
        witness: PathRecord::new(states, energies),
        explored: raw.explored,
        exact: true,
    }
}

/// Minimax search over `{0,1}^n_dim` from the zero state to the nearest
/// state accepted by `target`, moving one bit at a time.
pub fn bottleneck_search(
    n_dim: usize,
    energy: impl Fn(&BitVec) -> usize,
    target: impl Fn(&BitVec) -> bool,
    cap: u64,
) -> Result<BarrierResult<BitVec>> {
    ensure_within_cap(n_dim, cap)?;
    let land = FnLandscape::new(n_dim, |s| energy(&BitVec::from_u64(n_dim, s)) as u32);
    let raw =
        search(&land, |s, _| target(&BitVec::from_u64(n_dim, s)), cap)?.ok_or(Error::NoTarget)?;
    Ok(bits_result(n_dim, raw))
}

/// `Δ(H)`: barrier to the nearest nonzero codeword.
pub fn classical_barrier(c: &ClassicalCode, cap: u64) -> Result<BarrierResult<BitVec>> {
    if c.k() == 0 {
        return Err(Error::NoLogicals);
    }
    ensure_within_cap(c.n(), cap)?;
    let land = LinearLandscape::new(c.matrix());
    let raw = search(&land, |s, e| e == 0 && s != 0, cap)?.ok_or(Error::NoTarget)?;
    Ok(bits_result(c.n(), raw))
}

/// Barrier to one given bit string.
pub fn classical_barrier_to(
    c: &ClassicalCode,
    target: &BitVec,
    cap: u64,
) -> Result<BarrierResult<BitVec>> {
    check_len("target", target.len(), c.n())?;
    ensure_within_cap(c.n(), cap)?;
    let goal = target.to_u64().expect("fits in a mask");
    let land = LinearLandscape::new(c.matrix());
    let raw = search(&land, |s, _| s == goal, cap)?.ok_or(Error::NoTarget)?;
    Ok(bits_result(c.n(), raw))
}

fn pauli_result(kind: PauliKind, n: usize, raw: RawSearch) -> BarrierResult<PauliVec> {
    let b = bits_result(n, raw);
    let lift = |v: BitVec| PauliVec::pure(kind, v);
    BarrierResult {
        value: b.value,
        target: lift(b.target),
        witness: PathRecord::new(
            b.witness.states.into_iter().map(lift).collect(),
            b.witness.energies,
        ),
        explored: b.explored,
        exact: true,
    }
}

fn sector_barrier(code: &HgpCode, kind: PauliKind, cap: u64) -> Result<BarrierResult<PauliVec>> {
    let n = code.num_qubits();
    ensure_within_cap(n, cap)?;
    let land = LinearLandscape::new(detecting_checks(code, kind));
    let stabs = same_type_checks(code, kind).rref();
    let raw = search(
        &land,
        |s, e| e == 0 && s != 0 && !stabs.contains(&BitVec::from_u64(n, s)),
        cap,
    )?
    .ok_or(Error::NoTarget)?;
    Ok(pauli_result(kind, n, raw))
}

/// Barrier of the code: the nearest nontrivial logical in the chosen sector.
/// `Both` takes the smaller sector value, preferring Z on ties.
pub fn quantum_barrier(
    code: &HgpCode,
    sector: Sector,
    cap: u64,
) -> Result<BarrierResult<PauliVec>> {
    if code.num_logicals() == 0 {
        return Err(Error::NoLogicals);
    }
    match sector {
        Sector::Z => sector_barrier(code, PauliKind::Z, cap),
        Sector::X => sector_barrier(code, PauliKind::X, cap),
        Sector::Both => {
            let z = sector_barrier(code, PauliKind::Z, cap)?;
            let x = sector_barrier(code, PauliKind::X, cap)?;
            let explored = z.explored + x.explored;
            let mut best = if x.value < z.value { x } else { z };
            best.explored = explored;
            Ok(best)
        }
    }
}

/// Barrier to one pure operator of the given kind.
pub fn sector_barrier_to(
    code: &HgpCode,
    kind: PauliKind,
    target: &BitVec,
    cap: u64,
) -> Result<BarrierResult<PauliVec>> {
    let n = code.num_qubits();
    check_len("target", target.len(), n)?;
    ensure_within_cap(n, cap)?;
    let goal = target.to_u64().expect("fits in a mask");
    let land = LinearLandscape::new(detecting_checks(code, kind));
    let raw = search(&land, |s, _| s == goal, cap)?.ok_or(Error::NoTarget)?;
    Ok(pauli_result(kind, n, raw))
}

/// Barrier restricted to paths supported on `qubits`, towards a pure target
/// supported there as well.
pub fn sector_barrier_within(
    code: &HgpCode,
    kind: PauliKind,
    qubits: &[usize],
    target: &BitVec,
    cap: u64,
) -> Result<BarrierResult<PauliVec>> {
    let n = code.num_qubits();
    check_len("target", target.len(), n)?;
    ensure_within_cap(qubits.len(), cap)?;
    let checks = detecting_checks(code, kind);
    let columns: Vec<BitVec> = qubits.iter().map(|&q| checks.column(q)).collect();
    let sub = BitMatrix::from_columns(checks.rows(), &columns)?;
    let mut goal = 0u64;
    for q in target.ones_iter() {
        let pos = qubits.iter().position(|&p| p == q).ok_or_else(|| {
            Error::InvalidDeformation(format!("target qubit {q} outside the allowed set"))
        })?;
        goal |= 1 << pos;
    }
    let land = LinearLandscape::new(&sub);
    let raw = search(&land, |s, _| s == goal, cap)?.ok_or(Error::NoTarget)?;
    let lift = |mask: u64| {
        let mut v = BitVec::zeros(n);
        for (i, &q) in qubits.iter().enumerate() {
            if mask >> i & 1 == 1 {
                v.set(q, true);
            }
        }
        PauliVec::pure(kind, v)
    };
    let states: Vec<PauliVec> = raw.path.iter().map(|&s| lift(s)).collect();
    Ok(BarrierResult {
        value: raw.value as usize,
        target: lift(goal),
        witness: PathRecord::new(states, raw.energies.iter().map(|&e| e as usize).collect()),
        explored: raw.explored,
        exact: true,
    })
}

/// Exact barriers from the identity to every pure operator of one kind.
pub struct SectorField {
    kind: PauliKind,
    n: usize,
    field: MinimaxField<LinearLandscape>,
    stabilizers: Rref,
}

impl SectorField {
    pub fn new(code: &HgpCode, kind: PauliKind, cap: u64) -> Result<Self> {
        let n = code.num_qubits();
        ensure_within_cap(n, cap)?;
        let land = LinearLandscape::new(detecting_checks(code, kind));
        Ok(Self {
            kind,
            n,
            field: MinimaxField::explore(land, cap)?,
            stabilizers: same_type_checks(code, kind).rref(),
        })
    }

    pub fn kind(&self) -> PauliKind {
        self.kind
    }

    fn mask(&self, v: &BitVec) -> Result<u64> {
        check_len("operator", v.len(), self.n)?;
        Ok(v.to_u64().expect("fits in a mask"))
    }

    pub fn value(&self, v: &BitVec) -> Result<usize> {
        let m = self.mask(v)?;
        Ok(self.field.value(m).expect("single flips reach every state") as usize)
    }

    pub fn path_to(&self, v: &BitVec) -> Result<PathRecord<PauliVec>> {
        let m = self.mask(v)?;
        let land = self.field.landscape();
        let states = self.field.path_to(m);
        Ok(PathRecord::new(
            states
                .iter()
                .map(|&s| PauliVec::pure(self.kind, BitVec::from_u64(self.n, s)))
                .collect(),
            states.iter().map(|&s| land.energy(s) as usize).collect(),
        ))
    }

    pub fn barrier_to(&self, v: &BitVec) -> Result<BarrierResult<PauliVec>> {
        let witness = self.path_to(v)?;
        Ok(BarrierResult {
            value: witness.max_energy,
            target: PauliVec::pure(self.kind, v.clone()),
            witness,
            explored: self.field.explored(),
            exact: true,
        })
    }

    /// Smallest value over all nontrivial logicals of this kind.
    pub fn code_barrier(&self) -> Option<usize> {
        let land = self.field.landscape();
        (1u64..1 << self.n)
            .filter(|&s| land.energy(s) == 0)
            .filter(|&s| !self.stabilizers.contains(&BitVec::from_u64(self.n, s)))
            .filter_map(|s| self.field.value(s))
            .min()
            .map(|v| v as usize)
    }
}

/// Both sector fields of a code. For an operator commuting with every
/// stabilizer the full barrier is the larger of its two sector barriers:
/// apply the X part first (energy `wt(HZ·x_i)`), then the Z part, whose
/// intermediate states only see `wt(HX·z_i)` because `HZ·x = 0`.
pub struct SectorPair {
    pub z: SectorField,
    pub x: SectorField,
}

impl SectorPair {
    pub fn new(code: &HgpCode, cap: u64) -> Result<Self> {
        Ok(Self {
            z: SectorField::new(code, PauliKind::Z, cap)?,
            x: SectorField::new(code, PauliKind::X, cap)?,
        })
    }

    pub fn value(&self, p: &PauliVec) -> Result<usize> {
        Ok(self.x.value(&p.x)?.max(self.z.value(&p.z)?))
    }

    /// The X-then-Z witness; its maximum equals [`SectorPair::value`] for
    /// commuting `p`.
    pub fn path_to(&self, code: &HgpCode, p: &PauliVec) -> Result<PathRecord<PauliVec>> {
        let xs = self.x.path_to(&p.x)?;
        let zs = self.z.path_to(&p.z)?;
        let mut states: Vec<PauliVec> = xs.states;
        for z in zs.states.into_iter().skip(1) {
            states.push(PauliVec {
                x: p.x.clone(),
                z: z.z,
            });
        }
        let energies = states
            .iter()
            .map(|s| energy_quantum(code, s))
            .collect::<Result<Vec<_>>>()?;
        Ok(PathRecord::new(states, energies))
    }
}

/// Targets for [`pauli_barrier_general`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PauliTarget {
    Exact(PauliVec),
    AnyNontrivialLogical,
}

fn pauli_landscape(code: &HgpCode) -> LinearLandscape {
    let n = code.num_qubits();
    let (hx, hz) = (code.hx(), code.hz());
    let mut m = BitMatrix::zeros(hz.rows() + hx.rows(), 2 * n);
    for (i, row) in hz.row_iter().enumerate() {
        for q in row.ones_iter() {
            m.set(i, q, true);
        }
    }
    for (i, row) in hx.row_iter().enumerate() {
        for q in row.ones_iter() {
            m.set(hz.rows() + i, n + q, true);
        }
    }
    let mut moves = Vec::with_capacity(3 * n);
    moves.extend((0..n).map(|q| 1u64 << q));
    moves.extend((0..n).map(|q| 1u64 << (n + q)));
    moves.extend((0..n).map(|q| 1u64 << q | 1u64 << (n + q)));
    LinearLandscape::with_moves(&m, moves)
}

fn pauli_to_mask(p: &PauliVec) -> u64 {
    let n = p.num_qubits();
    p.x.to_u64().expect("fits") | p.z.to_u64().expect("fits") << n
}

fn mask_to_pauli(n: usize, s: u64) -> PauliVec {
    let low = (1u64 << n) - 1;
    PauliVec {
        x: BitVec::from_u64(n, s & low),
        z: BitVec::from_u64(n, s >> n & low),
    }
}

fn check_pauli_cap(code: &HgpCode, cap: u64) -> Result<()> {
    ensure_within_cap(2 * code.num_qubits(), cap)
}

/// Exact minimax over `{I, X, Y, Z}^N` where a step replaces one qubit's Pauli
/// by any other. Requires `4^N ≤ cap`.
pub fn pauli_barrier_general(
    code: &HgpCode,
    target: &PauliTarget,
    cap: u64,
) -> Result<BarrierResult<PauliVec>> {
    let n = code.num_qubits();
    check_pauli_cap(code, cap)?;
    let land = pauli_landscape(code);
    let raw = match target {
        PauliTarget::Exact(p) => {
            check_len("target", p.num_qubits(), n)?;
            let goal = pauli_to_mask(p);
            search(&land, |s, _| s == goal, cap)?
        }
        PauliTarget::AnyNontrivialLogical => {
            if code.num_logicals() == 0 {
                return Err(Error::NoLogicals);
            }
            let xs = code.hx().rref();
            let zs = code.hz().rref();
            search(
                &land,
                |s, e| {
                    let p = mask_to_pauli(n, s);
                    e == 0 && !(xs.contains(&p.x) && zs.contains(&p.z))
                },
                cap,
            )?
        }
    }
    .ok_or(Error::NoTarget)?;
    let states: Vec<PauliVec> = raw.path.iter().map(|&s| mask_to_pauli(n, s)).collect();
    Ok(BarrierResult {
        value: raw.value as usize,
        target: states.last().expect("non-empty").clone(),
        witness: PathRecord::new(states, raw.energies.iter().map(|&e| e as usize).collect()),
        explored: raw.explored,
        exact: true,
    })
}

/// Exact barriers from the identity to every Pauli operator.
pub struct PauliField {
    n: usize,
    field: MinimaxField<LinearLandscape>,
}

impl PauliField {
    pub fn new(code: &HgpCode, cap: u64) -> Result<Self> {
        check_pauli_cap(code, cap)?;
        Ok(Self {
            n: code.num_qubits(),
            field: MinimaxField::explore(pauli_landscape(code), cap)?,
        })
    }

    pub fn value(&self, p: &PauliVec) -> Result<usize> {
        check_len("operator", p.num_qubits(), self.n)?;
        Ok(self
            .field
            .value(pauli_to_mask(p))
            .expect("single-qubit moves reach every state") as usize)
    }

    pub fn path_to(&self, p: &PauliVec) -> Result<PathRecord<PauliVec>> {
        check_len("operator", p.num_qubits(), self.n)?;
        let land = self.field.landscape();
        let states = self.field.path_to(pauli_to_mask(p));
        Ok(PathRecord::new(
            states.iter().map(|&s| mask_to_pauli(self.n, s)).collect(),
            states.iter().map(|&s| land.energy(s) as usize).collect(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{open_repetition, ring_repetition};
    use crate::logicals::{canonical_z_basis, PauliClass};

    fn toric() -> HgpCode {
        HgpCode::build(&ring_repetition(3), &ring_repetition(3))
    }

    fn surface() -> HgpCode {
        HgpCode::build(&open_repetition(3), &open_repetition(3))
    }

    #[test]
    fn energy_examples() {
        let c = open_repetition(3);
        assert_eq!(energy_classical(&c, &BitVec::zeros(3)).unwrap(), 0);
        assert_eq!(energy_classical(&c, &BitVec::ones(3)).unwrap(), 0);
        assert_eq!(
            energy_classical(&c, &BitVec::parse("010").unwrap()).unwrap(),
            2
        );
        assert!(energy_classical(&c, &BitVec::zeros(2)).is_err());
        let t = toric();
        assert_eq!(energy_quantum(&t, &PauliVec::identity(18)).unwrap(), 0);
        assert_eq!(
            energy_quantum(&t, &PauliVec::from_z(BitVec::unit(18, 0))).unwrap(),
            2
        );
        for row in t.hx().row_iter() {
            assert_eq!(
                energy_quantum(&t, &PauliVec::from_x(row.clone())).unwrap(),
                0
            );
        }
    }

    #[test]
    fn classical_examples() {
        assert_eq!(
            classical_barrier(&ring_repetition(5), 1 << 10)
                .unwrap()
                .value,
            2
        );
        assert_eq!(
            classical_barrier(&open_repetition(5), 1 << 10)
                .unwrap()
                .value,
            1
        );
        let id = ClassicalCode::from_matrix(BitMatrix::identity(3)).unwrap();
        assert_eq!(classical_barrier(&id, 1 << 10), Err(Error::NoLogicals));
        assert!(matches!(
            classical_barrier(&ring_repetition(12), 1 << 10),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn bottleneck_examples() {
        let c = open_repetition(4);
        let e = |x: &BitVec| energy_classical(&c, x).unwrap();
        let r = bottleneck_search(4, e, |x| x.is_zero(), 16).unwrap();
        assert_eq!((r.value, r.witness.num_steps()), (0, 0));
        let r = bottleneck_search(4, e, |x| x.weight() == 4, 16).unwrap();
        assert_eq!(r.value, 1);
        let ring = ring_repetition(4);
        let r = bottleneck_search(
            4,
            |x| energy_classical(&ring, x).unwrap(),
            |x| x.weight() == 4,
            16,
        )
        .unwrap();
        assert_eq!(r.value, 2);
        assert_eq!(
            bottleneck_search(4, e, |x| x.len() == 5, 16),
            Err(Error::NoTarget)
        );
    }

    #[test]
    fn quantum_examples() {
        let t = toric();
        assert_eq!(quantum_barrier(&t, Sector::Both, 1 << 20).unwrap().value, 2);
        let s = surface();
        let r = quantum_barrier(&s, Sector::Z, 1 << 20).unwrap();
        assert_eq!(r.value, 1);
        assert_eq!(
            classify_target(&s, &r.target),
            PauliClass::NontrivialLogical
        );
        let id = ClassicalCode::from_matrix(BitMatrix::identity(2)).unwrap();
        assert_eq!(
            quantum_barrier(&HgpCode::build(&id, &id), Sector::Both, 1 << 20),
            Err(Error::NoLogicals)
        );
        assert!(matches!(
            quantum_barrier(&t, Sector::Z, 1 << 10),
            Err(Error::CapExceeded { .. })
        ));
    }

    fn classify_target(code: &HgpCode, p: &PauliVec) -> PauliClass {
        crate::logicals::classify(code, p).unwrap()
    }

    #[test]
    fn witnesses_are_valid() {
        let s = surface();
        let r = quantum_barrier(&s, Sector::Both, 1 << 20).unwrap();
        assert_eq!(r.witness.first_bad_step(), None);
        assert!(r.witness.energies_match(|p| energy_quantum(&s, p).unwrap()));
        assert_eq!(r.witness.max_energy, r.value);
        assert_eq!(r.witness.endpoint(), &r.target);
        assert!(r.witness.start().is_identity());
    }

    #[test]
    fn field_agrees_with_targeted_search() {
        let t = toric();
        let field = SectorField::new(&t, PauliKind::Z, 1 << 20).unwrap();
        assert_eq!(field.code_barrier(), Some(2));
        for op in canonical_z_basis(&t).unwrap() {
            let direct = sector_barrier_to(&t, PauliKind::Z, &op.realized.z, 1 << 20).unwrap();
            assert_eq!(field.value(&op.realized.z).unwrap(), direct.value);
            let b = field.barrier_to(&op.realized.z).unwrap();
            assert_eq!(b.witness.endpoint(), &op.realized);
        }
    }

    #[test]
    fn pauli_general_small() {
        let c = HgpCode::build(&open_repetition(2), &open_repetition(2));
        assert_eq!(c.num_qubits(), 5);
        let id =
            pauli_barrier_general(&c, &PauliTarget::Exact(PauliVec::identity(5)), 1 << 10).unwrap();
        assert_eq!(id.value, 0);
        let any = pauli_barrier_general(&c, &PauliTarget::AnyNontrivialLogical, 1 << 10).unwrap();
        let both = quantum_barrier(&c, Sector::Both, 1 << 10).unwrap();
        assert_eq!(any.value, both.value);
        assert_eq!(any.witness.first_bad_step(), None);
        assert!(matches!(
            pauli_barrier_general(&toric(), &PauliTarget::AnyNontrivialLogical, 1 << 20),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn pair_path_matches_value() {
        let s = surface();
        let pair = SectorPair::new(&s, 1 << 20).unwrap();
        let mut p = PauliVec::from_z(s.hz().row(0).clone());
        p.x = s.hx().row(1).clone();
        let path = pair.path_to(&s, &p).unwrap();
        assert_eq!(path.max_energy, pair.value(&p).unwrap());
        assert_eq!(path.endpoint(), &p);
        assert_eq!(path.first_bad_step(), None);
    }

    #[test]
    fn witness_json_shape() {
        let r = classical_barrier(&open_repetition(3), 1 << 10).unwrap();
        let w = r.witness.witness_json();
        let steps = w.as_array().unwrap();
        assert_eq!(steps.len(), 4);
        assert_eq!(steps[0]["flipped_qubit"], Value::Null);
        assert_eq!(steps[1]["pauli_change"], json!("0->1"));
    }

    #[test]
    fn canonicalize_drops_repeats() {
        let a = BitVec::zeros(2);
        let b = BitVec::unit(2, 0);
        let p = PathRecord::new(vec![a.clone(), a.clone(), b.clone(), b], vec![0, 0, 1, 1]);
        let c = p.canonicalize();
        assert_eq!(c.states.len(), 2);
        assert_eq!(c.max_energy, 1);
    }
}
