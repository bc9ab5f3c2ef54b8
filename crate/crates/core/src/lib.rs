//! Energy barriers of hypergraph product codes.
//!
//! Dense GF(2) algebra, classical and product codes, exact bottleneck searches
//! over configuration space, and checkers that test the barrier relations on
//! concrete instances.

pub mod barrier;
pub mod codes;
pub mod deform;
pub mod error;
pub mod f2;
pub mod hgp;
pub mod logicals;
pub mod verify;

pub use barrier::{BarrierResult, PathRecord, Sector};
pub use codes::{ClassicalCode, CodeParams, ExtNat};
pub use error::{Error, Result};
pub use f2::{BitMatrix, BitVec};
pub use hgp::{Block, HgpCode, QuantumParams};
pub use logicals::{CanonicalOp, PauliClass, PauliKind, PauliVec};
