//! Finite distributive lattices as down-sets of their join-irreducibles,
//! finite semilattices and their ideal lattices.

mod lattice;
mod poset;
mod semilattice;

pub use lattice::{lattice_from_poset, sublattice_generated, FinDistLattice, LatElem, Sublattice, DEFAULT_ELEMENT_BOUND};
pub use poset::{FinPoset, MAX_POINTS};
pub use semilattice::{enumerate_ideals, ideal_lattice, FinSemilattice, IdealLattice};
