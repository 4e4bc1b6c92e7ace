//! Regular refinement monoids: Cayley tables, semilattice-of-groups
//! presentations, axiom checks, covers and retracts.

mod axioms;
mod blocks;
mod cover;
mod decompose;
mod monoid;
mod presentation;
mod retract;

pub use axioms::{check_monoid_axioms, check_presentation_axioms, AxiomReport, Check};
pub use blocks::{block_monoid, recognize_blocks, BlockKind, BlockSpec, BlockSum};
pub use cover::{fg_submonoid_cover, Cover};
pub use decompose::{decompose_regular, presentation_of, regularity_witness, Decomposition, MonoidPresentation};
pub use monoid::FinMonoid;
pub use presentation::{PresentationReport, SogElement, SogPresentation};
pub use retract::{retract_witness, Retract, EXHAUSTIVE_BOUND};
