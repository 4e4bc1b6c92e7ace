//! Lattice homomorphisms from finite distributive lattices into subgroup
//! lattices, distributive subgroups and distributive envelopes.

mod distr;
mod envelope;
mod hom;

pub use distr::{
    chardistr_extract, chardistr_reconstruct, distributivity_violation, family_violation, is_distributive_element,
    DistrFamily,
};
pub use envelope::{distributive_envelope, distributive_envelope_with_stats, Envelope};
pub use hom::{check_purity_condition, purity_violation, validate_hom, HomReport, Law, LawViolation, SubgroupHom};
pub(crate) use hom::{require_purity, require_valid};
