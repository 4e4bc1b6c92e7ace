//! Exact algebra for finitely generated abelian groups, finite distributive
//! lattices, lattice homomorphisms into subgroup lattices, regular
//! refinement monoids, and V-monoid bookkeeping for Cuntz-type algebras.

pub mod cli;
pub mod cuntz;
pub mod dlat;
pub mod error;
pub mod fgab;
pub mod lathom;
pub mod oracle;
pub mod pureapprox;
pub mod sogmon;

pub use error::{Error, Result};
