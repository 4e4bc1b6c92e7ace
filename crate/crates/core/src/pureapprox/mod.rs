//! Finitely generated approximations of lattice homomorphisms that satisfy
//! the purity condition: torsion and torsion-free parts, the torsion case,
//! the general case and the two-element-chain purity witness.

mod approx;
mod parts;

pub use approx::{approx_torsion, pure_approximation, pure_witness, ApproxResult, CertEntry, PureWitness};
pub use parts::{hom_m_torsion, hom_torsion_parts, TorsionParts};
