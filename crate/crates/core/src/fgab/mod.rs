//! Finitely generated abelian groups: presentations, subgroups, purity,
//! complements and torsion.

pub mod group;
pub mod hnf;
pub mod matrix;
pub mod purity;
pub mod snf;
pub mod subgroup;
pub mod torsion;

pub use group::FgAbGroup;
pub use hnf::ColumnHnf;
pub use matrix::{int_vec, Int, IntMatrix};
pub use purity::{direct_complement, is_complement, is_pure, purity_witness, quotient_torsion_exponent};
pub use snf::{smith_normal_form, Snf};
pub use subgroup::{decompose_over, sum_all, Subgroup};
pub use torsion::{exponent, TorsionSplit};
