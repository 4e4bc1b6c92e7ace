//! Deliberately naive brute-force checks, used to cross-validate the
//! algebraic implementations. They rely on the group layer only for element
//! arithmetic, plus subgroup sums and intersections in the infinite purity
//! case.

mod distributive;
mod enumerate;
mod purity;
mod refinement;

pub use distributive::brute_distributive;
pub use purity::brute_purity;
pub use refinement::{brute_refinement, RefinementWitness};

/// Limits on what the brute-force checks will enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    /// Largest carrier or group that will be enumerated.
    pub element_bound: usize,
    /// Largest `n` scanned in the definitional purity test.
    pub multiple_bound: usize,
}

impl OracleBudget {
    pub fn new(element_bound: usize, multiple_bound: usize) -> crate::Result<Self> {
        if element_bound == 0 || multiple_bound == 0 {
            return Err(crate::Error::PreconditionViolated("oracle bounds must be positive".into()));
        }
        Ok(OracleBudget { element_bound, multiple_bound })
    }
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { element_bound: 4096, multiple_bound: 64 }
    }
}
