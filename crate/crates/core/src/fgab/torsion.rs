//! Torsion subgroup, `m`-torsion, and the projection onto `G/T(G)`.

use num_integer::Integer;
use num_traits::Zero;

use super::group::FgAbGroup;
use super::hnf::solve;
use super::matrix::{Int, IntMatrix};
use super::subgroup::Subgroup;
use crate::error::{Error, Result};

/// Torsion data of a group, read off the Smith form of its relations.
///
/// With `U R V = D` and `y = U x`, the torsion part lives in the first
/// `rho` coordinates and the torsion-free quotient in the remaining ones.
#[derive(Clone, Debug)]
pub struct TorsionSplit {
    group: FgAbGroup,
    torsion: Subgroup,
    quotient: FgAbGroup,
    /// `f x n`: the last `f` rows of `U`.
    projection: IntMatrix,
}

impl TorsionSplit {
    pub fn new(group: &FgAbGroup) -> Self {
        let snf = group.snf();
        let rho = group.relation_rank();
        let n = group.rank();
        let torsion_gens: Vec<Vec<Int>> = (0..rho).map(|i| snf.u_inv.column(i)).collect();
        let torsion = Subgroup::new(group, torsion_gens).expect("dimensions agree");
        let quotient = FgAbGroup::free(n - rho);
        let projection = snf.u.row_range(rho, n);
        TorsionSplit { group: group.clone(), torsion, quotient, projection }
    }

    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }

    /// `T(G)`.
    pub fn torsion(&self) -> &Subgroup {
        &self.torsion
    }

    /// `G/T(G)`, presented as a free group.
    pub fn quotient(&self) -> &FgAbGroup {
        &self.quotient
    }

    /// `G[m] = {x : m x = 0}`.
    pub fn m_torsion(&self, m: &Int) -> Result<Subgroup> {
        if m <= &Int::zero() {
            return Err(Error::PreconditionViolated("m must be positive".into()));
        }
        let snf = self.group.snf();
        let diag = snf.diagonal();
        let gens: Vec<Vec<Int>> = (0..self.group.relation_rank())
            .map(|i| {
                let k = &diag[i] / diag[i].gcd(m);
                snf.u_inv.column(i).iter().map(|x| x * &k).collect()
            })
            .collect();
        Subgroup::new(&self.group, gens)
    }

    pub fn project(&self, x: &[Int]) -> Result<Vec<Int>> {
        self.group.check_len(x)?;
        Ok(self.projection.mul_vec(x))
    }

    pub fn project_subgroup(&self, h: &Subgroup) -> Result<Subgroup> {
        if !h.group().same_as(&self.group) {
            return Err(Error::AmbientMismatch);
        }
        let gens = h.generators().iter().map(|g| self.projection.mul_vec(g)).collect();
        Subgroup::new(&self.quotient, gens)
    }

    /// Some `x ∈ h` with `project(x) == xbar`.
    pub fn lift(&self, xbar: &[Int], h: &Subgroup) -> Result<Vec<Int>> {
        if !h.group().same_as(&self.group) {
            return Err(Error::AmbientMismatch);
        }
        self.quotient.check_len(xbar)?;
        let images: Vec<Vec<Int>> = h.generators().iter().map(|g| self.projection.mul_vec(g)).collect();
        let m = IntMatrix::from_columns(self.quotient.rank(), &images);
        let c = solve(&m, xbar).ok_or(Error::NoPreimage)?;
        let mut x = vec![Int::zero(); self.group.rank()];
        for (ci, g) in c.iter().zip(h.generators()) {
            if ci.is_zero() {
                continue;
            }
            for (xi, gi) in x.iter_mut().zip(g) {
                *xi += ci * gi;
            }
        }
        self.group.reduce(&x)
    }

    /// `T(h) = h ∩ T(G)`.
    pub fn torsion_of(&self, h: &Subgroup) -> Result<Subgroup> {
        h.intersection(&self.torsion)
    }
}

/// Least `m > 0` killing every generator of `h`, or `None` if `h` is not torsion.
pub fn exponent(h: &Subgroup) -> Option<Int> {
    let g = h.group();
    h.generators().iter().try_fold(Int::from(1), |acc, x| g.element_order(x).map(|o| acc.lcm(&o)))
}
