use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, Zero};

use super::group::FgAbGroup;
use super::hnf::{solve_with, ColumnHnf, HnfTransform};
use super::matrix::{is_zero_vec, Int, IntMatrix};
use super::snf::smith_normal_form;
use crate::error::{Error, Result};

/// A subgroup of an [`FgAbGroup`], stored as the canonical HNF of its
/// preimage lattice in `Z^n` (generators stacked with the relations).
#[derive(Clone)]
pub struct Subgroup {
    group: FgAbGroup,
    generators: Vec<Vec<Int>>,
    lattice: ColumnHnf,
    solver: OnceLock<HnfTransform>,
}

impl Subgroup {
    pub fn new(group: &FgAbGroup, generators: Vec<Vec<Int>>) -> Result<Self> {
        let mut gens = Vec::with_capacity(generators.len());
        for g in &generators {
            gens.push(group.reduce(g)?);
        }
        let n = group.rank();
        let stacked = IntMatrix::from_columns(n, &gens).hcat(group.relation_lattice().basis());
        let lattice = ColumnHnf::new(&stacked);
        Ok(Subgroup { group: group.clone(), generators: gens, lattice, solver: OnceLock::new() })
    }

    pub fn from_ints<T: Into<Int> + Copy>(group: &FgAbGroup, generators: &[&[T]]) -> Result<Self> {
        Self::new(group, generators.iter().map(|g| g.iter().map(|&x| x.into()).collect()).collect())
    }

    /// Subgroup whose preimage lattice is `lattice` (which must contain the relations).
    pub(crate) fn from_lattice(group: &FgAbGroup, lattice: ColumnHnf) -> Self {
        debug_assert!(lattice.contains_lattice(group.relation_lattice()));
        let mut seen = BTreeSet::new();
        let generators: Vec<Vec<Int>> = lattice
            .basis_columns()
            .into_iter()
            .map(|c| group.relation_lattice().reduce(&c))
            .filter(|c| !is_zero_vec(c) && seen.insert(c.clone()))
            .collect();
        Subgroup { group: group.clone(), generators, lattice, solver: OnceLock::new() }
    }

    /// Generators read off the canonical form; equal subgroups give equal lists.
    pub fn canonical_generators(&self) -> Vec<Vec<Int>> {
        Self::from_lattice(&self.group, self.lattice.clone()).generators
    }

    pub fn zero(group: &FgAbGroup) -> Self {
        Self::from_lattice(group, group.relation_lattice().clone())
    }

    pub fn whole(group: &FgAbGroup) -> Self {
        let n = group.rank();
        Self::from_lattice(group, ColumnHnf::new(&IntMatrix::identity(n)))
    }

    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }

    pub fn generators(&self) -> &[Vec<Int>] {
        &self.generators
    }

    /// Column HNF of `[generators | relations]`; equal iff the subgroups are equal.
    pub fn canonical_form(&self) -> &ColumnHnf {
        &self.lattice
    }

    pub fn is_trivial(&self) -> bool {
        self.lattice == *self.group.relation_lattice()
    }

    fn check_same(&self, other: &Subgroup) -> Result<()> {
        if self.group.same_as(&other.group) {
            Ok(())
        } else {
            Err(Error::AmbientMismatch)
        }
    }

    pub fn contains(&self, x: &[Int]) -> Result<bool> {
        self.group.check_len(x)?;
        Ok(self.lattice.contains(x))
    }

    fn solver(&self) -> &HnfTransform {
        self.solver.get_or_init(|| {
            let n = self.group.rank();
            let stacked = IntMatrix::from_columns(n, &self.generators)
                .hcat(self.group.relation_lattice().basis());
            ColumnHnf::with_transform(&stacked)
        })
    }

    /// Integer coefficients expressing `x` in terms of [`Self::generators`]
    /// modulo the relations, or `None` when `x` is not in the subgroup.
    pub fn membership_witness(&self, x: &[Int]) -> Result<Option<Vec<Int>>> {
        self.group.check_len(x)?;
        Ok(solve_with(self.solver(), x).map(|mut c| {
            c.truncate(self.generators.len());
            c
        }))
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> Result<bool> {
        self.check_same(other)?;
        Ok(other.lattice.contains_lattice(&self.lattice))
    }

    pub fn sum(&self, other: &Subgroup) -> Result<Subgroup> {
        self.check_same(other)?;
        Ok(Subgroup::from_lattice(&self.group, self.lattice.sum(&other.lattice)))
    }

    pub fn intersection(&self, other: &Subgroup) -> Result<Subgroup> {
        self.check_same(other)?;
        Ok(Subgroup::from_lattice(&self.group, self.lattice.intersection(&other.lattice)))
    }

    /// `k * self`.
    pub fn scaled(&self, k: &Int) -> Subgroup {
        let gens = self.generators.iter().map(|g| self.group.scale(k, g)).collect();
        Subgroup::new(&self.group, gens).expect("generators already reduced")
    }

    /// Image of `x` under the coordinates of `self` as a free module: the
    /// coordinates of the preimage lattice basis, used for relative algebra.
    pub(crate) fn lattice_coordinates(&self, inner: &ColumnHnf) -> Option<IntMatrix> {
        let rows = self.lattice.rank();
        let cols: Option<Vec<Vec<Int>>> =
            inner.basis_columns().iter().map(|c| self.lattice.coordinates(c)).collect();
        cols.map(|c| IntMatrix::from_columns(rows, &c))
    }

    /// Invariant factors of `sup / self` (units dropped, zeros for free rank).
    pub fn quotient_invariants(&self, sup: &Subgroup) -> Result<Vec<Int>> {
        self.check_same(sup)?;
        let rel = sup.lattice_coordinates(&self.lattice).ok_or(Error::NotContained)?;
        let snf = smith_normal_form(&rel);
        let rank = snf.rank();
        let mut out: Vec<Int> =
            snf.diagonal().into_iter().take(rank).filter(|d| !d.is_one()).collect();
        out.extend(std::iter::repeat_n(Int::zero(), sup.lattice.rank() - rank));
        Ok(out)
    }

    /// Isomorphism type of the subgroup itself.
    pub fn invariants(&self) -> Vec<Int> {
        Subgroup::zero(&self.group).quotient_invariants(self).expect("zero is contained")
    }

    pub fn is_finite(&self) -> bool {
        self.lattice.rank() == self.group.relation_lattice().rank()
    }

    pub fn order(&self) -> Option<Int> {
        self.is_finite().then(|| self.invariants().iter().product())
    }

    /// All elements (canonical representatives, sorted), if there are at most `bound`.
    pub fn elements(&self, bound: usize) -> Result<Vec<Vec<Int>>> {
        if !self.is_finite() {
            return Err(Error::BudgetExceeded("subgroup is infinite".into()));
        }
        let mut seen = BTreeSet::new();
        let zero = self.group.zero_element();
        seen.insert(zero.clone());
        let mut queue = VecDeque::from([zero]);
        while let Some(x) = queue.pop_front() {
            for g in &self.generators {
                let y = self.group.add(&x, g);
                if seen.insert(y.clone()) {
                    if seen.len() > bound {
                        return Err(Error::BudgetExceeded(format!(
                            "more than {bound} elements"
                        )));
                    }
                    queue.push_back(y);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }
}

/// Splits `x` as a sum `x = x_0 + ... + x_k` with `x_i` in `parts[i]`.
///
/// Returns `None` when `x` is not in the sum of the parts. The split is the
/// first solution of the stacked membership solve; it is unique only when
/// the sum is direct.
pub fn decompose_over(x: &[Int], parts: &[&Subgroup], group: &FgAbGroup) -> Result<Option<Vec<Vec<Int>>>> {
    group.check_len(x)?;
    for p in parts {
        if !p.group.same_as(group) {
            return Err(Error::AmbientMismatch);
        }
    }
    let n = group.rank();
    let gens: Vec<Vec<Int>> = parts.iter().flat_map(|p| p.generators.iter().cloned()).collect();
    let stacked = IntMatrix::from_columns(n, &gens).hcat(group.relation_lattice().basis());
    let t = ColumnHnf::with_transform(&stacked);
    let Some(c) = solve_with(&t, x) else { return Ok(None) };
    let mut out = Vec::with_capacity(parts.len());
    let mut k = 0;
    for p in parts {
        let mut comp = vec![Int::zero(); n];
        for g in &p.generators {
            if !c[k].is_zero() {
                for (ci, gi) in comp.iter_mut().zip(g) {
                    *ci += &c[k] * gi;
                }
            }
            k += 1;
        }
        out.push(group.reduce(&comp)?);
    }
    Ok(Some(out))
}

/// Sum of an arbitrary family (the zero subgroup when empty).
pub fn sum_all<'a>(group: &FgAbGroup, parts: impl IntoIterator<Item = &'a Subgroup>) -> Result<Subgroup> {
    let mut gens = Vec::new();
    for p in parts {
        if !p.group.same_as(group) {
            return Err(Error::AmbientMismatch);
        }
        gens.extend(p.generators.iter().cloned());
    }
    Subgroup::new(group, gens)
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.group.same_as(&other.group) && self.lattice == other.lattice
    }
}

impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.lattice.hash(state);
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .generators
            .iter()
            .map(|g| {
                let parts: Vec<String> = g.iter().map(ToString::to_string).collect();
                format!("({})", parts.join(","))
            })
            .collect();
        write!(f, "<{}>", gens.join(", "))
    }
}
