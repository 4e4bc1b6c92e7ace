use super::enumerate::{enumerate, enumerate_subgroup, ElementSet};
use super::OracleBudget;
use crate::error::{Error, Result};
use crate::fgab::Subgroup;
use crate::lathom::SubgroupHom;

/// Both lattice laws for `u -> a ∩ G_u`, checked on explicit element sets.
///
/// Requires `a` and every `G_u` to be finite within the budget.
pub fn brute_distributive(a: &Subgroup, phi: &SubgroupHom, budget: &OracleBudget) -> Result<bool> {
    let group = phi.group();
    if !a.group().same_as(group) {
        return Err(Error::AmbientMismatch);
    }
    let aset = enumerate_subgroup(a, budget.element_bound)?;
    let els = phi.domain().elements()?;
    let mut cut: Vec<ElementSet> = Vec::with_capacity(els.len());
    for s in phi.table() {
        let e = enumerate_subgroup(s, budget.element_bound)?;
        cut.push(e.intersection(&aset).cloned().collect());
    }
    let at = |u| phi.domain().index_of(u).expect("element");
    for (i, &u) in els.iter().enumerate() {
        for (j, &v) in els.iter().enumerate().skip(i + 1) {
            let meet: ElementSet = cut[i].intersection(&cut[j]).cloned().collect();
            if meet != cut[at(u.meet(v))] {
                return Ok(false);
            }
            let gens: Vec<_> = cut[i].iter().chain(cut[j].iter()).cloned().collect();
            let join = enumerate(group, &gens, budget.element_bound)?;
            if join != cut[at(u.join(v))] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
