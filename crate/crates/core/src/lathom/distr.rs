use super::hom::SubgroupHom;
use crate::dlat::LatElem;
use crate::error::{Error, Result};
use crate::fgab::{sum_all, Subgroup};

/// First pair `x, y` (elements below `scope`) where
/// `a ∩ G_(x v y)` is not contained in `(a ∩ G_x) + (a ∩ G_y)`.
pub(crate) fn violation_below(a: &Subgroup, phi: &SubgroupHom, scope: LatElem) -> Result<Option<(LatElem, LatElem)>> {
    let els: Vec<LatElem> = phi.domain().elements()?.iter().copied().filter(|u| u.leq(scope)).collect();
    let cut = els.iter().map(|&u| a.intersection(phi.value(u))).collect::<Result<Vec<_>>>()?;
    let pos = |u: LatElem| els.iter().position(|&e| e == u).expect("closed under joins");
    for i in 0..els.len() {
        for j in i + 1..els.len() {
            let (x, y) = (els[i], els[j]);
            if x.leq(y) || y.leq(x) {
                continue;
            }
            let rhs = cut[i].sum(&cut[j])?;
            if !cut[pos(x.join(y))].is_subgroup_of(&rhs)? {
                return Ok(Some((x, y)));
            }
        }
    }
    Ok(None)
}

/// First pair `x, y` violating the one-sided distributivity inequality.
pub fn distributivity_violation(a: &Subgroup, phi: &SubgroupHom) -> Result<Option<(LatElem, LatElem)>> {
    violation_below(a, phi, phi.domain().top())
}

/// `u -> a ∩ G_u` is a lattice homomorphism.
pub fn is_distributive_element(a: &Subgroup, phi: &SubgroupHom) -> Result<bool> {
    Ok(distributivity_violation(a, phi)?.is_none())
}

/// A subgroup `a_0 <= G_0` together with `a_p` for each join-irreducible `p`.
///
/// `a_0` lets the family describe elements whose bottom part `a ∩ G_0` is
/// nonzero; with `G_0 = 0` it is always zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistrFamily {
    pub base: Subgroup,
    /// Indexed by the points of the domain poset.
    pub parts: Vec<Subgroup>,
}

impl DistrFamily {
    /// `a_u = a_0 + sum of a_p over p in J(u)`.
    pub fn value_at(&self, u: LatElem) -> Result<Subgroup> {
        let group = self.base.group();
        sum_all(group, std::iter::once(&self.base).chain(u.points().into_iter().map(|p| &self.parts[p])))
    }

    /// `vec A <= vec B` componentwise.
    pub fn leq(&self, other: &DistrFamily) -> Result<bool> {
        if !self.base.is_subgroup_of(&other.base)? {
            return Ok(false);
        }
        for (a, b) in self.parts.iter().zip(&other.parts) {
            if !a.is_subgroup_of(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn invalid(condition: &str, detail: String) -> Error {
    Error::FamilyInvalid { condition: condition.into(), detail }
}

/// First violated condition among (i) containment in `G_p`, (ii)
/// monotonicity and (iii) `a_p ∩ G_(p_*) = a_(p_*)`.
pub fn family_violation(f: &DistrFamily, phi: &SubgroupHom) -> Result<Option<Error>> {
    let d = phi.domain();
    let k = d.num_join_irreducibles();
    if f.parts.len() != k {
        return Ok(Some(invalid("i", format!("{} parts for {k} join-irreducibles", f.parts.len()))));
    }
    if !f.base.is_subgroup_of(phi.bottom_value())? {
        return Ok(Some(invalid("i", "a_0 is not contained in G_0".into())));
    }
    for &p in d.join_irreducibles() {
        if !f.parts[p].is_subgroup_of(phi.at_point(p))? {
            return Ok(Some(invalid("i", format!("a_{p} is not contained in G_{p}"))));
        }
    }
    for &p in d.join_irreducibles() {
        if !f.base.is_subgroup_of(&f.parts[p])? {
            return Ok(Some(invalid("ii", format!("a_0 is not contained in a_{p}"))));
        }
        for &q in d.join_irreducibles() {
            if p != q && d.poset().leq(p, q) && !f.parts[p].is_subgroup_of(&f.parts[q])? {
                return Ok(Some(invalid("ii", format!("{p} <= {q} but a_{p} is not contained in a_{q}"))));
            }
        }
    }
    for &p in d.join_irreducibles() {
        let low = d.lower_cover(p);
        if f.parts[p].intersection(phi.value(low))? != f.value_at(low)? {
            return Ok(Some(invalid("iii", format!("a_{p} ∩ G_(p_*) differs from a_(p_*)"))));
        }
    }
    Ok(None)
}

/// `a_0 = a ∩ G_0`, `a_p = a ∩ G_p`, with conditions (iii) and (iv) checked.
pub fn chardistr_extract(a: &Subgroup, phi: &SubgroupHom) -> Result<DistrFamily> {
    if !a.is_subgroup_of(phi.top_value())? {
        return Err(Error::PreconditionViolated("a is not contained in G_1".into()));
    }
    let d = phi.domain();
    let base = a.intersection(phi.bottom_value())?;
    let parts = (0..d.num_join_irreducibles()).map(|p| a.intersection(phi.at_point(p))).collect::<Result<Vec<_>>>()?;
    let fam = DistrFamily { base, parts };
    for &p in d.join_irreducibles() {
        let low = d.lower_cover(p);
        if fam.parts[p].intersection(phi.value(low))? != fam.value_at(low)? {
            return Err(Error::NotDistributive(format!(
                "condition (iii) fails at join-irreducible {p}: a ∩ G_(p_*) is not the sum of the a_q below"
            )));
        }
    }
    if fam.value_at(d.top())? != *a {
        return Err(Error::NotDistributive("condition (iv) fails: a is not the sum of the a_p".into()));
    }
    Ok(fam)
}

/// `a = a_0 + sum a_p`, after checking (i)-(iii). The result is verified to
/// be distributive with `a ∩ G_u = a_u` for every `u`.
pub fn chardistr_reconstruct(f: &DistrFamily, phi: &SubgroupHom) -> Result<Subgroup> {
    if let Some(e) = family_violation(f, phi)? {
        return Err(e);
    }
    let d = phi.domain();
    let a = f.value_at(d.top())?;
    for &u in d.elements()? {
        if a.intersection(phi.value(u))? != f.value_at(u)? {
            return Err(Error::Internal(format!("a ∩ G_u != a_u at u = {{{}}}", u.key())));
        }
    }
    if !is_distributive_element(&a, phi)? {
        return Err(Error::Internal("reconstructed subgroup is not distributive".into()));
    }
    Ok(a)
}
