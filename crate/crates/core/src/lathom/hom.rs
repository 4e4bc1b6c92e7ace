use std::fmt;

use crate::dlat::{FinDistLattice, LatElem};
use crate::error::{Error, Result};
use crate::fgab::{is_pure, FgAbGroup, Subgroup};

/// A map `u -> G_u` from a finite distributive lattice to subgroups of `G`.
///
/// Construction only checks totality and ambient groups; use
/// [`validate_hom`] for the lattice laws.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupHom {
    domain: FinDistLattice,
    group: FgAbGroup,
    table: Vec<Subgroup>,
}

impl SubgroupHom {
    /// `table[i]` is the value at the `i`-th element of `domain.elements()`.
    pub fn new(domain: FinDistLattice, group: FgAbGroup, table: Vec<Subgroup>) -> Result<Self> {
        let n = domain.len()?;
        if table.len() != n {
            return Err(Error::PreconditionViolated(format!("table has {} entries for {n} elements", table.len())));
        }
        if table.iter().any(|s| !s.group().same_as(&group)) {
            return Err(Error::AmbientMismatch);
        }
        Ok(SubgroupHom { domain, group, table })
    }

    pub fn from_fn(
        domain: FinDistLattice,
        group: FgAbGroup,
        mut f: impl FnMut(LatElem) -> Result<Subgroup>,
    ) -> Result<Self> {
        let table = domain.elements()?.iter().map(|&u| f(u)).collect::<Result<Vec<_>>>()?;
        Self::new(domain, group, table)
    }

    /// The same lattice with every value replaced by `f(u, G_u)`, possibly in
    /// another group.
    pub fn map_values(
        &self,
        group: &FgAbGroup,
        mut f: impl FnMut(LatElem, &Subgroup) -> Result<Subgroup>,
    ) -> Result<Self> {
        let els = self.domain.elements()?;
        let table = els.iter().zip(&self.table).map(|(&u, s)| f(u, s)).collect::<Result<Vec<_>>>()?;
        Self::new(self.domain.clone(), group.clone(), table)
    }

    pub fn domain(&self) -> &FinDistLattice {
        &self.domain
    }

    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }

    pub fn table(&self) -> &[Subgroup] {
        &self.table
    }

    pub fn value(&self, u: LatElem) -> &Subgroup {
        let i = self.domain.index_of(u).unwrap_or_else(|| panic!("{u:?} is not an element of the domain"));
        &self.table[i]
    }

    /// `G_p` for a join-irreducible point `p`.
    pub fn at_point(&self, p: usize) -> &Subgroup {
        self.value(self.domain.jirr(p))
    }

    pub fn bottom_value(&self) -> &Subgroup {
        self.value(self.domain.bottom())
    }

    pub fn top_value(&self) -> &Subgroup {
        self.value(self.domain.top())
    }

    /// Every `G_u` is finitely generated here; true when all are finite too.
    pub fn is_torsion_valued(&self) -> bool {
        self.top_value().is_finite()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Law {
    Join,
    Meet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawViolation {
    pub law: Law,
    pub u: LatElem,
    pub v: LatElem,
}

impl fmt::Display for LawViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (op, law) = match self.law {
            Law::Join => ("+", "G_(u v v)"),
            Law::Meet => ("∩", "G_(u ^ v)"),
        };
        write!(f, "G_u {op} G_v != {law} for u = {{{}}}, v = {{{}}}", self.u.key(), self.v.key())
    }
}

/// Every violated instance of the join and meet laws.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HomReport {
    pub violations: Vec<LawViolation>,
}

impl HomReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn validate_hom(phi: &SubgroupHom) -> Result<HomReport> {
    let els = phi.domain.elements()?;
    let mut violations = Vec::new();
    for (i, &u) in els.iter().enumerate() {
        for &v in &els[i..] {
            let (gu, gv) = (phi.value(u), phi.value(v));
            if gu.sum(gv)? != *phi.value(u.join(v)) {
                violations.push(LawViolation { law: Law::Join, u, v });
            }
            if gu.intersection(gv)? != *phi.value(u.meet(v)) {
                violations.push(LawViolation { law: Law::Meet, u, v });
            }
        }
    }
    Ok(HomReport { violations })
}

/// First covering pair `u < v` with `G_u` not pure in `G_v`.
///
/// Purity is transitive, so covering pairs are enough.
pub fn purity_violation(phi: &SubgroupHom) -> Result<Option<(LatElem, LatElem)>> {
    for (u, v) in phi.domain.covers()? {
        if !is_pure(phi.value(u), phi.value(v))? {
            return Ok(Some((u, v)));
        }
    }
    Ok(None)
}

/// `G_u` is pure in `G_v` whenever `u <= v`. Expects a valid homomorphism.
pub fn check_purity_condition(phi: &SubgroupHom) -> Result<bool> {
    Ok(purity_violation(phi)?.is_none())
}

/// Errors with [`Error::PreconditionViolated`] unless `phi` is a lattice homomorphism.
pub(crate) fn require_valid(phi: &SubgroupHom) -> Result<()> {
    let report = validate_hom(phi)?;
    match report.violations.first() {
        None => Ok(()),
        Some(v) => Err(Error::PreconditionViolated(format!("not a lattice homomorphism: {v}"))),
    }
}

/// Errors with [`Error::PurityRequired`] unless `phi` satisfies the purity condition.
pub(crate) fn require_purity(phi: &SubgroupHom) -> Result<()> {
    match purity_violation(phi)? {
        None => Ok(()),
        Some((u, v)) => Err(Error::PurityRequired(format!("G_{{{}}} is not pure in G_{{{}}}", u.key(), v.key()))),
    }
}
