use std::fmt;

use num_traits::Zero;

use crate::dlat::FinSemilattice;
use crate::error::{Error, Result};
use crate::fgab::{is_pure, sum_all, FgAbGroup, Int, Subgroup};

use super::monoid::FinMonoid;

/// The monoid `⊔ {e} × G_e` inside `Λ × G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SogPresentation {
    lam: FinSemilattice,
    group: FgAbGroup,
    groups: Vec<Subgroup>,
}

/// An element `(e, g)` with `g ∈ G_e`; `grp` is kept reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SogElement {
    pub idem: usize,
    pub grp: Vec<Int>,
}

impl fmt::Display for SogElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.grp.iter().map(|x| x.to_string()).collect();
        write!(f, "({}, [{}])", self.idem, g.join(","))
    }
}

impl SogPresentation {
    /// Checks shapes only; see [`SogPresentation::validate`] for the axioms.
    pub fn new(lam: FinSemilattice, group: FgAbGroup, groups: Vec<Subgroup>) -> Result<Self> {
        if groups.len() != lam.size() {
            return Err(Error::InvalidPresentation(format!(
                "{} subgroups for {} idempotents",
                groups.len(),
                lam.size()
            )));
        }
        if groups.iter().any(|s| !s.group().same_as(&group)) {
            return Err(Error::AmbientMismatch);
        }
        Ok(SogPresentation { lam, group, groups })
    }

    pub fn lam(&self) -> &FinSemilattice {
        &self.lam
    }

    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }

    pub fn groups(&self) -> &[Subgroup] {
        &self.groups
    }

    pub fn component(&self, e: usize) -> &Subgroup {
        &self.groups[e]
    }

    pub fn zero(&self) -> SogElement {
        SogElement { idem: self.lam.zero(), grp: self.group.zero_element() }
    }

    /// The idempotent `(e, 0)`.
    pub fn idempotent(&self, e: usize) -> SogElement {
        SogElement { idem: e, grp: self.group.zero_element() }
    }

    pub fn element(&self, idem: usize, grp: &[Int]) -> Result<SogElement> {
        if idem >= self.lam.size() {
            return Err(Error::InvalidElement(format!("idempotent index {idem} out of range")));
        }
        let grp = self.group.reduce(grp).map_err(|e| Error::InvalidElement(e.to_string()))?;
        if !self.groups[idem].contains(&grp)? {
            return Err(Error::InvalidElement(format!("group part is not in G_{}", self.lam.label(idem))));
        }
        Ok(SogElement { idem, grp })
    }

    pub fn contains(&self, x: &SogElement) -> Result<bool> {
        Ok(x.idem < self.lam.size() && self.groups[x.idem].contains(&x.grp)?)
    }

    fn check(&self, x: &SogElement) -> Result<()> {
        if self.contains(x)? {
            Ok(())
        } else {
            Err(Error::InvalidElement(format!("{x} is not an element")))
        }
    }

    pub fn add(&self, x: &SogElement, y: &SogElement) -> Result<SogElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.add_members(x, y))
    }

    /// [`SogPresentation::add`] without the membership checks.
    pub(crate) fn add_members(&self, x: &SogElement, y: &SogElement) -> SogElement {
        SogElement { idem: self.lam.join(x.idem, y.idem), grp: self.group.add(&x.grp, &y.grp) }
    }

    /// `x <= y` iff `x + z = y` for some element `z`: some idempotent `f`
    /// with `e_x + f = e_y` must have `g_y - g_x ∈ G_f`.
    pub fn leq(&self, x: &SogElement, y: &SogElement) -> Result<bool> {
        self.check(x)?;
        self.check(y)?;
        let diff = self.group.sub(&y.grp, &x.grp);
        for f in 0..self.lam.size() {
            if self.lam.join(x.idem, f) == y.idem && self.groups[f].contains(&diff)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Every element, in order of idempotent then group part; refuses
    /// carriers larger than `bound`.
    pub fn elements(&self, bound: usize) -> Result<Vec<SogElement>> {
        let mut out = Vec::new();
        for (e, s) in self.groups.iter().enumerate() {
            let remaining = bound.saturating_sub(out.len());
            let els = s.elements(remaining).map_err(|_| Error::BudgetExceeded(format!("more than {bound} elements")))?;
            out.extend(els.into_iter().map(|grp| SogElement { idem: e, grp }));
            if out.len() > bound {
                return Err(Error::BudgetExceeded(format!("more than {bound} elements")));
            }
        }
        Ok(out)
    }

    /// Cayley table of a finite presentation, numbered as in [`SogPresentation::elements`].
    pub fn to_fin_monoid(&self, bound: usize) -> Result<(FinMonoid, Vec<SogElement>)> {
        let els = self.elements(bound)?;
        let index: std::collections::HashMap<&SogElement, usize> = els.iter().enumerate().map(|(i, x)| (x, i)).collect();
        let mut table = Vec::with_capacity(els.len());
        for x in &els {
            let row = els
                .iter()
                .map(|y| {
                    let s = SogElement { idem: self.lam.join(x.idem, y.idem), grp: self.group.add(&x.grp, &y.grp) };
                    index.get(&s).copied().ok_or_else(|| Error::InvalidPresentation(format!("{x} + {y} leaves the carrier")))
                })
                .collect::<Result<Vec<_>>>()?;
            table.push(row);
        }
        let zero = index[&self.zero()];
        let labels = els.iter().map(|x| self.describe(x)).collect();
        Ok((FinMonoid::with_labels(table, zero, labels)?, els))
    }

    pub fn describe(&self, x: &SogElement) -> String {
        let g: Vec<String> = x.grp.iter().map(|v| v.to_string()).collect();
        format!("({}, [{}])", self.lam.label(x.idem), g.join(","))
    }

    /// Violations of: distributive `Λ`; `G_0 = 0`; each `G_e` pure in
    /// `G_top`; `G_e + G_f = G_(e+f)`; `G_e ∩ G_f = sum of G_g, g <= e, f`.
    pub fn validate(&self) -> Result<PresentationReport> {
        let mut violations = Vec::new();
        let lam = &self.lam;
        if let Some(w) = lam.distributivity_witness()? {
            violations.push(format!("index semilattice is not distributive: {w}"));
        }
        if !self.groups[lam.zero()].is_trivial() {
            violations.push("G_0 is not trivial".into());
        }
        let top = &self.groups[lam.top()];
        for (e, s) in self.groups.iter().enumerate() {
            if !s.is_subgroup_of(top)? || !is_pure(s, top)? {
                violations.push(format!("G_{} is not pure in G_top", lam.label(e)));
            }
        }
        for e in 0..lam.size() {
            for f in e + 1..lam.size() {
                let (ge, gf) = (&self.groups[e], &self.groups[f]);
                if ge.sum(gf)? != self.groups[lam.join(e, f)] {
                    violations.push(format!("G_{} + G_{} != G_({} + {})", lam.label(e), lam.label(f), lam.label(e), lam.label(f)));
                }
                let below: Vec<&Subgroup> =
                    (0..lam.size()).filter(|&g| lam.leq(g, e) && lam.leq(g, f)).map(|g| &self.groups[g]).collect();
                if ge.intersection(gf)? != sum_all(&self.group, below)? {
                    violations.push(format!(
                        "G_{} ∩ G_{} is not the union of the G_g below both",
                        lam.label(e),
                        lam.label(f)
                    ));
                }
            }
        }
        Ok(PresentationReport { violations })
    }

    /// External direct sum; `Λ` is the product semilattice.
    pub fn direct_sum(parts: &[SogPresentation]) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPresentation("empty direct sum".into()));
        }
        let lams: Vec<FinSemilattice> = parts.iter().map(|p| p.lam.clone()).collect();
        let lam = FinSemilattice::product(&lams)?;
        let group = FgAbGroup::direct_sum(&parts.iter().map(|p| p.group.clone()).collect::<Vec<_>>());
        let sizes: Vec<usize> = lams.iter().map(|l| l.size()).collect();
        let mut groups = Vec::with_capacity(lam.size());
        for i in 0..lam.size() {
            let coords = FinSemilattice::product_coords(&sizes, i);
            let mut gens = Vec::new();
            let mut offset = 0;
            for (p, &c) in parts.iter().zip(&coords) {
                for g in p.groups[c].generators() {
                    let mut v = vec![Int::zero(); group.rank()];
                    v[offset..offset + g.len()].clone_from_slice(g);
                    gens.push(v);
                }
                offset += p.group.rank();
            }
            groups.push(Subgroup::new(&group, gens)?);
        }
        Self::new(lam, group, groups)
    }

    /// Splits an element of a direct sum into its summands' elements.
    pub fn split_element(parts: &[SogPresentation], x: &SogElement) -> Vec<SogElement> {
        let sizes: Vec<usize> = parts.iter().map(|p| p.lam.size()).collect();
        let coords = FinSemilattice::product_coords(&sizes, x.idem);
        let mut offset = 0;
        parts
            .iter()
            .zip(coords)
            .map(|(p, c)| {
                let n = p.group.rank();
                let grp = p.group.reduce(&x.grp[offset..offset + n]).expect("length matches");
                offset += n;
                SogElement { idem: c, grp }
            })
            .collect()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PresentationReport {
    pub violations: Vec<String>,
}

impl PresentationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}
