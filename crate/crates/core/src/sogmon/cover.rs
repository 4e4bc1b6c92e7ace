use crate::dlat::{ideal_lattice, sublattice_generated, FinSemilattice, LatElem};
use crate::error::{Error, Result};
use crate::fgab::{direct_complement, Subgroup};
use crate::lathom::SubgroupHom;
use crate::pureapprox::pure_approximation;

use super::presentation::{SogElement, SogPresentation};

/// A finitely generated valid submonoid `N` of `P` containing the requested
/// elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    pub presentation: SogPresentation,
    /// idempotent of `N` -> idempotent of `P`
    pub inclusion: Vec<usize>,
    /// `H_P` with `G'_P = G'_(P_*) ⊕ H_P`, one per join-irreducible of the
    /// generated ideal sublattice
    pub complements: Vec<Subgroup>,
    /// the requested elements (with `0` first), as elements of `N`
    pub generators: Vec<SogElement>,
}

impl Cover {
    /// The inclusion `N -> P`.
    pub fn embed(&self, x: &SogElement) -> SogElement {
        SogElement { idem: self.inclusion[x.idem], grp: x.grp.clone() }
    }
}

/// Covers a finite set of elements of `P` by a finitely generated submonoid
/// satisfying every presentation law.
///
/// The ideals `[0, e_x]` generate a finite sublattice `D` of `Id Λ`; the map
/// `A ↦ G_(max A)` on `D` is approximated relative to the subgroup spanned by
/// the `g_x`, and `N = ⊔ {max A} × G'_A`.
pub fn fg_submonoid_cover(p: &SogPresentation, xs: &[SogElement]) -> Result<Cover> {
    let report = p.validate()?;
    if !report.is_valid() {
        return Err(Error::InvalidPresentation(report.violations.join("; ")));
    }
    for x in xs {
        if !p.contains(x)? {
            return Err(Error::ElementNotInMonoid(x.to_string()));
        }
    }
    let mut xs_all = vec![p.zero()];
    xs_all.extend(xs.iter().filter(|x| **x != p.zero()).cloned());

    let lam = p.lam();
    let ideals = ideal_lattice(lam)?;
    let gens: Vec<LatElem> = xs_all.iter().map(|x| ideals.principal(x.idem)).collect();
    let sub = sublattice_generated(ideals.lattice(), &gens)?;
    let d = sub.lattice();
    let top_of = |a: LatElem| ideals.max_of(sub.embed(a));

    let group = p.group();
    let phi = SubgroupHom::from_fn(d.clone(), group.clone(), |a| Ok(p.component(top_of(a)).clone()))?;
    let k = Subgroup::new(group, xs_all.iter().map(|x| x.grp.clone()).collect())?;
    let approx = pure_approximation(&phi, &k)?;
    let psi = &approx.psi;

    let mut complements = Vec::with_capacity(d.num_join_irreducibles());
    for q in 0..d.num_join_irreducibles() {
        let c = direct_complement(psi.value(d.lower_cover(q)), psi.value(d.jirr(q))).map_err(|e| match e {
            Error::NotASummand => Error::Internal("approximation is not pure at a join-irreducible".into()),
            e => e,
        })?;
        complements.push(c);
    }

    let els = d.elements()?;
    let inclusion: Vec<usize> = els.iter().map(|&a| top_of(a)).collect();
    let shape = FinSemilattice::from_lattice(d)?;
    let labels = inclusion.iter().map(|&e| lam.label(e).to_string()).collect();
    let lam_n = FinSemilattice::new(labels, shape.table().to_vec(), shape.zero())?;
    let groups: Vec<Subgroup> = els.iter().map(|&a| psi.value(a).clone()).collect();
    let presentation = SogPresentation::new(lam_n, group.clone(), groups)?;

    let position = |e: usize| inclusion.iter().position(|&f| f == e);
    let generators = xs_all
        .iter()
        .map(|x| {
            let idem = position(x.idem).ok_or_else(|| Error::Internal(format!("{x} has no idempotent in the cover")))?;
            Ok(SogElement { idem, grp: x.grp.clone() })
        })
        .collect::<Result<Vec<_>>>()?;

    let cover = Cover { presentation, inclusion, complements, generators };
    verify(p, &cover)?;
    Ok(cover)
}

fn verify(p: &SogPresentation, cover: &Cover) -> Result<()> {
    let n = &cover.presentation;
    let report = n.validate()?;
    if !report.is_valid() {
        return Err(Error::Internal(format!("cover is not valid: {}", report.violations.join("; "))));
    }
    for (e, &f) in cover.inclusion.iter().enumerate() {
        if !n.component(e).is_subgroup_of(p.component(f))? {
            return Err(Error::Internal(format!("G'_{} escapes G_{}", n.lam().label(e), p.lam().label(f))));
        }
        for g in 0..cover.inclusion.len() {
            if cover.inclusion[n.lam().join(e, g)] != p.lam().join(f, cover.inclusion[g]) {
                return Err(Error::Internal("idempotent inclusion is not a join homomorphism".into()));
            }
        }
    }
    for x in &cover.generators {
        if !n.contains(x)? {
            return Err(Error::Internal(format!("requested element {x} is missing from the cover")));
        }
    }
    Ok(())
}
