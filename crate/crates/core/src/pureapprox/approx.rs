use num_traits::Zero;

use super::parts::{hom_m_torsion, hom_torsion_parts};
use crate::dlat::LatElem;
use crate::error::{Error, Result};
use crate::fgab::{decompose_over, direct_complement, exponent, is_pure, sum_all, Int, Subgroup};
use crate::lathom::{
    check_purity_condition, distributive_envelope, require_purity, require_valid, validate_hom, SubgroupHom,
};

/// One row of the certificate: `H ∩ phi(u) <= psi(u) <= phi(u)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertEntry {
    pub u: LatElem,
    pub h_cap: Subgroup,
    pub psi: Subgroup,
    pub phi: Subgroup,
    pub lower_ok: bool,
    pub upper_ok: bool,
}

/// An approximation `psi` of `phi` relative to `H`, with its certificate.
#[derive(Clone, Debug)]
pub struct ApproxResult {
    pub psi: SubgroupHom,
    pub certificate: Vec<CertEntry>,
    pub psi_is_hom: bool,
    pub psi_purity: bool,
}

impl ApproxResult {
    pub fn certify(phi: &SubgroupHom, h: &Subgroup, psi: SubgroupHom) -> Result<Self> {
        let mut certificate = Vec::new();
        for &u in phi.domain().elements()? {
            let h_cap = h.intersection(phi.value(u))?;
            let p = psi.value(u).clone();
            let lower_ok = h_cap.is_subgroup_of(&p)?;
            let upper_ok = p.is_subgroup_of(phi.value(u))?;
            certificate.push(CertEntry { u, h_cap, psi: p, phi: phi.value(u).clone(), lower_ok, upper_ok });
        }
        let psi_is_hom = validate_hom(&psi)?.is_valid();
        let psi_purity = psi_is_hom && check_purity_condition(&psi)?;
        Ok(ApproxResult { psi, certificate, psi_is_hom, psi_purity })
    }

    pub fn holds(&self) -> bool {
        self.psi_is_hom && self.psi_purity && self.certificate.iter().all(|c| c.lower_ok && c.upper_ok)
    }

    fn checked(self) -> Result<Self> {
        if self.holds() {
            Ok(self)
        } else {
            Err(Error::Internal("approximation failed its own certificate".into()))
        }
    }
}

/// Approximation of a torsion-valued `phi` relative to `h`.
///
/// With `m` the exponent of `h ∩ G_1`, each `G_u[m]` splits as
/// `G_0[m] ⊕ (K_p : p in J(u))`; the generators of `h ∩ G_u` are split along
/// that sum and the pieces collected per summand.
pub fn approx_torsion(phi: &SubgroupHom, h: &Subgroup) -> Result<ApproxResult> {
    require_valid(phi)?;
    require_purity(phi)?;
    if !phi.top_value().is_finite() {
        return Err(Error::TorsionRequired);
    }
    let group = phi.group();
    let d = phi.domain();
    let a = h.intersection(phi.top_value())?;
    let m = exponent(&a).ok_or(Error::TorsionRequired)?;
    let phim = hom_m_torsion(phi, &m)?;

    let k0 = phim.bottom_value().clone();
    let mut k = Vec::with_capacity(d.num_join_irreducibles());
    for p in 0..d.num_join_irreducibles() {
        let kp = direct_complement(phim.value(d.lower_cover(p)), phim.at_point(p)).map_err(|e| match e {
            Error::NotASummand => Error::Internal(format!("G_(p_*)[m] is not a summand of G_p[m] at {p}")),
            e => e,
        })?;
        k.push(kp);
    }

    let mut pieces0 = Vec::new();
    let mut pieces: Vec<Vec<Vec<Int>>> = vec![Vec::new(); k.len()];
    for &u in d.elements()? {
        let au = a.intersection(phi.value(u))?;
        let pts = u.points();
        let mut slots: Vec<&Subgroup> = vec![&k0];
        slots.extend(pts.iter().map(|&p| &k[p]));
        for x in au.generators() {
            let split = decompose_over(x, &slots, group)?
                .ok_or_else(|| Error::Internal("element of H ∩ G_u outside G_u[m]".into()))?;
            let mut it = split.into_iter();
            pieces0.push(it.next().expect("slot 0"));
            for (&p, piece) in pts.iter().zip(it) {
                pieces[p].push(piece);
            }
        }
    }
    let g0 = Subgroup::new(group, pieces0)?;
    let kp = pieces.into_iter().map(|g| Subgroup::new(group, g)).collect::<Result<Vec<_>>>()?;
    let psi = phi.map_values(group, |u, _| sum_all(group, std::iter::once(&g0).chain(u.points().iter().map(|&p| &kp[p]))))?;
    ApproxResult::certify(phi, h, psi)?.checked()
}

/// Approximation of `phi` relative to `h` for mixed ambient groups.
///
/// The torsion-free part is handled with a distributive envelope in `G/T(G)`
/// lifted back along complements; the remaining torsion discrepancies go
/// through [`approx_torsion`].
pub fn pure_approximation(phi: &SubgroupHom, h: &Subgroup) -> Result<ApproxResult> {
    require_valid(phi)?;
    require_purity(phi)?;
    if !h.group().same_as(phi.group()) {
        return Err(Error::AmbientMismatch);
    }
    let group = phi.group();
    let d = phi.domain();
    let a = h.intersection(phi.top_value())?;
    let parts = hom_torsion_parts(phi)?;
    let split = &parts.split;
    let quotient = split.quotient();

    let pa = split.project_subgroup(&a)?;
    let hbar = distributive_envelope(&pa, &parts.free)?;
    let hbar_at = |u: LatElem| hbar.intersection(parts.free.value(u));

    // slot 0 is H̄_0, slot p + 1 a complement of H̄_(p_*) in H̄_p
    let mut kbar = vec![hbar_at(d.bottom())?];
    for p in 0..d.num_join_irreducibles() {
        let c = direct_complement(&hbar_at(d.lower_cover(p))?, &hbar_at(d.jirr(p))?).map_err(|e| match e {
            Error::NotASummand => Error::Internal(format!("free part is not a summand at {p}")),
            e => e,
        })?;
        kbar.push(c);
    }
    let targets: Vec<&Subgroup> =
        std::iter::once(phi.bottom_value()).chain((0..d.num_join_irreducibles()).map(|p| phi.at_point(p))).collect();
    let lifts: Vec<Vec<Vec<Int>>> = kbar
        .iter()
        .zip(&targets)
        .map(|(kb, t)| kb.generators().iter().map(|x| split.lift(x, t)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;

    let alpha = |xbar: &[Int]| -> Result<Vec<Int>> {
        let slots: Vec<&Subgroup> = kbar.iter().collect();
        let comps = decompose_over(xbar, &slots, quotient)?.ok_or(Error::NoPreimage)?;
        let mut out = group.zero_element();
        for ((comp, kb), lift) in comps.iter().zip(&kbar).zip(&lifts) {
            let coeffs = kb.membership_witness(comp)?.ok_or(Error::NoPreimage)?;
            for (c, l) in coeffs.iter().zip(lift) {
                if !c.is_zero() {
                    out = group.add(&out, &group.scale(c, l));
                }
            }
        }
        Ok(out)
    };

    let h_free = phi.map_values(group, |u, _| {
        let gens: Vec<Vec<Int>> = std::iter::once(0)
            .chain(u.points().into_iter().map(|p| p + 1))
            .flat_map(|slot| lifts[slot].iter().cloned())
            .collect();
        Subgroup::new(group, gens)
    })?;

    let mut discrepancies = Vec::new();
    for &u in d.elements()? {
        for x in a.intersection(phi.value(u))?.generators() {
            let y = alpha(&split.project(x)?)?;
            if !h_free.value(u).contains(&y)? {
                return Err(Error::Internal("lifted image escapes H_u".into()));
            }
            discrepancies.push(group.sub(x, &y));
        }
    }
    let b = Subgroup::new(group, discrepancies)?;
    let tors = approx_torsion(&parts.torsion, &b)?;

    let psi = phi.map_values(group, |u, _| {
        let t = tors.psi.value(u);
        let f = h_free.value(u);
        if !t.intersection(f)?.is_trivial() {
            return Err(Error::Internal("torsion and free parts of psi(u) intersect".into()));
        }
        t.sum(f)
    })?;
    ApproxResult::certify(phi, h, psi)?.checked()
}

/// Finitely generated `A' <= A`, `B' <= B` with `A ∩ H <= A'`, `H <= B'`
/// and `A'` a direct summand of `B'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PureWitness {
    pub a_prime: Subgroup,
    pub b_prime: Subgroup,
    pub complement: Subgroup,
}

pub fn pure_witness(a: &Subgroup, b: &Subgroup, h: &Subgroup) -> Result<PureWitness> {
    if !is_pure(a, b)? {
        return Err(Error::NotPure);
    }
    if !h.is_subgroup_of(b)? {
        return Err(Error::PreconditionViolated("H is not contained in B".into()));
    }
    let d = crate::dlat::FinDistLattice::chain(2)?;
    let phi = SubgroupHom::new(d, b.group().clone(), vec![a.clone(), b.clone()])?;
    let res = pure_approximation(&phi, h)?;
    let a_prime = res.psi.table()[0].clone();
    let b_prime = res.psi.table()[1].clone();
    let complement = direct_complement(&a_prime, &b_prime)
        .map_err(|_| Error::Internal("approximation values are not a summand pair".into()))?;
    Ok(PureWitness { a_prime, b_prime, complement })
}
