use super::distr::{violation_below, DistrFamily};
use super::hom::{require_valid, SubgroupHom};
use crate::dlat::LatElem;
use crate::error::{Error, Result};
use crate::fgab::{decompose_over, sum_all, Subgroup};

/// Result of [`distributive_envelope_with_stats`].
#[derive(Clone, Debug)]
pub struct Envelope {
    pub subgroup: Subgroup,
    /// Family whose sum is `subgroup`; `None` on the fast path.
    pub family: Option<DistrFamily>,
    /// Improvement steps taken at the top level.
    pub iterations: usize,
}

/// A finitely generated `B` with `A <= B <= G_1`, distributive with respect to `phi`.
pub fn distributive_envelope(a: &Subgroup, phi: &SubgroupHom) -> Result<Subgroup> {
    Ok(distributive_envelope_with_stats(a, phi)?.subgroup)
}

pub fn distributive_envelope_with_stats(a: &Subgroup, phi: &SubgroupHom) -> Result<Envelope> {
    require_valid(phi)?;
    if !a.is_subgroup_of(phi.top_value())? {
        return Err(Error::PreconditionViolated("A is not contained in G_1".into()));
    }
    let top = phi.domain().top();
    let env = envelope_below(a, phi, top)?;
    if !a.is_subgroup_of(&env.subgroup)? || !env.subgroup.is_subgroup_of(phi.top_value())? {
        return Err(Error::Internal("envelope is not sandwiched between A and G_1".into()));
    }
    if violation_below(&env.subgroup, phi, top)?.is_some() {
        return Err(Error::Internal("envelope is not distributive".into()));
    }
    Ok(env)
}

/// Envelope of `a <= G_scope` for the restriction of `phi` to `[0, scope]`.
fn envelope_below(a: &Subgroup, phi: &SubgroupHom, scope: LatElem) -> Result<Envelope> {
    if violation_below(a, phi, scope)?.is_none() {
        return Ok(Envelope { subgroup: a.clone(), family: None, iterations: 0 });
    }
    let d = phi.domain();
    let pts = d.jirr_below(scope);
    let mut fam = initial_family(a, phi, scope)?;
    let mut iterations = 0;
    for &p in &pts {
        if in_n(&fam, phi, p)? {
            continue;
        }
        let next = claim_step(&fam, phi, p)?;
        iterations += 1;
        if iterations > pts.len() {
            return Err(Error::Internal("improvement loop exceeded |J|".into()));
        }
        if !fam.leq(&next)? {
            return Err(Error::Internal("improvement step is not monotone".into()));
        }
        for &q in &pts {
            if (q == p || in_n(&fam, phi, q)?) && !in_n(&next, phi, q)? {
                return Err(Error::Internal(format!("improvement step lost {q} from N")));
            }
        }
        fam = next;
    }
    let subgroup = fam.value_at(scope)?;
    Ok(Envelope { subgroup, family: Some(fam), iterations })
}

/// Splits each generator of `a` along `G_scope = G_0 + sum G_p` and closes
/// the pieces upwards.
fn initial_family(a: &Subgroup, phi: &SubgroupHom, scope: LatElem) -> Result<DistrFamily> {
    let d = phi.domain();
    let group = phi.group();
    let pts = d.jirr_below(scope);
    let mut slots: Vec<&Subgroup> = vec![phi.bottom_value()];
    slots.extend(pts.iter().map(|&p| phi.at_point(p)));
    let mut pieces: Vec<Vec<Vec<_>>> = vec![Vec::new(); slots.len()];
    for x in a.generators() {
        let parts = decompose_over(x, &slots, group)?
            .ok_or_else(|| Error::Internal("generator outside G_0 + sum of G_p".into()))?;
        for (bucket, part) in pieces.iter_mut().zip(parts) {
            bucket.push(part);
        }
    }
    let mut raw = pieces.into_iter().map(|gens| Subgroup::new(group, gens)).collect::<Result<Vec<_>>>()?;
    let base = raw.remove(0);
    let mut parts = vec![Subgroup::zero(group); d.num_join_irreducibles()];
    for &p in &pts {
        let below = pts.iter().zip(&raw).filter(|(&q, _)| d.poset().leq(q, p)).map(|(_, s)| s);
        parts[p] = sum_all(group, std::iter::once(&base).chain(below))?;
    }
    Ok(DistrFamily { base, parts })
}

/// `p ∈ N(vec A)`: `A_p ∩ G_(p_*) = A_(p_*)`.
fn in_n(fam: &DistrFamily, phi: &SubgroupHom, p: usize) -> Result<bool> {
    let low = phi.domain().lower_cover(p);
    Ok(fam.parts[p].intersection(phi.value(low))? == fam.value_at(low)?)
}

/// One improvement step: enlarges the family so that `p` joins `N`.
fn claim_step(fam: &DistrFamily, phi: &SubgroupHom, p: usize) -> Result<DistrFamily> {
    let d = phi.domain();
    let group = phi.group();
    let low = d.lower_cover(p);
    let s = fam.parts[p].intersection(phi.value(low))?;

    let below = d.jirr_below(low);
    let mut slots: Vec<&Subgroup> = vec![phi.bottom_value()];
    slots.extend(below.iter().map(|&q| phi.at_point(q)));
    let mut h_gens = Vec::new();
    for x in s.generators() {
        let parts = decompose_over(x, &slots, group)?
            .ok_or_else(|| Error::Internal("A_p ∩ G_(p_*) is outside the sum of the G_q".into()))?;
        h_gens.extend(parts);
    }
    let h = Subgroup::new(group, h_gens)?;
    let c = envelope_below(&h, phi, low)?.subgroup;

    let base = fam.base.sum(&c.intersection(phi.bottom_value())?)?;
    let parts = (0..d.num_join_irreducibles())
        .map(|q| {
            let cq = c.intersection(phi.value(low.meet(d.jirr(q))))?;
            fam.parts[q].sum(&cq)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DistrFamily { base, parts })
}
