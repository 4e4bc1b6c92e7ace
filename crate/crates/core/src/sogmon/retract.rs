use std::collections::HashMap;

use crate::dlat::FinSemilattice;
use crate::error::{Error, Result};
use crate::fgab::{decompose_over, direct_complement, Int, Subgroup};

use super::presentation::{SogElement, SogPresentation};

/// Largest carrier checked pair-by-pair; above it only generator pairs are used.
pub const EXHAUSTIVE_BOUND: usize = 256;

/// `P` as a retract of `B = ⊕_p (K_p ⊔ {0})` over the join-irreducibles `p`
/// of `Λ`, with `f: P -> B`, `g: B -> P` and `g ∘ f = id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Retract {
    pub source: SogPresentation,
    pub target: SogPresentation,
    /// join-irreducible idempotents of `Λ`, in coordinate order of `B`
    pub points: Vec<usize>,
    /// `K_p` with `G_p = G_(p_*) ⊕ K_p`
    pub complements: Vec<Subgroup>,
    /// whether the homomorphism checks covered every pair
    pub exhaustive: bool,
    pub pairs_checked: usize,
}

pub fn retract_witness(p: &SogPresentation) -> Result<Retract> {
    let lam = p.lam();
    if let Some(w) = lam.distributivity_witness()? {
        return Err(Error::NotALattice(w));
    }
    let report = p.validate()?;
    if let Some(v) = report.violations.iter().find(|v| v.contains("pure")) {
        return Err(Error::PurityFailure(v.clone()));
    }
    if !report.is_valid() {
        return Err(Error::InvalidPresentation(report.violations.join("; ")));
    }
    let group = p.group();
    let points = lam.join_irreducibles();
    let mut complements = Vec::with_capacity(points.len());
    let mut blocks = Vec::with_capacity(points.len());
    let two = FinSemilattice::new(vec!["0".into(), "1".into()], vec![vec![0, 1], vec![1, 1]], 0)?;
    for &q in &points {
        let lower = (0..lam.size()).filter(|&r| r != q && lam.leq(r, q)).fold(lam.zero(), |acc, r| lam.join(acc, r));
        let k = direct_complement(p.component(lower), p.component(q)).map_err(|e| match e {
            Error::NotASummand => {
                Error::PurityFailure(format!("G_{} is not a summand of G_{}", lam.label(lower), lam.label(q)))
            }
            e => e,
        })?;
        let block = SogPresentation::new(two.clone(), group.clone(), vec![Subgroup::zero(group), k.clone()])?;
        complements.push(k);
        blocks.push(block);
    }
    let target = if blocks.is_empty() {
        // Λ = {0}: B is the trivial monoid
        let one = FinSemilattice::new(vec!["0".into()], vec![vec![0]], 0)?;
        SogPresentation::new(one, group.clone(), vec![Subgroup::zero(group)])?
    } else {
        SogPresentation::direct_sum(&blocks)?
    };
    let mut r = Retract { source: p.clone(), target, points, complements, exhaustive: false, pairs_checked: 0 };
    r.verify()?;
    Ok(r)
}

impl Retract {
    fn rank(&self) -> usize {
        self.source.group().rank()
    }

    /// `(e, g) ↦ (flags p <= e, components of g along the K_p)`.
    pub fn forward(&self, x: &SogElement) -> Result<SogElement> {
        let p = &self.source;
        if !p.contains(x)? {
            return Err(Error::ElementNotInMonoid(x.to_string()));
        }
        if self.points.is_empty() {
            return Ok(self.target.zero());
        }
        let lam = p.lam();
        let below: Vec<usize> = (0..self.points.len()).filter(|&i| lam.leq(self.points[i], x.idem)).collect();
        let parts: Vec<&Subgroup> = below.iter().map(|&i| &self.complements[i]).collect();
        let comps = decompose_over(&x.grp, &parts, p.group())?
            .ok_or_else(|| Error::Internal(format!("{x} does not split along the complements")))?;
        let n = self.rank();
        let mut grp = vec![Int::from(0); n * self.points.len()];
        let mut idem = 0;
        for i in 0..self.points.len() {
            idem = idem * 2 + usize::from(below.contains(&i));
        }
        for (&i, c) in below.iter().zip(comps) {
            grp[i * n..(i + 1) * n].clone_from_slice(&c);
        }
        self.target.element(idem, &grp)
    }

    /// `(flags, components) ↦ (join of flagged p, sum of components)`.
    pub fn backward(&self, y: &SogElement) -> Result<SogElement> {
        if !self.target.contains(y)? {
            return Err(Error::ElementNotInMonoid(y.to_string()));
        }
        let p = &self.source;
        let lam = p.lam();
        let k = self.points.len();
        let n = self.rank();
        let flags = FinSemilattice::product_coords(&vec![2; k], y.idem);
        let mut idem = lam.zero();
        let mut grp = p.group().zero_element();
        for i in 0..k {
            if flags[i] == 1 {
                idem = lam.join(idem, self.points[i]);
            }
            grp = p.group().add(&grp, &y.grp[i * n..(i + 1) * n]);
        }
        p.element(idem, &grp)
    }

    fn verify(&mut self) -> Result<()> {
        let (src, exhaustive_src) = sample(&self.source)?;
        let (tgt, exhaustive_tgt) = sample(&self.target)?;
        // images are memoized: on exhaustive samples every sum is already a key
        let mut f: HashMap<SogElement, SogElement> = HashMap::new();
        let mut g: HashMap<SogElement, SogElement> = HashMap::new();
        for x in &src {
            let fx = self.forward(x)?;
            if self.backward(&fx)? != *x {
                return Err(Error::Internal(format!("g(f({x})) != {x}")));
            }
            f.insert(x.clone(), fx);
        }
        for y in &tgt {
            g.insert(y.clone(), self.backward(y)?);
        }
        let mut pairs = 0;
        for x in &src {
            for y in &src {
                let s = self.source.add_members(x, y);
                let lhs = match f.get(&s) {
                    Some(v) => v.clone(),
                    None => self.forward(&s)?,
                };
                if lhs != self.target.add_members(&f[x], &f[y]) {
                    return Err(Error::Internal(format!("f is not additive on {x}, {y}")));
                }
                pairs += 1;
            }
        }
        for x in &tgt {
            for y in &tgt {
                let s = self.target.add_members(x, y);
                let lhs = match g.get(&s) {
                    Some(v) => v.clone(),
                    None => self.backward(&s)?,
                };
                if lhs != self.source.add_members(&g[x], &g[y]) {
                    return Err(Error::Internal(format!("g is not additive on {x}, {y}")));
                }
                pairs += 1;
            }
        }
        self.exhaustive = exhaustive_src && exhaustive_tgt;
        self.pairs_checked = pairs;
        Ok(())
    }
}

/// Every element when the carrier is small, otherwise the idempotents and
/// the `(e, generator)` elements.
fn sample(p: &SogPresentation) -> Result<(Vec<SogElement>, bool)> {
    match p.elements(EXHAUSTIVE_BOUND) {
        Ok(all) => Ok((all, true)),
        Err(Error::BudgetExceeded(_)) => {
            let mut out = Vec::new();
            for e in 0..p.lam().size() {
                out.push(p.idempotent(e));
                for g in p.component(e).generators() {
                    out.push(p.element(e, g)?);
                }
            }
            Ok((out, false))
        }
        Err(e) => Err(e),
    }
}
