use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;

use super::poset::{bit, points, FinPoset};
use crate::error::{Error, Result};

pub const DEFAULT_ELEMENT_BOUND: usize = 1 << 20;

/// Element of a finite distributive lattice: a down-set of the poset of
/// join-irreducibles, stored as a bitset.
///
/// Ordered by size first, so sorting a lattice's elements gives a linear
/// extension of the lattice order.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct LatElem(pub u64);

impl LatElem {
    pub const BOTTOM: LatElem = LatElem(0);

    pub fn join(self, other: LatElem) -> LatElem {
        LatElem(self.0 | other.0)
    }

    pub fn meet(self, other: LatElem) -> LatElem {
        LatElem(self.0 & other.0)
    }

    pub fn leq(self, other: LatElem) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn contains(self, p: usize) -> bool {
        self.0 & bit(p) != 0
    }

    pub fn points(self) -> Vec<usize> {
        points(self.0).collect()
    }

    pub fn count(self) -> u32 {
        self.0.count_ones()
    }

    /// Comma-separated point list, `""` for the bottom.
    pub fn key(self) -> String {
        self.points().iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
    }

    pub fn parse_key(key: &str) -> Option<LatElem> {
        let key = key.trim();
        if key.is_empty() {
            return Some(LatElem::BOTTOM);
        }
        let mut bits = 0u64;
        for part in key.split(',') {
            let p: usize = part.trim().parse().ok()?;
            if p >= 64 {
                return None;
            }
            bits |= bit(p);
        }
        Some(LatElem(bits))
    }
}

impl Ord for LatElem {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.count(), self.0).cmp(&(other.count(), other.0))
    }
}

impl PartialOrd for LatElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for LatElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.key())
    }
}

/// The lattice of down-sets of a finite poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinDistLattice {
    poset: FinPoset,
    top: LatElem,
    order: Vec<usize>,
    bound: usize,
    elements: Option<Vec<LatElem>>,
    index: HashMap<LatElem, usize>,
}

/// Down-sets of `poset`, materialized up to the default bound.
pub fn lattice_from_poset(poset: &FinPoset) -> Result<FinDistLattice> {
    FinDistLattice::with_bound(poset, DEFAULT_ELEMENT_BOUND)
}

impl FinDistLattice {
    pub fn with_bound(poset: &FinPoset, bound: usize) -> Result<Self> {
        let mut lat = Self::principal_only(poset, bound);
        let elements = enumerate_downsets(poset, bound)?;
        lat.index = elements.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        lat.elements = Some(elements);
        Ok(lat)
    }

    /// Lattice whose elements are not enumerated; joins, meets and the
    /// join-irreducible data still work.
    pub fn principal_only(poset: &FinPoset, bound: usize) -> Self {
        let k = poset.size();
        let top = LatElem(if k == 64 { u64::MAX } else { (1u64 << k) - 1 });
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by_key(|&p| (poset.principal(p).count_ones(), p));
        FinDistLattice { poset: poset.clone(), top, order, bound, elements: None, index: HashMap::new() }
    }

    pub fn boolean(k: usize) -> Result<Self> {
        lattice_from_poset(&FinPoset::antichain(k)?)
    }

    /// Chain with `n >= 1` elements.
    pub fn chain(n: usize) -> Result<Self> {
        lattice_from_poset(&FinPoset::chain(n.saturating_sub(1))?)
    }

    pub fn poset(&self) -> &FinPoset {
        &self.poset
    }

    pub fn is_materialized(&self) -> bool {
        self.elements.is_some()
    }

    /// All elements, sorted as a linear extension.
    pub fn elements(&self) -> Result<&[LatElem]> {
        self.elements.as_deref().ok_or(Error::ElementBoundExceeded(self.bound))
    }

    pub fn len(&self) -> Result<usize> {
        self.elements().map(|e| e.len())
    }

    pub fn index_of(&self, e: LatElem) -> Option<usize> {
        self.index.get(&e).copied()
    }

    pub fn bottom(&self) -> LatElem {
        LatElem::BOTTOM
    }

    pub fn top(&self) -> LatElem {
        self.top
    }

    pub fn is_element(&self, e: LatElem) -> bool {
        e.leq(self.top) && self.poset.is_downset(e.0)
    }

    /// Join-irreducibles as points of the poset, smaller ones first.
    pub fn join_irreducibles(&self) -> &[usize] {
        &self.order
    }

    pub fn num_join_irreducibles(&self) -> usize {
        self.order.len()
    }

    /// The principal down-set of `p`.
    pub fn jirr(&self, p: usize) -> LatElem {
        LatElem(self.poset.principal(p))
    }

    /// `p_*`, the unique lower cover of the join-irreducible `p`.
    pub fn lower_cover(&self, p: usize) -> LatElem {
        LatElem(self.poset.principal(p) & !bit(p))
    }

    /// `J(a)` in the fixed linear order.
    pub fn jirr_below(&self, a: LatElem) -> Vec<usize> {
        self.order.iter().copied().filter(|&p| a.contains(p)).collect()
    }

    pub fn is_join_irreducible(&self, a: LatElem) -> Option<usize> {
        self.order.iter().copied().find(|&p| self.jirr(p) == a)
    }

    /// Smallest element containing the given points.
    pub fn generated_by(&self, pts: &[usize]) -> LatElem {
        LatElem(pts.iter().fold(0, |acc, &p| acc | self.poset.principal(p)))
    }

    /// All covering pairs `u < v`.
    pub fn covers(&self) -> Result<Vec<(LatElem, LatElem)>> {
        let mut out = Vec::new();
        for &u in self.elements()? {
            for p in 0..self.poset.size() {
                if !u.contains(p) && self.lower_cover(p).leq(u) {
                    out.push((u, LatElem(u.0 | bit(p))));
                }
            }
        }
        Ok(out)
    }
}

fn enumerate_downsets(poset: &FinPoset, bound: usize) -> Result<Vec<LatElem>> {
    let k = poset.size();
    let strict: Vec<u64> = (0..k).map(|p| poset.principal(p) & !bit(p)).collect();
    let mut seen: HashSet<u64> = HashSet::from([0]);
    let mut frontier = vec![0u64];
    while let Some(d) = frontier.pop() {
        for p in 0..k {
            if d & bit(p) == 0 && strict[p] & !d == 0 {
                let next = d | bit(p);
                if seen.insert(next) {
                    if seen.len() > bound {
                        return Err(Error::ElementBoundExceeded(bound));
                    }
                    frontier.push(next);
                }
            }
        }
    }
    let mut out: Vec<LatElem> = seen.into_iter().map(LatElem).collect();
    out.sort();
    Ok(out)
}

/// A sublattice of some `FinDistLattice`, realized as a lattice in its own
/// right together with the inclusion map.
#[derive(Clone, Debug)]
pub struct Sublattice {
    lattice: FinDistLattice,
    bottom: LatElem,
    images: Vec<LatElem>,
}

impl Sublattice {
    pub fn lattice(&self) -> &FinDistLattice {
        &self.lattice
    }

    /// Image in the parent lattice.
    pub fn embed(&self, e: LatElem) -> LatElem {
        points(e.0).fold(self.bottom, |acc, p| acc.join(self.images[p]))
    }

    /// Element of the sublattice mapping to `x`, if any.
    pub fn preimage(&self, x: LatElem) -> Option<LatElem> {
        let e = LatElem(
            self.images.iter().enumerate().filter(|(_, im)| im.leq(x)).fold(0, |acc, (p, _)| acc | bit(p)),
        );
        (self.embed(e) == x).then_some(e)
    }

    /// Images of the join-irreducibles, indexed by point.
    pub fn jirr_images(&self) -> &[LatElem] {
        &self.images
    }
}

/// Closure of `gens` under joins and meets inside `lat`.
pub fn sublattice_generated(lat: &FinDistLattice, gens: &[LatElem]) -> Result<Sublattice> {
    if gens.is_empty() {
        return Err(Error::PreconditionViolated("empty generating set".into()));
    }
    if let Some(bad) = gens.iter().find(|g| !lat.is_element(**g)) {
        return Err(Error::PreconditionViolated(format!("{bad:?} is not an element")));
    }
    let mut members: Vec<LatElem> = Vec::new();
    let mut seen: HashSet<LatElem> = HashSet::new();
    for &g in gens {
        if seen.insert(g) {
            members.push(g);
        }
    }
    let mut i = 0;
    while i < members.len() {
        let x = members[i];
        for j in 0..=i {
            let y = members[j];
            for z in [x.join(y), x.meet(y)] {
                if seen.insert(z) {
                    if seen.len() > lat.bound {
                        return Err(Error::ElementBoundExceeded(lat.bound));
                    }
                    members.push(z);
                }
            }
        }
        i += 1;
    }
    members.sort();
    let bottom = members[0];
    let jirr: Vec<LatElem> = members
        .iter()
        .copied()
        .filter(|&x| {
            let below = members.iter().filter(|&&y| y != x && y.leq(x)).fold(bottom, |acc, &y| acc.join(y));
            x != bottom && below != x
        })
        .collect();
    if jirr.len() > super::poset::MAX_POINTS {
        return Err(Error::PosetTooLarge(jirr.len()));
    }
    let mut less = Vec::new();
    for (i, a) in jirr.iter().enumerate() {
        for (j, b) in jirr.iter().enumerate() {
            if i != j && a.leq(*b) {
                less.push((i, j));
            }
        }
    }
    let poset = FinPoset::new(jirr.len(), &less)?;
    let lattice = FinDistLattice::with_bound(&poset, lat.bound)?;
    Ok(Sublattice { lattice, bottom, images: jirr })
}
