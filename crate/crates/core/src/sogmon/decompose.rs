use std::collections::HashMap;

use num_traits::{One, Zero};

use super::monoid::FinMonoid;
use super::presentation::{SogElement, SogPresentation};
use crate::dlat::FinSemilattice;
use crate::error::{Error, Result};
use crate::fgab::{FgAbGroup, Int, IntMatrix, Subgroup};

/// A regular monoid split into its maximal subgroups `G_M[e]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    idempotents: Vec<usize>,
    /// element -> position of its idempotent in `idempotents`
    component: Vec<usize>,
    members: Vec<Vec<usize>>,
    lam: FinSemilattice,
}

/// Returns an element `x` with `2x + z != x` for every `z`, if any.
pub fn regularity_witness(m: &FinMonoid) -> Option<usize> {
    (0..m.size()).find(|&x| !m.leq(m.add(x, x), x))
}

pub fn decompose_regular(m: &FinMonoid) -> Result<Decomposition> {
    if let Some(x) = regularity_witness(m) {
        return Err(Error::NotRegular(format!("2·{0} + z = {0} has no solution z", m.label(x))));
    }
    let idempotents = m.idempotents();
    let pos: HashMap<usize, usize> = idempotents.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut component = vec![usize::MAX; m.size()];
    let mut members = vec![Vec::new(); idempotents.len()];
    for x in 0..m.size() {
        let e = idempotents
            .iter()
            .copied()
            .find(|&e| m.leq(e, x) && m.leq(x, e))
            .ok_or_else(|| Error::Internal(format!("no idempotent equivalent to {}", m.label(x))))?;
        component[x] = pos[&e];
        members[pos[&e]].push(x);
    }
    for (i, &e) in idempotents.iter().enumerate() {
        for &x in &members[i] {
            if m.add(e, x) != x {
                return Err(Error::Internal(format!("{} is not neutral on {}", m.label(e), m.label(x))));
            }
            if !members[i].iter().any(|&y| m.add(x, y) == e) {
                return Err(Error::Internal(format!("{} has no inverse over {}", m.label(x), m.label(e))));
            }
        }
    }
    let n = idempotents.len();
    let join: Vec<Vec<usize>> =
        (0..n).map(|i| (0..n).map(|j| pos[&m.add(idempotents[i], idempotents[j])]).collect()).collect();
    let labels = idempotents.iter().map(|&e| m.label(e).to_string()).collect();
    let lam = FinSemilattice::new(labels, join, pos[&m.zero()])?;
    Ok(Decomposition { idempotents, component, members, lam })
}

impl Decomposition {
    /// `Λ(M)`, indexed by position in [`Decomposition::idempotents`].
    pub fn lam(&self) -> &FinSemilattice {
        &self.lam
    }

    /// Idempotent elements of `M`, ascending.
    pub fn idempotents(&self) -> &[usize] {
        &self.idempotents
    }

    /// Position (in `Λ(M)`) of the component containing `x`.
    pub fn component_of(&self, x: usize) -> usize {
        self.component[x]
    }

    pub fn members(&self, e: usize) -> &[usize] {
        &self.members[e]
    }

    /// The natural map `G_M[a] -> G_M[b]`, `x ↦ x + b`, for `a <= b` in `Λ(M)`.
    pub fn natural_map(&self, m: &FinMonoid, a: usize, b: usize, x: usize) -> Result<usize> {
        if !self.lam.leq(a, b) {
            return Err(Error::PreconditionViolated(format!(
                "{} is not below {}",
                self.lam.label(a),
                self.lam.label(b)
            )));
        }
        if self.component[x] != a {
            return Err(Error::ElementNotInMonoid(format!("{} is not in G[{}]", m.label(x), self.lam.label(a))));
        }
        Ok(m.add(x, self.idempotents[b]))
    }
}

/// A presentation rebuilt from a finite monoid, with `M`'s elements mapped
/// into it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidPresentation {
    pub presentation: SogPresentation,
    pub image: Vec<SogElement>,
}

/// Rebuilds `M` as `⊔ {e} × G_e` inside `Λ(M) × G_M[top]`, using the
/// natural maps into the top component. Fails unless those maps are
/// injective and the rebuilt monoid reproduces `M`'s table.
pub fn presentation_of(m: &FinMonoid) -> Result<MonoidPresentation> {
    let d = decompose_regular(m)?;
    let lam = d.lam().clone();
    let top = lam.top();
    let top_members = d.members(top);
    let t = d.idempotents()[top];

    // generating set of G_M[top], grown greedily
    let mut gens: Vec<usize> = Vec::new();
    let mut reached = vec![t];
    for &x in top_members {
        if !reached.contains(&x) {
            gens.push(x);
            reached = closure(m, t, &gens);
        }
    }
    let k = gens.len().max(1);

    // spanning tree over the Cayley graph gives coordinates; tree-closing
    // edges generate the relations
    let mut coords: HashMap<usize, Vec<Int>> = HashMap::new();
    coords.insert(t, vec![Int::zero(); k]);
    let mut queue = std::collections::VecDeque::from([t]);
    let mut relations: Vec<Vec<Int>> = Vec::new();
    while let Some(x) = queue.pop_front() {
        let cx = coords[&x].clone();
        for (i, &s) in gens.iter().enumerate() {
            let y = m.add(x, s);
            let mut cy = cx.clone();
            cy[i] += Int::one();
            match coords.get(&y) {
                Some(existing) => {
                    let rel: Vec<Int> = cy.iter().zip(existing).map(|(a, b)| a - b).collect();
                    if rel.iter().any(|v| !v.is_zero()) {
                        relations.push(rel);
                    }
                }
                None => {
                    coords.insert(y, cy);
                    queue.push_back(y);
                }
            }
        }
    }
    if gens.is_empty() {
        relations.push(vec![Int::one()]);
    }
    let rel_matrix = IntMatrix::from_columns(k, &relations);
    let group = FgAbGroup::from_relations(k, rel_matrix)?;

    let mut image = Vec::with_capacity(m.size());
    let mut group_gens: Vec<Vec<Vec<Int>>> = vec![Vec::new(); lam.size()];
    for x in 0..m.size() {
        let e = d.component_of(x);
        let y = d.natural_map(m, e, top, x)?;
        let grp = group.reduce(&coords[&y])?;
        group_gens[e].push(grp.clone());
        image.push(SogElement { idem: e, grp });
    }
    let groups = group_gens.into_iter().map(|g| Subgroup::new(&group, g)).collect::<Result<Vec<_>>>()?;
    let presentation = SogPresentation::new(lam, group, groups)?;

    let mut seen = std::collections::HashSet::new();
    for (x, img) in image.iter().enumerate() {
        if !seen.insert(img) {
            return Err(Error::PreconditionViolated(format!(
                "natural map into the top component is not injective at {}",
                m.label(x)
            )));
        }
    }
    for x in 0..m.size() {
        for y in 0..m.size() {
            if presentation.add(&image[x], &image[y])? != image[m.add(x, y)] {
                return Err(Error::Internal(format!("rebuilt table differs at {} + {}", m.label(x), m.label(y))));
            }
        }
    }
    Ok(MonoidPresentation { presentation, image })
}

fn closure(m: &FinMonoid, t: usize, gens: &[usize]) -> Vec<usize> {
    let mut out = vec![t];
    let mut i = 0;
    while i < out.len() {
        let x = out[i];
        for &s in gens {
            let y = m.add(x, s);
            if !out.contains(&y) {
                out.push(y);
            }
        }
        i += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2_plus_zero() -> FinMonoid {
        FinMonoid::new(vec![vec![0, 1, 2], vec![1, 1, 2], vec![2, 2, 1]], 0).unwrap()
    }

    #[test]
    fn z2_with_zero() {
        let m = z2_plus_zero();
        let d = decompose_regular(&m).unwrap();
        assert_eq!(d.idempotents(), &[0, 1]);
        assert_eq!(d.members(0), &[0]);
        assert_eq!(d.members(1), &[1, 2]);
        assert_eq!(d.natural_map(&m, 0, 1, 0).unwrap(), 1);
        let p = presentation_of(&m).unwrap();
        assert!(p.presentation.validate().unwrap().is_valid());
        assert_eq!(p.presentation.component(1).order(), Some(Int::from(2)));
    }

    #[test]
    fn group_is_one_component() {
        let add: Vec<Vec<usize>> = (0..4).map(|i| (0..4).map(|j| (i + j) % 4).collect()).collect();
        let m = FinMonoid::new(add, 0).unwrap();
        let d = decompose_regular(&m).unwrap();
        assert_eq!(d.idempotents(), &[0]);
        let p = presentation_of(&m).unwrap();
        assert_eq!(p.presentation.group().invariant_factors(), vec![Int::from(4)]);
    }

    #[test]
    fn semilattice_components_trivial() {
        let m = FinMonoid::new(vec![vec![0, 1], vec![1, 1]], 0).unwrap();
        let d = decompose_regular(&m).unwrap();
        assert!(d.members(0).len() == 1 && d.members(1).len() == 1);
        assert!(presentation_of(&m).unwrap().presentation.group().is_finite());
    }

    #[test]
    fn non_regular_rejected() {
        // N truncated at 2: {0, 1, 2} with 1 + 1 = 2 + anything = 2
        let m = FinMonoid::new(vec![vec![0, 1, 2], vec![1, 2, 2], vec![2, 2, 2]], 0).unwrap();
        assert!(matches!(decompose_regular(&m), Err(Error::NotRegular(_))));
    }
}
