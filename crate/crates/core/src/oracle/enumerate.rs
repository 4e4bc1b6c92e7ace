use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::fgab::{FgAbGroup, Int, Subgroup};

pub(crate) type ElementSet = BTreeSet<Vec<Int>>;

/// All elements of the subgroup generated by `gens`, by breadth-first search.
pub(crate) fn enumerate(group: &FgAbGroup, gens: &[Vec<Int>], bound: usize) -> Result<ElementSet> {
    let zero = group.zero_element();
    let mut seen: ElementSet = BTreeSet::from([zero.clone()]);
    let mut queue = VecDeque::from([zero]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = group.add(&x, g);
            if !seen.contains(&y) {
                if seen.len() >= bound {
                    return Err(Error::BudgetExceeded(format!("more than {bound} elements")));
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(seen)
}

pub(crate) fn enumerate_subgroup(s: &Subgroup, bound: usize) -> Result<ElementSet> {
    if !s.is_finite() {
        return Err(Error::BudgetExceeded("infinite subgroup cannot be enumerated".into()));
    }
    enumerate(s.group(), s.generators(), bound)
}

pub(crate) fn multiples(group: &FgAbGroup, set: &ElementSet, n: usize) -> ElementSet {
    let k = Int::from(n);
    set.iter().map(|x| group.scale(&k, x)).collect()
}
