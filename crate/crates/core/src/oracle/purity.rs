use num_traits::ToPrimitive;

use super::enumerate::{enumerate_subgroup, multiples};
use super::OracleBudget;
use crate::error::{Error, Result};
use crate::fgab::{FgAbGroup, Int, Subgroup};

/// Definitional purity: `nB ∩ A = nA` for every `n`.
///
/// Finite `B` is enumerated and `n` runs up to the exponent of `B`. For
/// infinite `B`, any failure already occurs at some `n` dividing the
/// exponent of the torsion of `B/A`, so `n` runs up to that exponent, which
/// must not exceed `budget.multiple_bound`; the sets `nB ∩ A` and `nA` are
/// then compared as subgroups.
pub fn brute_purity(a: &Subgroup, b: &Subgroup, budget: &OracleBudget) -> Result<bool> {
    if !a.is_subgroup_of(b)? {
        return Err(Error::NotContained);
    }
    let group = b.group();
    if b.is_finite() {
        let bs = enumerate_subgroup(b, budget.element_bound)?;
        let as_ = enumerate_subgroup(a, budget.element_bound)?;
        let exp = bs.iter().map(|x| order_of(group, x)).max().unwrap_or(1);
        for n in 1..=exp {
            let nb = multiples(group, &bs, n);
            let na = multiples(group, &as_, n);
            if nb.iter().any(|y| as_.contains(y) && !na.contains(y)) {
                return Ok(false);
            }
        }
        return Ok(true);
    }
    let exp = torsion_exponent(a, b)?;
    let limit = exp.to_usize().filter(|&e| e <= budget.multiple_bound).ok_or_else(|| {
        Error::BudgetExceeded(format!("torsion exponent {exp} of B/A exceeds {}", budget.multiple_bound))
    })?;
    for n in 1..=limit {
        let k = Int::from(n);
        if b.scaled(&k).intersection(a)? != a.scaled(&k) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn order_of(group: &FgAbGroup, x: &[Int]) -> usize {
    let mut y = x.to_vec();
    let mut k = 1;
    while !group.is_zero_element(&y) {
        y = group.add(&y, x);
        k += 1;
    }
    k
}

fn torsion_exponent(a: &Subgroup, b: &Subgroup) -> Result<Int> {
    let inv = a.quotient_invariants(b)?;
    Ok(inv.into_iter().filter(|d| *d != Int::from(0)).max().unwrap_or_else(|| Int::from(1)))
}
