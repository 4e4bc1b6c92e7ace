//! Purity and direct complements via the splitting of `B -> B/A`.

use num_traits::{One, Zero};

use super::hnf::solve;
use super::matrix::Int;
use super::snf::smith_normal_form;
use super::subgroup::Subgroup;
use crate::error::{Error, Result};

/// A complement `K` of `a` in `b`: `a ∩ K = 0` and `a + K = b`.
///
/// Works in coordinates of the preimage lattice of `b`. There the quotient
/// `b/a` diagonalizes as `⊕ Z/d_i ⊕ Z^f`; each cyclic generator `f_i` is
/// corrected by some `a_i ∈ a` so that `d_i (f_i + a_i)` vanishes in `b`.
/// The lifts span the complement. When some correction has no solution the
/// extension does not split and [`Error::NotASummand`] is returned.
pub fn direct_complement(a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
    if !a.is_subgroup_of(b)? {
        return Err(Error::NotContained);
    }
    let group = b.group();
    let lb = b.canonical_form();
    let a_coords = b.lattice_coordinates(a.canonical_form()).ok_or(Error::NotContained)?;
    let r_coords = b
        .lattice_coordinates(group.relation_lattice())
        .ok_or_else(|| Error::Internal("relations outside subgroup lattice".into()))?;
    let dim = lb.rank();

    let snf = smith_normal_form(&a_coords);
    let diag = snf.diagonal();
    let rank = snf.rank();

    let mut lifts: Vec<Vec<Int>> = Vec::new();
    for i in 0..dim {
        let f_i = snf.u_inv.column(i);
        if i >= rank {
            lifts.push(f_i);
            continue;
        }
        let d = &diag[i];
        if d.is_one() {
            continue;
        }
        // d f_i = R r + d A c  =>  d (f_i - A c) = R r, which is 0 in b.
        let scaled_a = {
            let mut m = a_coords.clone();
            for j in 0..m.cols() {
                for row in 0..m.rows() {
                    m[(row, j)] *= d;
                }
            }
            m
        };
        let target: Vec<Int> = f_i.iter().map(|x| x * d).collect();
        let system = r_coords.hcat(&scaled_a);
        let Some(sol) = solve(&system, &target) else {
            return Err(Error::NotASummand);
        };
        let c = &sol[r_coords.cols()..];
        let correction = a_coords.mul_vec(c);
        lifts.push(f_i.iter().zip(&correction).map(|(x, y)| x - y).collect());
    }

    let gens: Vec<Vec<Int>> = lifts.iter().map(|v| lb.basis().mul_vec(v)).collect();
    Subgroup::new(group, gens)
}

/// `a` is pure in `b`; for finitely generated `b` this is exactly being a
/// direct summand, which is what gets decided.
pub fn is_pure(a: &Subgroup, b: &Subgroup) -> Result<bool> {
    match direct_complement(a, b) {
        Ok(_) => Ok(true),
        Err(Error::NotASummand) => Ok(false),
        Err(e) => Err(e),
    }
}

/// `(n, x)` with `x ∈ b` and `n x ∈ a` but `n x ∉ n a`, when `a` is not
/// pure in `b`.
pub fn purity_witness(a: &Subgroup, b: &Subgroup) -> Result<Option<(Int, Vec<Int>)>> {
    if !a.is_subgroup_of(b)? {
        return Err(Error::NotContained);
    }
    let group = b.group();
    let exp = quotient_torsion_exponent(a, b)?;
    let mut n = Int::from(2);
    while n <= exp {
        let nb = b.scaled(&n);
        let na = a.scaled(&n);
        for y in nb.intersection(a)?.generators() {
            if na.contains(y)? {
                continue;
            }
            let c = nb.membership_witness(y)?.ok_or_else(|| Error::Internal("lost a multiple".into()))?;
            let mut x = group.zero_element();
            for (ci, bi) in c.iter().zip(b.generators()) {
                x = group.add(&x, &group.scale(ci, bi));
            }
            return Ok(Some((n, x)));
        }
        n += 1;
    }
    Ok(None)
}

/// Checks `k` is a complement of `a` in `b`.
pub fn is_complement(a: &Subgroup, k: &Subgroup, b: &Subgroup) -> Result<bool> {
    Ok(a.intersection(k)?.is_trivial() && a.sum(k)? == *b)
}

/// Exponent of the torsion part of `b/a` (1 when torsion-free).
pub fn quotient_torsion_exponent(a: &Subgroup, b: &Subgroup) -> Result<Int> {
    let inv = a.quotient_invariants(b)?;
    Ok(inv.into_iter().filter(|d| !d.is_zero()).max().unwrap_or_else(Int::one))
}
