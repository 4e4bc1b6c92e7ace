use super::OracleBudget;
use crate::error::{Error, Result};
use crate::sogmon::FinMonoid;

/// An equation `a0 + a1 = b0 + b1` with no refinement matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RefinementWitness {
    pub a0: usize,
    pub a1: usize,
    pub b0: usize,
    pub b1: usize,
}

/// Scans every equation and every candidate matrix `(c00, c01, c10, c11)`.
pub fn brute_refinement(m: &FinMonoid, budget: &OracleBudget) -> Result<Option<RefinementWitness>> {
    let n = m.size();
    if n > budget.element_bound {
        return Err(Error::BudgetExceeded(format!("{n} elements, bound {}", budget.element_bound)));
    }
    let t = m.table();
    for a0 in 0..n {
        for a1 in 0..n {
            let s = t[a0][a1];
            for b0 in 0..n {
                for b1 in 0..n {
                    if t[b0][b1] != s {
                        continue;
                    }
                    if !has_matrix(t, a0, a1, b0, b1) {
                        return Ok(Some(RefinementWitness { a0, a1, b0, b1 }));
                    }
                }
            }
        }
    }
    Ok(None)
}

fn has_matrix(t: &[Vec<usize>], a0: usize, a1: usize, b0: usize, b1: usize) -> bool {
    let n = t.len();
    for c00 in 0..n {
        for c01 in 0..n {
            if t[c00][c01] != a0 {
                continue;
            }
            for c10 in 0..n {
                if t[c00][c10] != b0 {
                    continue;
                }
                for c11 in 0..n {
                    if t[c10][c11] == a1 && t[c01][c11] == b1 {
                        return true;
                    }
                }
            }
        }
    }
    false
}
