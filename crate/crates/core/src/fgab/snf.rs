//! Smith normal form with unimodular transforms.

use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::{egcd, Int, IntMatrix};

/// `u * a * v == d` with `u`, `v` unimodular and `d` diagonal, `d[i] | d[i+1]`.
///
/// The inverses of both transforms are tracked alongside them so callers
/// can move between the original and the diagonal coordinates for free.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl Snf {
    /// Diagonal entries `d[0..min(rows, cols)]`.
    pub fn diagonal(&self) -> Vec<Int> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d[(i, i)].clone()).collect()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|x| !x.is_zero()).count()
    }
}

struct Work {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    // row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &Int) {
        self.a.add_row_multiple(dst, src, k);
        self.u.add_row_multiple(dst, src, k);
        self.u_inv.add_col_multiple(src, dst, &-k);
    }

    // col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &Int) {
        self.a.add_col_multiple(dst, src, k);
        self.v.add_col_multiple(dst, src, k);
        self.v_inv.add_row_multiple(src, dst, &-k);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// Zeroes `a[i][t]` against the pivot `a[t][t]`. When the pivot does not
    /// divide it, a Bezout transform on rows `t, i` replaces the pivot by the
    /// gcd; unlike repeated division with remainder this keeps entry growth
    /// linear in the size of the multipliers.
    fn clear_below(&mut self, t: usize, i: usize) {
        let b = self.a[(i, t)].clone();
        if b.is_zero() {
            return;
        }
        let p = self.a[(t, t)].clone();
        if b.is_multiple_of(&p) {
            self.add_row(i, t, &-(b / p));
            return;
        }
        let (g, x, y) = egcd(&p, &b);
        let (z, v) = (-(&b / &g), &p / &g);
        self.a.combine_rows(t, i, &x, &y, &z, &v);
        self.u.combine_rows(t, i, &x, &y, &z, &v);
        self.u_inv.combine_cols(t, i, &v, &-&z, &-&y, &x);
    }

    /// Zeroes `a[t][j]` against the pivot, by column operations.
    fn clear_right(&mut self, t: usize, j: usize) {
        let b = self.a[(t, j)].clone();
        if b.is_zero() {
            return;
        }
        let p = self.a[(t, t)].clone();
        if b.is_multiple_of(&p) {
            self.add_col(j, t, &-(b / p));
            return;
        }
        let (g, x, y) = egcd(&p, &b);
        let (z, v) = (-(&b / &g), &p / &g);
        self.a.combine_cols(t, j, &x, &y, &z, &v);
        self.v.combine_cols(t, j, &x, &y, &z, &v);
        self.v_inv.combine_rows(t, j, &v, &-&z, &-&y, &x);
    }

    /// Position of the smallest nonzero |entry| in the trailing block.
    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.a[(bi, bj)].abs() <= x.abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> Snf {
    let (m, n) = (a.rows(), a.cols());
    let mut w = Work {
        a: a.clone(),
        u: IntMatrix::identity(m),
        u_inv: IntMatrix::identity(m),
        v: IntMatrix::identity(n),
        v_inv: IntMatrix::identity(n),
    };
    for t in 0..m.min(n) {
        let Some((pi, pj)) = w.min_entry(t) else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            for i in t + 1..m {
                w.clear_below(t, i);
            }
            for j in t + 1..n {
                w.clear_right(t, j);
            }
            // column operations can refill the pivot column
            if (t + 1..m).any(|i| !w.a[(i, t)].is_zero()) {
                continue;
            }
            // Row and column are clear; enforce divisibility on the rest.
            let p = w.a[(t, t)].clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !w.a[(i, j)].is_multiple_of(&p)));
            match bad {
                Some(i) => w.add_row(t, i, &Int::from(1)),
                None => break,
            }
        }
        if w.a[(t, t)].is_negative() {
            w.negate_row(t);
        }
    }
    Snf { u: w.u, u_inv: w.u_inv, d: w.a, v: w.v, v_inv: w.v_inv }
}
