//! Column-style Hermite normal form, integer kernels and exact lattice solves.
//!
//! A matrix `M` with `n` rows spans a lattice in `Z^n`. Its column HNF is
//! the unique lower-echelon basis `H = M * W` (`W` unimodular) with
//! strictly increasing pivot rows, positive pivots, and each entry to the
//! left of a pivot reduced into `[0, pivot)`.

use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::{egcd, Int, IntMatrix};

/// Canonical basis of a sublattice of `Z^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColumnHnf {
    /// `n x rank` lower-echelon basis.
    basis: IntMatrix,
    /// Pivot row of each basis column (strictly increasing).
    pivots: Vec<usize>,
}

/// HNF together with the transform that produced it.
#[derive(Clone, Debug)]
pub struct HnfTransform {
    pub hnf: ColumnHnf,
    /// `k x k` unimodular with `m * w = [hnf | 0]`.
    pub w: IntMatrix,
}

fn reduce(m: &IntMatrix, track: bool) -> (IntMatrix, Vec<usize>, Option<IntMatrix>) {
    let (n, k) = (m.rows(), m.cols());
    let mut h = m.clone();
    let mut w = track.then(|| IntMatrix::identity(k));
    let mut pivots = Vec::new();
    let mut col = 0;
    for row in 0..n {
        if col == k {
            break;
        }
        for j in col + 1..k {
            if h[(row, j)].is_zero() {
                continue;
            }
            let a = h[(row, col)].clone();
            let b = h[(row, j)].clone();
            let (g, x, y) = egcd(&a, &b);
            let (z, t) = (-(&b / &g), &a / &g);
            h.combine_cols(col, j, &x, &y, &z, &t);
            if let Some(w) = w.as_mut() {
                w.combine_cols(col, j, &x, &y, &z, &t);
            }
        }
        if h[(row, col)].is_zero() {
            continue;
        }
        if h[(row, col)].is_negative() {
            h.negate_col(col);
            if let Some(w) = w.as_mut() {
                w.negate_col(col);
            }
        }
        let p = h[(row, col)].clone();
        for j in 0..col {
            let q = h[(row, j)].div_floor(&p);
            if !q.is_zero() {
                h.add_col_multiple(j, col, &-&q);
                if let Some(w) = w.as_mut() {
                    w.add_col_multiple(j, col, &-&q);
                }
            }
        }
        pivots.push(row);
        col += 1;
    }
    (h, pivots, w)
}

impl ColumnHnf {
    pub fn new(m: &IntMatrix) -> Self {
        let (h, pivots, _) = reduce(m, false);
        ColumnHnf { basis: h.column_range(0, pivots.len()), pivots }
    }

    pub fn with_transform(m: &IntMatrix) -> HnfTransform {
        let (h, pivots, w) = reduce(m, true);
        HnfTransform {
            hnf: ColumnHnf { basis: h.column_range(0, pivots.len()), pivots },
            w: w.expect("transform tracked"),
        }
    }

    pub fn zero(n: usize) -> Self {
        ColumnHnf { basis: IntMatrix::zeros(n, 0), pivots: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_columns(&self) -> Vec<Vec<Int>> {
        self.basis.columns()
    }

    /// Coordinates of `x` in this basis, if `x` lies in the lattice.
    pub fn coordinates(&self, x: &[Int]) -> Option<Vec<Int>> {
        assert_eq!(x.len(), self.ambient_dim());
        let mut r = x.to_vec();
        let mut c = Vec::with_capacity(self.rank());
        for (j, &p) in self.pivots.iter().enumerate() {
            let piv = &self.basis[(p, j)];
            let (q, rem) = r[p].div_rem(piv);
            if !rem.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for (i, ri) in r.iter_mut().enumerate().skip(p) {
                    *ri -= &q * &self.basis[(i, j)];
                }
            }
            c.push(q);
        }
        r.iter().all(Zero::is_zero).then_some(c)
    }

    pub fn contains(&self, x: &[Int]) -> bool {
        self.coordinates(x).is_some()
    }

    /// True when every basis vector of `other` lies in `self`.
    pub fn contains_lattice(&self, other: &ColumnHnf) -> bool {
        other.basis_columns().iter().all(|c| self.contains(c))
    }

    /// Canonical representative of `x` modulo the lattice.
    pub fn reduce(&self, x: &[Int]) -> Vec<Int> {
        let mut r = x.to_vec();
        for (j, &p) in self.pivots.iter().enumerate() {
            let q = r[p].div_floor(&self.basis[(p, j)]);
            if !q.is_zero() {
                for (i, ri) in r.iter_mut().enumerate().skip(p) {
                    *ri -= &q * &self.basis[(i, j)];
                }
            }
        }
        r
    }

    pub fn sum(&self, other: &ColumnHnf) -> ColumnHnf {
        ColumnHnf::new(&self.basis.hcat(&other.basis))
    }

    pub fn intersection(&self, other: &ColumnHnf) -> ColumnHnf {
        let n = self.ambient_dim();
        if self.rank() == 0 || other.rank() == 0 {
            return ColumnHnf::zero(n);
        }
        let mut neg = other.basis.clone();
        for j in 0..neg.cols() {
            neg.negate_col(j);
        }
        let kernel = integer_kernel(&self.basis.hcat(&neg));
        let a = self.rank();
        let gens: Vec<Vec<Int>> = kernel
            .iter()
            .map(|v| self.basis.mul_vec(&v[..a]))
            .collect();
        ColumnHnf::new(&IntMatrix::from_columns(n, &gens))
    }
}

/// Basis of the integer kernel `{x : m x = 0}`.
pub fn integer_kernel(m: &IntMatrix) -> Vec<Vec<Int>> {
    let t = ColumnHnf::with_transform(m);
    (t.hnf.rank()..m.cols()).map(|j| t.w.column(j)).collect()
}

/// Integer solution `c` of `m c = x`, if one exists.
pub fn solve(m: &IntMatrix, x: &[Int]) -> Option<Vec<Int>> {
    let t = ColumnHnf::with_transform(m);
    solve_with(&t, x)
}

pub fn solve_with(t: &HnfTransform, x: &[Int]) -> Option<Vec<Int>> {
    let y = t.hnf.coordinates(x)?;
    let k = t.w.rows();
    let mut full = y;
    full.resize(k, Int::zero());
    Some(t.w.mul_vec(&full))
}
