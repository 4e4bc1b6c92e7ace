use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Zero};

use super::hnf::ColumnHnf;
use super::matrix::{Int, IntMatrix};
use super::snf::{smith_normal_form, Snf};
use crate::error::{Error, Result};

struct GroupData {
    rank: usize,
    relations: IntMatrix,
    relation_lattice: ColumnHnf,
    snf: Snf,
}

/// `Z^n` modulo the column span of a relation matrix.
///
/// Cheap to clone; two handles compare equal when they present the same
/// quotient of the same `Z^n` (same relation lattice).
#[derive(Clone)]
pub struct FgAbGroup(Arc<GroupData>);

impl FgAbGroup {
    pub fn from_relations(rank: usize, relations: IntMatrix) -> Result<Self> {
        if relations.rows() != rank {
            return Err(Error::DimensionMismatch(format!(
                "relation matrix has {} rows, ambient rank is {}",
                relations.rows(),
                rank
            )));
        }
        let relation_lattice = ColumnHnf::new(&relations);
        let snf = smith_normal_form(&relations);
        Ok(FgAbGroup(Arc::new(GroupData { rank, relations, relation_lattice, snf })))
    }

    /// Free abelian group `Z^n`.
    pub fn free(rank: usize) -> Self {
        Self::from_relations(rank, IntMatrix::zeros(rank, 0)).expect("shape is consistent")
    }

    /// `Z/d_1 + ... + Z/d_k` with `d_i = 0` standing for a copy of `Z`.
    pub fn from_cyclic_factors(orders: &[Int]) -> Self {
        let n = orders.len();
        let cols: Vec<Vec<Int>> = orders
            .iter()
            .enumerate()
            .filter(|(_, d)| !d.is_zero())
            .map(|(i, d)| {
                let mut c = vec![Int::zero(); n];
                c[i] = d.clone();
                c
            })
            .collect();
        Self::from_relations(n, IntMatrix::from_columns(n, &cols)).expect("shape is consistent")
    }

    /// External direct sum; coordinates of the parts are concatenated.
    pub fn direct_sum(parts: &[FgAbGroup]) -> Self {
        let n: usize = parts.iter().map(|g| g.rank()).sum();
        let mut cols = Vec::new();
        let mut offset = 0;
        for g in parts {
            for c in g.relations().columns() {
                let mut col = vec![Int::zero(); n];
                col[offset..offset + g.rank()].clone_from_slice(&c);
                cols.push(col);
            }
            offset += g.rank();
        }
        Self::from_relations(n, IntMatrix::from_columns(n, &cols)).expect("shape is consistent")
    }

    pub fn rank(&self) -> usize {
        self.0.rank
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.0.relations
    }

    pub fn relation_lattice(&self) -> &ColumnHnf {
        &self.0.relation_lattice
    }

    pub(crate) fn snf(&self) -> &Snf {
        &self.0.snf
    }

    /// Number of nonzero diagonal entries in the Smith form of the relations.
    pub(crate) fn relation_rank(&self) -> usize {
        self.0.snf.rank()
    }

    /// Full invariant-factor list: one entry per ambient coordinate, units
    /// included, zeros last (one per free summand).
    pub fn invariant_factors_full(&self) -> Vec<Int> {
        let rho = self.relation_rank();
        let mut out: Vec<Int> = self.0.snf.diagonal().into_iter().take(rho).collect();
        out.resize(self.rank(), Int::zero());
        out
    }

    /// Reported isomorphism type: trivial factors dropped.
    pub fn invariant_factors(&self) -> Vec<Int> {
        self.invariant_factors_full().into_iter().filter(|d| !d.is_one()).collect()
    }

    pub fn free_rank(&self) -> usize {
        self.rank() - self.relation_rank()
    }

    pub fn torsion_factors(&self) -> Vec<Int> {
        self.invariant_factors().into_iter().filter(|d| !d.is_zero()).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank() == 0
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion_factors().is_empty()
    }

    /// Group order, or `None` when infinite.
    pub fn order(&self) -> Option<Int> {
        self.is_finite().then(|| self.torsion_factors().iter().product())
    }

    /// Canonical coset representative of `x`.
    pub fn reduce(&self, x: &[Int]) -> Result<Vec<Int>> {
        self.check_len(x)?;
        Ok(self.0.relation_lattice.reduce(x))
    }

    pub fn element<T: Into<Int> + Copy>(&self, x: &[T]) -> Result<Vec<Int>> {
        let v: Vec<Int> = x.iter().map(|&t| t.into()).collect();
        self.reduce(&v)
    }

    pub fn zero_element(&self) -> Vec<Int> {
        vec![Int::zero(); self.rank()]
    }

    pub fn is_zero_element(&self, x: &[Int]) -> bool {
        self.0.relation_lattice.contains(x)
    }

    pub fn add(&self, x: &[Int], y: &[Int]) -> Vec<Int> {
        let s: Vec<Int> = x.iter().zip(y).map(|(a, b)| a + b).collect();
        self.0.relation_lattice.reduce(&s)
    }

    pub fn sub(&self, x: &[Int], y: &[Int]) -> Vec<Int> {
        let s: Vec<Int> = x.iter().zip(y).map(|(a, b)| a - b).collect();
        self.0.relation_lattice.reduce(&s)
    }

    pub fn scale(&self, k: &Int, x: &[Int]) -> Vec<Int> {
        let s: Vec<Int> = x.iter().map(|a| k * a).collect();
        self.0.relation_lattice.reduce(&s)
    }

    /// Order of `x`, or `None` if it has infinite order.
    pub fn element_order(&self, x: &[Int]) -> Option<Int> {
        let snf = &self.0.snf;
        let y = snf.u.mul_vec(x);
        let rho = self.relation_rank();
        if y[rho..].iter().any(|v| !v.is_zero()) {
            return None;
        }
        let diag = snf.diagonal();
        Some(
            y[..rho]
                .iter()
                .zip(&diag)
                .map(|(yi, di)| di / yi.gcd(di))
                .fold(Int::one(), |acc, o| acc.lcm(&o)),
        )
    }

    pub(crate) fn check_len(&self, x: &[Int]) -> Result<()> {
        if x.len() != self.rank() {
            return Err(Error::DimensionMismatch(format!(
                "element has {} coordinates, group rank is {}",
                x.len(),
                self.rank()
            )));
        }
        Ok(())
    }

    pub fn same_as(&self, other: &FgAbGroup) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.rank() == other.rank() && self.relation_lattice() == other.relation_lattice())
    }
}

impl PartialEq for FgAbGroup {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for FgAbGroup {}

impl std::hash::Hash for FgAbGroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.rank().hash(state);
        self.relation_lattice().hash(state);
    }
}

impl fmt::Debug for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FgAbGroup(rank {}, ", self.rank())?;
        let parts: Vec<String> = self
            .invariant_factors()
            .iter()
            .map(|d| if d.is_zero() { "Z".to_string() } else { format!("Z/{d}") })
            .collect();
        if parts.is_empty() {
            write!(f, "0)")
        } else {
            write!(f, "{})", parts.join(" + "))
        }
    }
}
