use super::lattice::{FinDistLattice, LatElem, DEFAULT_ELEMENT_BOUND};
use super::poset::{bit, FinPoset, MAX_POINTS};
use crate::error::{Error, Result};
use crate::oracle::{brute_refinement, OracleBudget};
use crate::sogmon::FinMonoid;

/// Finite join-semilattice with zero, given by its join table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinSemilattice {
    labels: Vec<String>,
    join: Vec<Vec<usize>>,
    zero: usize,
}

impl FinSemilattice {
    pub fn new(labels: Vec<String>, join: Vec<Vec<usize>>, zero: usize) -> Result<Self> {
        let n = join.len();
        let bad = |m: String| Err(Error::InvalidSemilattice(m));
        if n == 0 {
            return bad("empty carrier".into());
        }
        if labels.len() != n {
            return bad(format!("{} labels for {n} elements", labels.len()));
        }
        if zero >= n {
            return bad(format!("zero index {zero} out of range"));
        }
        if join.iter().any(|r| r.len() != n || r.iter().any(|&v| v >= n)) {
            return bad("join table is not a square table over the carrier".into());
        }
        for x in 0..n {
            if join[x][x] != x {
                return bad(format!("{x} + {x} != {x}"));
            }
            if join[zero][x] != x {
                return bad(format!("0 + {x} != {x}"));
            }
            for y in 0..n {
                if join[x][y] != join[y][x] {
                    return bad(format!("{x} + {y} is not commutative"));
                }
                for z in 0..n {
                    if join[join[x][y]][z] != join[x][join[y][z]] {
                        return bad(format!("({x} + {y}) + {z} is not associative"));
                    }
                }
            }
        }
        Ok(FinSemilattice { labels, join, zero })
    }

    /// Semilattice of down-sets of a lattice under union.
    pub fn from_lattice(lat: &FinDistLattice) -> Result<Self> {
        let els = lat.elements()?;
        let join = els
            .iter()
            .map(|&x| els.iter().map(|&y| lat.index_of(x.join(y)).expect("closed")).collect())
            .collect();
        let labels = els.iter().map(|e| format!("{{{}}}", e.key())).collect();
        Self::new(labels, join, 0)
    }

    /// Product semilattice; element `(i_1, ..., i_k)` is numbered
    /// lexicographically with the last coordinate varying fastest.
    pub fn product(parts: &[FinSemilattice]) -> Result<Self> {
        let sizes: Vec<usize> = parts.iter().map(|s| s.size()).collect();
        let total: usize = sizes.iter().product();
        let coords = |i: usize| Self::product_coords(&sizes, i);
        let index = |c: &[usize]| c.iter().zip(&sizes).fold(0, |acc, (&x, &n)| acc * n + x);
        let all: Vec<Vec<usize>> = (0..total).map(coords).collect();
        let join = all
            .iter()
            .map(|a| {
                all.iter()
                    .map(|b| {
                        let c: Vec<usize> = parts.iter().zip(a.iter().zip(b)).map(|(s, (&x, &y))| s.join(x, y)).collect();
                        index(&c)
                    })
                    .collect()
            })
            .collect();
        let labels = all
            .iter()
            .map(|c| {
                let inner: Vec<&str> = parts.iter().zip(c).map(|(s, &x)| s.label(x)).collect();
                format!("({})", inner.join(","))
            })
            .collect();
        let zero = index(&parts.iter().map(|s| s.zero()).collect::<Vec<_>>());
        Self::new(labels, join, zero)
    }

    /// Coordinates of an element of [`FinSemilattice::product`].
    pub fn product_coords(sizes: &[usize], mut i: usize) -> Vec<usize> {
        let mut c = vec![0; sizes.len()];
        for k in (0..sizes.len()).rev() {
            c[k] = i % sizes[k];
            i /= sizes[k];
        }
        c
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn size(&self) -> usize {
        self.join.len()
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x][y]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.join
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.join[x][y] == y
    }

    pub fn top(&self) -> usize {
        (0..self.size()).fold(self.zero, |acc, x| self.join[acc][x])
    }

    pub fn as_monoid(&self) -> FinMonoid {
        FinMonoid::with_labels(self.join.clone(), self.zero, self.labels.clone()).expect("semilattices are monoids")
    }

    /// Meet, which exists because the carrier is finite with a zero.
    pub fn meet(&self, x: usize, y: usize) -> usize {
        (0..self.size())
            .filter(|&z| self.leq(z, x) && self.leq(z, y))
            .fold(self.zero, |acc, z| self.join[acc][z])
    }

    /// Nonzero elements that are not the join of the elements strictly below.
    pub fn join_irreducibles(&self) -> Vec<usize> {
        (0..self.size())
            .filter(|&x| {
                let below = (0..self.size())
                    .filter(|&y| y != x && self.leq(y, x))
                    .fold(self.zero, |acc, y| self.join[acc][y]);
                x != self.zero && below != x
            })
            .collect()
    }

    /// `None` when the semilattice is distributive, otherwise an equation
    /// `a0 + a1 = b0 + b1` that cannot be refined.
    pub fn distributivity_witness(&self) -> Result<Option<String>> {
        let budget = OracleBudget { element_bound: self.size().max(1), ..OracleBudget::default() };
        Ok(brute_refinement(&self.as_monoid(), &budget)?.map(|w| {
            format!(
                "{} + {} = {} + {} has no refinement",
                self.label(w.a0),
                self.label(w.a1),
                self.label(w.b0),
                self.label(w.b1)
            )
        }))
    }
}

/// `Id S` realized as down-sets of the join-irreducibles of `S`.
#[derive(Clone, Debug)]
pub struct IdealLattice {
    lattice: FinDistLattice,
    points: Vec<usize>,
    principal: Vec<LatElem>,
}

impl IdealLattice {
    pub fn lattice(&self) -> &FinDistLattice {
        &self.lattice
    }

    /// The element of `S` behind each join-irreducible point.
    pub fn points(&self) -> &[usize] {
        &self.points
    }

    /// The principal ideal `[0, e]`.
    pub fn principal(&self, e: usize) -> LatElem {
        self.principal[e]
    }

    /// Largest element of an ideal; every ideal of a finite semilattice is principal.
    pub fn max_of(&self, ideal: LatElem) -> usize {
        self.principal.iter().position(|&p| p == ideal).expect("ideal lattice of a distributive semilattice")
    }

    /// Members of an ideal as elements of `S`.
    pub fn members(&self, ideal: LatElem) -> Vec<usize> {
        (0..self.principal.len()).filter(|&e| self.principal[e].leq(ideal)).collect()
    }
}

/// The ideal lattice of a distributive semilattice.
///
/// Fails with [`Error::NotDistributive`] carrying an unrefinable equation
/// when `S` is not distributive.
pub fn ideal_lattice(s: &FinSemilattice) -> Result<IdealLattice> {
    if let Some(w) = s.distributivity_witness()? {
        return Err(Error::NotDistributive(w));
    }
    let pts = s.join_irreducibles();
    if pts.len() > MAX_POINTS {
        return Err(Error::PosetTooLarge(pts.len()));
    }
    let mut less = Vec::new();
    for (i, &a) in pts.iter().enumerate() {
        for (j, &b) in pts.iter().enumerate() {
            if i != j && s.leq(a, b) {
                less.push((i, j));
            }
        }
    }
    let poset = FinPoset::new(pts.len(), &less)?;
    let lattice = FinDistLattice::with_bound(&poset, DEFAULT_ELEMENT_BOUND)?;
    let principal: Vec<LatElem> = (0..s.size())
        .map(|e| LatElem(pts.iter().enumerate().filter(|(_, &p)| s.leq(p, e)).fold(0, |acc, (i, _)| acc | bit(i))))
        .collect();
    if lattice.len()? != s.size() {
        return Err(Error::Internal("ideal count differs from carrier size".into()));
    }
    Ok(IdealLattice { lattice, points: pts, principal })
}

/// Every ideal (nonempty, downward closed, join-closed subset) of `s`, as a
/// bitset over the carrier. Carriers above 20 elements are refused.
pub fn enumerate_ideals(s: &FinSemilattice) -> Result<Vec<u64>> {
    let n = s.size();
    if n > 20 {
        return Err(Error::ElementBoundExceeded(1 << 20));
    }
    let mut out = Vec::new();
    for set in 1u64..(1u64 << n) {
        let has = |x: usize| set & (1 << x) != 0;
        let ok = (0..n).filter(|&x| has(x)).all(|x| {
            (0..n).all(|y| !s.leq(y, x) || has(y)) && (0..n).filter(|&y| has(y)).all(|y| has(s.join(x, y)))
        });
        if ok {
            out.push(set);
        }
    }
    Ok(out)
}
