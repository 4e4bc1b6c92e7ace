use crate::error::{Error, Result};

/// Finite poset on `0..size`, at most 64 points.
///
/// `below[p]` is the bitset `{q : q <= p}` (reflexive, transitive).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinPoset {
    below: Vec<u64>,
}

pub const MAX_POINTS: usize = 64;

pub(crate) fn bit(p: usize) -> u64 {
    1u64 << p
}

pub(crate) fn points(set: u64) -> impl Iterator<Item = usize> {
    (0..MAX_POINTS).filter(move |&p| set & bit(p) != 0)
}

impl FinPoset {
    /// Builds the order generated by the pairs `(i, j)` meaning `i < j`.
    pub fn new(size: usize, less: &[(usize, usize)]) -> Result<Self> {
        if size > MAX_POINTS {
            return Err(Error::PosetTooLarge(size));
        }
        let mut below: Vec<u64> = (0..size).map(bit).collect();
        for &(i, j) in less {
            if i >= size || j >= size {
                return Err(Error::InvalidPoset(format!("pair ({i},{j}) out of range")));
            }
            if i == j {
                return Err(Error::InvalidPoset(format!("strict pair ({i},{i})")));
            }
            below[j] |= bit(i);
        }
        // transitive closure
        loop {
            let mut changed = false;
            for p in 0..size {
                let mut acc = below[p];
                for q in points(below[p]) {
                    acc |= below[q];
                }
                if acc != below[p] {
                    below[p] = acc;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        for p in 0..size {
            for q in points(below[p]) {
                if q != p && below[q] & bit(p) != 0 {
                    return Err(Error::InvalidPoset(format!("cycle through {p} and {q}")));
                }
            }
        }
        Ok(FinPoset { below })
    }

    pub fn antichain(size: usize) -> Result<Self> {
        Self::new(size, &[])
    }

    pub fn chain(size: usize) -> Result<Self> {
        let less: Vec<(usize, usize)> = (1..size).map(|i| (i - 1, i)).collect();
        Self::new(size, &less)
    }

    pub fn size(&self) -> usize {
        self.below.len()
    }

    pub fn leq(&self, q: usize, p: usize) -> bool {
        self.below[p] & bit(q) != 0
    }

    /// Principal down-set `{q : q <= p}` as a bitset.
    pub fn principal(&self, p: usize) -> u64 {
        self.below[p]
    }

    pub fn is_downset(&self, set: u64) -> bool {
        points(set).all(|p| self.below[p] & !set == 0)
    }

    /// Covering pairs `(q, p)` with `q < p` and nothing strictly between.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for p in 0..self.size() {
            let strict = self.below[p] & !bit(p);
            for q in points(strict) {
                let between = points(strict).any(|r| r != q && self.leq(q, r));
                if !between {
                    out.push((q, p));
                }
            }
        }
        out
    }
}
