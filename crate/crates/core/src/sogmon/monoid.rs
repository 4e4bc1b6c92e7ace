use crate::error::{Error, Result};

/// Commutative monoid given by its Cayley table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinMonoid {
    add: Vec<Vec<usize>>,
    zero: usize,
    labels: Vec<String>,
}

impl FinMonoid {
    pub fn new(add: Vec<Vec<usize>>, zero: usize) -> Result<Self> {
        let labels = (0..add.len()).map(|i| i.to_string()).collect();
        Self::with_labels(add, zero, labels)
    }

    pub fn with_labels(add: Vec<Vec<usize>>, zero: usize, labels: Vec<String>) -> Result<Self> {
        let n = add.len();
        if n == 0 {
            return Err(Error::InvalidMonoid("empty carrier".into()));
        }
        if labels.len() != n {
            return Err(Error::InvalidMonoid(format!("{} labels for {n} elements", labels.len())));
        }
        if zero >= n {
            return Err(Error::InvalidMonoid(format!("zero index {zero} out of range")));
        }
        for (i, row) in add.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidMonoid(format!("row {i} has length {}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidMonoid(format!("entry {bad} in row {i} out of range")));
            }
        }
        for x in 0..n {
            if add[zero][x] != x {
                return Err(Error::InvalidMonoid(format!("0 + {x} != {x}")));
            }
            for y in 0..n {
                if add[x][y] != add[y][x] {
                    return Err(Error::InvalidMonoid(format!("{x} + {y} is not commutative")));
                }
                for z in 0..n {
                    if add[add[x][y]][z] != add[x][add[y][z]] {
                        return Err(Error::InvalidMonoid(format!("({x} + {y}) + {z} is not associative")));
                    }
                }
            }
        }
        Ok(FinMonoid { add, zero, labels })
    }

    pub fn size(&self) -> usize {
        self.add.len()
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        self.add[x][y]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.add
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `k x` for `k >= 0`.
    pub fn multiple(&self, x: usize, k: usize) -> usize {
        (0..k).fold(self.zero, |acc, _| self.add[acc][x])
    }

    /// Algebraic preorder: `x <= y` iff `x + z = y` for some `z`.
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.add[x].contains(&y)
    }

    pub fn is_idempotent(&self, x: usize) -> bool {
        self.add[x][x] == x
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.size()).filter(|&x| self.is_idempotent(x)).collect()
    }
}
