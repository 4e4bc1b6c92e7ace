use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fgab::Int;
use crate::sogmon::{block_monoid, BlockKind, BlockSpec, BlockSum};

/// Symbolic name of a C*-algebra whose V-monoid is a block or a sum of blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "variant", content = "params")]
pub enum AlgebraDescriptor {
    /// `M_m(O_n)`, `m >= 1`, `2 <= n`
    MatCuntz(u64, u64),
    /// `M_m(O_inf)`, `m >= 1`
    MatOInf(u64),
    /// `p_k O_inf p_k`, `k >= 1`
    CornerOInf(u64),
    DirectSum(Vec<AlgebraDescriptor>),
}

impl AlgebraDescriptor {
    pub fn validate(&self) -> Result<()> {
        match self {
            AlgebraDescriptor::MatCuntz(m, n) if *m >= 1 && *n >= 2 => Ok(()),
            AlgebraDescriptor::MatOInf(m) | AlgebraDescriptor::CornerOInf(m) if *m >= 1 => Ok(()),
            AlgebraDescriptor::DirectSum(parts) if !parts.is_empty() => parts.iter().try_for_each(|p| p.validate()),
            d => Err(Error::BadSpec(format!("descriptor {d:?} is out of range"))),
        }
    }

    /// Summands in order, with nested sums flattened.
    pub fn summands(&self) -> Vec<&AlgebraDescriptor> {
        match self {
            AlgebraDescriptor::DirectSum(parts) => parts.iter().flat_map(|p| p.summands()).collect(),
            d => vec![d],
        }
    }

    pub fn uses_corners(&self) -> bool {
        self.summands().iter().any(|d| matches!(d, AlgebraDescriptor::CornerOInf(_)))
    }
}

impl fmt::Display for AlgebraDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraDescriptor::MatCuntz(1, n) => write!(f, "O_{n}"),
            AlgebraDescriptor::MatCuntz(m, n) => write!(f, "M_{m}(O_{n})"),
            AlgebraDescriptor::MatOInf(1) => write!(f, "O_inf"),
            AlgebraDescriptor::MatOInf(m) => write!(f, "M_{m}(O_inf)"),
            AlgebraDescriptor::CornerOInf(k) => write!(f, "p_{k} O_inf p_{k}"),
            AlgebraDescriptor::DirectSum(parts) => {
                let names: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "{}", names.join(" ⊕ "))
            }
        }
    }
}

/// The block behind a single summand, with its order-unit.
fn block_of(d: &AlgebraDescriptor) -> BlockSpec {
    match *d {
        AlgebraDescriptor::MatCuntz(m, n) => BlockSpec::cyclic(n - 1).with_unit(m),
        AlgebraDescriptor::MatOInf(m) => BlockSpec::infinite().with_unit(m),
        AlgebraDescriptor::CornerOInf(k) => BlockSpec::infinite().with_unit(1 - Int::from(k)),
        AlgebraDescriptor::DirectSum(_) => unreachable!("summands are flattened"),
    }
}

/// V-monoid and class of the unit: `M_m(O_n) ↦ ((Z/(n-1)) ⊔ 0, m)`,
/// `M_m(O_inf) ↦ (Z ⊔ 0, m)`, `p_k O_inf p_k ↦ (Z ⊔ 0, 1 - k)`; sums go to
/// sums.
pub fn v_of_descriptor(d: &AlgebraDescriptor) -> Result<BlockSum> {
    d.validate()?;
    let blocks: Vec<BlockSpec> = d.summands().into_iter().map(block_of).collect();
    block_monoid(&blocks)
}

/// Left inverse of [`v_of_descriptor`] on single blocks with an order-unit.
pub fn realize_block(b: &BlockSpec) -> Result<AlgebraDescriptor> {
    let unit = b.normalized_unit().ok_or_else(|| Error::NotABlock("block has no order-unit".into()))?;
    match b.kind {
        BlockKind::Cyclic(0) => Err(Error::NotABlock("cyclic order 0".into())),
        BlockKind::Cyclic(n) => {
            let r = u64::try_from(unit).map_err(|_| Error::NotABlock("unit out of range".into()))?;
            let m = if r == 0 { n } else { r };
            Ok(AlgebraDescriptor::MatCuntz(m, n + 1))
        }
        BlockKind::Infinite => {
            let k = i64::try_from(unit).map_err(|_| Error::NotABlock("unit out of range".into()))?;
            Ok(if k > 0 {
                AlgebraDescriptor::MatOInf(k as u64)
            } else {
                AlgebraDescriptor::CornerOInf((1 - k) as u64)
            })
        }
    }
}

/// One descriptor for a whole block list; a sum when there are several blocks.
pub fn realize_blocks(blocks: &[BlockSpec]) -> Result<AlgebraDescriptor> {
    let mut parts = blocks.iter().map(realize_block).collect::<Result<Vec<_>>>()?;
    match parts.len() {
        0 => Err(Error::NotABlock("no blocks".into())),
        1 => Ok(parts.remove(0)),
        _ => Ok(AlgebraDescriptor::DirectSum(parts)),
    }
}
