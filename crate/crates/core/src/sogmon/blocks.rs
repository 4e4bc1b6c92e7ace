use std::fmt;

use num_traits::Zero;

use super::presentation::{SogElement, SogPresentation};
use crate::dlat::FinSemilattice;
use crate::error::{Error, Result};
use crate::fgab::{FgAbGroup, Int, Subgroup};

/// `(Z/n) ⊔ {0}` or `Z ⊔ {0}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BlockKind {
    Cyclic(u64),
    Infinite,
}

impl fmt::Display for BlockKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockKind::Cyclic(n) => write!(f, "(Z/{n})+0"),
            BlockKind::Infinite => write!(f, "Z+0"),
        }
    }
}

/// A block together with an optional order-unit in its group part.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BlockSpec {
    pub kind: BlockKind,
    pub unit: Option<Int>,
}

impl BlockSpec {
    pub fn cyclic(n: u64) -> Self {
        BlockSpec { kind: BlockKind::Cyclic(n), unit: None }
    }

    pub fn infinite() -> Self {
        BlockSpec { kind: BlockKind::Infinite, unit: None }
    }

    pub fn with_unit(mut self, unit: impl Into<Int>) -> Self {
        self.unit = Some(unit.into());
        self
    }

    /// Unit reduced to `0..n` for cyclic blocks.
    pub fn normalized_unit(&self) -> Option<Int> {
        let u = self.unit.clone()?;
        Some(match self.kind {
            BlockKind::Cyclic(n) => {
                let n = Int::from(n);
                ((u % &n) + &n) % &n
            }
            BlockKind::Infinite => u,
        })
    }
}

/// A finite direct sum of blocks, with its order-unit when every block has one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSum {
    pub blocks: Vec<BlockSpec>,
    pub presentation: SogPresentation,
    pub unit: Option<SogElement>,
}

fn single_block(kind: BlockKind) -> Result<SogPresentation> {
    let order = match kind {
        BlockKind::Cyclic(0) => return Err(Error::BadSpec("cyclic block needs n >= 1".into())),
        BlockKind::Cyclic(n) => Int::from(n),
        BlockKind::Infinite => Int::zero(),
    };
    let group = FgAbGroup::from_cyclic_factors(&[order]);
    let lam = FinSemilattice::new(vec!["0".into(), "1".into()], vec![vec![0, 1], vec![1, 1]], 0)?;
    SogPresentation::new(lam, group.clone(), vec![Subgroup::zero(&group), Subgroup::whole(&group)])
}

pub fn block_monoid(blocks: &[BlockSpec]) -> Result<BlockSum> {
    if blocks.is_empty() {
        return Err(Error::BadSpec("no blocks".into()));
    }
    let parts = blocks.iter().map(|b| single_block(b.kind)).collect::<Result<Vec<_>>>()?;
    let presentation = SogPresentation::direct_sum(&parts)?;
    let unit = if blocks.iter().all(|b| b.unit.is_some()) {
        let grp: Vec<Int> = blocks.iter().map(|b| b.normalized_unit().expect("present")).collect();
        Some(presentation.element(presentation.lam().top(), &grp)?)
    } else {
        None
    };
    Ok(BlockSum { blocks: blocks.to_vec(), presentation, unit })
}

/// Recognizes presentations of the shape produced by [`block_monoid`]:
/// Boolean `Λ` whose atoms carry cyclic groups that sum directly to every
/// `G_S`. Returns the block kinds in atom order, or why the shape fails.
pub fn recognize_blocks(p: &SogPresentation) -> Result<std::result::Result<Vec<(usize, BlockKind)>, String>> {
    let lam = p.lam();
    let atoms: Vec<usize> = lam.join_irreducibles();
    if atoms.iter().any(|&a| (0..lam.size()).any(|x| x != a && x != lam.zero() && lam.leq(x, a))) {
        return Ok(Err("a join-irreducible idempotent is not an atom".into()));
    }
    if atoms.len() >= usize::BITS as usize || lam.size() != 1usize << atoms.len() {
        return Ok(Err(format!("{} idempotents is not 2^{}", lam.size(), atoms.len())));
    }
    let mut kinds = Vec::with_capacity(atoms.len());
    for &a in &atoms {
        let inv = p.component(a).invariants();
        let kind = match inv.as_slice() {
            [] => BlockKind::Cyclic(1),
            [d] if d.is_zero() => BlockKind::Infinite,
            [d] => match u64::try_from(d.clone()) {
                Ok(n) => BlockKind::Cyclic(n),
                Err(_) => return Ok(Err("cyclic order too large".into())),
            },
            _ => return Ok(Err(format!("G_{} is not cyclic", lam.label(a)))),
        };
        kinds.push((a, kind));
    }
    if !p.component(lam.zero()).is_trivial() {
        return Ok(Err("G_0 is not trivial".into()));
    }
    for e in 0..lam.size() {
        let below: Vec<usize> = atoms.iter().copied().filter(|&a| lam.leq(a, e)).collect();
        let mut acc = Subgroup::zero(p.group());
        for &a in &below {
            if !acc.intersection(p.component(a))?.is_trivial() {
                return Ok(Err(format!("atom groups below {} do not sum directly", lam.label(e))));
            }
            acc = acc.sum(p.component(a))?;
        }
        if acc != *p.component(e) {
            return Ok(Err(format!("G_{} is not the sum of the atom groups below it", lam.label(e))));
        }
    }
    Ok(Ok(kinds))
}
