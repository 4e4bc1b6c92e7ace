use num_traits::Zero;

use super::descriptor::{realize_blocks, AlgebraDescriptor};
use crate::error::{Error, Result};
use crate::fgab::Int;
use crate::sogmon::{
    block_monoid, check_presentation_axioms, recognize_blocks, BlockKind, BlockSpec, BlockSum, SogElement,
};

/// An element of a block sum: one entry per block, `None` for that block's zero.
pub type BlockTuple = Vec<Option<Int>>;

/// A homomorphism between block sums, given by the image of each block's
/// generator `(e_j, 1)` and the image of `0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageMap {
    pub zero: BlockTuple,
    pub generators: Vec<BlockTuple>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlueprintStage {
    pub blocks: Vec<BlockSpec>,
    pub algebra: AlgebraDescriptor,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapCertificate {
    pub pairs_checked: usize,
    pub exhaustive: bool,
    /// `Some(true)` when the unit check ran and passed
    pub normalized: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Blueprint {
    pub stages: Vec<BlueprintStage>,
    pub maps: Vec<StageMap>,
    pub unital: bool,
    pub certificates: Vec<MapCertificate>,
}

/// Recorded in certificates in place of any analytic argument.
pub const LIFTING_NOTE: &str =
    "each stage map is verified as a monoid homomorphism of V-data; its lifting to a *-homomorphism of the stage algebras is assumed, not computed";

/// Largest stage carrier checked on all pairs.
const EXHAUSTIVE_BOUND: usize = 256;

/// Builds a staged limit blueprint: each stage's algebra comes from
/// realizing its blocks, and each map is checked to be a (unit-preserving,
/// when `unital`) monoid homomorphism.
///
/// `maps[i]` goes from stage `i` to stage `i + 1`. One extra map is read as
/// an endomorphism of the last stage, repeated forever.
///
/// Stages without order-units are realized with unit `1` in every block;
/// that is only allowed when `unital` is false.
pub fn emit_blueprint(stages: &[Vec<BlockSpec>], maps: &[StageMap], unital: bool) -> Result<Blueprint> {
    if stages.is_empty() {
        return Err(Error::PreconditionViolated("no stages".into()));
    }
    if maps.len() + 1 != stages.len() && maps.len() != stages.len() {
        return Err(Error::PreconditionViolated(format!("{} maps for {} stages", maps.len(), stages.len())));
    }
    let mut sums = Vec::with_capacity(stages.len());
    let mut out_stages = Vec::with_capacity(stages.len());
    for (i, blocks) in stages.iter().enumerate() {
        let not_in = |detail: String| Error::StageNotInBbar { stage: i, detail };
        let sum = block_monoid(blocks).map_err(|e| not_in(e.to_string()))?;
        let axioms = check_presentation_axioms(&sum.presentation)?;
        if let Some((name, c)) = axioms.entries().into_iter().find(|(_, c)| !c.holds) {
            return Err(not_in(format!("{name} fails: {c}")));
        }
        if let Err(why) = recognize_blocks(&sum.presentation)? {
            return Err(not_in(why));
        }
        if unital && sum.unit.is_none() {
            return Err(not_in("unital blueprint needs an order-unit in every block".into()));
        }
        let realized: Vec<BlockSpec> =
            blocks.iter().map(|b| if b.unit.is_some() { b.clone() } else { b.clone().with_unit(1) }).collect();
        let algebra = realize_blocks(&realized).map_err(|e| not_in(e.to_string()))?;
        out_stages.push(BlueprintStage { blocks: blocks.clone(), algebra });
        sums.push(sum);
    }
    let mut certificates = Vec::with_capacity(maps.len());
    for (i, map) in maps.iter().enumerate() {
        let to = (i + 1).min(sums.len() - 1);
        certificates.push(check_map(i, &sums[i], &sums[to], map, unital)?);
    }
    Ok(Blueprint { stages: out_stages, maps: maps.to_vec(), unital, certificates })
}

impl Blueprint {
    /// The same limit data with every corner stage re-realized through full
    /// matrix algebras: units are dropped and each block is realized with
    /// unit `1`. The V-data of every stage is unchanged.
    pub fn forget_units(&self) -> Result<Blueprint> {
        let stages: Vec<Vec<BlockSpec>> = self
            .stages
            .iter()
            .map(|s| s.blocks.iter().map(|b| BlockSpec { kind: b.kind, unit: None }).collect())
            .collect();
        let out = emit_blueprint(&stages, &self.maps, false)?;
        if out.stages.iter().any(|s| s.algebra.uses_corners()) {
            return Err(Error::Internal("unit-free realization still uses a corner".into()));
        }
        Ok(out)
    }

    /// The last map is an endomorphism of the last stage.
    pub fn has_stationary_tail(&self) -> bool {
        self.maps.len() == self.stages.len()
    }

    pub fn stage_names(&self) -> Vec<String> {
        self.stages.iter().map(|s| s.algebra.to_string()).collect()
    }
}

fn kind_of(sum: &BlockSum, j: usize) -> BlockKind {
    sum.blocks[j].kind
}

/// `BlockTuple` -> element of the presentation built by `block_monoid`.
pub fn tuple_to_element(sum: &BlockSum, t: &BlockTuple) -> Result<SogElement> {
    if t.len() != sum.blocks.len() {
        return Err(Error::InvalidElement(format!("{} entries for {} blocks", t.len(), sum.blocks.len())));
    }
    let idem = t.iter().fold(0, |acc, x| acc * 2 + usize::from(x.is_some()));
    let grp: Vec<Int> = t.iter().map(|x| x.clone().unwrap_or_else(Int::zero)).collect();
    sum.presentation.element(idem, &grp)
}

pub fn element_to_tuple(sum: &BlockSum, x: &SogElement) -> BlockTuple {
    let k = sum.blocks.len();
    let flags = crate::dlat::FinSemilattice::product_coords(&vec![2; k], x.idem);
    flags.iter().zip(&x.grp).map(|(&f, g)| (f == 1).then(|| g.clone())).collect()
}

fn check_map(i: usize, src: &BlockSum, tgt: &BlockSum, map: &StageMap, unital: bool) -> Result<MapCertificate> {
    let bad = |detail: String| Error::MapNotHomomorphism { map: i, detail };
    let p = &tgt.presentation;
    let zero = tuple_to_element(tgt, &map.zero).map_err(|e| bad(format!("image of 0: {e}")))?;
    if zero != p.zero() {
        return Err(bad(format!("sends 0 to {}", p.describe(&zero))));
    }
    if map.generators.len() != src.blocks.len() {
        return Err(bad(format!("{} generator images for {} blocks", map.generators.len(), src.blocks.len())));
    }
    let images = map
        .generators
        .iter()
        .enumerate()
        .map(|(j, t)| tuple_to_element(tgt, t).map_err(|e| bad(format!("image of generator {j}: {e}"))))
        .collect::<Result<Vec<_>>>()?;
    for (j, img) in images.iter().enumerate() {
        if let BlockKind::Cyclic(n) = kind_of(src, j) {
            let multiple = p.group().scale(&Int::from(n), &img.grp);
            if !p.group().is_zero_element(&multiple) {
                return Err(bad(format!("generator {j} has order dividing {n} but its image does not")));
            }
        }
    }
    let apply = |x: &SogElement| -> Result<SogElement> {
        let mut acc = p.zero();
        for (j, c) in element_to_tuple(src, x).into_iter().enumerate() {
            if let Some(c) = c {
                let img = &images[j];
                acc = p.add(&acc, &SogElement { idem: img.idem, grp: p.group().scale(&c, &img.grp) })?;
            }
        }
        Ok(acc)
    };

    let (sample, exhaustive) = match src.presentation.elements(EXHAUSTIVE_BOUND) {
        Ok(all) => (all, true),
        Err(Error::BudgetExceeded(_)) => {
            let mut gens = vec![src.presentation.zero()];
            for j in 0..src.blocks.len() {
                let mut t: BlockTuple = vec![None; src.blocks.len()];
                t[j] = Some(Int::from(1));
                gens.push(tuple_to_element(src, &t)?);
                t[j] = Some(Int::from(0));
                gens.push(tuple_to_element(src, &t)?);
            }
            (gens, false)
        }
        Err(e) => return Err(e),
    };
    let mut pairs = 0;
    for x in &sample {
        for y in &sample {
            let lhs = apply(&src.presentation.add(x, y)?)?;
            let rhs = p.add(&apply(x)?, &apply(y)?)?;
            if lhs != rhs {
                return Err(bad(format!("not additive on {x} + {y}")));
            }
            pairs += 1;
        }
    }
    let normalized = if unital {
        let (u, v) = (src.unit.as_ref().expect("checked"), tgt.unit.as_ref().expect("checked"));
        let image = apply(u)?;
        if image != *v {
            return Err(Error::MapNotNormalized {
                map: i,
                detail: format!("unit maps to {}, expected {}", p.describe(&image), p.describe(v)),
            });
        }
        Some(true)
    } else {
        None
    };
    Ok(MapCertificate { pairs_checked: pairs, exhaustive, normalized })
}
