//! Bookkeeping for V-monoids of matrices over Cuntz algebras and corners of
//! `O_inf`, and staged limit blueprints built from block sums.

mod blueprint;
mod descriptor;

pub use blueprint::{
    element_to_tuple, emit_blueprint, tuple_to_element, Blueprint, BlueprintStage, BlockTuple, MapCertificate,
    StageMap, LIFTING_NOTE,
};
pub use descriptor::{realize_block, realize_blocks, v_of_descriptor, AlgebraDescriptor};
