//! Strict and pseudo weighted limits in `Cat`, computed as categories of
//! cones at the terminal apex, together with the primitive pie limits and
//! the compiler from pie weights to product/inserter/equifier expressions.

mod cones;
mod pie;
mod primitive;

pub use cones::{
    comparison_inclusion, cone_category, pseudo_limit, strict_limit, Cone, ConeCategory,
    ConeOptions, LimitKind, Modification,
};
pub use pie::{compile_pie, eval_pie, CellTerm, CompiledPie, Leg, PieEvaluation, PieExpr, PieNode, PiePoint};
pub use primitive::{equifier, inserter, primitive_pie, PrimitiveArgs, PrimitiveLimit};

#[cfg(test)]
mod tests;
