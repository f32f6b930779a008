//! Ω-trees, truncated free algebras for signatures, pie presentations of
//! strongly finitary 2-monads and their algebras on finite categories.

mod algebra;
mod monoidal;
mod omega;
mod presentation;
mod setmonad;
mod signature;
mod terms;

pub use algebra::{
    check_algebra, enumerate_algebras, eval_derived_op, eval_derived_transformation, AlgebraReport,
    AlgebraStructure, ComponentDifference, EquationCheck,
};
pub use monoidal::{
    idempotent_carrier, idempotent_z3_carrier, monoidal_presentation, perturb, strict_monoidal_algebra,
    terminal_carrier,
};
pub use omega::{enumerate_omega, enumerate_trees, OmegaEntry, OmegaTree};
pub use presentation::{Equation, Generator, OperationSymbol, PiePresentation};
pub use setmonad::{term_closure, underlying_set_monad_signature, SetMonadReport};
pub use signature::{
    eval_free_algebra, eval_zk, induced_free_map, variables, zk_object_count, FreeAlgebra, FreeSummand,
    Signature, SignatureMap,
};
pub use terms::{ContextTerm, OpTerm, TransTerm};

#[cfg(test)]
mod tests;
