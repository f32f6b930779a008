//! Finite 2-category theory in `Cat`: pie weights, strict and pseudo
//! weighted limits, and presented strongly finitary 2-monads.

pub mod budget;
pub mod classify;
pub mod corpus;
pub mod error;
pub mod fincat;
pub mod limits;
pub mod schema;
pub mod sf2monad;
pub mod weights;

pub use budget::Budget;
pub use error::{Error, Result};
