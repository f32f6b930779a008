//! Executable forms of the weight-level characterization results: a bounded
//! refuter for semiflexibility, the preservation suites for pointwise
//! equivalences, and transport of pointwise splittings along pie weights.

mod preserve;
mod refute;
mod transport;

pub use preserve::{check_equivalence_preservation, limit_map, PreservationMode, PreservationReport};
pub use refute::{refute_semiflexible, RefuterOutcome, Witness};
pub use transport::{transport_splitting, Transport};
