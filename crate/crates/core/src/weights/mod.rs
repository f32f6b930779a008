//! Cat-valued weights and diagrams, Set-valued presheaves, categories of
//! elements and the pie decision procedure.

mod catvalued;
mod map;
mod named;
mod presheaf;

pub use catvalued::{CatValued, CatWeight, Diagram};
pub use map::{classify_weight_map, verify_sections, DiagramMap, PointwiseClassification, WeightMap};
pub use named::{discrete_weight, named_weight, named_weight_str, representable_weight, WeightName};
pub use presheaf::{
    decompose_coproduct_of_representables, is_pie_weight, ob_presheaf, CandidateFailure,
    ElementsCategory, PieCertificate, Refutation, RepresentableComponent, SetPresheaf,
};
