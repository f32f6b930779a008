//! Finite categories, functors and natural transformations, with the
//! freeness, classification and factorization machinery built on them.

pub mod build;
mod category;
mod classification;
mod compare;
mod factor;
mod functor;
mod graph;
mod natural;

use std::collections::HashMap;
use std::sync::Arc;

pub use category::{validate_category, FinCat, Morphism, RawCategory};
pub use classification::{
    classify_morphism, ff_preimage, is_fully_faithful, pseudo_inverse, skeleton,
    MorphismClassification, PseudoInverse,
};
pub use compare::{
    compare_categories, find_isomorphism, ComparisonMode, ComparisonResult, EquivalenceWitness,
};
pub use factor::{factor_objective_ff, ObjectiveFfFactorization};
pub use functor::{enumerate_functors, for_each_functor, FinFunctor};
pub use graph::{
    atoms, free_category_on_graph, is_free_on_graph, path_name, Edge, FinGraph,
    FreenessDecision, NonFreeWitness,
};
pub use natural::{enumerate_transformations, FinNatTrans};

/// The full subcategory on `keep` (in the given order), with its inclusion.
pub fn full_subcategory(c: &Arc<FinCat>, keep: &[usize]) -> (Arc<FinCat>, FinFunctor) {
    let mut obj_new = vec![usize::MAX; c.object_count()];
    for (i, &x) in keep.iter().enumerate() {
        obj_new[x] = i;
    }
    let mut mor_new = vec![usize::MAX; c.morphism_count()];
    let mut morphisms = Vec::new();
    let mut mor_old = Vec::new();
    for (f, m) in c.morphisms().iter().enumerate() {
        if obj_new[m.src] != usize::MAX && obj_new[m.dst] != usize::MAX {
            mor_new[f] = morphisms.len();
            mor_old.push(f);
            morphisms.push(Morphism {
                id: m.id.clone(),
                src: obj_new[m.src],
                dst: obj_new[m.dst],
            });
        }
    }
    let identities = keep.iter().map(|&x| mor_new[c.identity(x)]).collect();
    let mut composition = HashMap::new();
    for (&(g, f), &h) in c.composition_table() {
        if mor_new[g] != usize::MAX && mor_new[f] != usize::MAX {
            composition.insert((mor_new[g], mor_new[f]), mor_new[h]);
        }
    }
    let objects = keep.iter().map(|&x| c.object_name(x).to_string()).collect();
    let sub = Arc::new(FinCat::from_parts(objects, morphisms, identities, composition));
    let incl = FinFunctor::new_unchecked(sub.clone(), c.clone(), keep.to_vec(), mor_old);
    (sub, incl)
}
