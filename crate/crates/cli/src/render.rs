//! JSON views of library values for reports.

use piekit::classify::Witness;
use piekit::fincat::{FinCat, FinFunctor, FinNatTrans, FreenessDecision, MorphismClassification, NonFreeWitness};
use piekit::limits::{Cone, ConeCategory};
use piekit::schema::{CatValuedDoc, FinCatDoc, FunctorDoc, DIAGRAM_V1};
use piekit::weights::PointwiseClassification;
use serde_json::{json, Value};

pub fn category(c: &FinCat) -> Value {
    serde_json::to_value(FinCatDoc::from_cat(c)).expect("category document")
}

pub fn category_summary(c: &FinCat) -> Value {
    json!({
        "object_count": c.object_count(),
        "morphism_count": c.morphism_count(),
        "category": category(c),
    })
}

pub fn functor(f: &FinFunctor) -> Value {
    serde_json::to_value(FunctorDoc::from_functor(f)).expect("functor document")
}

pub fn transformation(t: &FinNatTrans) -> Value {
    let (a, b) = (t.source().domain(), t.source().codomain());
    let comps: serde_json::Map<String, Value> = (0..a.object_count())
        .map(|x| (a.object_name(x).to_string(), json!(b.morphism_name(t.component(x)))))
        .collect();
    json!({ "components": comps })
}

pub fn classification(c: &MorphismClassification) -> Value {
    json!({
        "faithful": c.faithful,
        "full": c.full,
        "fully_faithful": c.fully_faithful,
        "objective": c.objective,
        "surjective_on_objects": c.surjective_on_objects,
        "injective_on_objects": c.injective_on_objects,
        "essentially_surjective": c.essentially_surjective,
        "equivalence": c.equivalence,
        "surjective_equivalence": c.surjective_equivalence,
        "injective_equivalence": c.injective_equivalence,
        "isomorphism": c.isomorphism,
        "pseudo_inverse": c.pseudo_inverse.as_ref().map(|p| json!({
            "inverse": functor(&p.inverse),
            "unit": transformation(&p.unit),
            "counit": transformation(&p.counit),
        })),
        "section": c.section.as_ref().map(functor),
        "retraction": c.retraction.as_ref().map(functor),
        "inverse": c.inverse.as_ref().map(functor),
    })
}

pub fn pointwise(p: &PointwiseClassification) -> Value {
    json!({
        "objective": p.objective,
        "fully_faithful": p.fully_faithful,
        "equivalence": p.equivalence,
        "surjective_equivalence": p.surjective_equivalence,
        "injective_equivalence": p.injective_equivalence,
        "points": p.points.iter().map(classification).collect::<Vec<_>>(),
    })
}

/// Cells of index morphism `m` live in the codomain of the leg at its
/// target.
pub fn cone(c: &Cone, index: &FinCat) -> Value {
    let cells: Vec<Vec<&str>> = c
        .cells
        .iter()
        .enumerate()
        .map(|(m, cs)| {
            let d = c.legs[index.dst(m)].codomain();
            cs.iter().map(|&x| d.morphism_name(x)).collect()
        })
        .collect();
    json!({
        "legs": c.legs.iter().map(functor).collect::<Vec<_>>(),
        "cells": cells,
    })
}

pub fn cone_category(l: &ConeCategory) -> Value {
    json!({
        "kind": format!("{:?}", l.kind).to_lowercase(),
        "object_count": l.category.object_count(),
        "morphism_count": l.category.morphism_count(),
        "category": category(&l.category),
    })
}

pub fn witness(w: &Witness) -> Value {
    json!({
        "diagram": serde_json::to_value(CatValuedDoc::from_cat_valued(&w.diagram, DIAGRAM_V1)).expect("diagram"),
        "pseudocone": cone(&w.pseudocone, w.diagram.index()),
        "property": w.property,
        "strict_cones": w.strict_cones,
    })
}

pub fn freeness(d: &FreenessDecision) -> Value {
    match d {
        FreenessDecision::Free(g) => json!({
            "free": true,
            "graph": {
                "vertices": g.vertices(),
                "edges": g.edges().iter().map(|e| json!({
                    "id": e.id,
                    "src": g.vertices()[e.src],
                    "dst": g.vertices()[e.dst],
                })).collect::<Vec<_>>(),
            },
        }),
        FreenessDecision::NotFree(w) => json!({
            "free": false,
            "witness": match w {
                NonFreeWitness::IdentityComposite { g, f } => json!({"kind": "identity_composite", "g": g, "f": f}),
                NonFreeWitness::AtomCycle(c) => json!({"kind": "atom_cycle", "atoms": c}),
                NonFreeWitness::NoFactorization(m) => json!({"kind": "no_factorization", "morphism": m}),
                NonFreeWitness::AmbiguousFactorization { morphism, first, second } => json!({
                    "kind": "ambiguous_factorization",
                    "morphism": morphism,
                    "first": first,
                    "second": second,
                }),
            },
        }),
    }
}
