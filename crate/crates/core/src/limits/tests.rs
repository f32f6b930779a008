use std::sync::Arc;

use super::*;
use crate::budget::Budget;
use crate::fincat::{build, classify_morphism, find_isomorphism, FinCat, FinFunctor};
use crate::weights::{is_pie_weight, named_weight, CatValued, Diagram, WeightName};

fn arc(c: FinCat) -> Arc<FinCat> {
    Arc::new(c)
}

fn iso(a: &Arc<FinCat>, b: &Arc<FinCat>) -> bool {
    find_isomorphism(a, b, &mut Budget::default()).unwrap().is_some()
}

/// The functor between thin categories determined by an object map.
fn thin_functor(a: &Arc<FinCat>, b: &Arc<FinCat>, objects: Vec<usize>) -> FinFunctor {
    let morphisms = (0..a.morphism_count())
        .map(|m| b.hom(objects[a.src(m)], objects[a.dst(m)])[0])
        .collect();
    FinFunctor::new(a.clone(), b.clone(), objects, morphisms).unwrap()
}

fn parallel_diagram(f: FinFunctor, g: FinFunctor) -> Diagram {
    let j = arc(build::parallel_pair());
    let (a, b) = (f.domain().clone(), f.codomain().clone());
    let action = vec![FinFunctor::identity(&a), FinFunctor::identity(&b), f, g];
    CatValued::new(j, vec![a, b], action).unwrap()
}

fn compiled_iso(w: &CatValued, d: &Diagram) -> bool {
    let mut budget = Budget::default();
    let (pie, cert) = is_pie_weight(w);
    assert!(pie);
    let compiled = compile_pie(w, &cert).unwrap();
    let eval = eval_pie(&compiled.expr, d, &mut budget).unwrap();
    let strict = strict_limit(w, d, &mut budget).unwrap();
    let cmp = compiled.comparison(&eval, &strict, w, d).unwrap();
    assert!(classify_morphism(&cmp).isomorphism);
    iso(&eval.category, &strict.category)
}

#[test]
fn unit_weight_recovers_the_value() {
    let one = arc(build::terminal());
    let a = arc(build::ordinal(3));
    let w = CatValued::constant(&one, &one);
    let d = CatValued::constant(&one, &a);
    let mut budget = Budget::default();
    let s = strict_limit(&w, &d, &mut budget).unwrap();
    let p = pseudo_limit(&w, &d, &mut budget).unwrap();
    assert!(iso(&s.category, &a));
    assert!(iso(&p.category, &a));
    let inc = comparison_inclusion(&s, &p).unwrap();
    assert!(classify_morphism(&inc).isomorphism);
}

#[test]
fn product_weight_gives_product() {
    let w = named_weight(&WeightName::Product(2));
    let a = arc(build::arrow());
    let b = arc(build::cyclic_group(2));
    let j = w.index().clone();
    let d = CatValued::new(
        j.clone(),
        vec![a.clone(), b.clone()],
        vec![FinFunctor::identity(&a), FinFunctor::identity(&b)],
    )
    .unwrap();
    let mut budget = Budget::default();
    let s = strict_limit(&w, &d, &mut budget).unwrap();
    assert!(iso(&s.category, &arc(build::product(&[a, b]))));
    let p = pseudo_limit(&w, &d, &mut budget).unwrap();
    let c = classify_morphism(&comparison_inclusion(&s, &p).unwrap());
    assert!(c.surjective_equivalence);
    assert_eq!(compile_pie(&w, &is_pie_weight(&w).1).unwrap().expr.nodes.len(), 0);
    assert!(compiled_iso(&w, &d));
}

#[test]
fn inserter_weight_matches_primitive_inserter() {
    let w = named_weight(&WeightName::Inserter);
    let a = arc(build::arrow());
    let b = arc(build::ordinal(3));
    let f = thin_functor(&a, &b, vec![0, 1]);
    let g = thin_functor(&a, &b, vec![1, 2]);
    let d = parallel_diagram(f.clone(), g.clone());
    let s = strict_limit(&w, &d, &mut Budget::default()).unwrap();
    let direct = inserter(&f, &g).unwrap();
    assert!(iso(&s.category, &direct.category));
    let compiled = compile_pie(&w, &is_pie_weight(&w).1).unwrap();
    assert_eq!(compiled.expr.factors.len(), 1);
    assert_eq!(compiled.expr.inserter_count(), 1);
    assert_eq!(compiled.expr.equifier_count(), 0);
    assert!(compiled_iso(&w, &d));
}

/// Objects `(a, b, φ: Fa → Gb)`, morphisms `(h, k)` with `Gk∘φ = φ'∘Fh`.
fn comma_oracle(f: &FinFunctor, g: &FinFunctor) -> (usize, usize) {
    let (a, b, c) = (f.domain(), g.domain(), f.codomain());
    let mut objs = Vec::new();
    for x in 0..a.object_count() {
        for y in 0..b.object_count() {
            for &phi in c.hom(f.object(x), g.object(y)) {
                objs.push((x, y, phi));
            }
        }
    }
    let mut mors = 0;
    for &(x, y, phi) in &objs {
        for &(x2, y2, psi) in &objs {
            for &h in a.hom(x, x2) {
                for &k in b.hom(y, y2) {
                    if c.comp(g.morphism(k), phi) == c.comp(psi, f.morphism(h)) {
                        mors += 1;
                    }
                }
            }
        }
    }
    (objs.len(), mors)
}

#[test]
fn comma_weight_gives_comma_category() {
    let w = named_weight(&WeightName::Comma);
    let a = arc(build::arrow());
    let b = arc(build::terminal());
    let c = arc(build::ordinal(3));
    let f = thin_functor(&a, &c, vec![0, 1]);
    let g = FinFunctor::constant(&b, &c, 2);
    let d = CatValued::new(
        w.index().clone(),
        vec![a.clone(), b.clone(), c.clone()],
        vec![FinFunctor::identity(&a), FinFunctor::identity(&b), FinFunctor::identity(&c), f.clone(), g.clone()],
    )
    .unwrap();
    let s = strict_limit(&w, &d, &mut Budget::default()).unwrap();
    let (o, m) = comma_oracle(&f, &g);
    assert_eq!((s.category.object_count(), s.category.morphism_count()), (o, m));
    assert!(compiled_iso(&w, &d));
}

#[test]
fn equifier_weight_compiles_an_equifier() {
    let w = named_weight(&WeightName::Equifier);
    let compiled = compile_pie(&w, &is_pie_weight(&w).1).unwrap();
    assert_eq!(compiled.expr.inserter_count(), 3);
    assert_eq!(compiled.expr.equifier_count(), 1);
    let one = w.index().clone();
    for d in [build::ordinal(3), build::cyclic_group(2), build::indiscrete(2)] {
        let d = CatValued::constant(&one, &arc(d));
        assert!(compiled_iso(&w, &d));
    }
}

/// `F, G: 1 → I2` picking the two objects: isomorphic, never equal.
fn equalizer_counterexample() -> Diagram {
    let one = arc(build::terminal());
    let i2 = arc(build::indiscrete(2));
    parallel_diagram(FinFunctor::constant(&one, &i2, 0), FinFunctor::constant(&one, &i2, 1))
}

#[test]
fn equalizer_strict_limit_is_empty_but_pseudo_limit_is_not() {
    let w = named_weight(&WeightName::Equalizer);
    let d = equalizer_counterexample();
    let mut budget = Budget::default();
    let s = strict_limit(&w, &d, &mut budget).unwrap();
    let p = pseudo_limit(&w, &d, &mut budget).unwrap();
    assert_eq!(s.category.object_count(), 0);
    assert!(p.category.object_count() > 0);
    let c = classify_morphism(&comparison_inclusion(&s, &p).unwrap());
    assert!(c.fully_faithful && !c.essentially_surjective);
}

#[test]
fn unit_pruning_is_sound() {
    let d = equalizer_counterexample();
    for w in [named_weight(&WeightName::Equalizer), named_weight(&WeightName::Inserter)] {
        let mut budget = Budget::default();
        let a = cone_category(&w, &d, LimitKind::Pseudo, ConeOptions { prune_units: true }, &mut budget).unwrap();
        let b = cone_category(&w, &d, LimitKind::Pseudo, ConeOptions { prune_units: false }, &mut budget).unwrap();
        assert_eq!(a.cones, b.cones);
        assert_eq!(*a.category, *b.category);
    }
}

#[test]
fn ill_scoped_expressions_are_rejected() {
    let j = arc(build::parallel_pair());
    let leg = Leg { factor: 0, morphism: 2 };
    let bad = PieExpr {
        index: j.clone(),
        factors: vec![0],
        nodes: vec![PieNode::Equifier {
            left: CellTerm::Inserted(0),
            right: CellTerm::Identity(leg),
        }],
    };
    assert!(bad.check().is_err());
    let mistyped = PieExpr {
        index: j,
        factors: vec![0],
        nodes: vec![PieNode::Inserter {
            source: leg,
            target: Leg { factor: 0, morphism: 0 },
        }],
    };
    assert!(mistyped.check().is_err());
}

#[test]
fn refutations_do_not_compile() {
    let w = named_weight(&WeightName::Equalizer);
    let (_, cert) = is_pie_weight(&w);
    assert!(matches!(compile_pie(&w, &cert), Err(crate::Error::CertificateMismatch(_))));
}
