use std::collections::BTreeMap;
use std::sync::Arc;

use super::*;
use crate::budget::Budget;
use crate::fincat::build::{self, encode_tuple};
use crate::fincat::{FinCat, FinFunctor, FinNatTrans};

fn op(s: &str) -> OpTerm {
    OpTerm::parse(s).unwrap()
}

fn tt(s: &str) -> TransTerm {
    TransTerm::parse(s).unwrap()
}

#[test]
fn bare_variable_is_the_projection() {
    let p = monoidal_presentation();
    let alg = idempotent_z3_carrier(&p).unwrap();
    let f = eval_derived_op(&op("_1"), &alg).unwrap();
    let c = alg.carrier();
    assert_eq!(f.object_map(), (0..c.object_count()).collect::<Vec<_>>());
    assert_eq!(f.morphism_map(), (0..c.morphism_count()).collect::<Vec<_>>());
}

#[test]
fn binary_term_is_the_tensor() {
    let p = monoidal_presentation();
    let alg = idempotent_carrier(&p).unwrap();
    let f = eval_derived_op(&op("(m _1 _2)"), &alg).unwrap();
    assert_eq!(&f, alg.operation("m").unwrap());
}

#[test]
fn nested_term_matches_hand_composition() {
    let p = monoidal_presentation();
    let alg = idempotent_z3_carrier(&p).unwrap();
    let f = eval_derived_op(&op("(m _1 (m _2 _3))"), &alg).unwrap();
    // morphism (a, g) sits at a * 3 + g; tensor is (max a, sum g)
    let n = 6;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let a = (x / 3).max(y / 3).max(z / 3);
                let g = (x % 3 + y % 3 + z % 3) % 3;
                assert_eq!(f.morphism(encode_tuple(&[x, y, z], &[n, n, n])), a * 3 + g);
            }
        }
    }
    f.check().unwrap();
}

#[test]
fn evaluation_is_compositional() {
    let p = monoidal_presentation();
    let alg = idempotent_z3_carrier(&p).unwrap();
    let t = op("(m (m _1 (e)) (m _2 _3))");
    let whole = eval_derived_op(&t, &alg).unwrap();
    let left = eval_derived_op(&op("(m _1 (e))"), &alg).unwrap();
    let right = eval_derived_op(&op("(m _1 _2)"), &alg).unwrap();
    let m = alg.operation("m").unwrap();
    let n = alg.carrier().morphism_count();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let l = left.morphism(x);
                let r = right.morphism(encode_tuple(&[y, z], &[n, n]));
                let expect = m.morphism(encode_tuple(&[l, r], &[n, n]));
                assert_eq!(whole.morphism(encode_tuple(&[x, y, z], &[n, n, n])), expect);
            }
        }
    }
}

#[test]
fn identity_terms_and_strict_generators_are_identities() {
    let p = monoidal_presentation();
    let alg = idempotent_z3_carrier(&p).unwrap();
    let id = eval_derived_transformation(&tt("(id (m _1 _2))"), &p, &alg).unwrap();
    assert!(id.is_identity());
    let a = eval_derived_transformation(&tt("(gen alpha _1 _2 _3)"), &p, &alg).unwrap();
    assert!(a.is_identity());
}

/// A carrier with a nontrivial non-strict cell: `{1,x} × ℤ/3` with the
/// associator replaced by the constant component `g` everywhere.
fn twisted() -> (PiePresentation, AlgebraStructure) {
    let p = monoidal_presentation();
    let mut alg = idempotent_z3_carrier(&p).unwrap();
    let t = alg.transformation("alpha").unwrap().clone();
    let comps: Vec<usize> = t
        .components()
        .iter()
        .map(|&c| alg.carrier().src(c) * 3 + 1)
        .collect();
    alg.set_transformation("alpha", FinNatTrans::new(t.source().clone(), t.target().clone(), comps).unwrap());
    (p, alg)
}

#[test]
fn vertical_composite_is_pointwise() {
    let (p, alg) = twisted();
    let left = tt("(vcomp (gen alpha (m _1 _2) _3 _4) (gen alpha _1 _2 (m _3 _4)))");
    let v = eval_derived_transformation(&left, &p, &alg).unwrap();
    let a = alg.transformation("alpha").unwrap();
    let c = alg.carrier();
    let (no, n4) = (c.object_count(), c.object_count().pow(4));
    let mut xs = [0; 4];
    for i in 0..n4 {
        let mut r = i;
        for k in (0..4).rev() {
            xs[k] = r % no;
            r /= no;
        }
        let m = |a: usize, b: usize| a.max(b);
        let first = a.component(encode_tuple(&[m(xs[0], xs[1]), xs[2], xs[3]], &[no; 3]));
        let second = a.component(encode_tuple(&[xs[0], xs[1], m(xs[2], xs[3])], &[no; 3]));
        assert_eq!(v.component(i), c.comp(second, first));
    }
}

#[test]
fn context_whiskers_through_the_operation() {
    let (p, alg) = twisted();
    let w = eval_derived_transformation(&tt("(ctx (m _1 ?) (gen alpha _1 _2 _3))"), &p, &alg).unwrap();
    // 1 ⊗ α adds the twist once, whatever the objects
    assert!(w
        .components()
        .iter()
        .all(|&c| c % 3 == 1 && alg.carrier().src(c) == alg.carrier().dst(c)));
}

#[test]
fn noncomposable_terms_are_reported() {
    let p = monoidal_presentation();
    let alg = terminal_carrier(&p).unwrap();
    let bad = TransTerm::vcomp(tt("(gen lambda _1)"), tt("(gen rho _1)"));
    assert!(matches!(
        eval_derived_transformation(&bad, &p, &alg),
        Err(crate::Error::NonComposable(_))
    ));
}

#[test]
fn strict_carriers_pass_the_monoidal_presentation() {
    let p = monoidal_presentation();
    for alg in [
        terminal_carrier(&p).unwrap(),
        idempotent_carrier(&p).unwrap(),
        idempotent_z3_carrier(&p).unwrap(),
    ] {
        let r = check_algebra(&p, &alg).unwrap();
        assert!(r.holds, "{r:?}");
        assert_eq!(r.equations.len(), 9);
    }
}

#[test]
fn perturbed_associator_breaks_the_pentagon() {
    let p = monoidal_presentation();
    let alg = idempotent_z3_carrier(&p).unwrap();
    let c = alg.carrier().clone();
    let x = c.object_id("(x,*)").expect("object x");
    let at = encode_tuple(&[x, x, x], &[2, 2, 2]);
    let bad = perturb(&alg, "alpha", at, x * 3 + 1).unwrap();
    let r = check_algebra(&p, &bad).unwrap();
    assert!(!r.holds);
    let failed: Vec<&str> = r.failed().map(|e| e.name.as_str()).collect();
    assert_eq!(failed, ["pentagon"]);
    let d = r.equations[0].first_difference.as_ref().unwrap();
    assert!(d.object.contains("(x,*)"));
}

#[test]
fn wrong_shapes_are_rejected() {
    let p = monoidal_presentation();
    let mut alg = terminal_carrier(&p).unwrap();
    let t = alg.transformation("alpha").unwrap().clone();
    alg.set_transformation("alpha", FinNatTrans::identity(t.source()));
    alg.set_transformation("extra", FinNatTrans::identity(t.source()));
    assert!(matches!(check_algebra(&p, &alg), Err(crate::Error::ShapeMismatch(_))));
    let bare = AlgebraStructure::new(Arc::new(build::terminal()));
    assert!(matches!(check_algebra(&p, &bare), Err(crate::Error::ShapeMismatch(_))));
}

#[test]
fn no_equations_means_every_shape_passes() {
    let p = PiePresentation::new(
        vec![OperationSymbol {
            name: "u".into(),
            arity: 1,
        }],
        vec![Generator {
            name: "eta".into(),
            source: op("_1"),
            target: op("(u _1)"),
        }],
        vec![],
    )
    .unwrap();
    let c = Arc::new(build::arrow());
    let algs = enumerate_algebras(&p, &c, &mut Budget::default()).unwrap();
    assert!(!algs.is_empty());
    for a in &algs {
        assert!(check_algebra(&p, a).unwrap().holds);
    }
}

#[test]
fn one_constant_on_two_points() {
    let p = PiePresentation::new(
        vec![OperationSymbol {
            name: "c".into(),
            arity: 0,
        }],
        vec![],
        vec![],
    )
    .unwrap();
    let c = Arc::new(build::discrete_n(2));
    assert_eq!(enumerate_algebras(&p, &c, &mut Budget::default()).unwrap().len(), 2);
}

#[test]
fn pointed_magmas_on_the_terminal_category() {
    let p = PiePresentation::new(
        vec![
            OperationSymbol {
                name: "m".into(),
                arity: 2,
            },
            OperationSymbol {
                name: "e".into(),
                arity: 0,
            },
        ],
        vec![],
        vec![],
    )
    .unwrap();
    let one = Arc::new(build::terminal());
    assert_eq!(enumerate_algebras(&p, &one, &mut Budget::default()).unwrap().len(), 1);
}

/// Pointed endofunctors `η: 1 ⇒ u` with `u η = η u`, enumerated on the
/// arrow category and checked against a raw filter over all candidate
/// tables.
#[test]
fn well_pointed_endofunctors_match_brute_force() {
    let p = PiePresentation::new(
        vec![OperationSymbol {
            name: "u".into(),
            arity: 1,
        }],
        vec![Generator {
            name: "eta".into(),
            source: op("_1"),
            target: op("(u _1)"),
        }],
        vec![Equation {
            name: "well_pointed".into(),
            left: tt("(ctx (u ?) (gen eta _1))"),
            right: tt("(gen eta (u _1))"),
        }],
    )
    .unwrap();
    let c: Arc<FinCat> = Arc::new(build::arrow());
    let found = enumerate_algebras(&p, &c, &mut Budget::default()).unwrap();

    // oracle: endofunctors of 0 → 1 are given by object images (a, b)
    // with a ≤ b; η picks, at each object x, the unique arrow x → u(x)
    // when it exists
    let le = |x: usize, y: usize| x <= y;
    let mut expected = 0;
    for a in 0..2 {
        for b in 0..2 {
            if !le(a, b) {
                continue;
            }
            let u = [a, b];
            let eta_ok = (0..2).all(|x| le(x, u[x]));
            // u(η_x) and η_{u x} are both arrows u x → u u x in a thin category
            if eta_ok && (0..2).all(|x| le(u[x], u[u[x]])) {
                expected += 1;
            }
        }
    }
    assert_eq!(found.len(), expected);
    assert_eq!(expected, 2);
}

#[test]
fn normalization_does_not_change_values() {
    let (p, alg) = twisted();
    let a = tt("(vcomp (vcomp (gen alpha _1 _2 _3) (gen alpha_inv _1 _2 _3)) (gen alpha _1 _2 _3))");
    let b = tt("(vcomp (gen alpha _1 _2 _3) (vcomp (gen alpha_inv _1 _2 _3) (gen alpha _1 _2 _3)))");
    let va = eval_derived_transformation(&a, &p, &alg).unwrap();
    let vb = eval_derived_transformation(&b, &p, &alg).unwrap();
    assert_eq!(va, vb);
    let c1 = tt("(ctx (m _1 ?) (ctx (m _1 ?) (gen alpha _1 _2 _3)))");
    let c2 = tt("(ctx (m _1 (m _2 ?)) (gen alpha _1 _2 _3))");
    assert_eq!(
        eval_derived_transformation(&c1, &p, &alg).unwrap(),
        eval_derived_transformation(&c2, &p, &alg).unwrap()
    );
    let v1 = tt("(ctx (m _1 ?) (vcomp (gen alpha _1 _2 _3) (gen alpha_inv _1 _2 _3)))");
    let v2 = tt("(vcomp (ctx (m _1 ?) (gen alpha _1 _2 _3)) (ctx (m _1 ?) (gen alpha_inv _1 _2 _3)))");
    assert_eq!(
        eval_derived_transformation(&v1, &p, &alg).unwrap(),
        eval_derived_transformation(&v2, &p, &alg).unwrap()
    );
}

#[test]
fn monoidal_presentation_induces_pointed_magmas() {
    let p = monoidal_presentation();
    let r = underlying_set_monad_signature(&p, 2, 2, &mut Budget::default()).unwrap();
    assert_eq!(
        r.signature,
        BTreeMap::from([(0, vec!["e".to_string()]), (2, vec!["m".to_string()])])
    );
    assert!(r.agree, "{r:?}");
}

#[test]
fn empty_presentation_gives_bare_variables() {
    let r = underlying_set_monad_signature(&PiePresentation::empty(), 3, 4, &mut Budget::default()).unwrap();
    assert!(r.signature.is_empty());
    assert_eq!((r.zk_objects, r.term_objects), (3, 3));
}

#[test]
fn binary_presentation_counts_nine_terms() {
    let p = PiePresentation::new(
        vec![OperationSymbol {
            name: "m".into(),
            arity: 2,
        }],
        vec![],
        vec![],
    )
    .unwrap();
    let r = underlying_set_monad_signature(&p, 1, 3, &mut Budget::default()).unwrap();
    assert_eq!((r.zk_objects, r.term_objects), (9, 9));
    assert!(r.agree);
}

#[test]
fn identity_signature_map_is_objective() {
    let s = Signature::discrete(&[("m", 2), ("e", 0)]);
    let comps = s
        .arities()
        .iter()
        .map(|(&n, c)| (n, FinFunctor::identity(c)))
        .collect();
    let map = SignatureMap::new(s.clone(), s.clone(), comps).unwrap();
    let mut b = Budget::default();
    let z = eval_zk(&s, 1, 2, &mut b).unwrap();
    let f = induced_free_map(&map, &z, &z).unwrap();
    assert!(f.is_identity());
}
