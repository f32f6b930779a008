use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::build::{self, encode_tuple};
use crate::fincat::{FinCat, FinFunctor, FinNatTrans};

use super::algebra::{eval_derived_op, AlgebraStructure};
use super::presentation::{Equation, Generator, OperationSymbol, PiePresentation};
use super::terms::{OpTerm, TransTerm};

fn op(s: &str) -> OpTerm {
    OpTerm::parse(s).expect("fixed term")
}

fn tt(s: &str) -> TransTerm {
    TransTerm::parse(s).expect("fixed term")
}

/// Monoidal categories: `m`, `e`; `alpha`, `lambda`, `rho` with explicit
/// inverses; the pentagon, the triangle, and the left unitor on a tensor,
/// plus the six inverse laws.
pub fn monoidal_presentation() -> PiePresentation {
    let ops = vec![
        OperationSymbol {
            name: "m".into(),
            arity: 2,
        },
        OperationSymbol {
            name: "e".into(),
            arity: 0,
        },
    ];
    let cells = [
        ("alpha", "(m (m _1 _2) _3)", "(m _1 (m _2 _3))"),
        ("lambda", "(m (e) _1)", "_1"),
        ("rho", "(m _1 (e))", "_1"),
    ];
    let mut gens = Vec::new();
    for (name, s, t) in cells {
        gens.push(Generator {
            name: name.into(),
            source: op(s),
            target: op(t),
        });
        gens.push(Generator {
            name: format!("{name}_inv"),
            source: op(t),
            target: op(s),
        });
    }
    let mut eqs = vec![
        Equation {
            name: "pentagon".into(),
            left: tt("(vcomp (gen alpha (m _1 _2) _3 _4) (gen alpha _1 _2 (m _3 _4)))"),
            right: tt("(vcomp (ctx (m ? _1) (gen alpha _1 _2 _3)) \
                       (gen alpha _1 (m _2 _3) _4) \
                       (ctx (m _1 ?) (gen alpha _1 _2 _3)))"),
        },
        Equation {
            name: "triangle".into(),
            left: tt("(vcomp (gen alpha _1 (e) _2) (ctx (m _1 ?) (gen lambda _1)))"),
            right: tt("(ctx (m ? _1) (gen rho _1))"),
        },
        Equation {
            name: "left_unit_tensor".into(),
            left: tt("(vcomp (gen alpha (e) _1 _2) (gen lambda (m _1 _2)))"),
            right: tt("(ctx (m ? _1) (gen lambda _1))"),
        },
    ];
    for (name, s, t) in cells {
        let k = op(s).arity();
        let args: Vec<String> = (1..=k).map(|i| format!("_{i}")).collect();
        let args = args.join(" ");
        eqs.push(Equation {
            name: format!("{name}_then_inverse"),
            left: tt(&format!("(vcomp (gen {name} {args}) (gen {name}_inv {args}))")),
            right: tt(&format!("(id {s})")),
        });
        eqs.push(Equation {
            name: format!("inverse_then_{name}"),
            left: tt(&format!("(vcomp (gen {name}_inv {args}) (gen {name} {args}))")),
            right: tt(&format!("(id {t})")),
        });
    }
    PiePresentation::new(ops, gens, eqs).expect("the monoidal presentation is well formed")
}

/// A strict monoidal structure on `c` with identity constraint cells,
/// given the tensor on morphisms (objects are read off from identities)
/// and the unit object.
pub fn strict_monoidal_algebra(
    p: &PiePresentation,
    c: Arc<FinCat>,
    tensor_morphism: impl Fn(usize, usize) -> usize,
    unit: usize,
) -> Result<AlgebraStructure> {
    let mut alg = AlgebraStructure::new(c.clone());
    let c2 = alg.power(2);
    let (no, nm) = (c.object_count(), c.morphism_count());
    let mut objects = vec![0; no * no];
    for a in 0..no {
        for b in 0..no {
            let f = tensor_morphism(c.identity(a), c.identity(b));
            objects[encode_tuple(&[a, b], &[no, no])] = c.src(f);
        }
    }
    let mut morphisms = vec![0; nm * nm];
    for f in 0..nm {
        for g in 0..nm {
            morphisms[encode_tuple(&[f, g], &[nm, nm])] = tensor_morphism(f, g);
        }
    }
    let m = FinFunctor::new(c2, c.clone(), objects, morphisms)?;
    alg.set_operation("m", 2, m)?;
    let e = FinFunctor::new(alg.power(0), c.clone(), vec![unit], vec![c.identity(unit)])?;
    alg.set_operation("e", 0, e)?;
    for g in p.generators() {
        let s = eval_derived_op(&g.source, &alg)?;
        let t = eval_derived_op(&g.target, &alg)?;
        if s != t {
            return Err(Error::TypeMismatch(format!(
                "{} and {} differ, so {} cannot be an identity",
                g.source, g.target, g.name
            )));
        }
        alg.set_transformation(&g.name, FinNatTrans::identity(&s));
    }
    Ok(alg)
}

/// The terminal monoidal category.
pub fn terminal_carrier(p: &PiePresentation) -> Result<AlgebraStructure> {
    strict_monoidal_algebra(p, Arc::new(build::terminal()), |_, _| 0, 0)
}

/// `{1, x}` with `x ⊗ x = x` and only identity morphisms; the free monoid
/// on one idempotent generator.
pub fn idempotent_carrier(p: &PiePresentation) -> Result<AlgebraStructure> {
    strict_monoidal_algebra(p, Arc::new(build::discrete(&["1", "x"])), |a, b| a.max(b), 0)
}

/// `{1, x} × ℤ/3` as a strict monoidal category: six morphisms `(a, g)`
/// with `(a, g) ⊗ (b, h) = (a ∨ b, g + h)`.
pub fn idempotent_z3_carrier(p: &PiePresentation) -> Result<AlgebraStructure> {
    let factors = [Arc::new(build::discrete(&["1", "x"])), Arc::new(build::cyclic_group(3))];
    let c = Arc::new(build::product(&factors));
    // morphism (a, g) sits at a * 3 + g
    strict_monoidal_algebra(p, c, |f, g| (f / 3).max(g / 3) * 3 + (f % 3 + g % 3) % 3, 0)
}

/// Replaces one component of `gen` (and the matching component of its
/// inverse, when that exists in the structure) by `morphism`.
pub fn perturb(alg: &AlgebraStructure, gen: &str, object: usize, morphism: usize) -> Result<AlgebraStructure> {
    let mut out = alg.clone();
    let c = alg.carrier().clone();
    let t = alg
        .transformation(gen)
        .ok_or_else(|| Error::ShapeMismatch(format!("no transformation {gen}")))?;
    let mut comps = t.components().to_vec();
    comps[object] = morphism;
    out.set_transformation(
        gen,
        FinNatTrans::new_unchecked(t.source().clone(), t.target().clone(), comps),
    );
    let inv_name = format!("{gen}_inv");
    if let (Some(inv), Some(m)) = (alg.transformation(&inv_name), c.inverse(morphism)) {
        let mut comps = inv.components().to_vec();
        comps[object] = m;
        out.set_transformation(
            &inv_name,
            FinNatTrans::new_unchecked(inv.source().clone(), inv.target().clone(), comps),
        );
    }
    Ok(out)
}
