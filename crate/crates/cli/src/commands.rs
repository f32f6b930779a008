//! Command implementations. Each returns an [`Outcome`] or a [`Failure`].

use std::io::Read;
use std::sync::Arc;

use piekit::classify::{check_equivalence_preservation, refute_semiflexible, transport_splitting};
use piekit::corpus::{catalogue, thicken, thickening_sections, GRAMMAR_VERSION};
use piekit::fincat::{
    classify_morphism, compare_categories, free_category_on_graph, is_free_on_graph, ComparisonMode,
    ComparisonResult, FinCat,
};
use piekit::limits::{compile_pie, eval_pie, pseudo_limit, strict_limit, CompiledPie, PieExpr};
use piekit::schema::{
    self, from_json, AlgebraDoc, CatValuedDoc, DiagramMapDoc, FinCatDoc, GraphDoc, PieExprDoc, PresentationDoc,
    SignatureDoc, TypedFunctorDoc,
};
use piekit::sf2monad::{
    check_algebra, enumerate_algebras, enumerate_omega, eval_free_algebra, eval_zk, idempotent_carrier,
    idempotent_z3_carrier, monoidal_presentation, perturb, terminal_carrier, underlying_set_monad_signature,
    AlgebraStructure, FreeAlgebra, PiePresentation, Signature,
};
use piekit::weights::{classify_weight_map, is_pie_weight, named_weight_str, CatValued, CatWeight, WeightMap};
use piekit::{Budget, Error};
use serde_json::{json, Value};

use crate::render;
use crate::{Cli, Command, ExportKind, Failure, Kind, Outcome};

const NAMED: &str = "named:";

fn read_text(input: &str) -> Result<String, Failure> {
    if input == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Input(format!("cannot read stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(input).map_err(|e| Failure::Input(format!("cannot read {input}: {e}")))
    }
}

/// Weights and diagrams share one document shape.
fn load_cat_valued(input: &str) -> Result<CatValued, Failure> {
    if let Some(name) = input.strip_prefix(NAMED) {
        return Ok(named_weight_str(name)?);
    }
    let doc: CatValuedDoc = from_json(&read_text(input)?)?;
    Ok(doc.to_cat_valued(None)?)
}

fn load_map(input: &str) -> Result<(WeightMap, Option<Vec<piekit::fincat::FinFunctor>>), Failure> {
    let doc: DiagramMapDoc = from_json(&read_text(input)?)?;
    Ok(doc.to_map()?)
}

fn named_category(name: &str) -> Option<Arc<FinCat>> {
    catalogue(u8::MAX).into_iter().find(|(n, _)| *n == name).map(|(_, c)| c)
}

fn load_category(input: &str) -> Result<Arc<FinCat>, Failure> {
    if let Some(name) = input.strip_prefix(NAMED) {
        return named_category(name).ok_or_else(|| Failure::Input(format!("unknown catalogue category {name}")));
    }
    let doc: FinCatDoc = from_json(&read_text(input)?)?;
    Ok(Arc::new(doc.to_cat()?))
}

/// Built-in signatures.
fn named_signature(name: &str) -> Option<Signature> {
    match name {
        "binary" => Some(Signature::discrete(&[("m", 2)])),
        "monoidal" => Some(monoidal_presentation().sigma1()),
        "empty" => Some(Signature::empty()),
        _ => None,
    }
}

fn load_signature(input: &str) -> Result<Signature, Failure> {
    if let Some(name) = input.strip_prefix(NAMED) {
        return named_signature(name).ok_or_else(|| Failure::Input(format!("unknown signature {name}")));
    }
    let doc: SignatureDoc = from_json(&read_text(input)?)?;
    Ok(doc.to_signature()?)
}

fn named_presentation(name: &str) -> Option<PiePresentation> {
    match name {
        "monoidal" => Some(monoidal_presentation()),
        "empty" => Some(PiePresentation::empty()),
        _ => None,
    }
}

fn load_presentation(input: &str) -> Result<PiePresentation, Failure> {
    if let Some(name) = input.strip_prefix(NAMED) {
        return named_presentation(name).ok_or_else(|| Failure::Input(format!("unknown presentation {name}")));
    }
    let doc: PresentationDoc = from_json(&read_text(input)?)?;
    Ok(doc.to_presentation()?)
}

fn builtin_algebra(p: &PiePresentation, name: &str) -> Result<AlgebraStructure, Failure> {
    Ok(match name {
        "terminal" => terminal_carrier(p)?,
        "idempotent" => idempotent_carrier(p)?,
        "idempotent-z3" => idempotent_z3_carrier(p)?,
        _ => return Err(Failure::Input(format!("unknown built-in algebra {name}"))),
    })
}

/// `generator:object:morphism`, with the object named in the source power
/// and the morphism in the carrier.
fn apply_perturbation(alg: &AlgebraStructure, text: &str) -> Result<AlgebraStructure, Failure> {
    let parts: Vec<&str> = text.splitn(3, ':').collect();
    let [gen, object, morphism] = parts[..] else {
        return Err(Failure::Input(format!("perturbation {text:?} is not generator:object:morphism")));
    };
    let t = alg
        .transformation(gen)
        .ok_or_else(|| Failure::Input(format!("no transformation {gen} to perturb")))?;
    let x = t
        .source()
        .domain()
        .object_id(object)
        .ok_or_else(|| Failure::Input(format!("{gen} has no component at {object}")))?;
    let m = alg
        .carrier()
        .morphism_id(morphism)
        .ok_or_else(|| Failure::Input(format!("unknown carrier morphism {morphism}")))?;
    Ok(perturb(alg, gen, x, m)?)
}

fn compile(w: &CatWeight) -> Result<CompiledPie, Failure> {
    let (pie, cert) = is_pie_weight(w);
    if !pie {
        return Err(Error::NotPie.into());
    }
    Ok(compile_pie(w, &cert)?)
}

fn ok(result: Value, schemas: Vec<&'static str>) -> Result<Outcome, Failure> {
    Ok(Outcome {
        result,
        holds: true,
        schemas,
    })
}

fn verdict(result: Value, holds: bool, schemas: Vec<&'static str>) -> Result<Outcome, Failure> {
    Ok(Outcome { result, holds, schemas })
}

fn free_algebra(fa: &FreeAlgebra) -> Value {
    json!({
        "object_count": fa.object_count(),
        "morphism_count": fa.category.morphism_count(),
        "bound": fa.bound,
        "complete": fa.complete,
        "summands": fa.summands.len(),
        "objects": fa.category.objects(),
    })
}

fn comparison(r: &ComparisonResult) -> Value {
    match r {
        ComparisonResult::Isomorphic(f) => json!({"relation": "isomorphic", "functor": render::functor(f)}),
        ComparisonResult::Equivalent(_) => json!({"relation": "equivalent"}),
        ComparisonResult::Unrelated => json!({"relation": "unrelated"}),
    }
}

/// The raw input arguments of a command, recorded in the report.
pub fn inputs(c: &Command) -> Value {
    match c {
        Command::CheckWeight { weight } | Command::CompilePie { weight } | Command::RefuteSemiflexible { weight } => {
            json!({ "weight": weight })
        }
        Command::Limit { kind, weight, diagram } => {
            json!({ "kind": format!("{kind:?}").to_lowercase(), "weight": weight, "diagram": diagram })
        }
        Command::EvalPie { expr, weight, diagram } => json!({ "expr": expr, "weight": weight, "diagram": diagram }),
        Command::FreeCat { input, check } => json!({ "input": input, "check": check }),
        Command::ClassifyFunctor { functor } => json!({ "functor": functor }),
        Command::Preserve { mode, weight, map } => {
            json!({ "mode": format!("{mode:?}").to_lowercase(), "weight": weight, "map": map })
        }
        Command::Transport { weight, map } => json!({ "weight": weight, "map": map }),
        Command::Omega { max_arity } => json!({ "max_arity": max_arity }),
        Command::Zk { signature, n } => json!({ "signature": signature, "n": n }),
        Command::FreeAlgebra { signature, carrier } => json!({ "signature": signature, "carrier": carrier }),
        Command::CheckAlgebra {
            presentation,
            algebra,
            builtin,
            perturb,
        } => json!({ "presentation": presentation, "algebra": algebra, "builtin": builtin, "perturb": perturb }),
        Command::EnumerateAlgebras { presentation, carrier } => {
            json!({ "presentation": presentation, "carrier": carrier })
        }
        Command::SetMonadSignature { presentation, n } => json!({ "presentation": presentation, "n": n }),
        Command::Export { kind, name } => json!({ "kind": format!("{kind:?}").to_lowercase(), "name": name }),
    }
}

/// The bare document printed by `export`.
pub fn export(kind: ExportKind, name: &str) -> Result<Value, Failure> {
    let unknown = || Failure::Input(format!("nothing built in is called {name}"));
    Ok(match kind {
        ExportKind::Weight => {
            let w = named_weight_str(name)?;
            serde_json::to_value(CatValuedDoc::from_cat_valued(&w, schema::WEIGHT_V1))
        }
        ExportKind::Presentation => {
            let p = named_presentation(name).ok_or_else(unknown)?;
            serde_json::to_value(PresentationDoc::from_presentation(&p))
        }
        ExportKind::Signature => {
            let s = named_signature(name).ok_or_else(unknown)?;
            serde_json::to_value(SignatureDoc::from_signature(&s))
        }
        ExportKind::Thickening => {
            let d = named_weight_str(name)?;
            let th = thicken(&d)?;
            let sections = thickening_sections(&d, &th.thick, |_| 0);
            serde_json::to_value(DiagramMapDoc::from_map(&th.projection, Some(&sections)))
        }
    }
    .expect("documents serialize"))
}

pub fn dispatch(cli: &Cli, budget: &mut Budget) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::CheckWeight { weight } => {
            let w = load_cat_valued(weight)?;
            let (pie, cert) = is_pie_weight(&w);
            ok(
                json!({
                    "verdict": if pie { "pie" } else { "not-pie" },
                    "certificate": serde_json::to_value(&cert).expect("certificate"),
                }),
                vec![schema::WEIGHT_V1],
            )
        }
        Command::Limit { kind, weight, diagram } => {
            let w = load_cat_valued(weight)?;
            let d = load_cat_valued(diagram)?;
            let l = match kind {
                Kind::Strict => strict_limit(&w, &d, budget)?,
                Kind::Pseudo => pseudo_limit(&w, &d, budget)?,
            };
            let mut result = render::cone_category(&l);
            result["cones"] = l.cones.iter().map(|c| render::cone(c, w.index())).collect();
            ok(result, vec![schema::WEIGHT_V1, schema::DIAGRAM_V1])
        }
        Command::CompilePie { weight } => {
            let w = load_cat_valued(weight)?;
            let compiled = compile(&w)?;
            let e = &compiled.expr;
            ok(
                json!({
                    "factors": e.factors.len(),
                    "inserters": e.inserter_count(),
                    "equifiers": e.equifier_count(),
                    "expr": serde_json::to_value(PieExprDoc::from_expr(e)).expect("expression"),
                }),
                vec![schema::WEIGHT_V1, schema::PIEEXPR_V1],
            )
        }
        Command::EvalPie { expr, weight, diagram } => {
            let d = load_cat_valued(diagram)?;
            let (e, w): (PieExpr, Option<CatWeight>) = match (expr, weight) {
                (Some(x), _) => {
                    let doc: PieExprDoc = from_json(&read_text(x)?)?;
                    (doc.to_expr()?, None)
                }
                (None, Some(wi)) => {
                    let w = load_cat_valued(wi)?;
                    (compile(&w)?.expr, Some(w))
                }
                (None, None) => return Err(Failure::Input("eval-pie needs --expr or --weight".into())),
            };
            let ev = eval_pie(&e, &d, budget)?;
            let mut result = render::category_summary(&ev.category);
            let mut holds = true;
            if let Some(w) = w {
                let s = strict_limit(&w, &d, budget)?;
                let r = compare_categories(&ev.category, &s.category, ComparisonMode::Isomorphism, budget)?;
                holds = r.holds();
                result["strict_limit_comparison"] = comparison(&r);
            }
            verdict(result, holds, vec![schema::PIEEXPR_V1, schema::DIAGRAM_V1, schema::WEIGHT_V1])
        }
        Command::FreeCat { input, check } => {
            let text = read_text(input)?;
            if *check {
                let c: FinCatDoc = from_json(&text)?;
                let d = is_free_on_graph(&c.to_cat()?);
                ok(render::freeness(&d), vec![schema::FINCAT_V1, schema::GRAPH_V1])
            } else {
                let g: GraphDoc = from_json(&text)?;
                let c = free_category_on_graph(&g.to_graph()?)?;
                ok(render::category_summary(&c), vec![schema::GRAPH_V1, schema::FINCAT_V1])
            }
        }
        Command::ClassifyFunctor { functor } => {
            let doc: TypedFunctorDoc = from_json(&read_text(functor)?)?;
            let f = doc.to_functor()?;
            ok(render::classification(&classify_morphism(&f)), vec![schema::FUNCTOR_V1])
        }
        Command::RefuteSemiflexible { weight } => {
            let w = load_cat_valued(weight)?;
            let (pie, cert) = is_pie_weight(&w);
            let mut result = json!({
                "grammar_level": cli.grammar_level,
                "grammar_version": GRAMMAR_VERSION,
            });
            if pie {
                result["verdict"] = json!("pie");
                result["certificate"] = serde_json::to_value(&cert).expect("certificate");
                return ok(result, vec![schema::WEIGHT_V1]);
            }
            if cli.grammar_level == 0 {
                return Err(Failure::Input("--grammar-level must be positive".into()));
            }
            let out = refute_semiflexible(&w, cli.grammar_level, budget);
            result["diagrams_examined"] = json!(out.diagrams_examined);
            result["budget_exhausted"] = json!(out.budget_exhausted);
            match &out.witness {
                Some(wit) => {
                    let mut replay_budget = Budget::new(cli.budget);
                    result["verdict"] = json!("not-semiflexible");
                    result["witness"] = render::witness(wit);
                    result["replayed"] = json!(wit.replay(&w, &mut replay_budget)?);
                }
                None => result["verdict"] = json!("inconclusive"),
            }
            ok(result, vec![schema::WEIGHT_V1, schema::DIAGRAM_V1])
        }
        Command::Preserve { mode, weight, map } => {
            let w = load_cat_valued(weight)?;
            let (f, _) = load_map(map)?;
            let r = check_equivalence_preservation(&w, &f, (*mode).into(), budget)?;
            verdict(
                json!({
                    "mode": r.mode,
                    "holds": r.holds,
                    "pointwise": render::pointwise(&r.pointwise),
                    "source_limit": render::cone_category(&r.source_limit),
                    "target_limit": render::cone_category(&r.target_limit),
                    "limit_map": render::functor(&r.functor),
                    "classification": render::classification(&r.classification),
                }),
                r.holds,
                vec![schema::WEIGHT_V1, schema::DIAGRAM_MAP_V1],
            )
        }
        Command::Transport { weight, map } => {
            let w = load_cat_valued(weight)?;
            let (f, sections) = load_map(map)?;
            let sections = match sections {
                Some(s) => s,
                None => classify_weight_map(&f, None)?.sections.ok_or_else(|| {
                    Error::InvalidSection("the map is not a pointwise surjective equivalence".into())
                })?,
            };
            let t = transport_splitting(&w, &f, &sections, budget)?;
            let exact = t.is_exact();
            verdict(
                json!({
                    "exact": exact,
                    "source_limit": render::cone_category(&t.source_limit),
                    "target_limit": render::cone_category(&t.target_limit),
                    "limit_map": render::functor(&t.limit_map),
                    "section": render::functor(&t.section),
                    "sections": sections.iter().map(render::functor).collect::<Vec<_>>(),
                }),
                exact,
                vec![schema::WEIGHT_V1, schema::DIAGRAM_MAP_V1],
            )
        }
        Command::Omega { max_arity } => {
            let trees = enumerate_omega(cli.bound, *max_arity, budget)?;
            let mut by_nodes = vec![0usize; cli.bound + 1];
            for t in &trees {
                by_nodes[t.nodes] += 1;
            }
            ok(
                json!({
                    "count": trees.len(),
                    "by_nodes": by_nodes,
                    "trees": trees.iter().map(|t| json!({
                        "tree": t.tree.to_string(),
                        "leaves": t.leaves,
                        "nodes": t.nodes,
                        "hat": t.hat,
                    })).collect::<Vec<_>>(),
                }),
                vec![],
            )
        }
        Command::Zk { signature, n } => {
            let sig = load_signature(signature)?;
            let fa = eval_zk(&sig, *n, cli.bound, budget)?;
            ok(free_algebra(&fa), vec![schema::SIGNATURE_V1])
        }
        Command::FreeAlgebra { signature, carrier } => {
            let sig = load_signature(signature)?;
            let c = load_category(carrier)?;
            let fa = eval_free_algebra(&sig, &c, cli.bound, budget)?;
            ok(free_algebra(&fa), vec![schema::SIGNATURE_V1, schema::FINCAT_V1])
        }
        Command::CheckAlgebra {
            presentation,
            algebra,
            builtin,
            perturb,
        } => {
            let p = load_presentation(presentation)?;
            let mut alg = match (algebra, builtin) {
                (Some(a), _) => {
                    let doc: AlgebraDoc = from_json(&read_text(a)?)?;
                    doc.to_algebra(&p)?
                }
                (None, Some(b)) => builtin_algebra(&p, b)?,
                (None, None) => return Err(Failure::Input("check-algebra needs --algebra or --builtin".into())),
            };
            if let Some(text) = perturb {
                alg = apply_perturbation(&alg, text)?;
            }
            let r = check_algebra(&p, &alg)?;
            let failed: Vec<&str> = r.failed().map(|e| e.name.as_str()).collect();
            verdict(
                json!({
                    "holds": r.holds,
                    "failed": failed,
                    "equations": serde_json::to_value(&r.equations).expect("equations"),
                }),
                r.holds,
                vec![schema::PRESENTATION_V1, schema::ALGEBRA_V1],
            )
        }
        Command::EnumerateAlgebras { presentation, carrier } => {
            let p = load_presentation(presentation)?;
            let c = load_category(carrier)?;
            let all = enumerate_algebras(&p, &c, budget)?;
            ok(
                json!({
                    "count": all.len(),
                    "algebras": all
                        .iter()
                        .map(|a| serde_json::to_value(AlgebraDoc::from_algebra(&p, a)).expect("algebra"))
                        .collect::<Vec<_>>(),
                }),
                vec![schema::PRESENTATION_V1, schema::FINCAT_V1, schema::ALGEBRA_V1],
            )
        }
        Command::SetMonadSignature { presentation, n } => {
            let p = load_presentation(presentation)?;
            let r = underlying_set_monad_signature(&p, *n, cli.bound, budget)?;
            verdict(
                serde_json::to_value(&r).expect("set-monad report"),
                r.agree,
                vec![schema::PRESENTATION_V1, schema::SIGNATURE_V1],
            )
        }
        Command::Export { kind, name } => ok(export(*kind, name)?, vec![]),
    }
}
