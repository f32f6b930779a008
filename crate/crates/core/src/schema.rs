//! Versioned JSON documents. Every struct rejects unknown fields, and a
//! `schema` tag, when present, must name the expected version.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fincat::{validate_category, FinCat, FinFunctor, FinGraph, FinNatTrans, RawCategory};
use crate::limits::{PieExpr, PieNode};
use crate::sf2monad::{
    AlgebraStructure, Equation, Generator, OpTerm, OperationSymbol, PiePresentation, Signature, SignatureMap,
    TransTerm,
};
use crate::weights::{CatValued, WeightMap};

pub const FINCAT_V1: &str = "fincat/v1";
pub const GRAPH_V1: &str = "graph/v1";
pub const FUNCTOR_V1: &str = "functor/v1";
pub const WEIGHT_V1: &str = "weight/v1";
pub const DIAGRAM_V1: &str = "diagram/v1";
pub const DIAGRAM_MAP_V1: &str = "diagrammap/v1";
pub const PIEEXPR_V1: &str = "pieexpr/v1";
pub const SIGNATURE_V1: &str = "signature/v1";
pub const SIGNATURE_MAP_V1: &str = "signaturemap/v1";
pub const PRESENTATION_V1: &str = "presentation/v1";
pub const ALGEBRA_V1: &str = "algebra/v1";
pub const REPORT_V1: &str = "report/v1";

fn check_tag(found: &Option<String>, expected: &str) -> Result<()> {
    match found {
        Some(s) if s != expected => Err(Error::Schema(format!("expected schema {expected}, found {s}"))),
        _ => Ok(()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDoc {
    pub id: String,
    pub src: String,
    pub dst: String,
}

/// `fincat/v1`. Composites with an identity on either side may be left out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FinCatDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismDoc>,
    pub identities: BTreeMap<String, String>,
    #[serde(default)]
    pub composition: Vec<[String; 3]>,
}

impl FinCatDoc {
    pub fn from_cat(c: &FinCat) -> Self {
        let raw = c.to_raw();
        FinCatDoc {
            schema: None,
            objects: raw.objects,
            morphisms: raw
                .morphisms
                .into_iter()
                .map(|(id, src, dst)| MorphismDoc { id, src, dst })
                .collect(),
            identities: raw.identities.into_iter().collect(),
            composition: raw.composition.into_iter().map(|(g, f, h)| [g, f, h]).collect(),
        }
    }

    pub fn tagged(mut self) -> Self {
        self.schema = Some(FINCAT_V1.into());
        self
    }

    pub fn to_cat(&self) -> Result<FinCat> {
        check_tag(&self.schema, FINCAT_V1)?;
        let mut identities = Vec::with_capacity(self.objects.len());
        for o in &self.objects {
            let i = self
                .identities
                .get(o)
                .ok_or_else(|| Error::Schema(format!("object {o} has no identity")))?;
            identities.push((o.clone(), i.clone()));
        }
        if let Some(extra) = self.identities.keys().find(|k| !self.objects.contains(k)) {
            return Err(Error::Schema(format!("identity given for unknown object {extra}")));
        }
        let raw = RawCategory {
            objects: self.objects.clone(),
            morphisms: self
                .morphisms
                .iter()
                .map(|m| (m.id.clone(), m.src.clone(), m.dst.clone()))
                .collect(),
            identities,
            composition: self
                .composition
                .iter()
                .map(|[g, f, h]| (g.clone(), f.clone(), h.clone()))
                .collect(),
        };
        Ok(validate_category(&raw)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub vertices: Vec<String>,
    pub edges: Vec<MorphismDoc>,
}

impl GraphDoc {
    pub fn to_graph(&self) -> Result<FinGraph> {
        check_tag(&self.schema, GRAPH_V1)?;
        let edges: Vec<(String, String, String)> = self
            .edges
            .iter()
            .map(|e| (e.id.clone(), e.src.clone(), e.dst.clone()))
            .collect();
        FinGraph::from_names(&self.vertices, &edges)
    }
}

/// A functor by names. Identity morphisms may be omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub objects: BTreeMap<String, String>,
    #[serde(default)]
    pub morphisms: BTreeMap<String, String>,
}

impl FunctorDoc {
    pub fn from_functor(f: &FinFunctor) -> Self {
        let (a, b) = (f.domain(), f.codomain());
        FunctorDoc {
            schema: None,
            objects: (0..a.object_count())
                .map(|x| (a.object_name(x).to_string(), b.object_name(f.object(x)).to_string()))
                .collect(),
            morphisms: a
                .non_identity_morphisms()
                .map(|m| (a.morphism_name(m).to_string(), b.morphism_name(f.morphism(m)).to_string()))
                .collect(),
        }
    }

    pub fn to_functor(&self, domain: &Arc<FinCat>, codomain: &Arc<FinCat>) -> Result<FinFunctor> {
        check_tag(&self.schema, FUNCTOR_V1)?;
        let obj = |name: &str| -> Result<usize> {
            codomain
                .object_id(name)
                .ok_or_else(|| Error::Schema(format!("unknown codomain object {name}")))
        };
        let mut objects = Vec::with_capacity(domain.object_count());
        for x in domain.objects() {
            let y = self
                .objects
                .get(x)
                .ok_or_else(|| Error::Schema(format!("no image given for object {x}")))?;
            objects.push(obj(y)?);
        }
        for k in self.objects.keys() {
            if domain.object_id(k).is_none() {
                return Err(Error::Schema(format!("unknown domain object {k}")));
            }
        }
        for k in self.morphisms.keys() {
            if domain.morphism_id(k).is_none() {
                return Err(Error::Schema(format!("unknown domain morphism {k}")));
            }
        }
        let mut morphisms = Vec::with_capacity(domain.morphism_count());
        for m in 0..domain.morphism_count() {
            let name = domain.morphism_name(m);
            let image = match self.morphisms.get(name) {
                Some(g) => codomain
                    .morphism_id(g)
                    .ok_or_else(|| Error::Schema(format!("unknown codomain morphism {g}")))?,
                None if domain.is_identity(m) => codomain.identity(objects[domain.src(m)]),
                None => return Err(Error::Schema(format!("no image given for morphism {name}"))),
            };
            morphisms.push(image);
        }
        FinFunctor::new(domain.clone(), codomain.clone(), objects, morphisms)
    }
}

/// `functor/v1` with its endpoints inlined.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TypedFunctorDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub domain: FinCatDoc,
    pub codomain: FinCatDoc,
    pub functor: FunctorDoc,
}

impl TypedFunctorDoc {
    pub fn from_functor(f: &FinFunctor) -> Self {
        TypedFunctorDoc {
            schema: Some(FUNCTOR_V1.into()),
            domain: FinCatDoc::from_cat(f.domain()),
            codomain: FinCatDoc::from_cat(f.codomain()),
            functor: FunctorDoc::from_functor(f),
        }
    }

    pub fn to_functor(&self) -> Result<FinFunctor> {
        check_tag(&self.schema, FUNCTOR_V1)?;
        let a = Arc::new(self.domain.to_cat()?);
        let b = Arc::new(self.codomain.to_cat()?);
        self.functor.to_functor(&a, &b)
    }
}

/// `weight/v1` and `diagram/v1`: values by index object, action by index
/// morphism. Identity morphisms of the index may be omitted from `action`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatValuedDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub index: FinCatDoc,
    pub values: BTreeMap<String, FinCatDoc>,
    #[serde(default)]
    pub action: BTreeMap<String, FunctorDoc>,
}

impl CatValuedDoc {
    pub fn from_cat_valued(w: &CatValued, tag: &str) -> Self {
        let j = w.index();
        CatValuedDoc {
            schema: Some(tag.to_string()),
            index: FinCatDoc::from_cat(j),
            values: (0..j.object_count())
                .map(|x| (j.object_name(x).to_string(), FinCatDoc::from_cat(w.value(x))))
                .collect(),
            action: j
                .non_identity_morphisms()
                .map(|f| (j.morphism_name(f).to_string(), FunctorDoc::from_functor(w.action(f))))
                .collect(),
        }
    }

    /// Accepts either `weight/v1` or `diagram/v1`, or the one in `tag`.
    pub fn to_cat_valued(&self, tag: Option<&str>) -> Result<CatValued> {
        match (&self.schema, tag) {
            (Some(s), Some(t)) if s != t => {
                return Err(Error::Schema(format!("expected schema {t}, found {s}")));
            }
            (Some(s), None) if s != WEIGHT_V1 && s != DIAGRAM_V1 => {
                return Err(Error::Schema(format!("expected a weight or diagram, found {s}")));
            }
            _ => {}
        }
        let index = Arc::new(self.index.to_cat()?);
        let mut values = Vec::with_capacity(index.object_count());
        for x in index.objects() {
            let v = self
                .values
                .get(x)
                .ok_or_else(|| Error::Schema(format!("no value given at {x}")))?;
            values.push(Arc::new(v.to_cat()?));
        }
        for k in self.values.keys() {
            if index.object_id(k).is_none() {
                return Err(Error::Schema(format!("value given at unknown object {k}")));
            }
        }
        for k in self.action.keys() {
            if index.morphism_id(k).is_none() {
                return Err(Error::Schema(format!("action given at unknown morphism {k}")));
            }
        }
        let mut action = Vec::with_capacity(index.morphism_count());
        for f in 0..index.morphism_count() {
            let (s, d) = (&values[index.src(f)], &values[index.dst(f)]);
            match self.action.get(index.morphism_name(f)) {
                Some(a) => action.push(a.to_functor(s, d)?),
                None if index.is_identity(f) => action.push(FinFunctor::identity(s)),
                None => {
                    return Err(Error::Schema(format!(
                        "no action given for {}",
                        index.morphism_name(f)
                    )))
                }
            }
        }
        CatValued::new(index, values, action)
    }
}

/// `diagrammap/v1`: a map of diagrams over one index, with optional
/// pointwise sections.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramMapDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub source: CatValuedDoc,
    pub target: CatValuedDoc,
    pub components: BTreeMap<String, FunctorDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sections: Option<BTreeMap<String, FunctorDoc>>,
}

impl DiagramMapDoc {
    pub fn from_map(m: &WeightMap, sections: Option<&[FinFunctor]>) -> Self {
        let j = m.source().index();
        let by_object = |fs: &[FinFunctor]| -> BTreeMap<String, FunctorDoc> {
            fs.iter()
                .enumerate()
                .map(|(x, f)| (j.object_name(x).to_string(), FunctorDoc::from_functor(f)))
                .collect()
        };
        DiagramMapDoc {
            schema: Some(DIAGRAM_MAP_V1.into()),
            source: CatValuedDoc::from_cat_valued(m.source(), DIAGRAM_V1),
            target: CatValuedDoc::from_cat_valued(m.target(), DIAGRAM_V1),
            components: by_object(m.components()),
            sections: sections.map(by_object),
        }
    }

    pub fn to_map(&self) -> Result<(WeightMap, Option<Vec<FinFunctor>>)> {
        check_tag(&self.schema, DIAGRAM_MAP_V1)?;
        let d = self.source.to_cat_valued(None)?;
        let e = self.target.to_cat_valued(None)?;
        let j = d.index().clone();
        let per_object = |docs: &BTreeMap<String, FunctorDoc>, flip: bool| -> Result<Vec<FinFunctor>> {
            for k in docs.keys() {
                if j.object_id(k).is_none() {
                    return Err(Error::Schema(format!("component given at unknown object {k}")));
                }
            }
            (0..j.object_count())
                .map(|x| {
                    let doc = docs
                        .get(j.object_name(x))
                        .ok_or_else(|| Error::Schema(format!("no component at {}", j.object_name(x))))?;
                    let (a, b) = if flip { (e.value(x), d.value(x)) } else { (d.value(x), e.value(x)) };
                    doc.to_functor(a, b)
                })
                .collect()
        };
        let comps = per_object(&self.components, false)?;
        let sections = self.sections.as_ref().map(|s| per_object(s, true)).transpose()?;
        Ok((WeightMap::new(d, e, comps)?, sections))
    }
}

/// `pieexpr/v1`. Factors are index object names; legs and cells refer to
/// factor positions, index morphism positions and earlier inserter slots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieExprDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub index: FinCatDoc,
    pub factors: Vec<String>,
    pub nodes: Vec<PieNode>,
}

impl PieExprDoc {
    pub fn from_expr(e: &PieExpr) -> Self {
        PieExprDoc {
            schema: Some(PIEEXPR_V1.into()),
            index: FinCatDoc::from_cat(&e.index),
            factors: e.factors.iter().map(|&j| e.index.object_name(j).to_string()).collect(),
            nodes: e.nodes.clone(),
        }
    }

    pub fn to_expr(&self) -> Result<PieExpr> {
        check_tag(&self.schema, PIEEXPR_V1)?;
        let index = Arc::new(self.index.to_cat()?);
        let factors = self
            .factors
            .iter()
            .map(|n| {
                index
                    .object_id(n)
                    .ok_or_else(|| Error::Schema(format!("unknown factor object {n}")))
            })
            .collect::<Result<_>>()?;
        let e = PieExpr {
            index,
            factors,
            nodes: self.nodes.clone(),
        };
        e.check()?;
        Ok(e)
    }
}

/// `signature/v1`: arity (as a decimal string) ↦ category of symbols.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignatureDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub arities: BTreeMap<String, FinCatDoc>,
}

impl SignatureDoc {
    pub fn from_signature(s: &Signature) -> Self {
        SignatureDoc {
            schema: Some(SIGNATURE_V1.into()),
            arities: s
                .arities()
                .iter()
                .map(|(n, c)| (n.to_string(), FinCatDoc::from_cat(c)))
                .collect(),
        }
    }

    pub fn to_signature(&self) -> Result<Signature> {
        check_tag(&self.schema, SIGNATURE_V1)?;
        let mut arities = BTreeMap::new();
        for (k, c) in &self.arities {
            let n: usize = k
                .parse()
                .map_err(|_| Error::Schema(format!("arity {k:?} is not a natural number")))?;
            arities.insert(n, Arc::new(c.to_cat()?));
        }
        Ok(Signature::new(arities))
    }
}

/// `signaturemap/v1`: one functor per arity of the source.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignatureMapDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub source: SignatureDoc,
    pub target: SignatureDoc,
    pub components: BTreeMap<String, FunctorDoc>,
}

impl SignatureMapDoc {
    pub fn from_map(m: &SignatureMap) -> Self {
        SignatureMapDoc {
            schema: Some(SIGNATURE_MAP_V1.into()),
            source: SignatureDoc::from_signature(&m.source),
            target: SignatureDoc::from_signature(&m.target),
            components: m
                .components
                .iter()
                .map(|(n, f)| (n.to_string(), FunctorDoc::from_functor(f)))
                .collect(),
        }
    }

    pub fn to_map(&self) -> Result<SignatureMap> {
        check_tag(&self.schema, SIGNATURE_MAP_V1)?;
        let source = self.source.to_signature()?;
        let target = self.target.to_signature()?;
        let mut components = BTreeMap::new();
        for (k, doc) in &self.components {
            let n: usize = k
                .parse()
                .map_err(|_| Error::Schema(format!("arity {k:?} is not a natural number")))?;
            let (Some(a), Some(b)) = (source.get(n), target.get(n)) else {
                return Err(Error::ArityMismatch(format!("component at arity {n} has no matching symbols")));
            };
            components.insert(n, doc.to_functor(a, b)?);
        }
        SignatureMap::new(source, target, components)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperationDoc {
    pub name: String,
    pub arity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorDoc {
    pub name: String,
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquationDoc {
    pub name: String,
    pub left: String,
    pub right: String,
}

/// `presentation/v1`, with terms as s-expressions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub operations: Vec<OperationDoc>,
    #[serde(default)]
    pub generators: Vec<GeneratorDoc>,
    #[serde(default)]
    pub equations: Vec<EquationDoc>,
}

impl PresentationDoc {
    pub fn from_presentation(p: &PiePresentation) -> Self {
        PresentationDoc {
            schema: Some(PRESENTATION_V1.into()),
            operations: p
                .operations()
                .iter()
                .map(|o| OperationDoc {
                    name: o.name.clone(),
                    arity: o.arity,
                })
                .collect(),
            generators: p
                .generators()
                .iter()
                .map(|g| GeneratorDoc {
                    name: g.name.clone(),
                    source: g.source.to_string(),
                    target: g.target.to_string(),
                })
                .collect(),
            equations: p
                .equations()
                .iter()
                .map(|e| EquationDoc {
                    name: e.name.clone(),
                    left: e.left.to_string(),
                    right: e.right.to_string(),
                })
                .collect(),
        }
    }

    pub fn to_presentation(&self) -> Result<PiePresentation> {
        check_tag(&self.schema, PRESENTATION_V1)?;
        let operations = self
            .operations
            .iter()
            .map(|o| OperationSymbol {
                name: o.name.clone(),
                arity: o.arity,
            })
            .collect();
        let generators = self
            .generators
            .iter()
            .map(|g| {
                Ok(Generator {
                    name: g.name.clone(),
                    source: OpTerm::parse(&g.source)?,
                    target: OpTerm::parse(&g.target)?,
                })
            })
            .collect::<Result<_>>()?;
        let equations = self
            .equations
            .iter()
            .map(|e| {
                Ok(Equation {
                    name: e.name.clone(),
                    left: TransTerm::parse(&e.left)?,
                    right: TransTerm::parse(&e.right)?,
                })
            })
            .collect::<Result<_>>()?;
        PiePresentation::new(operations, generators, equations)
    }
}

/// A transformation by components, keyed by object names of `C^k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentsDoc {
    pub components: BTreeMap<String, String>,
}

/// `algebra/v1`: a carrier, operations as functors out of powers named as
/// built by the library (`(a,b)`; `()` for the nullary power), and
/// transformations by components.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub carrier: FinCatDoc,
    pub operations: BTreeMap<String, FunctorDoc>,
    #[serde(default)]
    pub transformations: BTreeMap<String, ComponentsDoc>,
}

impl AlgebraDoc {
    pub fn from_algebra(p: &PiePresentation, a: &AlgebraStructure) -> Self {
        let c = a.carrier();
        AlgebraDoc {
            schema: Some(ALGEBRA_V1.into()),
            carrier: FinCatDoc::from_cat(c),
            operations: a
                .operations()
                .iter()
                .map(|(n, f)| (n.clone(), FunctorDoc::from_functor(f)))
                .collect(),
            transformations: p
                .generators()
                .iter()
                .filter_map(|g| a.transformation(&g.name).map(|t| (g, t)))
                .map(|(g, t)| {
                    let d = t.source().domain();
                    (
                        g.name.clone(),
                        ComponentsDoc {
                            components: (0..d.object_count())
                                .map(|x| {
                                    (d.object_name(x).to_string(), c.morphism_name(t.component(x)).to_string())
                                })
                                .collect(),
                        },
                    )
                })
                .collect(),
        }
    }

    /// Reads the structure against `p`; shapes are checked later by
    /// `check_algebra`.
    pub fn to_algebra(&self, p: &PiePresentation) -> Result<AlgebraStructure> {
        check_tag(&self.schema, ALGEBRA_V1)?;
        let c = Arc::new(self.carrier.to_cat()?);
        let mut alg = AlgebraStructure::new(c.clone());
        for (name, doc) in &self.operations {
            let o = p
                .operation(name)
                .ok_or_else(|| Error::ShapeMismatch(format!("operation {name} is not in the presentation")))?;
            let f = doc.to_functor(&alg.power(o.arity), &c)?;
            alg.set_operation(name, o.arity, f)?;
        }
        for (name, doc) in &self.transformations {
            let g = p
                .generator(name)
                .ok_or_else(|| Error::ShapeMismatch(format!("transformation {name} is not in the presentation")))?;
            let s = crate::sf2monad::eval_derived_op(&g.source, &alg)?;
            let t = crate::sf2monad::eval_derived_op(&g.target, &alg)?;
            let d = s.domain().clone();
            let mut comps = Vec::with_capacity(d.object_count());
            for x in d.objects() {
                let m = doc
                    .components
                    .get(x)
                    .ok_or_else(|| Error::Schema(format!("{name} has no component at {x}")))?;
                comps.push(
                    c.morphism_id(m)
                        .ok_or_else(|| Error::Schema(format!("unknown carrier morphism {m}")))?,
                );
            }
            alg.set_transformation(name, FinNatTrans::new_unchecked(s, t, comps));
        }
        Ok(alg)
    }
}

/// Parses `text` as `T`, mapping failures to schema errors.
pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
}
