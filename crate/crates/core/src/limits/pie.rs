use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::fincat::{FinCat, FinFunctor, FinNatTrans};
use crate::weights::{ob_presheaf, CatWeight, Diagram, PieCertificate};

use super::cones::{Cone, ConeCategory, LimitKind};
use super::primitive::{equifier, inserter, primitive_pie, PrimitiveArgs};

/// The functor `D(morphism) ∘ π_factor`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Leg {
    pub factor: usize,
    pub morphism: usize,
}

/// A 2-cell between legs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CellTerm {
    /// the cell introduced by an earlier inserter node
    Inserted(usize),
    Identity(Leg),
    /// first the left cell, then the right one
    VComp(Box<CellTerm>, Box<CellTerm>),
    /// `D(morphism) · cell`
    Whisker { morphism: usize, cell: Box<CellTerm> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PieNode {
    Inserter { source: Leg, target: Leg },
    Equifier { left: CellTerm, right: CellTerm },
}

/// A product of diagram values `D(factors[i])` followed by inserters and
/// equifiers, in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieExpr {
    pub index: Arc<FinCat>,
    pub factors: Vec<usize>,
    pub nodes: Vec<PieNode>,
}

impl PieExpr {
    pub fn inserter_count(&self) -> usize {
        self.nodes.iter().filter(|n| matches!(n, PieNode::Inserter { .. })).count()
    }

    pub fn equifier_count(&self) -> usize {
        self.nodes.len() - self.inserter_count()
    }

    fn check_leg(&self, leg: &Leg) -> Result<usize> {
        let j = &*self.index;
        if leg.factor >= self.factors.len() || leg.morphism >= j.morphism_count() {
            return Err(Error::TypeMismatch(format!("leg {leg:?} is out of scope")));
        }
        if j.src(leg.morphism) != self.factors[leg.factor] {
            return Err(Error::TypeMismatch(format!(
                "leg {leg:?}: morphism does not start at the factor's index object"
            )));
        }
        Ok(j.dst(leg.morphism))
    }

    fn cell_type(&self, term: &CellTerm, node: usize, types: &[Option<(Leg, Leg)>]) -> Result<(Leg, Leg)> {
        let j = &*self.index;
        match term {
            CellTerm::Inserted(n) => {
                if *n >= node {
                    return Err(Error::TypeMismatch(format!(
                        "node {node} refers to node {n}, which is not yet in scope"
                    )));
                }
                types[*n].ok_or_else(|| {
                    Error::TypeMismatch(format!("node {n} is not an inserter"))
                })
            }
            CellTerm::Identity(leg) => {
                self.check_leg(leg)?;
                Ok((*leg, *leg))
            }
            CellTerm::VComp(a, b) => {
                let (s, t) = self.cell_type(a, node, types)?;
                let (s2, t2) = self.cell_type(b, node, types)?;
                if t != s2 {
                    return Err(Error::TypeMismatch(format!(
                        "vertical composite of non-composable cells ({t:?} vs {s2:?})"
                    )));
                }
                Ok((s, t2))
            }
            CellTerm::Whisker { morphism, cell } => {
                let (s, t) = self.cell_type(cell, node, types)?;
                if *morphism >= j.morphism_count() || j.src(*morphism) != j.dst(s.morphism) {
                    return Err(Error::TypeMismatch("whiskering morphism does not match".into()));
                }
                let w = |l: Leg| Leg {
                    factor: l.factor,
                    morphism: j.comp(*morphism, l.morphism),
                };
                Ok((w(s), w(t)))
            }
        }
    }

    /// Checks scoping and typing; returns the type of each inserter node.
    pub fn check(&self) -> Result<Vec<Option<(Leg, Leg)>>> {
        if let Some(&j) = self.factors.iter().find(|&&j| j >= self.index.object_count()) {
            return Err(Error::TypeMismatch(format!("factor {j} is not an index object")));
        }
        let mut types = Vec::with_capacity(self.nodes.len());
        for (n, node) in self.nodes.iter().enumerate() {
            match node {
                PieNode::Inserter { source, target } => {
                    if self.check_leg(source)? != self.check_leg(target)? {
                        return Err(Error::TypeMismatch(format!(
                            "inserter node {n}: legs land in different values"
                        )));
                    }
                    types.push(Some((*source, *target)));
                }
                PieNode::Equifier { left, right } => {
                    let a = self.cell_type(left, n, &types)?;
                    let b = self.cell_type(right, n, &types)?;
                    if a != b {
                        return Err(Error::TypeMismatch(format!(
                            "equifier node {n}: cells are not parallel"
                        )));
                    }
                    types.push(None);
                }
            }
        }
        Ok(types)
    }

    /// The object `D(leg.morphism)(a_factor)` at a point.
    pub fn leg_value(&self, leg: &Leg, point: &PiePoint, d: &Diagram) -> usize {
        d.action(leg.morphism).object(point.factors[leg.factor])
    }

    /// The component of a cell term at a point.
    pub fn cell_component(&self, term: &CellTerm, point: &PiePoint, d: &Diagram) -> usize {
        match term {
            CellTerm::Inserted(n) => point.cells[self.slot(*n)],
            CellTerm::Identity(leg) => {
                let k = self.index.dst(leg.morphism);
                d.value(k).identity(self.leg_value(leg, point, d))
            }
            CellTerm::VComp(a, b) => {
                let k = self.cell_codomain(a);
                d.value(k).comp(self.cell_component(b, point, d), self.cell_component(a, point, d))
            }
            CellTerm::Whisker { morphism, cell } => {
                d.action(*morphism).morphism(self.cell_component(cell, point, d))
            }
        }
    }

    fn cell_codomain(&self, term: &CellTerm) -> usize {
        match term {
            CellTerm::Inserted(n) => match &self.nodes[*n] {
                PieNode::Inserter { source, .. } => self.index.dst(source.morphism),
                PieNode::Equifier { .. } => unreachable!("checked expression"),
            },
            CellTerm::Identity(leg) => self.index.dst(leg.morphism),
            CellTerm::VComp(a, _) => self.cell_codomain(a),
            CellTerm::Whisker { morphism, .. } => self.index.dst(*morphism),
        }
    }

    /// Position of inserter node `n` among the inserter nodes.
    pub fn slot(&self, n: usize) -> usize {
        self.nodes[..n]
            .iter()
            .filter(|x| matches!(x, PieNode::Inserter { .. }))
            .count()
    }
}

/// Coordinates of an object of an evaluated expression: an object of each
/// factor and a component for each inserter node.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PiePoint {
    pub factors: Vec<usize>,
    pub cells: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct PieEvaluation {
    pub category: Arc<FinCat>,
    /// `π_i` into `D(factors[i])`
    pub projections: Vec<FinFunctor>,
    /// for each inserter node, its cell whiskered onto the final category
    pub cells: Vec<Option<FinNatTrans>>,
    pub points: Vec<PiePoint>,
    /// for each morphism, its component in every factor
    pub arrows: Vec<Vec<usize>>,
}

impl PieEvaluation {
    pub fn find_point(&self, point: &PiePoint) -> Option<usize> {
        self.points.iter().position(|p| p == point)
    }
}

fn eval_cell(
    term: &CellTerm,
    cells: &[Option<FinNatTrans>],
    proj: &[FinFunctor],
    d: &Diagram,
) -> Result<FinNatTrans> {
    match term {
        CellTerm::Inserted(n) => Ok(cells[*n].clone().expect("checked expression")),
        CellTerm::Identity(leg) => Ok(FinNatTrans::identity(&proj[leg.factor].then(d.action(leg.morphism))?)),
        CellTerm::VComp(a, b) => eval_cell(a, cells, proj, d)?.then(&eval_cell(b, cells, proj, d)?),
        CellTerm::Whisker { morphism, cell } => {
            eval_cell(cell, cells, proj, d)?.whisker_after(d.action(*morphism))
        }
    }
}

/// Folds the expression with the primitive constructions.
pub fn eval_pie(expr: &PieExpr, d: &Diagram, budget: &mut Budget) -> Result<PieEvaluation> {
    if **d.index() != *expr.index {
        return Err(Error::TypeMismatch(
            "expression and diagram have different index categories".into(),
        ));
    }
    expr.check()?;
    let factors: Vec<Arc<FinCat>> = expr.factors.iter().map(|&j| d.value(j).clone()).collect();
    let product = primitive_pie(&PrimitiveArgs::Product(factors))?;
    let mut category = product.category;
    let mut proj = product.projections;
    budget.charge(category.morphism_count() as u64, "evaluating a pie expression")?;
    let mut cells: Vec<Option<FinNatTrans>> = Vec::with_capacity(expr.nodes.len());
    let mut points: Vec<PiePoint> = (0..category.object_count())
        .map(|x| PiePoint {
            factors: proj.iter().map(|p| p.object(x)).collect(),
            cells: Vec::new(),
        })
        .collect();
    for node in &expr.nodes {
        let (lim, new_cell) = match node {
            PieNode::Inserter { source, target } => {
                let s = proj[source.factor].then(d.action(source.morphism))?;
                let t = proj[target.factor].then(d.action(target.morphism))?;
                let lim = inserter(&s, &t)?;
                let cell = lim.cell.clone();
                (lim, cell)
            }
            PieNode::Equifier { left, right } => {
                let l = eval_cell(left, &cells, &proj, d)?;
                let r = eval_cell(right, &cells, &proj, d)?;
                (equifier(&l, &r)?, None)
            }
        };
        let p = &lim.projections[0];
        budget.charge(lim.category.morphism_count() as u64, "evaluating a pie expression")?;
        points = (0..lim.category.object_count())
            .map(|x| {
                let mut pt = points[p.object(x)].clone();
                if let Some(c) = &new_cell {
                    pt.cells.push(c.component(x));
                }
                pt
            })
            .collect();
        proj = proj.iter().map(|q| p.then(q)).collect::<Result<_>>()?;
        cells = cells
            .into_iter()
            .map(|c| c.map(|c| c.whisker_before(p)).transpose())
            .collect::<Result<_>>()?;
        cells.push(new_cell);
        category = lim.category;
    }
    let arrows = (0..category.morphism_count())
        .map(|h| proj.iter().map(|p| p.morphism(h)).collect())
        .collect();
    Ok(PieEvaluation {
        category,
        projections: proj,
        cells,
        points,
        arrows,
    })
}

/// A compiled pie weight together with the readout that turns points of
/// the evaluated expression into strict cones.
#[derive(Clone, Debug)]
pub struct CompiledPie {
    pub expr: PieExpr,
    /// initial element `(j_i, x_i)` of each factor's component
    pub initials: Vec<(usize, usize)>,
    /// `object_legs[k][y]` computes `α_k(y)`
    pub object_legs: Vec<Vec<Leg>>,
    /// `morphism_nodes[k][m]` is the inserter computing `α_k(m)`; `None`
    /// for identities
    pub morphism_nodes: Vec<Vec<Option<usize>>>,
}

/// Compiles a pie weight from its decomposition certificate.
pub fn compile_pie(w: &CatWeight, cert: &PieCertificate) -> Result<CompiledPie> {
    let PieCertificate::Decomposition { components } = cert else {
        return Err(Error::CertificateMismatch("a refutation cannot be compiled".into()));
    };
    cert.verify(&ob_presheaf(w)).map_err(Error::CertificateMismatch)?;
    let j = w.index().clone();
    let mut object_legs: Vec<Vec<Leg>> = (0..j.object_count())
        .map(|k| vec![Leg { factor: 0, morphism: 0 }; w.value(k).object_count()])
        .collect();
    let mut initials = Vec::with_capacity(components.len());
    for (i, comp) in components.iter().enumerate() {
        initials.push(comp.initial);
        for &((k, y), f) in &comp.connecting {
            object_legs[k][y] = Leg { factor: i, morphism: f };
        }
    }
    let mut nodes = Vec::new();
    let mut morphism_nodes: Vec<Vec<Option<usize>>> = Vec::with_capacity(j.object_count());
    for k in 0..j.object_count() {
        let wk = w.value(k);
        let mut row = vec![None; wk.morphism_count()];
        for m in wk.non_identity_morphisms() {
            row[m] = Some(nodes.len());
            nodes.push(PieNode::Inserter {
                source: object_legs[k][wk.src(m)],
                target: object_legs[k][wk.dst(m)],
            });
        }
        morphism_nodes.push(row);
    }
    let cell_of = |k: usize, m: usize| -> CellTerm {
        match morphism_nodes[k][m] {
            Some(n) => CellTerm::Inserted(n),
            None => CellTerm::Identity(object_legs[k][w.value(k).src(m)]),
        }
    };
    for k in 0..j.object_count() {
        let wk = w.value(k);
        for (g, f, h) in wk.sorted_composition() {
            if wk.is_identity(g) || wk.is_identity(f) {
                continue;
            }
            nodes.push(PieNode::Equifier {
                left: cell_of(k, h),
                right: CellTerm::VComp(Box::new(cell_of(k, f)), Box::new(cell_of(k, g))),
            });
        }
    }
    for g in j.non_identity_morphisms() {
        let (k, l) = (j.src(g), j.dst(g));
        let wg = w.action(g);
        for m in w.value(k).non_identity_morphisms() {
            nodes.push(PieNode::Equifier {
                left: cell_of(l, wg.morphism(m)),
                right: CellTerm::Whisker {
                    morphism: g,
                    cell: Box::new(cell_of(k, m)),
                },
            });
        }
    }
    let expr = PieExpr {
        index: j,
        factors: initials.iter().map(|&(j, _)| j).collect(),
        nodes,
    };
    expr.check()?;
    Ok(CompiledPie {
        expr,
        initials,
        object_legs,
        morphism_nodes,
    })
}

impl CompiledPie {
    /// The strict cone with the given coordinates.
    pub fn cone_of_point(&self, point: &PiePoint, w: &CatWeight, d: &Diagram) -> Result<Cone> {
        let j = w.index();
        let mut legs = Vec::with_capacity(j.object_count());
        for k in 0..j.object_count() {
            let (wk, dk) = (w.value(k), d.value(k));
            let objects: Vec<usize> = self.object_legs[k]
                .iter()
                .map(|leg| self.expr.leg_value(leg, point, d))
                .collect();
            let morphisms = (0..wk.morphism_count())
                .map(|m| match self.morphism_nodes[k][m] {
                    Some(n) => point.cells[self.expr.slot(n)],
                    None => dk.identity(objects[wk.src(m)]),
                })
                .collect();
            legs.push(FinFunctor::new(wk.clone(), dk.clone(), objects, morphisms)?);
        }
        let cells = (0..j.morphism_count())
            .map(|f| {
                let dk = d.value(j.dst(f));
                let wf = w.action(f);
                (0..w.value(j.src(f)).object_count())
                    .map(|x| dk.identity(legs[j.dst(f)].object(wf.object(x))))
                    .collect()
            })
            .collect();
        Ok(Cone { legs, cells })
    }

    /// The coordinates of a strict cone.
    pub fn point_of_cone(&self, cone: &Cone) -> PiePoint {
        let factors = self
            .initials
            .iter()
            .map(|&(j, x)| cone.legs[j].object(x))
            .collect();
        let mut cells = Vec::with_capacity(self.expr.inserter_count());
        for (k, row) in self.morphism_nodes.iter().enumerate() {
            for (m, n) in row.iter().enumerate() {
                if n.is_some() {
                    cells.push(cone.legs[k].morphism(m));
                }
            }
        }
        PiePoint { factors, cells }
    }

    /// Modification components of a morphism with the given factor parts.
    pub fn modification_of_arrow(&self, arrow: &[usize], w: &CatWeight, d: &Diagram) -> Vec<Vec<usize>> {
        (0..w.index().object_count())
            .map(|k| {
                self.object_legs[k]
                    .iter()
                    .map(|leg| d.action(leg.morphism).morphism(arrow[leg.factor]))
                    .collect()
            })
            .collect()
    }

    /// The canonical functor from the evaluated expression to `{W, D}`.
    pub fn comparison(
        &self,
        eval: &PieEvaluation,
        strict: &ConeCategory,
        w: &CatWeight,
        d: &Diagram,
    ) -> Result<FinFunctor> {
        if strict.kind != LimitKind::Strict {
            return Err(Error::TypeMismatch("comparison target must be a strict limit".into()));
        }
        let keys: HashMap<Vec<usize>, usize> =
            strict.cones.iter().enumerate().map(|(i, c)| (c.key(), i)).collect();
        let objects = eval
            .points
            .iter()
            .map(|p| {
                let cone = self.cone_of_point(p, w, d)?;
                keys.get(&cone.key())
                    .copied()
                    .ok_or_else(|| Error::TypeMismatch("point is not a strict cone".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let c = &eval.category;
        let morphisms = (0..c.morphism_count())
            .map(|h| {
                let comps = self.modification_of_arrow(&eval.arrows[h], w, d);
                strict
                    .find_modification(objects[c.src(h)], objects[c.dst(h)], &comps)
                    .ok_or_else(|| Error::TypeMismatch("arrow is not a modification".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        FinFunctor::new(eval.category.clone(), strict.category.clone(), objects, morphisms)
    }
}
