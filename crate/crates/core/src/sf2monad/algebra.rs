use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::fincat::build::{self, decode_tuple, encode_tuple};
use crate::fincat::{enumerate_functors, enumerate_transformations, FinCat, FinFunctor, FinNatTrans};

use super::presentation::PiePresentation;
use super::terms::{ContextTerm, OpTerm, TransTerm};

/// A carrier with basic operations `C^n → C` and basic transformations.
#[derive(Clone, Debug)]
pub struct AlgebraStructure {
    carrier: Arc<FinCat>,
    operations: BTreeMap<String, FinFunctor>,
    transformations: BTreeMap<String, FinNatTrans>,
    powers: Arc<Mutex<BTreeMap<usize, Arc<FinCat>>>>,
}

impl AlgebraStructure {
    /// A carrier with no operations yet.
    pub fn new(carrier: Arc<FinCat>) -> Self {
        AlgebraStructure {
            carrier,
            operations: BTreeMap::new(),
            transformations: BTreeMap::new(),
            powers: Arc::new(Mutex::new(BTreeMap::new())),
        }
    }

    pub fn carrier(&self) -> &Arc<FinCat> {
        &self.carrier
    }

    /// `C^k`, shared between all functors of this structure.
    pub fn power(&self, k: usize) -> Arc<FinCat> {
        let mut cache = self.powers.lock().expect("power cache");
        cache
            .entry(k)
            .or_insert_with(|| Arc::new(build::power(&self.carrier, k)))
            .clone()
    }

    /// Installs `f: C^n → C`, where `C^n` is as built by [`build::power`].
    pub fn set_operation(&mut self, name: &str, n: usize, f: FinFunctor) -> Result<()> {
        if **f.codomain() != *self.carrier {
            return Err(Error::ShapeMismatch(format!("operation {name} does not land in the carrier")));
        }
        let p = self.power(n);
        if **f.domain() != *p {
            return Err(Error::ShapeMismatch(format!("operation {name} is not defined on C^{n}")));
        }
        self.operations
            .insert(name.to_string(), f.retarget(p, self.carrier.clone()));
        Ok(())
    }

    pub fn set_transformation(&mut self, name: &str, t: FinNatTrans) {
        self.transformations.insert(name.to_string(), t);
    }

    pub fn operation(&self, name: &str) -> Option<&FinFunctor> {
        self.operations.get(name)
    }

    pub fn operations(&self) -> &BTreeMap<String, FinFunctor> {
        &self.operations
    }

    pub fn transformation(&self, name: &str) -> Option<&FinNatTrans> {
        self.transformations.get(name)
    }

    pub fn transformations(&self) -> &BTreeMap<String, FinNatTrans> {
        &self.transformations
    }

    fn op(&self, name: &str, n: usize) -> Result<&FinFunctor> {
        let f = self
            .operations
            .get(name)
            .ok_or_else(|| Error::ArityMismatch(format!("no operation {name} in the structure")))?;
        if f.domain().object_count() != self.carrier.object_count().pow(n as u32)
            || f.domain().morphism_count() != self.carrier.morphism_count().pow(n as u32)
        {
            return Err(Error::ArityMismatch(format!("{name} is not {n}-ary here")));
        }
        Ok(f)
    }

    fn obj_sizes(&self, n: usize) -> Vec<usize> {
        vec![self.carrier.object_count(); n]
    }

    fn mor_sizes(&self, n: usize) -> Vec<usize> {
        vec![self.carrier.morphism_count(); n]
    }

    fn eval_object(&self, t: &OpTerm, xs: &[usize]) -> Result<usize> {
        fn go(a: &AlgebraStructure, t: &OpTerm, xs: &[usize], i: &mut usize) -> Result<usize> {
            match t {
                OpTerm::Var => {
                    *i += 1;
                    Ok(xs[*i - 1])
                }
                OpTerm::Op(s, args) => {
                    let vs = args.iter().map(|c| go(a, c, xs, i)).collect::<Result<Vec<_>>>()?;
                    let f = a.op(s, args.len())?;
                    Ok(f.object(encode_tuple(&vs, &a.obj_sizes(vs.len()))))
                }
            }
        }
        go(self, t, xs, &mut 0)
    }

    /// Evaluates a context on morphisms: variables are sent to `fs`, the
    /// hole to `hole`.
    fn eval_context_morphism(&self, h: &ContextTerm, fs: &[usize], hole: usize) -> Result<usize> {
        fn go(a: &AlgebraStructure, t: &ContextTerm, fs: &[usize], hole: usize, i: &mut usize) -> Result<usize> {
            match t {
                ContextTerm::Hole => Ok(hole),
                ContextTerm::Var => {
                    *i += 1;
                    Ok(fs[*i - 1])
                }
                ContextTerm::Op(s, args) => {
                    let vs = args
                        .iter()
                        .map(|c| go(a, c, fs, hole, i))
                        .collect::<Result<Vec<_>>>()?;
                    let f = a.op(s, args.len())?;
                    Ok(f.morphism(encode_tuple(&vs, &a.mor_sizes(vs.len()))))
                }
            }
        }
        go(self, h, fs, hole, &mut 0)
    }

    fn eval_morphism(&self, t: &OpTerm, fs: &[usize]) -> Result<usize> {
        // a context without a hole is just a term
        let h = context_of(t);
        self.eval_context_morphism(&h, fs, usize::MAX)
    }

    fn component(&self, tau: &TransTerm, xs: &[usize]) -> Result<usize> {
        let c = &self.carrier;
        match tau {
            TransTerm::Id(t) => Ok(c.identity(self.eval_object(t, xs)?)),
            TransTerm::Gen(name, args) => {
                let g = self
                    .transformations
                    .get(name)
                    .ok_or_else(|| Error::ArityMismatch(format!("no transformation {name} in the structure")))?;
                let mut vs = Vec::with_capacity(args.len());
                let mut at = 0;
                for a in args {
                    let k = a.arity();
                    vs.push(self.eval_object(a, &xs[at..at + k])?);
                    at += k;
                }
                if g.source().domain().object_count() != c.object_count().pow(vs.len() as u32) {
                    return Err(Error::ArityMismatch(format!("{name} applied to {} arguments", vs.len())));
                }
                Ok(g.component(encode_tuple(&vs, &self.obj_sizes(vs.len()))))
            }
            TransTerm::VComp(u, v) => {
                let a = self.component(u, xs)?;
                let b = self.component(v, xs)?;
                c.compose(b, a)
                    .ok_or_else(|| Error::NonComposable(format!("{u} then {v}")))
            }
            TransTerm::Context(h, u) => {
                let before = h.hole_position();
                let k = xs.len() - h.arity();
                let inner = self.component(u, &xs[before..before + k])?;
                let ids: Vec<usize> = xs[..before]
                    .iter()
                    .chain(&xs[before + k..])
                    .map(|&x| c.identity(x))
                    .collect();
                self.eval_context_morphism(h, &ids, inner)
            }
        }
    }
}

fn context_of(t: &OpTerm) -> ContextTerm {
    match t {
        OpTerm::Var => ContextTerm::Var,
        OpTerm::Op(s, args) => ContextTerm::Op(s.clone(), args.iter().map(context_of).collect()),
    }
}

/// `⟦t⟧: C^k → C`. Leaves become projections and nodes the assigned basic
/// operations applied to their children.
pub fn eval_derived_op(t: &OpTerm, alg: &AlgebraStructure) -> Result<FinFunctor> {
    let k = t.arity();
    let p = alg.power(k);
    let (os, ms) = (alg.obj_sizes(k), alg.mor_sizes(k));
    let mut tuple = vec![0; k];
    let mut objects = Vec::with_capacity(p.object_count());
    for i in 0..p.object_count() {
        decode_tuple(i, &os, &mut tuple);
        objects.push(alg.eval_object(t, &tuple)?);
    }
    let mut morphisms = Vec::with_capacity(p.morphism_count());
    for i in 0..p.morphism_count() {
        decode_tuple(i, &ms, &mut tuple);
        morphisms.push(alg.eval_morphism(t, &tuple)?);
    }
    Ok(FinFunctor::new_unchecked(p, alg.carrier.clone(), objects, morphisms))
}

/// `⟦τ⟧: ⟦s⟧ ⇒ ⟦t⟧` where `s, t` are the endpoints of `τ`.
pub fn eval_derived_transformation(
    tau: &TransTerm,
    p: &PiePresentation,
    alg: &AlgebraStructure,
) -> Result<FinNatTrans> {
    let (s, t) = tau.endpoints(p)?;
    let (fs, ft) = (eval_derived_op(&s, alg)?, eval_derived_op(&t, alg)?);
    let k = s.arity();
    let os = alg.obj_sizes(k);
    let mut tuple = vec![0; k];
    let mut comps = Vec::with_capacity(fs.domain().object_count());
    for i in 0..fs.domain().object_count() {
        decode_tuple(i, &os, &mut tuple);
        comps.push(alg.component(tau, &tuple)?);
    }
    FinNatTrans::new(fs, ft, comps)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentDifference {
    /// object of `C^k` at which the two sides first differ
    pub object: String,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquationCheck {
    pub name: String,
    pub holds: bool,
    pub first_difference: Option<ComponentDifference>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraReport {
    pub equations: Vec<EquationCheck>,
    pub holds: bool,
}

impl AlgebraReport {
    pub fn failed(&self) -> impl Iterator<Item = &EquationCheck> {
        self.equations.iter().filter(|e| !e.holds)
    }
}

/// Checks that `alg` has the shape `p` asks for, then evaluates both sides
/// of every equation and compares them componentwise.
pub fn check_algebra(p: &PiePresentation, alg: &AlgebraStructure) -> Result<AlgebraReport> {
    check_shape(p, alg)?;
    check_equations(p, alg)
}

fn check_shape(p: &PiePresentation, alg: &AlgebraStructure) -> Result<()> {
    for o in p.operations() {
        let f = alg
            .operations
            .get(&o.name)
            .ok_or_else(|| Error::ShapeMismatch(format!("missing operation {}", o.name)))?;
        if **f.domain() != *alg.power(o.arity) {
            return Err(Error::ShapeMismatch(format!("operation {} should be {}-ary", o.name, o.arity)));
        }
        f.check()
            .map_err(|e| Error::ShapeMismatch(format!("operation {}: {e}", o.name)))?;
    }
    for name in alg.operations.keys() {
        if p.operation(name).is_none() {
            return Err(Error::ShapeMismatch(format!("operation {name} is not in the presentation")));
        }
    }
    for g in p.generators() {
        let t = alg
            .transformations
            .get(&g.name)
            .ok_or_else(|| Error::ShapeMismatch(format!("missing transformation {}", g.name)))?;
        let s = eval_derived_op(&g.source, alg)?;
        let d = eval_derived_op(&g.target, alg)?;
        if *t.source() != s || *t.target() != d {
            return Err(Error::ShapeMismatch(format!(
                "transformation {} is not of type {} ⇒ {}",
                g.name, g.source, g.target
            )));
        }
        t.check()
            .map_err(|e| Error::ShapeMismatch(format!("transformation {}: {e}", g.name)))?;
    }
    for name in alg.transformations.keys() {
        if p.generator(name).is_none() {
            return Err(Error::ShapeMismatch(format!("transformation {name} is not in the presentation")));
        }
    }
    Ok(())
}

fn check_equations(p: &PiePresentation, alg: &AlgebraStructure) -> Result<AlgebraReport> {
    let mut equations = Vec::with_capacity(p.equations().len());
    for e in p.equations() {
        let l = eval_derived_transformation(&e.left, p, alg)?;
        let r = eval_derived_transformation(&e.right, p, alg)?;
        let c = &alg.carrier;
        let first_difference = l
            .components()
            .iter()
            .zip(r.components())
            .position(|(a, b)| a != b)
            .map(|x| ComponentDifference {
                object: l.source().domain().object_name(x).to_string(),
                left: c.morphism_name(l.component(x)).to_string(),
                right: c.morphism_name(r.component(x)).to_string(),
            });
        equations.push(EquationCheck {
            name: e.name.clone(),
            holds: first_difference.is_none(),
            first_difference,
        });
    }
    Ok(AlgebraReport {
        holds: equations.iter().all(|e| e.holds),
        equations,
    })
}

/// Every structure on `c` satisfying the equations of `p`, in canonical
/// order: operations and generators in declaration order, each ranging over
/// its candidates in enumeration order.
pub fn enumerate_algebras(p: &PiePresentation, c: &Arc<FinCat>, budget: &mut Budget) -> Result<Vec<AlgebraStructure>> {
    let base = AlgebraStructure::new(c.clone());
    let mut op_choices = Vec::with_capacity(p.operations().len());
    for o in p.operations() {
        op_choices.push(enumerate_functors(&base.power(o.arity), c, budget)?);
    }
    let mut out = Vec::new();
    let mut idx = vec![0; op_choices.len()];
    if op_choices.iter().any(Vec::is_empty) {
        return Ok(out);
    }
    loop {
        let mut alg = base.clone();
        for (o, (&i, fs)) in p.operations().iter().zip(idx.iter().zip(&op_choices)) {
            alg.operations.insert(o.name.clone(), fs[i].clone());
        }
        let mut gen_choices = Vec::with_capacity(p.generators().len());
        for g in p.generators() {
            let s = eval_derived_op(&g.source, &alg)?;
            let t = eval_derived_op(&g.target, &alg)?;
            gen_choices.push(enumerate_transformations(&s, &t, false, budget)?);
        }
        if gen_choices.iter().all(|v| !v.is_empty()) {
            let mut gi = vec![0; gen_choices.len()];
            loop {
                budget.tick("enumerating algebra structures")?;
                let mut cand = alg.clone();
                for (g, (&i, ts)) in p.generators().iter().zip(gi.iter().zip(&gen_choices)) {
                    cand.transformations.insert(g.name.clone(), ts[i].clone());
                }
                if check_equations(p, &cand)?.holds {
                    out.push(cand);
                }
                if !advance(&mut gi, &gen_choices) {
                    break;
                }
            }
        }
        if !advance(&mut idx, &op_choices) {
            break;
        }
    }
    Ok(out)
}

fn advance<T>(idx: &mut [usize], choices: &[Vec<T>]) -> bool {
    for p in (0..idx.len()).rev() {
        idx[p] += 1;
        if idx[p] < choices[p].len() {
            return true;
        }
        idx[p] = 0;
    }
    false
}
