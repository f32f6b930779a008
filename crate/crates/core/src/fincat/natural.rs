use crate::budget::Budget;
use crate::error::{Error, Result};

use super::functor::same_cat;
use super::FinFunctor;

/// A natural transformation between parallel functors; `components[a]` is
/// a morphism `source(a) → target(a)` of the codomain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinNatTrans {
    source: FinFunctor,
    target: FinFunctor,
    components: Vec<usize>,
}

impl FinNatTrans {
    pub fn new(source: FinFunctor, target: FinFunctor, components: Vec<usize>) -> Result<Self> {
        let t = FinNatTrans::new_unchecked(source, target, components);
        t.check()?;
        Ok(t)
    }

    pub fn new_unchecked(source: FinFunctor, target: FinFunctor, components: Vec<usize>) -> Self {
        FinNatTrans {
            source,
            target,
            components,
        }
    }

    pub fn check(&self) -> Result<()> {
        let (f, g) = (&self.source, &self.target);
        if !same_cat(f.domain(), g.domain()) || !same_cat(f.codomain(), g.codomain()) {
            return Err(Error::InvalidTransformation("functors are not parallel".into()));
        }
        let (a, b) = (&**f.domain(), &**f.codomain());
        if self.components.len() != a.object_count() {
            return Err(Error::InvalidTransformation("wrong number of components".into()));
        }
        for x in 0..a.object_count() {
            let c = self.components[x];
            if c >= b.morphism_count() || b.src(c) != f.object(x) || b.dst(c) != g.object(x) {
                return Err(Error::InvalidTransformation(format!(
                    "component at {} has the wrong source or target",
                    a.object_name(x)
                )));
            }
        }
        for h in 0..a.morphism_count() {
            let (s, d) = (a.src(h), a.dst(h));
            let left = b.comp(g.morphism(h), self.components[s]);
            let right = b.comp(self.components[d], f.morphism(h));
            if left != right {
                return Err(Error::InvalidTransformation(format!(
                    "naturality square fails at {}",
                    a.morphism_name(h)
                )));
            }
        }
        Ok(())
    }

    pub fn identity(functor: &FinFunctor) -> FinNatTrans {
        let b = functor.codomain();
        let components = functor
            .object_map()
            .iter()
            .map(|&y| b.identity(y))
            .collect();
        FinNatTrans {
            source: functor.clone(),
            target: functor.clone(),
            components,
        }
    }

    pub fn source(&self) -> &FinFunctor {
        &self.source
    }

    pub fn target(&self) -> &FinFunctor {
        &self.target
    }

    pub fn component(&self, x: usize) -> usize {
        self.components[x]
    }

    pub fn components(&self) -> &[usize] {
        &self.components
    }

    pub fn is_invertible(&self) -> bool {
        let b = self.source.codomain();
        self.components.iter().all(|&c| b.is_iso(c))
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target
            && self
                .components
                .iter()
                .all(|&c| self.source.codomain().is_identity(c))
    }

    /// `next · self` (first `self`, then `next`).
    pub fn then(&self, next: &FinNatTrans) -> Result<FinNatTrans> {
        if self.target != next.source {
            return Err(Error::NonComposable(
                "target of the first transformation differs from source of the second".into(),
            ));
        }
        let b = self.source.codomain();
        let components = self
            .components
            .iter()
            .zip(&next.components)
            .map(|(&c, &d)| b.comp(d, c))
            .collect();
        Ok(FinNatTrans {
            source: self.source.clone(),
            target: next.target.clone(),
            components,
        })
    }

    pub fn inverse(&self) -> Option<FinNatTrans> {
        let b = self.source.codomain();
        let components = self
            .components
            .iter()
            .map(|&c| b.inverse(c))
            .collect::<Option<Vec<_>>>()?;
        Some(FinNatTrans {
            source: self.target.clone(),
            target: self.source.clone(),
            components,
        })
    }

    /// `H · self` for `H` defined on the codomain.
    pub fn whisker_after(&self, h: &FinFunctor) -> Result<FinNatTrans> {
        Ok(FinNatTrans {
            source: self.source.then(h)?,
            target: self.target.then(h)?,
            components: self.components.iter().map(|&c| h.morphism(c)).collect(),
        })
    }

    /// `self · K` for `K` landing in the domain.
    pub fn whisker_before(&self, k: &FinFunctor) -> Result<FinNatTrans> {
        Ok(FinNatTrans {
            source: k.then(&self.source)?,
            target: k.then(&self.target)?,
            components: k.object_map().iter().map(|&x| self.components[x]).collect(),
        })
    }
}

/// All natural transformations `source ⇒ target`, in canonical order.
/// With `invertible_only`, components are restricted to isomorphisms.
pub fn enumerate_transformations(
    source: &FinFunctor,
    target: &FinFunctor,
    invertible_only: bool,
    budget: &mut Budget,
) -> Result<Vec<FinNatTrans>> {
    let a = source.domain().clone();
    let b = source.codomain().clone();
    let n = a.object_count();
    let mut out = Vec::new();
    let mut comps = vec![usize::MAX; n];
    // morphisms whose later endpoint is k
    let mut checks = vec![Vec::new(); n];
    for f in 0..a.morphism_count() {
        checks[a.src(f).max(a.dst(f))].push(f);
    }
    fn go(
        k: usize,
        a: &super::FinCat,
        b: &super::FinCat,
        source: &FinFunctor,
        target: &FinFunctor,
        invertible_only: bool,
        checks: &[Vec<usize>],
        comps: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        budget: &mut Budget,
    ) -> Result<()> {
        if k == a.object_count() {
            out.push(comps.clone());
            return Ok(());
        }
        for &c in b.hom(source.object(k), target.object(k)) {
            budget.tick("enumerating natural transformations")?;
            if invertible_only && !b.is_iso(c) {
                continue;
            }
            comps[k] = c;
            let ok = checks[k].iter().all(|&f| {
                b.comp(target.morphism(f), comps[a.src(f)])
                    == b.comp(comps[a.dst(f)], source.morphism(f))
            });
            if ok {
                go(k + 1, a, b, source, target, invertible_only, checks, comps, out, budget)?;
            }
        }
        comps[k] = usize::MAX;
        Ok(())
    }
    let mut raw = Vec::new();
    go(
        0,
        &a,
        &b,
        source,
        target,
        invertible_only,
        &checks,
        &mut comps,
        &mut raw,
        budget,
    )?;
    for components in raw {
        out.push(FinNatTrans::new_unchecked(
            source.clone(),
            target.clone(),
            components,
        ));
    }
    Ok(out)
}
