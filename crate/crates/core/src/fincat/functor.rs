use std::fmt;
use std::sync::Arc;

use crate::budget::Budget;
use crate::error::{Error, Result};

use super::FinCat;

/// A functor between finite categories, stored as object and morphism maps.
#[derive(Clone)]
pub struct FinFunctor {
    domain: Arc<FinCat>,
    codomain: Arc<FinCat>,
    objects: Vec<usize>,
    morphisms: Vec<usize>,
}

pub(crate) fn same_cat(a: &Arc<FinCat>, b: &Arc<FinCat>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl FinFunctor {
    /// Checks sources, targets, identities and every composite.
    pub fn new(
        domain: Arc<FinCat>,
        codomain: Arc<FinCat>,
        objects: Vec<usize>,
        morphisms: Vec<usize>,
    ) -> Result<FinFunctor> {
        let f = FinFunctor::new_unchecked(domain, codomain, objects, morphisms);
        f.check()?;
        Ok(f)
    }

    pub fn new_unchecked(
        domain: Arc<FinCat>,
        codomain: Arc<FinCat>,
        objects: Vec<usize>,
        morphisms: Vec<usize>,
    ) -> FinFunctor {
        FinFunctor {
            domain,
            codomain,
            objects,
            morphisms,
        }
    }

    pub fn check(&self) -> Result<()> {
        let (a, b) = (&*self.domain, &*self.codomain);
        if self.objects.len() != a.object_count() || self.morphisms.len() != a.morphism_count() {
            return Err(Error::InvalidFunctor("map sizes do not match the domain".into()));
        }
        if let Some(&x) = self.objects.iter().find(|&&x| x >= b.object_count()) {
            return Err(Error::InvalidFunctor(format!("object image {x} out of range")));
        }
        if let Some(&x) = self.morphisms.iter().find(|&&x| x >= b.morphism_count()) {
            return Err(Error::InvalidFunctor(format!("morphism image {x} out of range")));
        }
        for (f, m) in a.morphisms().iter().enumerate() {
            let img = self.morphisms[f];
            if b.src(img) != self.objects[m.src] || b.dst(img) != self.objects[m.dst] {
                return Err(Error::InvalidFunctor(format!(
                    "image of {} has the wrong source or target",
                    m.id
                )));
            }
        }
        for x in 0..a.object_count() {
            if self.morphisms[a.identity(x)] != b.identity(self.objects[x]) {
                return Err(Error::InvalidFunctor(format!(
                    "identity of {} is not preserved",
                    a.object_name(x)
                )));
            }
        }
        for (&(g, f), &h) in a.composition_table() {
            if b.comp(self.morphisms[g], self.morphisms[f]) != self.morphisms[h] {
                return Err(Error::InvalidFunctor(format!(
                    "composite {}∘{} is not preserved",
                    a.morphism_name(g),
                    a.morphism_name(f)
                )));
            }
        }
        Ok(())
    }

    pub fn identity(cat: &Arc<FinCat>) -> FinFunctor {
        FinFunctor {
            domain: cat.clone(),
            codomain: cat.clone(),
            objects: (0..cat.object_count()).collect(),
            morphisms: (0..cat.morphism_count()).collect(),
        }
    }

    /// The functor `domain → codomain` constant at object `x`.
    pub fn constant(domain: &Arc<FinCat>, codomain: &Arc<FinCat>, x: usize) -> FinFunctor {
        FinFunctor {
            domain: domain.clone(),
            codomain: codomain.clone(),
            objects: vec![x; domain.object_count()],
            morphisms: vec![codomain.identity(x); domain.morphism_count()],
        }
    }

    pub fn domain(&self) -> &Arc<FinCat> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<FinCat> {
        &self.codomain
    }

    pub fn object(&self, x: usize) -> usize {
        self.objects[x]
    }

    pub fn morphism(&self, f: usize) -> usize {
        self.morphisms[f]
    }

    pub fn object_map(&self) -> &[usize] {
        &self.objects
    }

    pub fn morphism_map(&self) -> &[usize] {
        &self.morphisms
    }

    /// `after ∘ self`.
    pub fn then(&self, after: &FinFunctor) -> Result<FinFunctor> {
        if !same_cat(&self.codomain, &after.domain) {
            return Err(Error::TypeMismatch(
                "functors are not composable: codomain and domain differ".into(),
            ));
        }
        Ok(FinFunctor {
            domain: self.domain.clone(),
            codomain: after.codomain.clone(),
            objects: self.objects.iter().map(|&x| after.objects[x]).collect(),
            morphisms: self.morphisms.iter().map(|&f| after.morphisms[f]).collect(),
        })
    }

    pub fn is_identity(&self) -> bool {
        same_cat(&self.domain, &self.codomain)
            && self.objects.iter().enumerate().all(|(i, &x)| i == x)
            && self.morphisms.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Same maps, with the given (structurally equal) endpoints.
    pub fn retarget(&self, domain: Arc<FinCat>, codomain: Arc<FinCat>) -> FinFunctor {
        FinFunctor {
            domain,
            codomain,
            objects: self.objects.clone(),
            morphisms: self.morphisms.clone(),
        }
    }
}

impl PartialEq for FinFunctor {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.morphisms == other.morphisms
            && same_cat(&self.domain, &other.domain)
            && same_cat(&self.codomain, &other.codomain)
    }
}

impl Eq for FinFunctor {}

impl fmt::Debug for FinFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinFunctor")
            .field("objects", &self.objects)
            .field("morphisms", &self.morphisms)
            .finish()
    }
}

/// All functors `domain → codomain`, in canonical order.
///
/// Objects are assigned in declared order; a morphism is assigned as soon
/// as both of its endpoints are, and every composite is checked when its
/// last participant is assigned.
pub fn enumerate_functors(
    domain: &Arc<FinCat>,
    codomain: &Arc<FinCat>,
    budget: &mut Budget,
) -> Result<Vec<FinFunctor>> {
    let mut out = Vec::new();
    for_each_functor(domain, codomain, budget, |f| {
        out.push(f);
        true
    })?;
    Ok(out)
}

/// Streams functors to `visit`; returning `false` stops the search.
pub fn for_each_functor(
    domain: &Arc<FinCat>,
    codomain: &Arc<FinCat>,
    budget: &mut Budget,
    mut visit: impl FnMut(FinFunctor) -> bool,
) -> Result<()> {
    let a = &**domain;
    let mut search = FunctorSearch::new(a);
    let mut objects = vec![usize::MAX; a.object_count()];
    let mut morphisms = vec![usize::MAX; a.morphism_count()];
    search.run(
        0,
        a,
        codomain,
        &mut objects,
        &mut morphisms,
        budget,
        &mut |objs, mors| {
            visit(FinFunctor::new_unchecked(
                domain.clone(),
                codomain.clone(),
                objs.to_vec(),
                mors.to_vec(),
            ))
        },
    )?;
    Ok(())
}

struct FunctorSearch {
    /// After object `k` is assigned, these non-identity morphisms become
    /// assignable (both endpoints ≤ k).
    unlocked: Vec<Vec<usize>>,
}

impl FunctorSearch {
    fn new(a: &FinCat) -> Self {
        let mut unlocked = vec![Vec::new(); a.object_count()];
        for f in a.non_identity_morphisms() {
            let k = a.src(f).max(a.dst(f));
            unlocked[k].push(f);
        }
        FunctorSearch { unlocked }
    }

    #[allow(clippy::too_many_arguments)]
    fn run(
        &mut self,
        k: usize,
        a: &FinCat,
        b: &FinCat,
        objects: &mut Vec<usize>,
        morphisms: &mut Vec<usize>,
        budget: &mut Budget,
        visit: &mut dyn FnMut(&[usize], &[usize]) -> bool,
    ) -> Result<bool> {
        if k == a.object_count() {
            return Ok(visit(objects, morphisms));
        }
        for y in 0..b.object_count() {
            budget.tick("enumerating functors")?;
            objects[k] = y;
            morphisms[a.identity(k)] = b.identity(y);
            let pending = self.unlocked[k].clone();
            if !self.assign_morphisms(&pending, 0, k, a, b, objects, morphisms, budget, visit)? {
                return Ok(false);
            }
        }
        objects[k] = usize::MAX;
        morphisms[a.identity(k)] = usize::MAX;
        Ok(true)
    }

    #[allow(clippy::too_many_arguments)]
    fn assign_morphisms(
        &mut self,
        pending: &[usize],
        idx: usize,
        k: usize,
        a: &FinCat,
        b: &FinCat,
        objects: &mut Vec<usize>,
        morphisms: &mut Vec<usize>,
        budget: &mut Budget,
        visit: &mut dyn FnMut(&[usize], &[usize]) -> bool,
    ) -> Result<bool> {
        if idx == pending.len() {
            return self.run(k + 1, a, b, objects, morphisms, budget, visit);
        }
        let f = pending[idx];
        let (s, d) = (objects[a.src(f)], objects[a.dst(f)]);
        for &cand in b.hom(s, d) {
            budget.tick("enumerating functors")?;
            morphisms[f] = cand;
            if composites_consistent(f, a, b, morphisms)
                && !self.assign_morphisms(pending, idx + 1, k, a, b, objects, morphisms, budget, visit)?
            {
                morphisms[f] = usize::MAX;
                return Ok(false);
            }
        }
        morphisms[f] = usize::MAX;
        Ok(true)
    }
}

/// Checks every composable triple involving `f` whose members are all
/// assigned.
fn composites_consistent(f: usize, a: &FinCat, b: &FinCat, morphisms: &[usize]) -> bool {
    let assigned = |m: usize| morphisms[m] != usize::MAX;
    for &g in a.outgoing(a.dst(f)) {
        if !assigned(g) {
            continue;
        }
        let gf = a.comp(g, f);
        if assigned(gf) && b.comp(morphisms[g], morphisms[f]) != morphisms[gf] {
            return false;
        }
    }
    for &h in a.incoming(a.src(f)) {
        if !assigned(h) {
            continue;
        }
        let fh = a.comp(f, h);
        if assigned(fh) && b.comp(morphisms[f], morphisms[h]) != morphisms[fh] {
            return false;
        }
    }
    // f as the composite of an assigned pair
    let (s, d) = (a.src(f), a.dst(f));
    for &h in a.outgoing(s) {
        if !assigned(h) {
            continue;
        }
        for &g in a.hom(a.dst(h), d) {
            if assigned(g) && a.comp(g, h) == f && b.comp(morphisms[g], morphisms[h]) != morphisms[f] {
                return false;
            }
        }
    }
    true
}
