use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{FinCat, FinFunctor};

/// A functor `J → Cat` on a finite index category: a value category per
/// object and an action functor per morphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatValued {
    index: Arc<FinCat>,
    values: Vec<Arc<FinCat>>,
    action: Vec<FinFunctor>,
}

/// A limit weight `W: J → Cat`.
pub type CatWeight = CatValued;
/// A diagram `D: J → Cat`.
pub type Diagram = CatValued;

impl CatValued {
    /// Checks that every action functor is valid, has the right endpoints,
    /// and that the action is functorial.
    pub fn new(index: Arc<FinCat>, values: Vec<Arc<FinCat>>, action: Vec<FinFunctor>) -> Result<Self> {
        let j = &*index;
        if values.len() != j.object_count() {
            return Err(Error::InvalidDiagram(format!(
                "{} values given for {} index objects",
                values.len(),
                j.object_count()
            )));
        }
        if action.len() != j.morphism_count() {
            return Err(Error::InvalidDiagram(format!(
                "{} action functors given for {} index morphisms",
                action.len(),
                j.morphism_count()
            )));
        }
        for v in &values {
            v.check_laws()?;
        }
        let mut fixed = Vec::with_capacity(action.len());
        for (f, a) in action.into_iter().enumerate() {
            let (s, d) = (&values[j.src(f)], &values[j.dst(f)]);
            if **a.domain() != **s || **a.codomain() != **d {
                return Err(Error::InvalidDiagram(format!(
                    "action of {} has the wrong endpoints",
                    j.morphism_name(f)
                )));
            }
            let a = a.retarget(s.clone(), d.clone());
            a.check().map_err(|e| {
                Error::InvalidDiagram(format!("action of {}: {e}", j.morphism_name(f)))
            })?;
            fixed.push(a);
        }
        let w = CatValued {
            index,
            values,
            action: fixed,
        };
        w.check_functorial()?;
        Ok(w)
    }

    fn check_functorial(&self) -> Result<()> {
        let j = &*self.index;
        for x in 0..j.object_count() {
            if !self.action[j.identity(x)].is_identity() {
                return Err(Error::InvalidDiagram(format!(
                    "identity of {} does not act as the identity",
                    j.object_name(x)
                )));
            }
        }
        for (&(g, f), &h) in j.composition_table() {
            if self.action[f].then(&self.action[g])? != self.action[h] {
                return Err(Error::InvalidDiagram(format!(
                    "action does not preserve {}∘{}",
                    j.morphism_name(g),
                    j.morphism_name(f)
                )));
            }
        }
        Ok(())
    }

    /// The constant functor at `value`.
    pub fn constant(index: &Arc<FinCat>, value: &Arc<FinCat>) -> Self {
        let id = FinFunctor::identity(value);
        CatValued {
            index: index.clone(),
            values: vec![value.clone(); index.object_count()],
            action: vec![id; index.morphism_count()],
        }
    }

    pub fn index(&self) -> &Arc<FinCat> {
        &self.index
    }

    pub fn value(&self, j: usize) -> &Arc<FinCat> {
        &self.values[j]
    }

    pub fn values(&self) -> &[Arc<FinCat>] {
        &self.values
    }

    pub fn action(&self, f: usize) -> &FinFunctor {
        &self.action[f]
    }

    pub fn actions(&self) -> &[FinFunctor] {
        &self.action
    }

    /// Precomposition `W ∘ K` with a functor `K: I → J`.
    pub fn reindex(&self, k: &FinFunctor) -> Result<Self> {
        if **k.codomain() != *self.index {
            return Err(Error::TypeMismatch(
                "reindexing functor does not land in the index".into(),
            ));
        }
        let values = k.object_map().iter().map(|&x| self.values[x].clone()).collect();
        let action = k.morphism_map().iter().map(|&f| self.action[f].clone()).collect();
        Ok(CatValued {
            index: k.domain().clone(),
            values,
            action,
        })
    }
}
