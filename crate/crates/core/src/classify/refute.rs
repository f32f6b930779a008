use std::sync::Arc;

use crate::budget::Budget;
use crate::corpus::{catalogue, for_each_diagram, GRAMMAR_VERSION};
use crate::error::Result;
use crate::fincat::FinCat;
use crate::limits::{comparison_inclusion, pseudo_limit, strict_limit, Cone};
use crate::weights::{CatWeight, Diagram};

/// A diagram with a pseudocone that is isomorphic to no strict cone.
#[derive(Clone, Debug)]
pub struct Witness {
    pub diagram: Diagram,
    pub pseudocone: Cone,
    pub property: String,
    /// number of strict cones that were compared against the pseudocone
    pub strict_cones: usize,
}

impl Witness {
    /// Recomputes both limits and confirms that the stored pseudocone is
    /// still isomorphic to no strict cone.
    pub fn replay(&self, w: &CatWeight, budget: &mut Budget) -> Result<bool> {
        let s = strict_limit(w, &self.diagram, budget)?;
        let p = pseudo_limit(w, &self.diagram, budget)?;
        let Some(x) = p.find_cone(&self.pseudocone) else {
            return Ok(false);
        };
        let inc = comparison_inclusion(&s, &p)?;
        Ok(!inc.object_map().iter().any(|&y| p.category.find_iso(y, x).is_some()))
    }
}

/// The outcome of a bounded refutation search. `witness = None` means the
/// search was inconclusive; it never certifies semiflexibility.
#[derive(Clone, Debug)]
pub struct RefuterOutcome {
    pub witness: Option<Witness>,
    pub diagrams_examined: usize,
    pub budget_exhausted: bool,
    pub grammar_level: u8,
    pub grammar_version: &'static str,
}

/// Searches diagrams with values in the catalogue at `level`, in canonical
/// order, for a pseudocone that is not isomorphic to any strict cone.
/// Running out of `budget` ends the search inconclusively.
pub fn refute_semiflexible(w: &CatWeight, level: u8, budget: &mut Budget) -> RefuterOutcome {
    let values: Vec<Arc<FinCat>> = catalogue(level).into_iter().map(|(_, c)| c).collect();
    let mut examined = 0;
    let mut witness = None;
    let mut exhausted = false;
    let mut enumeration = Budget::new(budget.remaining());
    let run = for_each_diagram(w.index(), &values, &mut enumeration, |d| {
        examined += 1;
        match search_instance(w, &d, budget) {
            Ok(found) => {
                witness = found;
                Ok(witness.is_none())
            }
            Err(e) if e.is_budget() => {
                exhausted = true;
                Ok(false)
            }
            Err(e) => Err(e),
        }
    });
    if run.is_err() {
        exhausted = true;
    }
    RefuterOutcome {
        witness,
        diagrams_examined: examined,
        budget_exhausted: exhausted,
        grammar_level: level,
        grammar_version: GRAMMAR_VERSION,
    }
}

fn search_instance(w: &CatWeight, d: &Diagram, budget: &mut Budget) -> Result<Option<Witness>> {
    let s = strict_limit(w, d, budget)?;
    let p = pseudo_limit(w, d, budget)?;
    let inc = comparison_inclusion(&s, &p)?;
    let images = inc.object_map();
    for x in 0..p.category.object_count() {
        if !images.iter().any(|&y| p.category.find_iso(y, x).is_some()) {
            return Ok(Some(Witness {
                diagram: d.clone(),
                pseudocone: p.cones[x].clone(),
                property: "no strict cone is isomorphic to this pseudocone".into(),
                strict_cones: s.cones.len(),
            }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::build;
    use crate::weights::{named_weight, representable_weight, WeightName};

    #[test]
    fn equalizer_is_refuted() {
        let w = named_weight(&WeightName::Equalizer);
        let mut budget = Budget::default();
        let out = refute_semiflexible(&w, 1, &mut budget);
        let wit = out.witness.expect("witness");
        assert_eq!(wit.strict_cones, 0);
        assert!(wit.replay(&w, &mut Budget::default()).unwrap());
    }

    #[test]
    fn pie_weights_are_not_refuted() {
        let mut budget = Budget::default();
        let p2 = named_weight(&WeightName::Product(2));
        let out = refute_semiflexible(&p2, 2, &mut budget);
        assert!(out.witness.is_none() && !out.budget_exhausted);
        let r = representable_weight(&std::sync::Arc::new(build::parallel_pair()), 0);
        let out = refute_semiflexible(&r, 1, &mut budget);
        assert!(out.witness.is_none() && !out.budget_exhausted);
    }

    #[test]
    fn tiny_budget_is_inconclusive() {
        let w = named_weight(&WeightName::Equalizer);
        let out = refute_semiflexible(&w, 1, &mut Budget::new(3));
        assert!(out.witness.is_none() && out.budget_exhausted);
    }
}
