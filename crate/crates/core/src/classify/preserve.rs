use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::fincat::{classify_morphism, FinFunctor, MorphismClassification};
use crate::limits::{strict_limit, Cone, ConeCategory, LimitKind};
use crate::weights::{classify_weight_map, CatWeight, DiagramMap, PointwiseClassification};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PreservationMode {
    Equivalence,
    Surjective,
    Injective,
}

impl fmt::Display for PreservationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PreservationMode::Equivalence => "equivalence",
            PreservationMode::Surjective => "surjective",
            PreservationMode::Injective => "injective",
        })
    }
}

impl std::str::FromStr for PreservationMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "equivalence" => Ok(PreservationMode::Equivalence),
            "surjective" => Ok(PreservationMode::Surjective),
            "injective" => Ok(PreservationMode::Injective),
            _ => Err(Error::Parse(format!("unknown preservation mode {s:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct PreservationReport {
    pub mode: PreservationMode,
    pub pointwise: PointwiseClassification,
    pub source_limit: ConeCategory,
    pub target_limit: ConeCategory,
    /// `{W, f}`
    pub functor: FinFunctor,
    pub classification: MorphismClassification,
    /// whether `{W, f}` is of the kind the mode demands
    pub holds: bool,
}

/// `{W, f}: {W, D} → {W, E}`, postcomposition with `f`.
pub fn limit_map(
    f: &DiagramMap,
    source: &ConeCategory,
    target: &ConeCategory,
) -> Result<FinFunctor> {
    if source.kind != LimitKind::Strict || target.kind != LimitKind::Strict {
        return Err(Error::TypeMismatch("limit maps are computed between strict limits".into()));
    }
    let j = f.source().index();
    let keys: HashMap<Vec<usize>, usize> = target
        .cones
        .iter()
        .enumerate()
        .map(|(i, c)| (c.key(), i))
        .collect();
    let objects = source
        .cones
        .iter()
        .map(|c| {
            let legs = c
                .legs
                .iter()
                .zip(f.components())
                .map(|(l, fj)| l.then(fj))
                .collect::<Result<Vec<_>>>()?;
            let cells = (0..j.morphism_count())
                .map(|m| {
                    let fk = f.component(j.dst(m));
                    c.cells[m].iter().map(|&x| fk.morphism(x)).collect()
                })
                .collect();
            let cone = Cone { legs, cells };
            keys.get(&cone.key())
                .copied()
                .ok_or_else(|| Error::TypeMismatch("image cone is missing from the target limit".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let morphisms = source
        .modifications
        .iter()
        .map(|m| {
            let comps: Vec<Vec<usize>> = m
                .components
                .iter()
                .zip(f.components())
                .map(|(cs, fj)| cs.iter().map(|&c| fj.morphism(c)).collect())
                .collect();
            target
                .find_modification(objects[m.source], objects[m.target], &comps)
                .ok_or_else(|| Error::TypeMismatch("image modification is missing".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    FinFunctor::new(source.category.clone(), target.category.clone(), objects, morphisms)
}

/// Checks one instance of preservation of pointwise equivalences.
pub fn check_equivalence_preservation(
    w: &CatWeight,
    f: &DiagramMap,
    mode: PreservationMode,
    budget: &mut Budget,
) -> Result<PreservationReport> {
    let pointwise = classify_weight_map(f, None)?;
    let hypothesis = match mode {
        PreservationMode::Equivalence => pointwise.equivalence,
        PreservationMode::Surjective => pointwise.surjective_equivalence,
        PreservationMode::Injective => pointwise.injective_equivalence,
    };
    if !hypothesis {
        let bad = pointwise
            .points
            .iter()
            .position(|c| match mode {
                PreservationMode::Equivalence => !c.equivalence,
                PreservationMode::Surjective => !c.surjective_equivalence,
                PreservationMode::Injective => !c.injective_equivalence,
            })
            .unwrap_or(0);
        return Err(Error::ModeMismatch {
            mode: mode.to_string(),
            detail: format!(
                "component at {} is not a pointwise {mode}",
                f.source().index().object_name(bad)
            ),
        });
    }
    let source_limit = strict_limit(w, f.source(), budget)?;
    let target_limit = strict_limit(w, f.target(), budget)?;
    let functor = limit_map(f, &source_limit, &target_limit)?;
    let classification = classify_morphism(&functor);
    let holds = match mode {
        PreservationMode::Equivalence => classification.equivalence,
        PreservationMode::Surjective => classification.surjective_equivalence,
        PreservationMode::Injective => classification.injective_equivalence,
    };
    Ok(PreservationReport {
        mode,
        pointwise,
        source_limit,
        target_limit,
        functor,
        classification,
        holds,
    })
}
