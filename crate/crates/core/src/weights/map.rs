use crate::error::{Error, Result};
use crate::fincat::{classify_morphism, FinFunctor, MorphismClassification};

use super::CatValued;

/// A strictly natural map between Cat-valued functors on the same index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightMap {
    source: CatValued,
    target: CatValued,
    components: Vec<FinFunctor>,
}

/// Pointwise maps of diagrams are the same data.
pub type DiagramMap = WeightMap;

impl WeightMap {
    pub fn new(source: CatValued, target: CatValued, components: Vec<FinFunctor>) -> Result<Self> {
        if **source.index() != **target.index() {
            return Err(Error::TypeMismatch("weights have different index categories".into()));
        }
        let j = source.index().clone();
        if components.len() != j.object_count() {
            return Err(Error::InvalidTransformation(
                "one component per index object is required".into(),
            ));
        }
        let mut fixed = Vec::with_capacity(components.len());
        for (x, c) in components.into_iter().enumerate() {
            if **c.domain() != **source.value(x) || **c.codomain() != **target.value(x) {
                return Err(Error::InvalidTransformation(format!(
                    "component at {} has the wrong endpoints",
                    j.object_name(x)
                )));
            }
            let c = c.retarget(source.value(x).clone(), target.value(x).clone());
            c.check()?;
            fixed.push(c);
        }
        for f in 0..j.morphism_count() {
            let (s, d) = (j.src(f), j.dst(f));
            let left = fixed[s].then(target.action(f))?;
            let right = source.action(f).then(&fixed[d])?;
            if left != right {
                return Err(Error::InvalidTransformation(format!(
                    "naturality fails at {}",
                    j.morphism_name(f)
                )));
            }
        }
        Ok(WeightMap {
            source,
            target,
            components: fixed,
        })
    }

    pub fn identity(w: &CatValued) -> Self {
        let components = w.values().iter().map(FinFunctor::identity).collect();
        WeightMap {
            source: w.clone(),
            target: w.clone(),
            components,
        }
    }

    pub fn source(&self) -> &CatValued {
        &self.source
    }

    pub fn target(&self) -> &CatValued {
        &self.target
    }

    pub fn component(&self, j: usize) -> &FinFunctor {
        &self.components[j]
    }

    pub fn components(&self) -> &[FinFunctor] {
        &self.components
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &WeightMap) -> Result<WeightMap> {
        if self.target != next.source {
            return Err(Error::TypeMismatch("weight maps are not composable".into()));
        }
        let components = self
            .components
            .iter()
            .zip(&next.components)
            .map(|(a, b)| a.then(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(WeightMap {
            source: self.source.clone(),
            target: next.target.clone(),
            components,
        })
    }
}

/// Pointwise classification of a weight map.
#[derive(Clone, Debug)]
pub struct PointwiseClassification {
    pub points: Vec<MorphismClassification>,
    pub objective: bool,
    pub fully_faithful: bool,
    pub equivalence: bool,
    pub surjective_equivalence: bool,
    pub injective_equivalence: bool,
    /// sections `s_j` with `m_j ∘ s_j = 1`: the supplied ones if any were
    /// given, otherwise the ones found by classification
    pub sections: Option<Vec<FinFunctor>>,
}

/// Classifies each component; supplied sections are verified exactly.
pub fn classify_weight_map(
    m: &WeightMap,
    sections: Option<&[FinFunctor]>,
) -> Result<PointwiseClassification> {
    let points: Vec<MorphismClassification> = m.components.iter().map(classify_morphism).collect();
    let all = |p: fn(&MorphismClassification) -> bool| points.iter().all(p);
    let objective = all(|c| c.objective);
    let fully_faithful = all(|c| c.fully_faithful);
    let equivalence = all(|c| c.equivalence);
    let surjective_equivalence = all(|c| c.surjective_equivalence);
    let injective_equivalence = all(|c| c.injective_equivalence);
    let sections = match sections {
        Some(s) => {
            verify_sections(m, s)?;
            Some(s.to_vec())
        }
        None if surjective_equivalence => {
            Some(points.iter().map(|c| c.section.clone().expect("section")).collect())
        }
        None => None,
    };
    Ok(PointwiseClassification {
        points,
        objective,
        fully_faithful,
        equivalence,
        surjective_equivalence,
        injective_equivalence,
        sections,
    })
}

/// Checks `m_j ∘ s_j = 1` for every index object.
pub fn verify_sections(m: &WeightMap, sections: &[FinFunctor]) -> Result<()> {
    let j = m.source.index();
    if sections.len() != j.object_count() {
        return Err(Error::InvalidSection(format!(
            "{} sections given for {} index objects",
            sections.len(),
            j.object_count()
        )));
    }
    for (x, s) in sections.iter().enumerate() {
        s.check().map_err(|e| Error::InvalidSection(e.to_string()))?;
        let ok = s
            .then(&m.components[x])
            .map(|c| c.is_identity() && **c.domain() == **m.target.value(x))
            .unwrap_or(false);
        if !ok {
            return Err(Error::InvalidSection(format!(
                "section at {} does not compose to the identity",
                j.object_name(x)
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::fincat::build;
    use crate::weights::{named_weight, WeightName};

    #[test]
    fn identity_map_has_every_flag() {
        let w = named_weight(&WeightName::Comma);
        let c = classify_weight_map(&WeightMap::identity(&w), None).unwrap();
        assert!(c.objective && c.fully_faithful && c.surjective_equivalence && c.injective_equivalence);
    }

    #[test]
    fn collapsing_the_arrow_is_not_objective() {
        let w = named_weight(&WeightName::Inserter);
        let one = Arc::new(build::terminal());
        let v = CatValued::constant(w.index(), &one);
        let comps = w.values().iter().map(|c| FinFunctor::constant(c, &one, 0)).collect();
        let m = WeightMap::new(w, v, comps).unwrap();
        let c = classify_weight_map(&m, None).unwrap();
        assert!(!c.objective);
        assert!(!c.points[1].objective);
    }

    #[test]
    fn indiscrete_collapse_with_sections() {
        let j = Arc::new(build::discrete_n(2));
        let i2 = Arc::new(build::indiscrete(2));
        let one = Arc::new(build::terminal());
        let m = WeightMap::new(
            CatValued::constant(&j, &i2),
            CatValued::constant(&j, &one),
            vec![FinFunctor::constant(&i2, &one, 0); 2],
        )
        .unwrap();
        let good = vec![FinFunctor::constant(&one, &i2, 1), FinFunctor::constant(&one, &i2, 0)];
        let c = classify_weight_map(&m, Some(&good)).unwrap();
        assert!(c.surjective_equivalence);
        let bad = vec![FinFunctor::identity(&one); 1];
        assert!(matches!(
            classify_weight_map(&m, Some(&bad)),
            Err(Error::InvalidSection(_))
        ));
    }
}
