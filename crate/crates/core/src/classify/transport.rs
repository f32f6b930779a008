use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::fincat::{classify_morphism, ff_preimage, FinFunctor};
use crate::limits::{compile_pie, strict_limit, CompiledPie, ConeCategory, PieNode, PiePoint};
use crate::weights::{is_pie_weight, verify_sections, CatWeight, DiagramMap};

use super::limit_map;

/// A section of `{W, f}` built by lifting through the compiled expression.
#[derive(Clone, Debug)]
pub struct Transport {
    pub compiled: CompiledPie,
    pub source_limit: ConeCategory,
    pub target_limit: ConeCategory,
    /// `{W, f}: {W, D} → {W, E}`
    pub limit_map: FinFunctor,
    /// `{W, E} → {W, D}`
    pub section: FinFunctor,
}

impl Transport {
    /// `{W, f} ∘ section = 1`, checked by composition.
    pub fn is_exact(&self) -> bool {
        self.section
            .then(&self.limit_map)
            .map(|c| c.is_identity())
            .unwrap_or(false)
    }
}

/// Transports pointwise sections `s_j` of a pointwise surjective
/// equivalence `f: D → E` to a section of `{W, f}`.
///
/// Product factors are lifted by the sections, and each inserted cell by
/// its unique preimage under the fully faithful component of `f` between
/// the lifted legs. Morphisms are lifted factorwise by the sections.
pub fn transport_splitting(
    w: &CatWeight,
    f: &DiagramMap,
    sections: &[FinFunctor],
    budget: &mut Budget,
) -> Result<Transport> {
    let (pie, cert) = is_pie_weight(w);
    if !pie {
        return Err(Error::NotPie);
    }
    verify_sections(f, sections)?;
    for (j, c) in f.components().iter().enumerate() {
        if !classify_morphism(c).fully_faithful {
            return Err(Error::InvalidSection(format!(
                "component at {} is not fully faithful",
                f.source().index().object_name(j)
            )));
        }
    }
    let compiled = compile_pie(w, &cert)?;
    let (d, e) = (f.source(), f.target());
    let source_limit = strict_limit(w, d, budget)?;
    let target_limit = strict_limit(w, e, budget)?;
    let limit = limit_map(f, &source_limit, &target_limit)?;
    let expr = &compiled.expr;

    let mut objects = Vec::with_capacity(target_limit.cones.len());
    for cone in &target_limit.cones {
        let point = compiled.point_of_cone(cone);
        let mut lifted = PiePoint {
            factors: point
                .factors
                .iter()
                .zip(&expr.factors)
                .map(|(&b, &j)| sections[j].object(b))
                .collect(),
            cells: Vec::with_capacity(point.cells.len()),
        };
        for node in &expr.nodes {
            match node {
                PieNode::Inserter { source, target } => {
                    let k = expr.index.dst(source.morphism);
                    let x = expr.leg_value(source, &lifted, d);
                    let y = expr.leg_value(target, &lifted, d);
                    let cell = point.cells[lifted.cells.len()];
                    let pre = ff_preimage(f.component(k), x, y, cell).ok_or_else(|| {
                        Error::InvalidSection("inserted cell has no preimage".into())
                    })?;
                    lifted.cells.push(pre);
                }
                PieNode::Equifier { left, right } => {
                    if expr.cell_component(left, &lifted, d) != expr.cell_component(right, &lifted, d) {
                        return Err(Error::InvalidSection(
                            "lifted point violates an equifier".into(),
                        ));
                    }
                }
            }
        }
        let lifted_cone = compiled.cone_of_point(&lifted, w, d)?;
        let x = source_limit
            .find_cone(&lifted_cone)
            .ok_or_else(|| Error::InvalidSection("lifted cone is not a strict cone".into()))?;
        objects.push(x);
    }
    let mut morphisms = Vec::with_capacity(target_limit.modifications.len());
    for m in &target_limit.modifications {
        let arrow: Vec<usize> = compiled
            .initials
            .iter()
            .map(|&(j, x)| sections[j].morphism(m.components[j][x]))
            .collect();
        let comps = compiled.modification_of_arrow(&arrow, w, d);
        let h = source_limit
            .find_modification(objects[m.source], objects[m.target], &comps)
            .ok_or_else(|| Error::InvalidSection("lifted modification is missing".into()))?;
        morphisms.push(h);
    }
    let section = FinFunctor::new(
        target_limit.category.clone(),
        source_limit.category.clone(),
        objects,
        morphisms,
    )?;
    Ok(Transport {
        compiled,
        source_limit,
        target_limit,
        limit_map: limit,
        section,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::corpus::{thicken, thickening_sections};
    use crate::fincat::build;
    use crate::weights::{named_weight, CatValued, WeightName};

    #[test]
    fn identity_transports_to_identity() {
        let w = named_weight(&WeightName::Inserter);
        let a = Arc::new(build::arrow());
        let d = CatValued::constant(w.index(), &a);
        let f = DiagramMap::identity(&d);
        let ids: Vec<FinFunctor> = d.values().iter().map(FinFunctor::identity).collect();
        let t = transport_splitting(&w, &f, &ids, &mut Budget::default()).unwrap();
        assert!(t.section.is_identity());
    }

    #[test]
    fn comma_projection_transports_exactly() {
        let w = named_weight(&WeightName::Comma);
        let c = Arc::new(build::ordinal(2));
        let d = CatValued::constant(w.index(), &c);
        let th = thicken(&d).unwrap();
        let secs = thickening_sections(&d, &th.thick, |j| j % 2);
        let t = transport_splitting(&w, &th.projection, &secs, &mut Budget::default()).unwrap();
        assert!(t.is_exact());
    }

    #[test]
    fn non_pie_weights_are_rejected() {
        let w = named_weight(&WeightName::Equalizer);
        let one = Arc::new(build::terminal());
        let d = CatValued::constant(w.index(), &one);
        let f = DiagramMap::identity(&d);
        let ids = vec![FinFunctor::identity(&one); 2];
        assert!(matches!(
            transport_splitting(&w, &f, &ids, &mut Budget::default()),
            Err(Error::NotPie)
        ));
    }
}
