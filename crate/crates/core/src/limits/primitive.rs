use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{build, full_subcategory, FinCat, FinFunctor, FinNatTrans, Morphism};

/// Arguments of the three primitive pie limits.
#[derive(Clone, Debug)]
pub enum PrimitiveArgs {
    Product(Vec<Arc<FinCat>>),
    /// Parallel functors `F, G: A → B`.
    Inserter(FinFunctor, FinFunctor),
    /// Parallel transformations `φ, ψ: F ⇒ G`.
    Equifier(FinNatTrans, FinNatTrans),
}

/// A primitive limit with its projections. For an inserter `projections`
/// is the single functor to `A` and `cell` the universal `F∘P ⇒ G∘P`;
/// for an equifier `projections` is the inclusion into `A`.
#[derive(Clone, Debug)]
pub struct PrimitiveLimit {
    pub category: Arc<FinCat>,
    pub projections: Vec<FinFunctor>,
    pub cell: Option<FinNatTrans>,
}

pub fn primitive_pie(args: &PrimitiveArgs) -> Result<PrimitiveLimit> {
    match args {
        PrimitiveArgs::Product(factors) => {
            let category = Arc::new(build::product(factors));
            let projections = build::projections(&category, factors);
            Ok(PrimitiveLimit {
                category,
                projections,
                cell: None,
            })
        }
        PrimitiveArgs::Inserter(f, g) => inserter(f, g),
        PrimitiveArgs::Equifier(phi, psi) => equifier(phi, psi),
    }
}

/// Objects `(a, φ: Fa → Ga)`; morphisms `h: a → a'` with `Gh∘φ = φ'∘Fh`,
/// named `h[φ|φ']`.
pub fn inserter(f: &FinFunctor, g: &FinFunctor) -> Result<PrimitiveLimit> {
    if **f.domain() != **g.domain() || **f.codomain() != **g.codomain() {
        return Err(Error::TypeMismatch("inserter needs parallel functors".into()));
    }
    let (a, b) = (f.domain().clone(), &**f.codomain());
    let mut objects = Vec::new();
    let mut points: Vec<(usize, usize)> = Vec::new();
    let mut by_object: Vec<Vec<usize>> = vec![Vec::new(); a.object_count()];
    for x in 0..a.object_count() {
        for &phi in b.hom(f.object(x), g.object(x)) {
            by_object[x].push(points.len());
            objects.push(format!("({},{})", a.object_name(x), b.morphism_name(phi)));
            points.push((x, phi));
        }
    }
    let mut morphisms = Vec::new();
    let mut under = Vec::new();
    let mut index: HashMap<(usize, usize, usize), usize> = HashMap::new();
    for (p, &(x, phi)) in points.iter().enumerate() {
        for (q, &(y, psi)) in points.iter().enumerate() {
            for &h in a.hom(x, y) {
                if b.comp(g.morphism(h), phi) == b.comp(psi, f.morphism(h)) {
                    index.insert((p, q, h), morphisms.len());
                    morphisms.push(Morphism {
                        id: format!("{}[{}|{}]", a.morphism_name(h), b.morphism_name(phi), b.morphism_name(psi)),
                        src: p,
                        dst: q,
                    });
                    under.push(h);
                }
            }
        }
    }
    let identities = (0..points.len())
        .map(|p| index[&(p, p, a.identity(points[p].0))])
        .collect();
    let mut composition = HashMap::new();
    for (&(p, q, h), &m) in &index {
        for (r, _) in points.iter().enumerate() {
            for &k in a.hom(points[q].0, points[r].0) {
                if let Some(&n) = index.get(&(q, r, k)) {
                    composition.insert((n, m), index[&(p, r, a.comp(k, h))]);
                }
            }
        }
    }
    let category = Arc::new(FinCat::from_parts(objects, morphisms, identities, composition));
    let projection = FinFunctor::new_unchecked(
        category.clone(),
        a.clone(),
        points.iter().map(|&(x, _)| x).collect(),
        under,
    );
    let cell = FinNatTrans::new_unchecked(
        projection.then(f)?,
        projection.then(g)?,
        points.iter().map(|&(_, phi)| phi).collect(),
    );
    Ok(PrimitiveLimit {
        category,
        projections: vec![projection],
        cell: Some(cell),
    })
}

/// The full subcategory of `A` on objects where `φ_a = ψ_a`.
pub fn equifier(phi: &FinNatTrans, psi: &FinNatTrans) -> Result<PrimitiveLimit> {
    if phi.source() != psi.source() || phi.target() != psi.target() {
        return Err(Error::TypeMismatch("equifier needs parallel transformations".into()));
    }
    let a = phi.source().domain();
    let keep: Vec<usize> = (0..a.object_count())
        .filter(|&x| phi.component(x) == psi.component(x))
        .collect();
    let (category, inclusion) = full_subcategory(a, &keep);
    Ok(PrimitiveLimit {
        category,
        projections: vec![inclusion],
        cell: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_product_is_terminal() {
        let l = primitive_pie(&PrimitiveArgs::Product(Vec::new())).unwrap();
        assert_eq!(l.category.object_count(), 1);
        assert_eq!(l.category.morphism_count(), 1);
    }

    #[test]
    fn inserter_over_a_point_lists_morphisms() {
        let one = Arc::new(build::terminal());
        let b = Arc::new(build::ordinal(3));
        let f = FinFunctor::constant(&one, &b, 0);
        let g = FinFunctor::constant(&one, &b, 2);
        let l = inserter(&f, &g).unwrap();
        l.category.check_laws().unwrap();
        assert_eq!(l.category.object_count(), b.hom(0, 2).len());
        assert_eq!(l.category.morphism_count(), l.category.object_count());
        l.projections[0].check().unwrap();
        l.cell.unwrap().check().unwrap();
    }

    #[test]
    fn inserter_of_identities_is_endomorphism_category() {
        let z = Arc::new(build::cyclic_group(2));
        let id = FinFunctor::identity(&z);
        let l = inserter(&id, &id).unwrap();
        l.category.check_laws().unwrap();
        // objects are g ∈ ℤ/2, morphisms h with hg = gh (all of them)
        assert_eq!(l.category.object_count(), 2);
        assert_eq!(l.category.morphism_count(), 4);
    }

    #[test]
    fn equifier_of_equal_cells_is_everything() {
        let a = Arc::new(build::ordinal(2));
        let t = FinNatTrans::identity(&FinFunctor::identity(&a));
        let l = equifier(&t, &t).unwrap();
        assert_eq!(*l.category, *a);
    }

    #[test]
    fn mismatched_inserter_is_a_type_error() {
        let a = Arc::new(build::ordinal(2));
        let b = Arc::new(build::ordinal(3));
        let f = FinFunctor::identity(&a);
        let g = FinFunctor::constant(&a, &b, 0);
        assert!(matches!(inserter(&f, &g), Err(Error::TypeMismatch(_))));
    }
}
