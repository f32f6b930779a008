use std::sync::Arc;

use super::{FinCat, FinFunctor, FinNatTrans};

/// A pseudo-inverse `G` of `F` with invertible `unit: 1 ⇒ G∘F` and
/// `counit: F∘G ⇒ 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoInverse {
    pub inverse: FinFunctor,
    pub unit: FinNatTrans,
    pub counit: FinNatTrans,
}

/// Exact classification of a functor by finite search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismClassification {
    pub faithful: bool,
    pub full: bool,
    pub fully_faithful: bool,
    /// bijective on objects
    pub objective: bool,
    pub surjective_on_objects: bool,
    pub injective_on_objects: bool,
    pub essentially_surjective: bool,
    pub equivalence: bool,
    pub surjective_equivalence: bool,
    pub injective_equivalence: bool,
    pub isomorphism: bool,
    pub pseudo_inverse: Option<PseudoInverse>,
    /// `F ∘ section = 1`
    pub section: Option<FinFunctor>,
    /// `retraction ∘ F = 1`
    pub retraction: Option<FinFunctor>,
    pub inverse: Option<FinFunctor>,
}

pub fn is_fully_faithful(f: &FinFunctor) -> bool {
    let (full, faithful) = full_and_faithful(f);
    full && faithful
}

fn full_and_faithful(f: &FinFunctor) -> (bool, bool) {
    let (a, b) = (&**f.domain(), &**f.codomain());
    let mut full = true;
    let mut faithful = true;
    let mut seen = vec![false; b.morphism_count()];
    for x in 0..a.object_count() {
        for y in 0..a.object_count() {
            let target = b.hom(f.object(x), f.object(y));
            let mut hit = 0;
            for &h in a.hom(x, y) {
                let img = f.morphism(h);
                if seen[img] {
                    faithful = false;
                } else {
                    seen[img] = true;
                    hit += 1;
                }
            }
            if hit < target.len() {
                full = false;
            }
            for &h in a.hom(x, y) {
                seen[f.morphism(h)] = false;
            }
        }
    }
    (full, faithful)
}

/// For a fully faithful `f`, the unique `h: x → y` with `f(h) = g`.
pub fn ff_preimage(f: &FinFunctor, x: usize, y: usize, g: usize) -> Option<usize> {
    f.domain()
        .hom(x, y)
        .iter()
        .copied()
        .find(|&h| f.morphism(h) == g)
}

/// Builds a pseudo-inverse of a fully faithful, essentially surjective
/// functor. Each object `b` is sent to the first `a` with `F a = b` when
/// one exists, and otherwise to the first `a` with `F a ≅ b`; hence the
/// result is a strict section when `F` is surjective on objects and a
/// strict retraction when `F` is injective on objects.
pub fn pseudo_inverse(f: &FinFunctor) -> Option<PseudoInverse> {
    let (a, b) = (f.domain(), f.codomain());
    if !is_fully_faithful(f) {
        return None;
    }
    let mut choice = Vec::with_capacity(b.object_count());
    // iso F(choice[y]) → y
    let mut iso = Vec::with_capacity(b.object_count());
    for y in 0..b.object_count() {
        if let Some(x) = (0..a.object_count()).find(|&x| f.object(x) == y) {
            choice.push(x);
            iso.push(b.identity(y));
            continue;
        }
        let found = (0..a.object_count()).find_map(|x| b.find_iso(f.object(x), y).map(|i| (x, i)));
        let (x, i) = found?;
        choice.push(x);
        iso.push(i);
    }
    let mut morphisms = Vec::with_capacity(b.morphism_count());
    for g in 0..b.morphism_count() {
        let (s, d) = (b.src(g), b.dst(g));
        let conj = b.comp(b.inverse(iso[d]).expect("chosen iso"), b.comp(g, iso[s]));
        morphisms.push(ff_preimage(f, choice[s], choice[d], conj)?);
    }
    let inverse = FinFunctor::new_unchecked(b.clone(), a.clone(), choice.clone(), morphisms);
    let fg = inverse.then(f).ok()?;
    let gf = f.then(&inverse).ok()?;
    let counit = FinNatTrans::new_unchecked(fg, FinFunctor::identity(b), iso.clone());
    let unit_components = (0..a.object_count())
        .map(|x| {
            let y = f.object(x);
            // x → G F x is the preimage of iso[F x]^{-1}: F x → F G F x
            let inv = b.inverse(iso[y]).expect("chosen iso");
            ff_preimage(f, x, choice[y], inv)
        })
        .collect::<Option<Vec<_>>>()?;
    let unit = FinNatTrans::new_unchecked(FinFunctor::identity(a), gf, unit_components);
    Some(PseudoInverse {
        inverse,
        unit,
        counit,
    })
}

pub fn classify_morphism(f: &FinFunctor) -> MorphismClassification {
    let (a, b) = (&**f.domain(), &**f.codomain());
    let (full, faithful) = full_and_faithful(f);
    let fully_faithful = full && faithful;
    let mut hits = vec![0usize; b.object_count()];
    for &y in f.object_map() {
        hits[y] += 1;
    }
    let surjective_on_objects = hits.iter().all(|&h| h >= 1);
    let injective_on_objects = hits.iter().all(|&h| h <= 1);
    let objective = surjective_on_objects && injective_on_objects;
    let essentially_surjective = (0..b.object_count()).all(|y| {
        hits[y] > 0 || (0..a.object_count()).any(|x| b.find_iso(f.object(x), y).is_some())
    });
    let equivalence = fully_faithful && essentially_surjective;
    let surjective_equivalence = fully_faithful && surjective_on_objects;
    let injective_equivalence = equivalence && injective_on_objects;
    let isomorphism = fully_faithful && objective;
    let pseudo = if equivalence { pseudo_inverse(f) } else { None };
    let section = pseudo
        .as_ref()
        .filter(|_| surjective_equivalence)
        .map(|p| p.inverse.clone());
    let retraction = pseudo
        .as_ref()
        .filter(|_| injective_equivalence)
        .map(|p| p.inverse.clone());
    let inverse = pseudo
        .as_ref()
        .filter(|_| isomorphism)
        .map(|p| p.inverse.clone());
    MorphismClassification {
        faithful,
        full,
        fully_faithful,
        objective,
        surjective_on_objects,
        injective_on_objects,
        essentially_surjective,
        equivalence,
        surjective_equivalence,
        injective_equivalence,
        isomorphism,
        pseudo_inverse: pseudo,
        section,
        retraction,
        inverse,
    }
}

impl MorphismClassification {
    /// Re-verifies every witness by direct composition.
    pub fn verify_witnesses(&self, f: &FinFunctor) -> bool {
        let id_a = FinFunctor::identity(f.domain());
        let id_b = FinFunctor::identity(f.codomain());
        if let Some(p) = &self.pseudo_inverse {
            let ok = p.inverse.check().is_ok()
                && p.unit.check().is_ok()
                && p.counit.check().is_ok()
                && p.unit.is_invertible()
                && p.counit.is_invertible()
                && p.unit.source() == &id_a
                && p.counit.target() == &id_b
                && p.unit.target() == &f.then(&p.inverse).unwrap()
                && p.counit.source() == &p.inverse.then(f).unwrap();
            if !ok {
                return false;
            }
        }
        if let Some(s) = &self.section {
            if s.then(f).map(|c| c != id_b).unwrap_or(true) {
                return false;
            }
        }
        if let Some(r) = &self.retraction {
            if f.then(r).map(|c| c != id_a).unwrap_or(true) {
                return false;
            }
        }
        if let Some(i) = &self.inverse {
            if i.then(f).map(|c| c != id_b).unwrap_or(true)
                || f.then(i).map(|c| c != id_a).unwrap_or(true)
            {
                return false;
            }
        }
        true
    }
}

/// The skeleton on the first object of each isomorphism class, with the
/// retraction onto it; returned as (skeleton, inclusion, retraction).
pub fn skeleton(c: &Arc<FinCat>) -> (Arc<FinCat>, FinFunctor, FinFunctor) {
    let mut rep = vec![usize::MAX; c.object_count()];
    let mut reps = Vec::new();
    for x in 0..c.object_count() {
        if rep[x] != usize::MAX {
            continue;
        }
        rep[x] = reps.len();
        for y in x + 1..c.object_count() {
            if rep[y] == usize::MAX && c.find_iso(x, y).is_some() {
                rep[y] = reps.len();
            }
        }
        reps.push(x);
    }
    let (sk, incl) = super::full_subcategory(c, &reps);
    let retraction = pseudo_inverse(&incl)
        .expect("inclusion of a skeleton is an equivalence")
        .inverse;
    (sk, incl, retraction)
}
