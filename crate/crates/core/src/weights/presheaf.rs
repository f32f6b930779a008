use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fincat::{FinCat, FinFunctor, Morphism};

use super::CatWeight;

/// A covariant functor `J → Set` with finite values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetPresheaf {
    index: Arc<FinCat>,
    sets: Vec<Vec<String>>,
    action: Vec<Vec<usize>>,
}

impl SetPresheaf {
    pub fn new(index: Arc<FinCat>, sets: Vec<Vec<String>>, action: Vec<Vec<usize>>) -> Result<Self> {
        let j = &*index;
        if sets.len() != j.object_count() || action.len() != j.morphism_count() {
            return Err(Error::InvalidDiagram("presheaf tables do not match the index".into()));
        }
        for (f, a) in action.iter().enumerate() {
            let (s, d) = (sets[j.src(f)].len(), sets[j.dst(f)].len());
            if a.len() != s || a.iter().any(|&y| y >= d) {
                return Err(Error::InvalidDiagram(format!(
                    "action of {} is not a function between the value sets",
                    j.morphism_name(f)
                )));
            }
        }
        let p = SetPresheaf { index, sets, action };
        for x in 0..p.index.object_count() {
            let a = &p.action[p.index.identity(x)];
            if a.iter().enumerate().any(|(i, &y)| i != y) {
                return Err(Error::InvalidDiagram(format!(
                    "identity of {} does not act as the identity",
                    p.index.object_name(x)
                )));
            }
        }
        for (&(g, f), &h) in p.index.composition_table() {
            let ok = p.action[f]
                .iter()
                .zip(&p.action[h])
                .all(|(&y, &z)| p.action[g][y] == z);
            if !ok {
                return Err(Error::InvalidDiagram(format!(
                    "action does not preserve {}∘{}",
                    p.index.morphism_name(g),
                    p.index.morphism_name(f)
                )));
            }
        }
        Ok(p)
    }

    /// The representable `J(j, −)`.
    pub fn representable(index: &Arc<FinCat>, j: usize) -> Self {
        let c = &**index;
        let sets = (0..c.object_count())
            .map(|k| c.hom(j, k).iter().map(|&f| c.morphism_name(f).to_string()).collect())
            .collect();
        let action = (0..c.morphism_count())
            .map(|g| {
                let (k, l) = (c.src(g), c.dst(g));
                c.hom(j, k)
                    .iter()
                    .map(|&f| {
                        let gf = c.comp(g, f);
                        c.hom(j, l).iter().position(|&h| h == gf).unwrap()
                    })
                    .collect()
            })
            .collect();
        SetPresheaf {
            index: index.clone(),
            sets,
            action,
        }
    }

    pub fn index(&self) -> &Arc<FinCat> {
        &self.index
    }

    pub fn set(&self, j: usize) -> &[String] {
        &self.sets[j]
    }

    pub fn action(&self, f: usize) -> &[usize] {
        &self.action[f]
    }

    pub fn apply(&self, f: usize, x: usize) -> usize {
        self.action[f][x]
    }
}

/// The object part of a Cat-valued weight.
pub fn ob_presheaf(w: &CatWeight) -> SetPresheaf {
    let j = w.index();
    let sets = w.values().iter().map(|c| c.objects().to_vec()).collect();
    let action = w.actions().iter().map(|a| a.object_map().to_vec()).collect();
    SetPresheaf {
        index: j.clone(),
        sets,
        action,
    }
}

/// The category of elements of a presheaf, with its projection.
#[derive(Clone, Debug)]
pub struct ElementsCategory {
    pub category: Arc<FinCat>,
    pub projection: FinFunctor,
    /// object `i` of the category is the element `elements[i] = (j, x)`
    pub elements: Vec<(usize, usize)>,
    offsets: Vec<usize>,
}

impl ElementsCategory {
    pub fn new(p: &SetPresheaf) -> Self {
        let j = &**p.index();
        let mut offsets = Vec::with_capacity(j.object_count());
        let mut elements = Vec::new();
        let mut objects = Vec::new();
        for k in 0..j.object_count() {
            offsets.push(elements.len());
            for (x, name) in p.set(k).iter().enumerate() {
                elements.push((k, x));
                objects.push(format!("({},{})", j.object_name(k), name));
            }
        }
        let mut mor_offsets = Vec::with_capacity(j.morphism_count());
        let mut morphisms = Vec::new();
        let mut proj_mor = Vec::new();
        for f in 0..j.morphism_count() {
            mor_offsets.push(morphisms.len());
            let (s, d) = (j.src(f), j.dst(f));
            for (x, name) in p.set(s).iter().enumerate() {
                morphisms.push(Morphism {
                    id: format!("({},{})", j.morphism_name(f), name),
                    src: offsets[s] + x,
                    dst: offsets[d] + p.apply(f, x),
                });
                proj_mor.push(f);
            }
        }
        let identities = elements
            .iter()
            .map(|&(k, x)| mor_offsets[j.identity(k)] + x)
            .collect();
        let mut composition = HashMap::new();
        for (&(g, f), &h) in j.composition_table() {
            for x in 0..p.set(j.src(f)).len() {
                let y = p.apply(f, x);
                composition.insert((mor_offsets[g] + y, mor_offsets[f] + x), mor_offsets[h] + x);
            }
        }
        let proj_obj = elements.iter().map(|&(k, _)| k).collect();
        let category = Arc::new(FinCat::from_parts(objects, morphisms, identities, composition));
        let projection =
            FinFunctor::new_unchecked(category.clone(), p.index().clone(), proj_obj, proj_mor);
        ElementsCategory {
            category,
            projection,
            elements,
            offsets,
        }
    }

    pub fn element_index(&self, j: usize, x: usize) -> usize {
        self.offsets[j] + x
    }
}

/// One summand `J(j, −)` of a decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepresentableComponent {
    /// the initial element `(j, x)`
    pub initial: (usize, usize),
    /// every element `(k, y)` of the component with its unique connecting
    /// morphism `f: j → k` satisfying `P(f)(x) = y`
    pub connecting: Vec<((usize, usize), usize)>,
}

/// Why a candidate element is not initial in its component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CandidateFailure {
    pub candidate: (usize, usize),
    pub target: (usize, usize),
    /// all `f` with `P(f)(candidate) = target`; never exactly one
    pub morphisms: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Refutation {
    /// a connected component of the elements category
    pub component: Vec<(usize, usize)>,
    /// one failure per element of the component
    pub failures: Vec<CandidateFailure>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PieCertificate {
    Decomposition { components: Vec<RepresentableComponent> },
    Refutation(Refutation),
}

impl PieCertificate {
    pub fn is_decomposition(&self) -> bool {
        matches!(self, PieCertificate::Decomposition { .. })
    }

    /// Re-checks the certificate against `p`.
    ///
    /// A decomposition is accepted iff `f ↦ P(f)(x_i)` is a bijection
    /// `Σ_i J(j_i, k) → P(k)` for every `k` and the connecting morphisms are
    /// exactly its inverse. A refutation is accepted iff the component is a
    /// connected component and every listed failure is genuine.
    pub fn verify(&self, p: &SetPresheaf) -> Result<(), String> {
        let j = &**p.index();
        match self {
            PieCertificate::Decomposition { components } => {
                let mut hit: Vec<Vec<Option<usize>>> =
                    (0..j.object_count()).map(|k| vec![None; p.set(k).len()]).collect();
                for (i, comp) in components.iter().enumerate() {
                    let (j0, x0) = comp.initial;
                    if j0 >= j.object_count() || x0 >= p.set(j0).len() {
                        return Err(format!("component {i}: initial element out of range"));
                    }
                    for k in 0..j.object_count() {
                        for &f in j.hom(j0, k) {
                            let y = p.apply(f, x0);
                            if hit[k][y].is_some() {
                                return Err(format!(
                                    "element ({}, {}) is reached twice",
                                    j.object_name(k),
                                    p.set(k)[y]
                                ));
                            }
                            hit[k][y] = Some(i);
                        }
                    }
                    for &((k, y), f) in &comp.connecting {
                        if f >= j.morphism_count()
                            || j.src(f) != j0
                            || j.dst(f) != k
                            || y >= p.set(k).len()
                            || p.apply(f, x0) != y
                        {
                            return Err(format!("component {i}: bad connecting morphism"));
                        }
                    }
                    let reached: usize = (0..j.object_count()).map(|k| j.hom(j0, k).len()).sum();
                    if comp.connecting.len() != reached {
                        return Err(format!("component {i}: connecting list is incomplete"));
                    }
                }
                for k in 0..j.object_count() {
                    if let Some(y) = hit[k].iter().position(|h| h.is_none()) {
                        return Err(format!(
                            "element ({}, {}) is not covered",
                            j.object_name(k),
                            p.set(k)[y]
                        ));
                    }
                }
                Ok(())
            }
            PieCertificate::Refutation(r) => {
                let el = ElementsCategory::new(p);
                let comps = components(&el);
                let mut members: Vec<usize> =
                    r.component.iter().map(|&(k, y)| el.element_index(k, y)).collect();
                members.sort_unstable();
                if !comps.contains(&members) {
                    return Err("listed elements are not a connected component".into());
                }
                let mut covered: Vec<(usize, usize)> = r.failures.iter().map(|f| f.candidate).collect();
                covered.sort_unstable();
                let mut expected = r.component.clone();
                expected.sort_unstable();
                if covered != expected {
                    return Err("not every element of the component is refuted".into());
                }
                for fail in &r.failures {
                    let (a, x) = fail.candidate;
                    let (b, y) = fail.target;
                    let actual: Vec<usize> =
                        j.hom(a, b).iter().copied().filter(|&f| p.apply(f, x) == y).collect();
                    if actual != fail.morphisms || actual.len() == 1 {
                        return Err("recorded failure does not replay".into());
                    }
                    if !r.component.contains(&fail.target) {
                        return Err("failure target lies outside the component".into());
                    }
                }
                Ok(())
            }
        }
    }
}

/// Connected components (sorted element indices), ordered by least member.
fn components(el: &ElementsCategory) -> Vec<Vec<usize>> {
    let c = &*el.category;
    let mut parent: Vec<usize> = (0..c.object_count()).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            let next = parent[y];
            parent[y] = r;
            y = next;
        }
        r
    }
    for m in c.morphisms() {
        let (a, b) = (find(&mut parent, m.src), find(&mut parent, m.dst));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; c.object_count()];
    for x in 0..c.object_count() {
        let r = find(&mut parent, x);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(x);
    }
    groups
}

/// Decides whether `p` is a coproduct of representables.
pub fn decompose_coproduct_of_representables(p: &SetPresheaf) -> PieCertificate {
    let j = &**p.index();
    let el = ElementsCategory::new(p);
    let mut decomposition = Vec::new();
    for comp in components(&el) {
        let members: Vec<(usize, usize)> = comp.iter().map(|&i| el.elements[i]).collect();
        let mut failures = Vec::new();
        let mut found = None;
        'candidates: for &(a, x) in &members {
            let mut connecting = Vec::with_capacity(members.len());
            for &(b, y) in &members {
                let arrows: Vec<usize> =
                    j.hom(a, b).iter().copied().filter(|&f| p.apply(f, x) == y).collect();
                if arrows.len() != 1 {
                    failures.push(CandidateFailure {
                        candidate: (a, x),
                        target: (b, y),
                        morphisms: arrows,
                    });
                    continue 'candidates;
                }
                connecting.push(((b, y), arrows[0]));
            }
            found = Some(RepresentableComponent {
                initial: (a, x),
                connecting,
            });
            break;
        }
        match found {
            Some(c) => decomposition.push(c),
            None => {
                return PieCertificate::Refutation(Refutation {
                    component: members,
                    failures,
                })
            }
        }
    }
    PieCertificate::Decomposition {
        components: decomposition,
    }
}

/// A weight is pie iff its object presheaf is a coproduct of representables.
pub fn is_pie_weight(w: &CatWeight) -> (bool, PieCertificate) {
    let cert = decompose_coproduct_of_representables(&ob_presheaf(w));
    (cert.is_decomposition(), cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::build;

    #[test]
    fn elements_counts() {
        let j = Arc::new(build::parallel_pair());
        let p = SetPresheaf::representable(&j, 0);
        let el = ElementsCategory::new(&p);
        el.category.check_laws().unwrap();
        el.projection.check().unwrap();
        // P(a) = {id_a}, P(b) = {u, v}
        assert_eq!(el.category.object_count(), 3);
        // Σ_f |P(src f)|: id_a:1, id_b:2, u:1, v:1
        assert_eq!(el.category.morphism_count(), 5);
    }

    #[test]
    fn representable_decomposes_at_identity() {
        let j = Arc::new(build::parallel_pair());
        let p = SetPresheaf::representable(&j, 0);
        let cert = decompose_coproduct_of_representables(&p);
        let PieCertificate::Decomposition { components } = &cert else { panic!() };
        assert_eq!(components.len(), 1);
        assert_eq!(components[0].initial, (0, 0));
        assert_eq!(p.set(0)[0], "id_a");
        cert.verify(&p).unwrap();
    }

    #[test]
    fn terminal_on_parallel_pair_is_refuted() {
        let j = Arc::new(build::parallel_pair());
        let one = Arc::new(build::terminal());
        let p = ob_presheaf(&CatWeight::constant(&j, &one));
        let cert = decompose_coproduct_of_representables(&p);
        let PieCertificate::Refutation(r) = &cert else { panic!() };
        assert_eq!(r.component.len(), 2);
        assert_eq!(r.failures[0].candidate, (0, 0));
        assert_eq!(r.failures[0].morphisms.len(), 2);
        assert!(r.failures[1].morphisms.is_empty());
        cert.verify(&p).unwrap();
    }

    #[test]
    fn tampered_certificates_are_rejected() {
        let j = Arc::new(build::parallel_pair());
        let p = SetPresheaf::representable(&j, 0);
        let PieCertificate::Decomposition { mut components } = decompose_coproduct_of_representables(&p)
        else {
            panic!()
        };
        components[0].initial = (1, 0);
        assert!(PieCertificate::Decomposition { components }.verify(&p).is_err());
    }
}
