use std::collections::HashMap;
use std::fmt;

use crate::error::CategoryError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub id: String,
    pub src: usize,
    pub dst: usize,
}

/// A finite category given by explicit tables.
///
/// Objects and morphisms are addressed by their position in the declared
/// order; identifiers are kept for I/O and for canonical naming of derived
/// constructions. `compose(g, f)` is `g ∘ f` and is defined exactly when
/// `src(g) == dst(f)`.
#[derive(Clone)]
pub struct FinCat {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    composition: HashMap<(usize, usize), usize>,
    object_index: HashMap<String, usize>,
    morphism_index: HashMap<String, usize>,
    homs: HashMap<(usize, usize), Vec<usize>>,
    outgoing: Vec<Vec<usize>>,
    incoming: Vec<Vec<usize>>,
    inverses: Vec<Option<usize>>,
}

/// Unvalidated tables, addressed by identifier.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawCategory {
    pub objects: Vec<String>,
    /// `(id, src, dst)`
    pub morphisms: Vec<(String, String, String)>,
    /// `(object, identity morphism)`
    pub identities: Vec<(String, String)>,
    /// `(g, f, g∘f)`; pairs involving an identity may be omitted.
    pub composition: Vec<(String, String, String)>,
}

impl FinCat {
    /// Builds a category from index-based tables without checking the
    /// category laws. Pairs with an identity on either side are filled in
    /// when absent. Intended for constructions that are correct by
    /// construction; use [`FinCat::check_laws`] to verify.
    pub fn from_parts(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        mut composition: HashMap<(usize, usize), usize>,
    ) -> FinCat {
        let n = objects.len();
        let mut outgoing = vec![Vec::new(); n];
        let mut incoming = vec![Vec::new(); n];
        let mut homs: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (i, m) in morphisms.iter().enumerate() {
            outgoing[m.src].push(i);
            incoming[m.dst].push(i);
            homs.entry((m.src, m.dst)).or_default().push(i);
        }
        for (i, m) in morphisms.iter().enumerate() {
            composition.entry((identities[m.dst], i)).or_insert(i);
            composition.entry((i, identities[m.src])).or_insert(i);
        }
        let object_index = objects
            .iter()
            .enumerate()
            .map(|(i, o)| (o.clone(), i))
            .collect();
        let morphism_index = morphisms
            .iter()
            .enumerate()
            .map(|(i, m)| (m.id.clone(), i))
            .collect();
        let mut cat = FinCat {
            objects,
            morphisms,
            identities,
            composition,
            object_index,
            morphism_index,
            homs,
            outgoing,
            incoming,
            inverses: Vec::new(),
        };
        cat.inverses = (0..cat.morphisms.len())
            .map(|f| cat.compute_inverse(f))
            .collect();
        cat
    }

    fn compute_inverse(&self, f: usize) -> Option<usize> {
        let m = &self.morphisms[f];
        self.hom(m.dst, m.src).iter().copied().find(|&g| {
            self.composition.get(&(g, f)) == Some(&self.identities[m.src])
                && self.composition.get(&(f, g)) == Some(&self.identities[m.dst])
        })
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn object_name(&self, x: usize) -> &str {
        &self.objects[x]
    }

    pub fn morphism_name(&self, f: usize) -> &str {
        &self.morphisms[f].id
    }

    pub fn object_id(&self, name: &str) -> Option<usize> {
        self.object_index.get(name).copied()
    }

    pub fn morphism_id(&self, name: &str) -> Option<usize> {
        self.morphism_index.get(name).copied()
    }

    pub fn src(&self, f: usize) -> usize {
        self.morphisms[f].src
    }

    pub fn dst(&self, f: usize) -> usize {
        self.morphisms[f].dst
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identities[x]
    }

    pub fn identities(&self) -> &[usize] {
        &self.identities
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.morphisms[f].src] == f
    }

    /// `g ∘ f`, or `None` when the pair is not composable.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.composition.get(&(g, f)).copied()
    }

    /// `g ∘ f` for a pair known to be composable.
    pub fn comp(&self, g: usize, f: usize) -> usize {
        match self.composition.get(&(g, f)) {
            Some(&h) => h,
            None => panic!(
                "morphisms {} and {} are not composable",
                self.morphisms[g].id, self.morphisms[f].id
            ),
        }
    }

    pub fn composition_table(&self) -> &HashMap<(usize, usize), usize> {
        &self.composition
    }

    /// Composition entries in canonical (g, f) order.
    pub fn sorted_composition(&self) -> Vec<(usize, usize, usize)> {
        let mut out: Vec<_> = self
            .composition
            .iter()
            .map(|(&(g, f), &h)| (g, f, h))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        self.homs.get(&(a, b)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn outgoing(&self, a: usize) -> &[usize] {
        &self.outgoing[a]
    }

    pub fn incoming(&self, a: usize) -> &[usize] {
        &self.incoming[a]
    }

    pub fn inverse(&self, f: usize) -> Option<usize> {
        self.inverses[f]
    }

    pub fn is_iso(&self, f: usize) -> bool {
        self.inverses[f].is_some()
    }

    /// First isomorphism `a → b` in declared order.
    pub fn find_iso(&self, a: usize, b: usize) -> Option<usize> {
        self.hom(a, b).iter().copied().find(|&f| self.is_iso(f))
    }

    pub fn non_identity_morphisms(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.morphisms.len()).filter(move |&f| !self.is_identity(f))
    }

    /// Verifies unit laws, completeness of the table and associativity.
    pub fn check_laws(&self) -> Result<(), CategoryError> {
        for (x, &i) in self.identities.iter().enumerate() {
            let m = &self.morphisms[i];
            if m.src != x || m.dst != x {
                return Err(CategoryError::IdentityLawBroken {
                    object: self.objects[x].clone(),
                    detail: format!("identity {} is not an endomorphism of it", m.id),
                });
            }
        }
        for (i, m) in self.morphisms.iter().enumerate() {
            let left = self.composition.get(&(self.identities[m.dst], i));
            let right = self.composition.get(&(i, self.identities[m.src]));
            for (side, value) in [("left", left), ("right", right)] {
                if value != Some(&i) {
                    let obj = if side == "left" { m.dst } else { m.src };
                    return Err(CategoryError::IdentityLawBroken {
                        object: self.objects[obj].clone(),
                        detail: format!(
                            "{side} unit law fails for {}: got {}",
                            m.id,
                            value.map_or("nothing".to_string(), |&v| self.morphisms[v]
                                .id
                                .clone())
                        ),
                    });
                }
            }
        }
        for (&(g, f), &h) in &self.composition {
            let (mg, mf, mh) = (&self.morphisms[g], &self.morphisms[f], &self.morphisms[h]);
            if mg.src != mf.dst {
                return Err(CategoryError::MalformedTable(format!(
                    "entry {}∘{} composes non-composable morphisms",
                    mg.id, mf.id
                )));
            }
            if mh.src != mf.src || mh.dst != mg.dst {
                return Err(CategoryError::MalformedTable(format!(
                    "entry {}∘{} = {} has the wrong source or target",
                    mg.id, mf.id, mh.id
                )));
            }
        }
        for x in 0..self.objects.len() {
            for &f in &self.incoming[x] {
                for &g in &self.outgoing[x] {
                    if !self.composition.contains_key(&(g, f)) {
                        return Err(CategoryError::MalformedTable(format!(
                            "missing composite {}∘{}",
                            self.morphisms[g].id, self.morphisms[f].id
                        )));
                    }
                }
            }
        }
        let mut pairs: Vec<_> = self.composition.iter().map(|(&k, &v)| (k, v)).collect();
        pairs.sort_unstable();
        for ((g, f), gf) in pairs {
            for &h in &self.outgoing[self.morphisms[g].dst] {
                let hg = self.comp(h, g);
                let left = self.comp(hg, f);
                let right = self.comp(h, gf);
                if left != right {
                    return Err(CategoryError::NotAssociative {
                        h: self.morphisms[h].id.clone(),
                        g: self.morphisms[g].id.clone(),
                        f: self.morphisms[f].id.clone(),
                        left: self.morphisms[left].id.clone(),
                        right: self.morphisms[right].id.clone(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn to_raw(&self) -> RawCategory {
        RawCategory {
            objects: self.objects.clone(),
            morphisms: self
                .morphisms
                .iter()
                .map(|m| {
                    (
                        m.id.clone(),
                        self.objects[m.src].clone(),
                        self.objects[m.dst].clone(),
                    )
                })
                .collect(),
            identities: self
                .identities
                .iter()
                .enumerate()
                .map(|(x, &i)| (self.objects[x].clone(), self.morphisms[i].id.clone()))
                .collect(),
            composition: self
                .sorted_composition()
                .into_iter()
                .filter(|&(g, f, _)| !self.is_identity(g) && !self.is_identity(f))
                .map(|(g, f, h)| {
                    (
                        self.morphisms[g].id.clone(),
                        self.morphisms[f].id.clone(),
                        self.morphisms[h].id.clone(),
                    )
                })
                .collect(),
        }
    }

    /// The same category with every object and morphism renamed.
    pub fn renamed(
        &self,
        object: impl Fn(usize, &str) -> String,
        morphism: impl Fn(usize, &str) -> String,
    ) -> FinCat {
        let objects = self
            .objects
            .iter()
            .enumerate()
            .map(|(i, o)| object(i, o))
            .collect();
        let morphisms = self
            .morphisms
            .iter()
            .enumerate()
            .map(|(i, m)| Morphism {
                id: morphism(i, &m.id),
                src: m.src,
                dst: m.dst,
            })
            .collect();
        FinCat::from_parts(
            objects,
            morphisms,
            self.identities.clone(),
            self.composition.clone(),
        )
    }
}

impl PartialEq for FinCat {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other)
            || (self.objects == other.objects
                && self.morphisms == other.morphisms
                && self.identities == other.identities
                && self.composition == other.composition)
    }
}

impl Eq for FinCat {}

impl fmt::Debug for FinCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinCat")
            .field("objects", &self.objects)
            .field("morphisms", &self.morphisms.len())
            .finish()
    }
}

/// Resolves and checks raw tables.
///
/// Every violated law is reported with the offending data; the first
/// violation in canonical order wins.
pub fn validate_category(raw: &RawCategory) -> Result<FinCat, CategoryError> {
    let mut object_index = HashMap::new();
    for (i, o) in raw.objects.iter().enumerate() {
        if object_index.insert(o.clone(), i).is_some() {
            return Err(CategoryError::MalformedTable(format!(
                "duplicate object identifier {o}"
            )));
        }
    }
    let lookup_obj = |name: &str| {
        object_index
            .get(name)
            .copied()
            .ok_or_else(|| CategoryError::MalformedTable(format!("unknown object {name}")))
    };
    let mut morphism_index = HashMap::new();
    let mut morphisms = Vec::with_capacity(raw.morphisms.len());
    for (i, (id, s, d)) in raw.morphisms.iter().enumerate() {
        if morphism_index.insert(id.clone(), i).is_some() {
            return Err(CategoryError::MalformedTable(format!(
                "duplicate morphism identifier {id}"
            )));
        }
        morphisms.push(Morphism {
            id: id.clone(),
            src: lookup_obj(s)?,
            dst: lookup_obj(d)?,
        });
    }
    let lookup_mor = |name: &str| {
        morphism_index
            .get(name)
            .copied()
            .ok_or_else(|| CategoryError::MalformedTable(format!("unknown morphism {name}")))
    };
    let mut identities = vec![None; raw.objects.len()];
    for (o, i) in &raw.identities {
        let x = lookup_obj(o)?;
        let f = lookup_mor(i)?;
        if identities[x].replace(f).is_some() {
            return Err(CategoryError::MalformedTable(format!(
                "object {o} has two identities"
            )));
        }
        if morphisms[f].src != x || morphisms[f].dst != x {
            return Err(CategoryError::IdentityLawBroken {
                object: o.clone(),
                detail: format!("identity {i} is not an endomorphism of {o}"),
            });
        }
    }
    let identities = identities
        .into_iter()
        .enumerate()
        .map(|(x, i)| {
            i.ok_or_else(|| {
                CategoryError::MalformedTable(format!("object {} has no identity", raw.objects[x]))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut composition = HashMap::new();
    for (g, f, h) in &raw.composition {
        let (g, f, h) = (lookup_mor(g)?, lookup_mor(f)?, lookup_mor(h)?);
        if let Some(prev) = composition.insert((g, f), h) {
            if prev != h {
                return Err(CategoryError::MalformedTable(format!(
                    "conflicting entries for {}∘{}",
                    morphisms[g].id, morphisms[f].id
                )));
            }
        }
    }
    let cat = FinCat::from_parts(raw.objects.clone(), morphisms, identities, composition);
    cat.check_laws()?;
    Ok(cat)
}
