use std::collections::HashMap;
use std::sync::Arc;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::fincat::{
    enumerate_functors, enumerate_transformations, FinCat, FinFunctor, Morphism,
};
use crate::weights::{CatWeight, Diagram};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LimitKind {
    Strict,
    Pseudo,
}

/// A weighted cone at the terminal apex: legs `α_j: W(j) → D(j)` and, for
/// every index morphism `f: j → k`, the components `cells[f][x]` of
/// `α_f: D(f)∘α_j ⇒ α_k∘W(f)`. Strict cones have identity cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    pub legs: Vec<FinFunctor>,
    pub cells: Vec<Vec<usize>>,
}

impl Cone {
    pub(crate) fn key(&self) -> Vec<usize> {
        let mut k = Vec::new();
        for l in &self.legs {
            k.extend_from_slice(l.object_map());
            k.extend_from_slice(l.morphism_map());
        }
        for c in &self.cells {
            k.extend_from_slice(c);
        }
        k
    }
}

/// A modification between cones: `components[j][x]: α_j x → β_j x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Modification {
    pub source: usize,
    pub target: usize,
    pub components: Vec<Vec<usize>>,
}

fn flat(components: &[Vec<usize>]) -> Vec<usize> {
    components.iter().flatten().copied().collect()
}

/// The category of cones and modifications.
///
/// Object `i` is named `cone{i}` and describes `cones[i]`; morphism `i` is
/// named `mod{i}` and describes `modifications[i]`.
#[derive(Clone, Debug)]
pub struct ConeCategory {
    pub kind: LimitKind,
    pub category: Arc<FinCat>,
    pub cones: Vec<Cone>,
    pub modifications: Vec<Modification>,
}

impl ConeCategory {
    pub fn find_cone(&self, cone: &Cone) -> Option<usize> {
        let key = cone.key();
        self.cones.iter().position(|c| c.key() == key)
    }

    pub fn find_modification(&self, source: usize, target: usize, components: &[Vec<usize>]) -> Option<usize> {
        self.category
            .hom(source, target)
            .iter()
            .copied()
            .find(|&m| self.modifications[m].components == components)
    }
}

/// Options for cone enumeration.
#[derive(Clone, Copy, Debug)]
pub struct ConeOptions {
    /// Fix `α_id = 1` up front instead of enumerating cells at identities
    /// and letting composition coherence force them.
    pub prune_units: bool,
}

impl Default for ConeOptions {
    fn default() -> Self {
        ConeOptions { prune_units: true }
    }
}

fn check_shapes(w: &CatWeight, d: &Diagram) -> Result<()> {
    if **w.index() != **d.index() {
        return Err(Error::TypeMismatch(
            "weight and diagram have different index categories".into(),
        ));
    }
    Ok(())
}

/// `{W, D}`: strict cones and modifications.
pub fn strict_limit(w: &CatWeight, d: &Diagram, budget: &mut Budget) -> Result<ConeCategory> {
    cone_category(w, d, LimitKind::Strict, ConeOptions::default(), budget)
}

/// `{W, D}_ps`: pseudocones and modifications.
pub fn pseudo_limit(w: &CatWeight, d: &Diagram, budget: &mut Budget) -> Result<ConeCategory> {
    cone_category(w, d, LimitKind::Pseudo, ConeOptions::default(), budget)
}

pub fn cone_category(
    w: &CatWeight,
    d: &Diagram,
    kind: LimitKind,
    options: ConeOptions,
    budget: &mut Budget,
) -> Result<ConeCategory> {
    check_shapes(w, d)?;
    let j = w.index().clone();
    let mut candidates = Vec::with_capacity(j.object_count());
    for x in 0..j.object_count() {
        candidates.push(enumerate_functors(w.value(x), d.value(x), budget)?);
    }
    let mut unlocked = vec![Vec::new(); j.object_count()];
    for f in 0..j.morphism_count() {
        unlocked[j.src(f).max(j.dst(f))].push(f);
    }
    let mut triples_of = vec![Vec::new(); j.morphism_count()];
    for (&(g, f), &h) in j.composition_table() {
        let t = (g, f, h);
        triples_of[g].push(t);
        if f != g {
            triples_of[f].push(t);
        }
        if h != g && h != f {
            triples_of[h].push(t);
        }
    }
    for t in &mut triples_of {
        t.sort_unstable();
    }
    let mut search = ConeSearch {
        w,
        d,
        j: &j,
        kind,
        options,
        candidates: &candidates,
        unlocked: &unlocked,
        triples_of: &triples_of,
        legs: vec![usize::MAX; j.object_count()],
        cells: vec![None; j.morphism_count()],
        out: Vec::new(),
    };
    search.legs_from(0, budget)?;
    let found = std::mem::take(&mut search.out);
    let cones: Vec<Cone> = found
        .iter()
        .map(|(legs, cells)| Cone {
            legs: legs
                .iter()
                .enumerate()
                .map(|(x, &i)| candidates[x][i].clone())
                .collect(),
            cells: cells.clone(),
        })
        .collect();
    let leg_ids: Vec<Vec<usize>> = found.into_iter().map(|(l, _)| l).collect();
    build_cone_category(w, d, kind, cones, &leg_ids, &candidates, budget)
}

struct ConeSearch<'a> {
    w: &'a CatWeight,
    d: &'a Diagram,
    j: &'a FinCat,
    kind: LimitKind,
    options: ConeOptions,
    candidates: &'a [Vec<FinFunctor>],
    unlocked: &'a [Vec<usize>],
    triples_of: &'a [Vec<(usize, usize, usize)>],
    legs: Vec<usize>,
    cells: Vec<Option<Vec<usize>>>,
    out: Vec<(Vec<usize>, Vec<Vec<usize>>)>,
}

impl ConeSearch<'_> {
    fn leg(&self, x: usize) -> &FinFunctor {
        &self.candidates[x][self.legs[x]]
    }

    fn legs_from(&mut self, k: usize, budget: &mut Budget) -> Result<()> {
        if k == self.j.object_count() {
            let cells = self.cells.iter().map(|c| c.clone().unwrap()).collect();
            self.out.push((self.legs.clone(), cells));
            return Ok(());
        }
        for i in 0..self.candidates[k].len() {
            budget.tick("enumerating cone legs")?;
            self.legs[k] = i;
            self.cells_from(k, 0, budget)?;
        }
        self.legs[k] = usize::MAX;
        Ok(())
    }

    fn identity_cells(&self, f: usize) -> Vec<usize> {
        let dk = self.d.value(self.j.dst(f));
        let wf = self.w.action(f);
        let target = self.leg(self.j.dst(f));
        (0..self.w.value(self.j.src(f)).object_count())
            .map(|x| dk.identity(target.object(wf.object(x))))
            .collect()
    }

    fn cells_from(&mut self, k: usize, pos: usize, budget: &mut Budget) -> Result<()> {
        let Some(&f) = self.unlocked[k].get(pos) else {
            return self.legs_from(k + 1, budget);
        };
        let (s, t) = (self.j.src(f), self.j.dst(f));
        let left = self.leg(s).then(self.d.action(f))?;
        let right = self.w.action(f).then(self.leg(t))?;
        let choices: Vec<Vec<usize>> = match self.kind {
            LimitKind::Strict => {
                if left == right {
                    vec![self.identity_cells(f)]
                } else {
                    Vec::new()
                }
            }
            LimitKind::Pseudo if self.j.is_identity(f) && self.options.prune_units => {
                vec![self.identity_cells(f)]
            }
            LimitKind::Pseudo => enumerate_transformations(&left, &right, true, budget)?
                .into_iter()
                .map(|t| t.components().to_vec())
                .collect(),
        };
        for c in choices {
            budget.tick("enumerating cone cells")?;
            self.cells[f] = Some(c);
            if self.kind == LimitKind::Strict || self.coherent(f) {
                self.cells_from(k, pos + 1, budget)?;
            }
        }
        self.cells[f] = None;
        Ok(())
    }

    /// `α_{gf,x} = α_{g,W(f)x} ∘ D(g)(α_{f,x})` on every triple through `m`
    /// whose cells are all assigned.
    fn coherent(&self, m: usize) -> bool {
        self.triples_of[m].iter().all(|&(g, f, h)| {
            let (Some(cg), Some(cf), Some(ch)) = (&self.cells[g], &self.cells[f], &self.cells[h])
            else {
                return true;
            };
            let dl = self.d.value(self.j.dst(g));
            let dg = self.d.action(g);
            let wf = self.w.action(f);
            (0..cf.len()).all(|x| ch[x] == dl.comp(cg[wf.object(x)], dg.morphism(cf[x])))
        })
    }
}

fn build_cone_category(
    w: &CatWeight,
    d: &Diagram,
    kind: LimitKind,
    cones: Vec<Cone>,
    leg_ids: &[Vec<usize>],
    candidates: &[Vec<FinFunctor>],
    budget: &mut Budget,
) -> Result<ConeCategory> {
    let j = w.index();
    let n = cones.len();
    // pointwise natural transformations between candidate legs, cached
    let mut nat_cache: HashMap<(usize, usize, usize), Vec<Vec<usize>>> = HashMap::new();
    let mut modifications = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let mut per_point = Vec::with_capacity(j.object_count());
            for x in 0..j.object_count() {
                let key = (x, leg_ids[a][x], leg_ids[b][x]);
                if !nat_cache.contains_key(&key) {
                    let list = enumerate_transformations(
                        &candidates[x][key.1],
                        &candidates[x][key.2],
                        false,
                        budget,
                    )?
                    .into_iter()
                    .map(|t| t.components().to_vec())
                    .collect();
                    nat_cache.insert(key, list);
                }
                per_point.push(key);
            }
            let lists: Vec<&Vec<Vec<usize>>> = per_point.iter().map(|k| &nat_cache[k]).collect();
            let mut chosen: Vec<usize> = vec![0; j.object_count()];
            mods_between(w, d, &cones[a], &cones[b], &lists, 0, &mut chosen, &mut |comps| {
                modifications.push(Modification {
                    source: a,
                    target: b,
                    components: comps,
                });
            }, budget)?;
        }
    }
    let objects: Vec<String> = (0..n).map(|i| format!("cone{i}")).collect();
    let morphisms: Vec<Morphism> = modifications
        .iter()
        .enumerate()
        .map(|(i, m)| Morphism {
            id: format!("mod{i}"),
            src: m.source,
            dst: m.target,
        })
        .collect();
    let mut index: HashMap<(usize, usize, Vec<usize>), usize> = HashMap::new();
    for (i, m) in modifications.iter().enumerate() {
        index.insert((m.source, m.target, flat(&m.components)), i);
    }
    let identities = (0..n)
        .map(|a| {
            let comps: Vec<Vec<usize>> = (0..j.object_count())
                .map(|x| {
                    let leg = &cones[a].legs[x];
                    let dx = d.value(x);
                    (0..w.value(x).object_count()).map(|y| dx.identity(leg.object(y))).collect()
                })
                .collect();
            index[&(a, a, flat(&comps))]
        })
        .collect();
    let mut outgoing: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, m) in modifications.iter().enumerate() {
        outgoing[m.source].push(i);
    }
    let mut composition = HashMap::new();
    for (f, mf) in modifications.iter().enumerate() {
        budget.charge(outgoing[mf.target].len() as u64, "composing modifications")?;
        for &g in &outgoing[mf.target] {
            let mg = &modifications[g];
            let comps: Vec<usize> = (0..j.object_count())
                .flat_map(|x| {
                    let dx = d.value(x);
                    mf.components[x]
                        .iter()
                        .zip(&mg.components[x])
                        .map(|(&p, &q)| dx.comp(q, p))
                        .collect::<Vec<_>>()
                })
                .collect();
            let h = index[&(mf.source, mg.target, comps)];
            composition.insert((g, f), h);
        }
    }
    let category = Arc::new(FinCat::from_parts(objects, morphisms, identities, composition));
    Ok(ConeCategory {
        kind,
        category,
        cones,
        modifications,
    })
}

#[allow(clippy::too_many_arguments)]
fn mods_between(
    w: &CatWeight,
    d: &Diagram,
    alpha: &Cone,
    beta: &Cone,
    lists: &[&Vec<Vec<usize>>],
    x: usize,
    chosen: &mut Vec<usize>,
    emit: &mut dyn FnMut(Vec<Vec<usize>>),
    budget: &mut Budget,
) -> Result<()> {
    let j = w.index();
    if x == j.object_count() {
        emit((0..x).map(|y| lists[y][chosen[y]].clone()).collect());
        return Ok(());
    }
    for c in 0..lists[x].len() {
        budget.tick("enumerating modifications")?;
        chosen[x] = c;
        let ok = (0..j.morphism_count())
            .filter(|&f| j.src(f).max(j.dst(f)) == x)
            .all(|f| {
                let (s, t) = (j.src(f), j.dst(f));
                let gs = &lists[s][chosen[s]];
                let gt = &lists[t][chosen[t]];
                let dt = d.value(t);
                let df = d.action(f);
                let wf = w.action(f);
                (0..gs.len()).all(|y| {
                    dt.comp(beta.cells[f][y], df.morphism(gs[y]))
                        == dt.comp(gt[wf.object(y)], alpha.cells[f][y])
                })
            });
        if ok {
            mods_between(w, d, alpha, beta, lists, x + 1, chosen, emit, budget)?;
        }
    }
    Ok(())
}

/// The inclusion `{W, D} → {W, D}_ps` sending a strict cone to itself with
/// identity cells.
pub fn comparison_inclusion(strict: &ConeCategory, pseudo: &ConeCategory) -> Result<FinFunctor> {
    if strict.kind != LimitKind::Strict || pseudo.kind != LimitKind::Pseudo {
        return Err(Error::TypeMismatch(
            "comparison needs a strict and a pseudo cone category".into(),
        ));
    }
    let keys: HashMap<Vec<usize>, usize> = pseudo
        .cones
        .iter()
        .enumerate()
        .map(|(i, c)| (c.key(), i))
        .collect();
    let objects = strict
        .cones
        .iter()
        .map(|c| {
            keys.get(&c.key()).copied().ok_or_else(|| {
                Error::TypeMismatch("strict cone missing from the pseudo limit".into())
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let morphisms = strict
        .modifications
        .iter()
        .map(|m| {
            pseudo
                .find_modification(objects[m.source], objects[m.target], &m.components)
                .ok_or_else(|| {
                    Error::TypeMismatch("strict modification missing from the pseudo limit".into())
                })
        })
        .collect::<Result<Vec<_>>>()?;
    FinFunctor::new(strict.category.clone(), pseudo.category.clone(), objects, morphisms)
}
