//! Generated test material: a pinned catalogue of small categories, diagram
//! enumeration over it, seeded random categories, and standard maps of
//! diagrams.

use std::collections::HashMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::budget::Budget;
use crate::error::Result;
use crate::fincat::{build, enumerate_functors, free_category_on_graph, Edge, FinCat, FinFunctor, FinGraph};
use crate::weights::{CatValued, Diagram, DiagramMap};

/// Version tag of [`catalogue`]; bump whenever its contents change.
pub const GRAMMAR_VERSION: &str = "catalogue-v1";

/// Small categories (≤ 3 objects, ≤ 6 non-identity morphisms), grouped by
/// level. Level `n` contains everything from lower levels.
pub fn catalogue(level: u8) -> Vec<(&'static str, Arc<FinCat>)> {
    let mut out: Vec<(&'static str, FinCat)> = vec![
        ("terminal", build::terminal()),
        ("discrete2", build::discrete_n(2)),
        ("indiscrete2", build::indiscrete(2)),
    ];
    if level >= 2 {
        out.extend([
            ("arrow", build::arrow()),
            ("empty", build::empty()),
            ("z2", build::cyclic_group(2)),
        ]);
    }
    if level >= 3 {
        out.extend([
            ("ordinal3", build::ordinal(3)),
            ("discrete3", build::discrete_n(3)),
            ("idempotent", build::free_idempotent()),
            ("parallel_pair", build::parallel_pair()),
            ("span", build::span()),
            ("z3", build::cyclic_group(3)),
        ]);
    }
    out.into_iter().map(|(n, c)| (n, Arc::new(c))).collect()
}

/// Streams every diagram `index → Cat` with values from `values`, in
/// canonical order (values by object, then action functors by morphism);
/// `visit` returns `false` to stop.
pub fn for_each_diagram(
    index: &Arc<FinCat>,
    values: &[Arc<FinCat>],
    budget: &mut Budget,
    mut visit: impl FnMut(Diagram) -> Result<bool>,
) -> Result<()> {
    let j = &**index;
    let n = j.object_count();
    let mut choice = vec![0usize; n];
    let non_id: Vec<usize> = j.non_identity_morphisms().collect();
    let mut cache: HashMap<(usize, usize), Vec<FinFunctor>> = HashMap::new();
    if n > 0 && values.is_empty() {
        return Ok(());
    }
    loop {
        {
            let vals: Vec<Arc<FinCat>> = choice.iter().map(|&c| values[c].clone()).collect();
            let mut lists = Vec::with_capacity(non_id.len());
            for &f in &non_id {
                let key = (choice[j.src(f)], choice[j.dst(f)]);
                if !cache.contains_key(&key) {
                    let fs = enumerate_functors(&values[key.0], &values[key.1], budget)?;
                    cache.insert(key, fs);
                }
                lists.push(key);
            }
            let lists: Vec<&Vec<FinFunctor>> = lists.iter().map(|k| &cache[k]).collect();
            let mut action: Vec<Option<FinFunctor>> = (0..j.morphism_count())
                .map(|f| j.is_identity(f).then(|| FinFunctor::identity(&vals[j.src(f)])))
                .collect();
            if !actions(j, &vals, &non_id, &lists, 0, &mut action, budget, &mut visit)? {
                return Ok(());
            }
        }
        // next value assignment, odometer style
        let mut k = n;
        loop {
            if k == 0 {
                return Ok(());
            }
            k -= 1;
            choice[k] += 1;
            if choice[k] < values.len() {
                break;
            }
            choice[k] = 0;
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn actions(
    j: &FinCat,
    vals: &[Arc<FinCat>],
    non_id: &[usize],
    lists: &[&Vec<FinFunctor>],
    pos: usize,
    action: &mut Vec<Option<FinFunctor>>,
    budget: &mut Budget,
    visit: &mut dyn FnMut(Diagram) -> Result<bool>,
) -> Result<bool> {
    if pos == non_id.len() {
        let acts = action.iter().map(|a| a.clone().unwrap()).collect();
        let d = CatValued::new(Arc::new(j.clone()), vals.to_vec(), acts)?;
        return visit(d);
    }
    let f = non_id[pos];
    for cand in lists[pos] {
        budget.tick("enumerating diagrams")?;
        action[f] = Some(cand.clone().retarget(vals[j.src(f)].clone(), vals[j.dst(f)].clone()));
        let ok = j.composition_table().iter().all(|(&(g, h), &gh)| {
            match (&action[g], &action[h], &action[gh]) {
                (Some(ag), Some(ah), Some(agh)) => ah.then(ag).map(|c| &c == agh).unwrap_or(false),
                _ => true,
            }
        });
        if ok && !actions(j, vals, non_id, lists, pos + 1, action, budget, visit)? {
            return Ok(false);
        }
    }
    action[f] = None;
    Ok(true)
}

/// The first `limit` diagrams in canonical order.
pub fn enumerate_diagrams(
    index: &Arc<FinCat>,
    values: &[Arc<FinCat>],
    limit: usize,
    budget: &mut Budget,
) -> Result<Vec<Diagram>> {
    let mut out = Vec::new();
    if limit == 0 {
        return Ok(out);
    }
    for_each_diagram(index, values, budget, |d| {
        out.push(d);
        Ok(out.len() < limit)
    })?;
    Ok(out)
}

/// `count` distinct diagrams drawn uniformly from the canonical list of all
/// diagrams (at most `pool` of them are generated), in canonical order.
pub fn sample_diagrams(
    index: &Arc<FinCat>,
    values: &[Arc<FinCat>],
    count: usize,
    pool: usize,
    seed: u64,
) -> Result<Vec<Diagram>> {
    let all = enumerate_diagrams(index, values, pool, &mut Budget::default())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picks: Vec<usize> = (0..all.len()).collect();
    picks.shuffle(&mut rng);
    picks.truncate(count);
    picks.sort_unstable();
    Ok(picks.into_iter().map(|i| all[i].clone()).collect())
}

/// `D × I2` (pointwise product with the indiscrete category on `{0, 1}`)
/// with the projection `D × I2 → D`, the inclusion `D → D × I2` at `0`,
/// and the collapse `D × I2 → D × I2` onto `0`.
pub struct IndiscreteThickening {
    pub thick: Diagram,
    pub projection: DiagramMap,
    pub inclusion: DiagramMap,
    pub collapse: DiagramMap,
}

pub fn thicken(d: &Diagram) -> Result<IndiscreteThickening> {
    let i2 = Arc::new(build::indiscrete(2));
    let j = d.index();
    let values: Vec<Arc<FinCat>> = d
        .values()
        .iter()
        .map(|v| Arc::new(build::product(&[v.clone(), i2.clone()])))
        .collect();
    let action = (0..j.morphism_count())
        .map(|f| {
            let (s, t) = (j.src(f), j.dst(f));
            let df = d.action(f);
            let (vs, vt) = (&values[s], &values[t]);
            let factors_t = [d.value(t).clone(), i2.clone()];
            let objects = (0..vs.object_count())
                .map(|x| {
                    let (a, i) = (x / 2, x % 2);
                    build::product_object(&factors_t, &[df.object(a), i])
                })
                .collect();
            let morphisms = (0..vs.morphism_count())
                .map(|m| {
                    let (a, i) = (m / 4, m % 4);
                    build::product_morphism(&factors_t, &[df.morphism(a), i])
                })
                .collect();
            FinFunctor::new_unchecked(vs.clone(), vt.clone(), objects, morphisms)
        })
        .collect();
    let thick = CatValued::new(j.clone(), values.clone(), action)?;
    let mut proj = Vec::new();
    let mut incl = Vec::new();
    let mut coll = Vec::new();
    for (x, v) in values.iter().enumerate() {
        let base = d.value(x);
        let p = build::projections(v, &[base.clone(), i2.clone()]);
        proj.push(p[0].clone());
        let factors = [base.clone(), i2.clone()];
        let zero_obj = |a: usize| build::product_object(&factors, &[a, 0]);
        let zero_mor = |m: usize| build::product_morphism(&factors, &[m, i2.identity(0)]);
        incl.push(FinFunctor::new(
            base.clone(),
            v.clone(),
            (0..base.object_count()).map(zero_obj).collect(),
            (0..base.morphism_count()).map(zero_mor).collect(),
        )?);
        coll.push(p[0].then(incl.last().unwrap())?);
    }
    Ok(IndiscreteThickening {
        projection: DiagramMap::new(thick.clone(), d.clone(), proj)?,
        inclusion: DiagramMap::new(d.clone(), thick.clone(), incl)?,
        collapse: DiagramMap::new(thick.clone(), thick.clone(), coll)?,
        thick,
    })
}

/// Sections of the projection `D × I2 → D` choosing the copy `choice(j)`
/// at index object `j`; natural only when `choice` is constant along every
/// index morphism.
pub fn thickening_sections(d: &Diagram, thick: &Diagram, choice: impl Fn(usize) -> usize) -> Vec<FinFunctor> {
    let i2 = build::indiscrete(2);
    (0..d.index().object_count())
        .map(|x| {
            let base = d.value(x);
            let c = choice(x);
            let objects = (0..base.object_count()).map(|a| a * 2 + c).collect();
            let morphisms = (0..base.morphism_count())
                .map(|m| m * 4 + i2.identity(c))
                .collect();
            FinFunctor::new_unchecked(base.clone(), thick.value(x).clone(), objects, morphisms)
        })
        .collect()
}

/// A random category with at most `max_objects` objects and
/// `max_morphisms` morphisms, drawn from free categories on random acyclic
/// graphs, random preorders, cyclic groups, and coproducts and products of
/// these.
pub fn random_category(rng: &mut ChaCha8Rng, max_objects: usize, max_morphisms: usize) -> FinCat {
    random_nested(rng, max_objects, max_morphisms, 2)
}

/// Coproducts and products nest at most `depth` deep; otherwise rejected
/// draws would retry both halves and the recursion could run away.
fn random_nested(rng: &mut ChaCha8Rng, max_objects: usize, max_morphisms: usize, depth: usize) -> FinCat {
    let arms = if depth == 0 { 3 } else { 5 };
    loop {
        let c = match rng.gen_range(0..arms) {
            0 => random_free(rng, max_objects, max_morphisms),
            1 => random_preorder(rng, max_objects),
            2 => build::cyclic_group(rng.gen_range(1..=4)),
            3 => {
                let a = random_nested(rng, max_objects / 2 + 1, max_morphisms / 2 + 1, depth - 1);
                let b = random_nested(rng, max_objects / 2 + 1, max_morphisms / 2 + 1, depth - 1);
                let a = Arc::new(a.renamed(|_, o| format!("L.{o}"), |_, m| format!("L.{m}")));
                let b = Arc::new(b.renamed(|_, o| format!("R.{o}"), |_, m| format!("R.{m}")));
                build::coproduct(&[a, b])
            }
            _ => {
                let a = Arc::new(random_nested(rng, 2, 4, depth - 1));
                let b = Arc::new(random_nested(rng, 2, 4, depth - 1));
                build::product(&[a, b])
            }
        };
        if c.object_count() <= max_objects && c.morphism_count() <= max_morphisms {
            return c;
        }
    }
}

fn random_free(rng: &mut ChaCha8Rng, max_objects: usize, max_morphisms: usize) -> FinCat {
    loop {
        let n = rng.gen_range(0..=max_objects);
        let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a..n {
                if a != b && rng.gen_bool(0.35) {
                    for _ in 0..rng.gen_range(1..=2) {
                        edges.push(Edge {
                            id: format!("e{}", edges.len()),
                            src: a,
                            dst: b,
                        });
                    }
                }
            }
        }
        let g = FinGraph::new(vertices, edges).expect("generated graph");
        let c = free_category_on_graph(&g).expect("acyclic by construction");
        if c.morphism_count() <= max_morphisms {
            return c;
        }
    }
}

fn random_preorder(rng: &mut ChaCha8Rng, max_objects: usize) -> FinCat {
    let n = rng.gen_range(1..=max_objects.max(1));
    let mut rel = vec![vec![false; n]; n];
    for (a, row) in rel.iter_mut().enumerate() {
        for (b, r) in row.iter_mut().enumerate() {
            *r = a == b || rng.gen_bool(0.3);
        }
    }
    // transitive closure
    for k in 0..n {
        for a in 0..n {
            for b in 0..n {
                if rel[a][k] && rel[k][b] {
                    rel[a][b] = true;
                }
            }
        }
    }
    let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    build::thin(&names, |a, b| rel[a][b])
}

/// A seeded generator for corpus construction.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The diagram `u, v: a ⇉ b` over the parallel pair.
pub fn parallel_diagram(u: FinFunctor, v: FinFunctor) -> Result<Diagram> {
    let j = Arc::new(build::parallel_pair());
    let (a, b) = (u.domain().clone(), u.codomain().clone());
    let action = vec![FinFunctor::identity(&a), FinFunctor::identity(&b), u, v];
    CatValued::new(j, vec![a, b], action)
}

/// `1 ⇉ I2` picking the two objects: isomorphic but never equal, so the
/// strict equalizer is empty while the pseudo one is not.
pub fn equalizer_counterexample() -> Diagram {
    let one = Arc::new(build::terminal());
    let i2 = Arc::new(build::indiscrete(2));
    parallel_diagram(FinFunctor::constant(&one, &i2, 0), FinFunctor::constant(&one, &i2, 1))
        .expect("a parallel pair")
}

/// The pointwise equivalence from [`equalizer_counterexample`] onto
/// `1 ⇉ 1`, whose strict equalizer is `1`.
pub fn equalizer_collapse() -> DiagramMap {
    let d = equalizer_counterexample();
    let one = Arc::new(build::terminal());
    let id = FinFunctor::identity(&one);
    let e = parallel_diagram(id.clone(), id.clone()).expect("a parallel pair");
    let to_one = FinFunctor::constant(d.value(1), &one, 0);
    DiagramMap::new(d, e, vec![id, to_one]).expect("a natural map")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalogue_respects_the_grammar_bounds() {
        for (name, c) in catalogue(3) {
            c.check_laws().unwrap();
            assert!(c.object_count() <= 3, "{name}");
            assert!(c.non_identity_morphisms().count() <= 6, "{name}");
        }
        assert_eq!(catalogue(1).len(), 3);
        assert_eq!(catalogue(2).len(), 6);
    }

    #[test]
    fn diagram_enumeration_counts() {
        // J = arrow, values {1, discrete2}: functors 1→1:1, 1→2:2, 2→1:1, 2→2:4
        let j = Arc::new(build::arrow());
        let vals = vec![Arc::new(build::terminal()), Arc::new(build::discrete_n(2))];
        let ds = enumerate_diagrams(&j, &vals, usize::MAX, &mut Budget::default()).unwrap();
        assert_eq!(ds.len(), 1 + 2 + 1 + 4);
    }

    #[test]
    fn random_categories_are_valid() {
        let mut r = rng(7);
        for _ in 0..50 {
            let c = random_category(&mut r, 4, 12);
            c.check_laws().unwrap();
        }
    }

    #[test]
    fn thickening_maps_classify() {
        let d = CatValued::constant(&Arc::new(build::arrow()), &Arc::new(build::ordinal(2)));
        let t = thicken(&d).unwrap();
        let p = crate::weights::classify_weight_map(&t.projection, None).unwrap();
        assert!(p.surjective_equivalence);
        let i = crate::weights::classify_weight_map(&t.inclusion, None).unwrap();
        assert!(i.injective_equivalence);
        let c = crate::weights::classify_weight_map(&t.collapse, None).unwrap();
        assert!(c.equivalence && !c.surjective_equivalence && !c.injective_equivalence);
    }
}
