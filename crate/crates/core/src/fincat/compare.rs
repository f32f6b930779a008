use std::collections::BTreeMap;
use std::sync::Arc;

use crate::budget::Budget;
use crate::error::Result;

use super::{pseudo_inverse, skeleton, FinCat, FinFunctor, FinNatTrans};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComparisonMode {
    Isomorphism,
    Equivalence,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceWitness {
    pub forward: FinFunctor,
    pub backward: FinFunctor,
    /// `1 ⇒ backward ∘ forward`
    pub unit: FinNatTrans,
    /// `forward ∘ backward ⇒ 1`
    pub counit: FinNatTrans,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComparisonResult {
    Isomorphic(FinFunctor),
    Equivalent(EquivalenceWitness),
    /// The search space was exhausted without finding a witness.
    Unrelated,
}

impl ComparisonResult {
    pub fn holds(&self) -> bool {
        !matches!(self, ComparisonResult::Unrelated)
    }
}

pub fn compare_categories(
    a: &Arc<FinCat>,
    b: &Arc<FinCat>,
    mode: ComparisonMode,
    budget: &mut Budget,
) -> Result<ComparisonResult> {
    match mode {
        ComparisonMode::Isomorphism => Ok(match find_isomorphism(a, b, budget)? {
            Some(f) => ComparisonResult::Isomorphic(f),
            None => ComparisonResult::Unrelated,
        }),
        ComparisonMode::Equivalence => {
            let (ska, _, ra) = skeleton(a);
            let (skb, ib, _) = skeleton(b);
            let Some(iso) = find_isomorphism(&ska, &skb, budget)? else {
                return Ok(ComparisonResult::Unrelated);
            };
            let forward = ra.then(&iso)?.then(&ib)?;
            let p = pseudo_inverse(&forward).expect("composite of equivalences");
            Ok(ComparisonResult::Equivalent(EquivalenceWitness {
                forward,
                backward: p.inverse,
                unit: p.unit,
                counit: p.counit,
            }))
        }
    }
}

/// Colour refinement on objects; colours are comparable across `a` and `b`.
fn object_colours(a: &FinCat, b: &FinCat) -> (Vec<usize>, Vec<usize>) {
    let base = |c: &FinCat, x: usize| {
        let endo = c.hom(x, x);
        vec![
            endo.len(),
            endo.iter().filter(|&&f| c.is_iso(f)).count(),
            c.outgoing(x).len(),
            c.incoming(x).len(),
        ]
    };
    let mut keys: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut intern = |k: Vec<usize>| {
        let n = keys.len();
        *keys.entry(k).or_insert(n)
    };
    let mut ca: Vec<usize> = (0..a.object_count()).map(|x| intern(base(a, x))).collect();
    let mut cb: Vec<usize> = (0..b.object_count()).map(|x| intern(base(b, x))).collect();
    for _ in 0..a.object_count().max(1) {
        let refine = |c: &FinCat, col: &[usize], x: usize| {
            let mut sig: Vec<(usize, usize, usize)> = (0..c.object_count())
                .filter(|&y| y != x && (!c.hom(x, y).is_empty() || !c.hom(y, x).is_empty()))
                .map(|y| (col[y], c.hom(x, y).len(), c.hom(y, x).len()))
                .collect();
            sig.sort_unstable();
            let mut k = vec![col[x]];
            for (p, q, r) in sig {
                k.extend([p, q, r]);
            }
            k
        };
        let mut fresh: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        let mut intern2 = |k: Vec<usize>| {
            let n = fresh.len();
            *fresh.entry(k).or_insert(n)
        };
        let na: Vec<usize> = (0..a.object_count()).map(|x| intern2(refine(a, &ca, x))).collect();
        let nb: Vec<usize> = (0..b.object_count()).map(|x| intern2(refine(b, &cb, x))).collect();
        let stable = fresh.len() == distinct(&ca, &cb);
        ca = na;
        cb = nb;
        if stable {
            break;
        }
    }
    (ca, cb)
}

fn distinct(a: &[usize], b: &[usize]) -> usize {
    let mut v: Vec<usize> = a.iter().chain(b).copied().collect();
    v.sort_unstable();
    v.dedup();
    v.len()
}

fn morphism_colours(a: &FinCat, b: &FinCat, oa: &[usize], ob: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let sig = |c: &FinCat, col: &[usize]| -> Vec<Vec<usize>> {
        let mut fact = vec![0; c.morphism_count()];
        let mut left_fix = vec![0; c.morphism_count()];
        let mut right_fix = vec![0; c.morphism_count()];
        for (&(g, f), &h) in c.composition_table() {
            if c.is_identity(g) || c.is_identity(f) {
                continue;
            }
            fact[h] += 1;
            if h == f {
                left_fix[f] += 1;
            }
            if h == g {
                right_fix[g] += 1;
            }
        }
        (0..c.morphism_count())
            .map(|m| {
                vec![
                    col[c.src(m)],
                    col[c.dst(m)],
                    c.is_identity(m) as usize,
                    c.is_iso(m) as usize,
                    fact[m],
                    left_fix[m],
                    right_fix[m],
                ]
            })
            .collect()
    };
    let mut keys: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut intern = |k: Vec<usize>| {
        let n = keys.len();
        *keys.entry(k).or_insert(n)
    };
    let ka: Vec<usize> = sig(a, oa).into_iter().map(&mut intern).collect();
    let kb: Vec<usize> = sig(b, ob).into_iter().map(&mut intern).collect();
    (ka, kb)
}

fn profile(cols: &[usize]) -> Vec<usize> {
    let mut v = cols.to_vec();
    v.sort_unstable();
    v
}

/// Backtracking search for an isomorphism `a → b`.
pub fn find_isomorphism(
    a: &Arc<FinCat>,
    b: &Arc<FinCat>,
    budget: &mut Budget,
) -> Result<Option<FinFunctor>> {
    if a.object_count() != b.object_count() || a.morphism_count() != b.morphism_count() {
        return Ok(None);
    }
    let (oa, ob) = object_colours(a, b);
    if profile(&oa) != profile(&ob) {
        return Ok(None);
    }
    let (ma, mb) = morphism_colours(a, b, &oa, &ob);
    if profile(&ma) != profile(&mb) {
        return Ok(None);
    }
    let mut search = IsoSearch {
        a,
        b,
        oa: &oa,
        ob: &ob,
        ma: &ma,
        mb: &mb,
        obj_img: vec![usize::MAX; a.object_count()],
        obj_used: vec![false; b.object_count()],
        mor_img: vec![usize::MAX; a.morphism_count()],
        mor_used: vec![false; b.morphism_count()],
        trail: Vec::new(),
    };
    // rarest colour classes first
    let mut class_size = BTreeMap::new();
    for &c in &oa {
        *class_size.entry(c).or_insert(0usize) += 1;
    }
    let mut order: Vec<usize> = (0..a.object_count()).collect();
    order.sort_by_key(|&x| (class_size[&oa[x]], x));
    let mut mor_order: Vec<usize> = a.non_identity_morphisms().collect();
    mor_order.sort_by_key(|&m| (a.src(m), a.dst(m), m));
    if search.objects(&order, 0, &mor_order, budget)? {
        let f = FinFunctor::new_unchecked(a.clone(), b.clone(), search.obj_img, search.mor_img);
        debug_assert!(f.check().is_ok());
        Ok(Some(f))
    } else {
        Ok(None)
    }
}

struct IsoSearch<'a> {
    a: &'a FinCat,
    b: &'a FinCat,
    oa: &'a [usize],
    ob: &'a [usize],
    ma: &'a [usize],
    mb: &'a [usize],
    obj_img: Vec<usize>,
    obj_used: Vec<bool>,
    mor_img: Vec<usize>,
    mor_used: Vec<bool>,
    trail: Vec<usize>,
}

impl IsoSearch<'_> {
    fn objects(
        &mut self,
        order: &[usize],
        k: usize,
        mor_order: &[usize],
        budget: &mut Budget,
    ) -> Result<bool> {
        if k == order.len() {
            for x in 0..self.a.object_count() {
                let (i, j) = (self.a.identity(x), self.b.identity(self.obj_img[x]));
                self.mor_img[i] = j;
                self.mor_used[j] = true;
            }
            if self.morphisms(mor_order, 0, budget)? {
                return Ok(true);
            }
            for x in 0..self.a.object_count() {
                let (i, j) = (self.a.identity(x), self.b.identity(self.obj_img[x]));
                self.mor_img[i] = usize::MAX;
                self.mor_used[j] = false;
            }
            return Ok(false);
        }
        let x = order[k];
        for y in 0..self.b.object_count() {
            if self.obj_used[y] || self.ob[y] != self.oa[x] {
                continue;
            }
            budget.tick("searching for an isomorphism")?;
            let consistent = order[..k].iter().all(|&z| {
                let w = self.obj_img[z];
                self.a.hom(x, z).len() == self.b.hom(y, w).len()
                    && self.a.hom(z, x).len() == self.b.hom(w, y).len()
            }) && self.a.hom(x, x).len() == self.b.hom(y, y).len();
            if !consistent {
                continue;
            }
            self.obj_img[x] = y;
            self.obj_used[y] = true;
            if self.objects(order, k + 1, mor_order, budget)? {
                return Ok(true);
            }
            self.obj_img[x] = usize::MAX;
            self.obj_used[y] = false;
        }
        Ok(false)
    }

    fn morphisms(&mut self, order: &[usize], k: usize, budget: &mut Budget) -> Result<bool> {
        let mut k = k;
        while k < order.len() && self.mor_img[order[k]] != usize::MAX {
            k += 1;
        }
        if k == order.len() {
            return Ok(true);
        }
        let m = order[k];
        let (s, d) = (self.obj_img[self.a.src(m)], self.obj_img[self.a.dst(m)]);
        let candidates: Vec<usize> = self.b.hom(s, d).to_vec();
        for t in candidates {
            if self.mor_used[t] || self.mb[t] != self.ma[m] {
                continue;
            }
            budget.tick("searching for an isomorphism")?;
            let mark = self.trail.len();
            if self.assign(m, t) && self.morphisms(order, k + 1, budget)? {
                return Ok(true);
            }
            self.undo(mark);
        }
        Ok(false)
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let m = self.trail.pop().unwrap();
            self.mor_used[self.mor_img[m]] = false;
            self.mor_img[m] = usize::MAX;
        }
    }

    /// Assigns `m ↦ t` and closes under composition.
    fn assign(&mut self, m: usize, t: usize) -> bool {
        let mut queue = vec![(m, t)];
        while let Some((m, t)) = queue.pop() {
            if self.mor_img[m] != usize::MAX {
                if self.mor_img[m] != t {
                    return false;
                }
                continue;
            }
            if self.mor_used[t] || self.mb[t] != self.ma[m] {
                return false;
            }
            self.mor_img[m] = t;
            self.mor_used[t] = true;
            self.trail.push(m);
            for &g in self.a.outgoing(self.a.dst(m)) {
                let gi = self.mor_img[g];
                if gi != usize::MAX {
                    queue.push((self.a.comp(g, m), self.b.comp(gi, t)));
                }
            }
            for &f in self.a.incoming(self.a.src(m)) {
                let fi = self.mor_img[f];
                if fi != usize::MAX {
                    queue.push((self.a.comp(m, f), self.b.comp(t, fi)));
                }
            }
        }
        true
    }
}
