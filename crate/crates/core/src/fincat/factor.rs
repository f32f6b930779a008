use std::collections::HashMap;
use std::sync::Arc;

use super::{FinCat, FinFunctor, Morphism};

/// `F = G ∘ H` with `H` objective and `G` fully faithful.
#[derive(Clone, Debug)]
pub struct ObjectiveFfFactorization {
    pub objective: FinFunctor,
    pub middle: Arc<FinCat>,
    pub fully_faithful: FinFunctor,
}

/// The (objective, fully faithful) factorization of `F: A → B`.
///
/// The middle category has the objects of `A` and hom-sets
/// `M(a, a') = B(Fa, Fa')`. When `F` is injective on objects each such
/// morphism keeps its name from `B`; otherwise it is named
/// `g@a→a'`.
pub fn factor_objective_ff(f: &FinFunctor) -> ObjectiveFfFactorization {
    let (a, b) = (f.domain(), f.codomain());
    let n = a.object_count();
    let mut seen = vec![false; b.object_count()];
    let injective = f.object_map().iter().all(|&y| !std::mem::replace(&mut seen[y], true));
    let mut morphisms = Vec::new();
    let mut index: HashMap<(usize, usize, usize), usize> = HashMap::new();
    let mut g_map = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for &g in b.hom(f.object(x), f.object(y)) {
                let id = if injective {
                    b.morphism_name(g).to_string()
                } else {
                    format!("{}@{}→{}", b.morphism_name(g), a.object_name(x), a.object_name(y))
                };
                index.insert((x, y, g), morphisms.len());
                g_map.push(g);
                morphisms.push(Morphism { id, src: x, dst: y });
            }
        }
    }
    // keep B's declared order within the middle category when names agree
    if injective {
        let mut order: Vec<usize> = (0..morphisms.len()).collect();
        order.sort_by_key(|&i| g_map[i]);
        let mut remap = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            remap[old] = new;
        }
        morphisms = order.iter().map(|&i| morphisms[i].clone()).collect();
        g_map = order.iter().map(|&i| g_map[i]).collect();
        for v in index.values_mut() {
            *v = remap[*v];
        }
    }
    let identities: Vec<usize> = (0..n)
        .map(|x| index[&(x, x, b.identity(f.object(x)))])
        .collect();
    let mut composition = HashMap::new();
    for (&(x, y, g), &m) in &index {
        for z in 0..n {
            for &h in b.hom(f.object(y), f.object(z)) {
                let hm = index[&(y, z, h)];
                let gh = b.comp(h, g);
                composition.insert((hm, m), index[&(x, z, gh)]);
            }
        }
    }
    let middle = Arc::new(FinCat::from_parts(
        a.objects().to_vec(),
        morphisms,
        identities,
        composition,
    ));
    let h_mor = (0..a.morphism_count())
        .map(|m| index[&(a.src(m), a.dst(m), f.morphism(m))])
        .collect();
    let objective =
        FinFunctor::new_unchecked(a.clone(), middle.clone(), (0..n).collect(), h_mor);
    let fully_faithful = FinFunctor::new_unchecked(
        middle.clone(),
        b.clone(),
        f.object_map().to_vec(),
        g_map,
    );
    ObjectiveFfFactorization {
        objective,
        middle,
        fully_faithful,
    }
}
