//! Standard small categories and the product construction.

use std::collections::HashMap;
use std::sync::Arc;

use super::{FinCat, FinFunctor, Morphism};

pub fn terminal() -> FinCat {
    discrete(&["*"])
}

pub fn empty() -> FinCat {
    FinCat::from_parts(Vec::new(), Vec::new(), Vec::new(), HashMap::new())
}

/// Discrete category; the identity on `x` is named `id_x`.
pub fn discrete<S: AsRef<str>>(names: &[S]) -> FinCat {
    let objects: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
    let morphisms = objects
        .iter()
        .enumerate()
        .map(|(i, o)| Morphism {
            id: format!("id_{o}"),
            src: i,
            dst: i,
        })
        .collect();
    let identities = (0..objects.len()).collect();
    FinCat::from_parts(objects, morphisms, identities, HashMap::new())
}

pub fn discrete_n(n: usize) -> FinCat {
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    discrete(&names)
}

/// A thin category on `names` with an arrow `i → j` exactly when
/// `related(i, j)`; the relation must be a preorder.
pub fn thin<S: AsRef<str>>(names: &[S], related: impl Fn(usize, usize) -> bool) -> FinCat {
    let objects: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
    let n = objects.len();
    let mut morphisms = Vec::new();
    let mut index = HashMap::new();
    let mut identities = vec![0; n];
    for i in 0..n {
        for j in 0..n {
            if i == j || related(i, j) {
                let id = if i == j {
                    format!("id_{}", objects[i])
                } else {
                    format!("{}<{}", objects[i], objects[j])
                };
                index.insert((i, j), morphisms.len());
                if i == j {
                    identities[i] = morphisms.len();
                }
                morphisms.push(Morphism { id, src: i, dst: j });
            }
        }
    }
    let mut composition = HashMap::new();
    for (&(i, j), &f) in &index {
        for k in 0..n {
            if let (Some(&g), Some(&h)) = (index.get(&(j, k)), index.get(&(i, k))) {
                composition.insert((g, f), h);
            }
        }
    }
    FinCat::from_parts(objects, morphisms, identities, composition)
}

/// The ordinal `0 → 1 → … → n-1`.
pub fn ordinal(n: usize) -> FinCat {
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    thin(&names, |i, j| i < j)
}

/// The arrow category `0 → 1`.
pub fn arrow() -> FinCat {
    ordinal(2)
}

/// Every pair of objects uniquely isomorphic.
pub fn indiscrete(n: usize) -> FinCat {
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    thin(&names, |_, _| true)
}

/// One-object category from a monoid table on `0..n` with unit `0`;
/// element `i` is named `names[i]`, `table[a][b]` is `a ∘ b`.
pub fn monoid<S: AsRef<str>>(names: &[S], table: &[Vec<usize>]) -> FinCat {
    let morphisms = names
        .iter()
        .map(|s| Morphism {
            id: s.as_ref().to_string(),
            src: 0,
            dst: 0,
        })
        .collect();
    let mut composition = HashMap::new();
    for (a, row) in table.iter().enumerate() {
        for (b, &c) in row.iter().enumerate() {
            composition.insert((a, b), c);
        }
    }
    FinCat::from_parts(vec!["*".to_string()], morphisms, vec![0], composition)
}

/// ℤ/n as a one-object category; `k` is named `g^k`, the unit `id`.
pub fn cyclic_group(n: usize) -> FinCat {
    assert!(n > 0);
    let names: Vec<String> = (0..n)
        .map(|k| if k == 0 { "id".to_string() } else { format!("g^{k}") })
        .collect();
    let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    monoid(&names, &table)
}

/// One object with an idempotent `e`.
pub fn free_idempotent() -> FinCat {
    monoid(&["id", "e"], &[vec![0, 1], vec![1, 1]])
}

/// Two objects with two parallel arrows `u, v: a → b`.
pub fn parallel_pair() -> FinCat {
    let objects = vec!["a".to_string(), "b".to_string()];
    let morphisms = vec![
        Morphism { id: "id_a".into(), src: 0, dst: 0 },
        Morphism { id: "id_b".into(), src: 1, dst: 1 },
        Morphism { id: "u".into(), src: 0, dst: 1 },
        Morphism { id: "v".into(), src: 0, dst: 1 },
    ];
    FinCat::from_parts(objects, morphisms, vec![0, 1], HashMap::new())
}

/// The cospan `a → c ← b` with legs `p: a → c` and `q: b → c`.
pub fn cospan() -> FinCat {
    let objects = vec!["a".to_string(), "b".to_string(), "c".to_string()];
    let morphisms = vec![
        Morphism { id: "id_a".into(), src: 0, dst: 0 },
        Morphism { id: "id_b".into(), src: 1, dst: 1 },
        Morphism { id: "id_c".into(), src: 2, dst: 2 },
        Morphism { id: "p".into(), src: 0, dst: 2 },
        Morphism { id: "q".into(), src: 1, dst: 2 },
    ];
    FinCat::from_parts(objects, morphisms, vec![0, 1, 2], HashMap::new())
}

/// The span `a ← c → b` with legs `p: c → a` and `q: c → b`.
pub fn span() -> FinCat {
    let objects = vec!["a".to_string(), "b".to_string(), "c".to_string()];
    let morphisms = vec![
        Morphism { id: "id_a".into(), src: 0, dst: 0 },
        Morphism { id: "id_b".into(), src: 1, dst: 1 },
        Morphism { id: "id_c".into(), src: 2, dst: 2 },
        Morphism { id: "p".into(), src: 2, dst: 0 },
        Morphism { id: "q".into(), src: 2, dst: 1 },
    ];
    FinCat::from_parts(objects, morphisms, vec![0, 1, 2], HashMap::new())
}

/// The opposite category; names are kept.
pub fn opposite(c: &FinCat) -> FinCat {
    let morphisms = c
        .morphisms()
        .iter()
        .map(|m| Morphism {
            id: m.id.clone(),
            src: m.dst,
            dst: m.src,
        })
        .collect();
    let composition = c
        .composition_table()
        .iter()
        .map(|(&(g, f), &h)| ((f, g), h))
        .collect();
    FinCat::from_parts(
        c.objects().to_vec(),
        morphisms,
        c.identities().to_vec(),
        composition,
    )
}

pub(crate) fn tuple_name<S: AsRef<str>>(parts: &[S]) -> String {
    let inner: Vec<&str> = parts.iter().map(|s| s.as_ref()).collect();
    format!("({})", inner.join(","))
}

/// Decodes lexicographic tuple indices for a product with the given factor
/// sizes.
pub(crate) fn decode_tuple(mut index: usize, sizes: &[usize], out: &mut [usize]) {
    for i in (0..sizes.len()).rev() {
        out[i] = index % sizes[i];
        index /= sizes[i];
    }
}

pub(crate) fn encode_tuple(parts: &[usize], sizes: &[usize]) -> usize {
    parts
        .iter()
        .zip(sizes)
        .fold(0, |acc, (&p, &s)| acc * s + p)
}

/// The product category with objects and morphisms in lexicographic tuple
/// order, named `(x1,…,xn)`.
pub fn product(factors: &[Arc<FinCat>]) -> FinCat {
    product_named(factors, |p| tuple_name(p), |p| tuple_name(p))
}

/// Product with custom tuple naming.
pub fn product_named(
    factors: &[Arc<FinCat>],
    object_name: impl Fn(&[&str]) -> String,
    morphism_name: impl Fn(&[&str]) -> String,
) -> FinCat {
    let obj_sizes: Vec<usize> = factors.iter().map(|c| c.object_count()).collect();
    let mor_sizes: Vec<usize> = factors.iter().map(|c| c.morphism_count()).collect();
    let n_obj: usize = obj_sizes.iter().product();
    let n_mor: usize = mor_sizes.iter().product();
    let k = factors.len();
    let mut tuple = vec![0; k];
    let mut objects = Vec::with_capacity(n_obj);
    for i in 0..n_obj {
        decode_tuple(i, &obj_sizes, &mut tuple);
        let names: Vec<&str> = (0..k).map(|j| factors[j].object_name(tuple[j])).collect();
        objects.push(object_name(&names));
    }
    let mut morphisms = Vec::with_capacity(n_mor);
    let mut src = vec![0; k];
    let mut dst = vec![0; k];
    for i in 0..n_mor {
        decode_tuple(i, &mor_sizes, &mut tuple);
        for j in 0..k {
            src[j] = factors[j].src(tuple[j]);
            dst[j] = factors[j].dst(tuple[j]);
        }
        let names: Vec<&str> = (0..k).map(|j| factors[j].morphism_name(tuple[j])).collect();
        morphisms.push(Morphism {
            id: morphism_name(&names),
            src: encode_tuple(&src, &obj_sizes),
            dst: encode_tuple(&dst, &obj_sizes),
        });
    }
    let identities = (0..n_obj)
        .map(|i| {
            decode_tuple(i, &obj_sizes, &mut tuple);
            let ids: Vec<usize> = (0..k).map(|j| factors[j].identity(tuple[j])).collect();
            encode_tuple(&ids, &mor_sizes)
        })
        .collect();
    let mut composition = HashMap::new();
    // composable pairs of the product are tuples of composable pairs
    let pair_lists: Vec<Vec<(usize, usize, usize)>> =
        factors.iter().map(|c| c.sorted_composition()).collect();
    let pair_sizes: Vec<usize> = pair_lists.iter().map(Vec::len).collect();
    let n_pairs: usize = pair_sizes.iter().product();
    let mut g = vec![0; k];
    let mut f = vec![0; k];
    let mut h = vec![0; k];
    for i in 0..n_pairs {
        decode_tuple(i, &pair_sizes, &mut tuple);
        for j in 0..k {
            let (gj, fj, hj) = pair_lists[j][tuple[j]];
            g[j] = gj;
            f[j] = fj;
            h[j] = hj;
        }
        composition.insert(
            (encode_tuple(&g, &mor_sizes), encode_tuple(&f, &mor_sizes)),
            encode_tuple(&h, &mor_sizes),
        );
    }
    FinCat::from_parts(objects, morphisms, identities, composition)
}

/// Projections out of a product built by [`product`] or [`product_named`].
pub fn projections(product: &Arc<FinCat>, factors: &[Arc<FinCat>]) -> Vec<FinFunctor> {
    let obj_sizes: Vec<usize> = factors.iter().map(|c| c.object_count()).collect();
    let mor_sizes: Vec<usize> = factors.iter().map(|c| c.morphism_count()).collect();
    let k = factors.len();
    let mut tuple = vec![0; k];
    let mut obj_maps = vec![Vec::with_capacity(product.object_count()); k];
    for i in 0..product.object_count() {
        decode_tuple(i, &obj_sizes, &mut tuple);
        for j in 0..k {
            obj_maps[j].push(tuple[j]);
        }
    }
    let mut mor_maps = vec![Vec::with_capacity(product.morphism_count()); k];
    for i in 0..product.morphism_count() {
        decode_tuple(i, &mor_sizes, &mut tuple);
        for j in 0..k {
            mor_maps[j].push(tuple[j]);
        }
    }
    obj_maps
        .into_iter()
        .zip(mor_maps)
        .zip(factors)
        .map(|((o, m), c)| FinFunctor::new_unchecked(product.clone(), c.clone(), o, m))
        .collect()
}

/// Index of a tuple of objects in a product built by [`product`].
pub fn product_object(factors: &[Arc<FinCat>], parts: &[usize]) -> usize {
    let sizes: Vec<usize> = factors.iter().map(|c| c.object_count()).collect();
    encode_tuple(parts, &sizes)
}

/// Index of a tuple of morphisms in a product built by [`product`].
pub fn product_morphism(factors: &[Arc<FinCat>], parts: &[usize]) -> usize {
    let sizes: Vec<usize> = factors.iter().map(|c| c.morphism_count()).collect();
    encode_tuple(parts, &sizes)
}

/// `C^n`.
pub fn power(c: &Arc<FinCat>, n: usize) -> FinCat {
    let factors = vec![c.clone(); n];
    product(&factors)
}

/// Disjoint union; names are taken verbatim and must not collide.
pub fn coproduct(summands: &[Arc<FinCat>]) -> FinCat {
    let mut objects = Vec::new();
    let mut morphisms = Vec::new();
    let mut identities = Vec::new();
    let mut composition = HashMap::new();
    for c in summands {
        let (o0, m0) = (objects.len(), morphisms.len());
        objects.extend(c.objects().iter().cloned());
        morphisms.extend(c.morphisms().iter().map(|m| Morphism {
            id: m.id.clone(),
            src: m.src + o0,
            dst: m.dst + o0,
        }));
        identities.extend(c.identities().iter().map(|&i| i + m0));
        for (&(g, f), &h) in c.composition_table() {
            composition.insert((g + m0, f + m0), h + m0);
        }
    }
    FinCat::from_parts(objects, morphisms, identities, composition)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_categories_satisfy_the_laws() {
        for c in [
            terminal(),
            empty(),
            discrete_n(3),
            ordinal(4),
            indiscrete(3),
            cyclic_group(5),
            free_idempotent(),
            parallel_pair(),
            cospan(),
            span(),
        ] {
            c.check_laws().unwrap();
            opposite(&c).check_laws().unwrap();
        }
        assert_eq!(ordinal(3).morphism_count(), 6);
        assert_eq!(indiscrete(2).morphism_count(), 4);
    }

    #[test]
    fn product_sizes_and_projections() {
        let a = Arc::new(arrow());
        let b = Arc::new(cyclic_group(2));
        let p = Arc::new(product(&[a.clone(), b.clone()]));
        p.check_laws().unwrap();
        assert_eq!(p.object_count(), 2);
        assert_eq!(p.morphism_count(), 6);
        for pr in projections(&p, &[a, b]) {
            pr.check().unwrap();
        }
        let empty_product = product(&[]);
        assert_eq!(empty_product.object_count(), 1);
        assert_eq!(empty_product.morphism_count(), 1);
        empty_product.check_laws().unwrap();
    }

    #[test]
    fn coproduct_is_disjoint_union() {
        let c = coproduct(&[Arc::new(arrow()), Arc::new(cyclic_group(3).renamed(
            |_, o| format!("z{o}"),
            |_, m| format!("z{m}"),
        ))]);
        c.check_laws().unwrap();
        assert_eq!(c.object_count(), 3);
        assert_eq!(c.morphism_count(), 6);
    }
}
