use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::fincat::build::{self, decode_tuple, encode_tuple};
use crate::fincat::{FinCat, FinFunctor};

use super::omega::{enumerate_trees, OmegaTree};

/// An arity-indexed family of finite categories of operation symbols.
/// Absent arities stand for the empty category.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    arities: BTreeMap<usize, Arc<FinCat>>,
}

impl Signature {
    pub fn new(arities: BTreeMap<usize, Arc<FinCat>>) -> Self {
        Signature { arities }
    }

    pub fn empty() -> Self {
        Signature::default()
    }

    /// Discrete signature from `(symbol, arity)` pairs.
    pub fn discrete<S: AsRef<str>>(symbols: &[(S, usize)]) -> Self {
        let mut by_arity: BTreeMap<usize, Vec<String>> = BTreeMap::new();
        for (s, n) in symbols {
            by_arity.entry(*n).or_default().push(s.as_ref().to_string());
        }
        Signature {
            arities: by_arity
                .into_iter()
                .map(|(n, names)| (n, Arc::new(build::discrete(&names))))
                .collect(),
        }
    }

    pub fn arities(&self) -> &BTreeMap<usize, Arc<FinCat>> {
        &self.arities
    }

    pub fn get(&self, n: usize) -> Option<&Arc<FinCat>> {
        self.arities.get(&n)
    }

    /// Arities whose category of symbols is nonempty.
    pub fn support(&self) -> Vec<usize> {
        self.arities
            .iter()
            .filter(|(_, c)| c.object_count() > 0)
            .map(|(&n, _)| n)
            .collect()
    }

    pub fn is_discrete(&self) -> bool {
        self.arities
            .values()
            .all(|c| c.morphism_count() == c.object_count())
    }

    /// Object names per arity, i.e. the underlying signature of sets.
    pub fn object_symbols(&self) -> BTreeMap<usize, Vec<String>> {
        self.arities
            .iter()
            .filter(|(_, c)| c.object_count() > 0)
            .map(|(&n, c)| (n, c.objects().to_vec()))
            .collect()
    }
}

/// One summand `[ℕ,Cat](α̂, Σ) × C^{|α|}` of a truncated free algebra.
#[derive(Clone, Debug)]
pub struct FreeSummand {
    pub tree: OmegaTree,
    pub object_offset: usize,
    pub morphism_offset: usize,
    pub factors: Vec<Arc<FinCat>>,
}

/// The free algebra truncated at `bound` internal nodes.
#[derive(Clone, Debug)]
pub struct FreeAlgebra {
    pub category: Arc<FinCat>,
    pub bound: usize,
    /// whether no tree was cut off by the bound
    pub complete: bool,
    pub summands: Vec<FreeSummand>,
}

impl FreeAlgebra {
    pub fn object_count(&self) -> usize {
        self.category.object_count()
    }
}

/// Renders a labeled tree as an s-expression; node labels are read from
/// `parts` in preorder first, then leaves left to right.
pub(crate) fn render_tree(tree: &OmegaTree, parts: &[&str]) -> String {
    fn go(t: &OmegaTree, labels: &[&str], leaves: &[&str], li: &mut usize, vi: &mut usize, out: &mut String) {
        match t {
            OmegaTree::Leaf => {
                out.push_str(leaves[*vi]);
                *vi += 1;
            }
            OmegaTree::Node(cs) => {
                out.push('(');
                out.push_str(labels[*li]);
                *li += 1;
                for c in cs {
                    out.push(' ');
                    go(c, labels, leaves, li, vi, out);
                }
                out.push(')');
            }
        }
    }
    let m = tree.nodes();
    let mut out = String::new();
    go(tree, &parts[..m], &parts[m..], &mut 0, &mut 0, &mut out);
    out
}

fn summand_factors(sig: &Signature, tree: &OmegaTree, c: &Arc<FinCat>) -> Option<Vec<Arc<FinCat>>> {
    let mut factors = Vec::new();
    for a in tree.node_arities() {
        factors.push(sig.get(a)?.clone());
    }
    factors.extend(std::iter::repeat_n(c.clone(), tree.leaves()));
    Some(factors)
}

/// `C* = Σ_α [ℕ,Cat](α̂, Σ) × C^{|α|}` over trees with at most `bound`
/// internal nodes.
pub fn eval_free_algebra(sig: &Signature, c: &Arc<FinCat>, bound: usize, budget: &mut Budget) -> Result<FreeAlgebra> {
    let support = sig.support();
    let trees = enumerate_trees(bound, &support, budget)?;
    let mut summands = Vec::with_capacity(trees.len());
    let mut parts = Vec::with_capacity(trees.len());
    let (mut objs, mut mors) = (0, 0);
    for tree in trees {
        let factors = summand_factors(sig, &tree, c).expect("trees use supported arities");
        let n_obj: usize = factors.iter().map(|f| f.object_count()).product();
        let n_mor: usize = factors.iter().map(|f| f.morphism_count()).product();
        budget.charge((n_obj + n_mor) as u64, "building the free algebra")?;
        let t = tree.clone();
        let t2 = tree.clone();
        let p = build::product_named(&factors, move |names| render_tree(&t, names), move |names| {
            render_tree(&t2, names)
        });
        summands.push(FreeSummand {
            tree,
            object_offset: objs,
            morphism_offset: mors,
            factors,
        });
        objs += n_obj;
        mors += n_mor;
        parts.push(Arc::new(p));
    }
    let complete = support.iter().all(|&a| a == 0) && (support.is_empty() || bound >= 1);
    Ok(FreeAlgebra {
        category: Arc::new(build::coproduct(&parts)),
        bound,
        complete,
        summands,
    })
}

/// The discrete category on `x1, …, xn`.
pub fn variables(n: usize) -> Arc<FinCat> {
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    Arc::new(build::discrete(&names))
}

/// `(ZKΣ)(n)`, the free algebra on the discrete category with `n` objects.
pub fn eval_zk(sig: &Signature, n: usize, bound: usize, budget: &mut Budget) -> Result<FreeAlgebra> {
    eval_free_algebra(sig, &variables(n), bound, budget)
}

/// `Σ_α |labelings(α)| · n^{|α|}` over trees with at most `bound` nodes,
/// counted without building any category.
pub fn zk_object_count(sig: &Signature, n: usize, bound: usize, budget: &mut Budget) -> Result<usize> {
    let trees = enumerate_trees(bound, &sig.support(), budget)?;
    Ok(trees
        .iter()
        .map(|t| {
            let labels: usize = t
                .node_arities()
                .iter()
                .map(|&a| sig.get(a).map_or(0, |c| c.object_count()))
                .product();
            labels * n.pow(t.leaves() as u32)
        })
        .sum())
}

/// A morphism of signatures: one functor `Σ(n) → Σ′(n)` per arity.
#[derive(Clone, Debug)]
pub struct SignatureMap {
    pub source: Signature,
    pub target: Signature,
    pub components: BTreeMap<usize, FinFunctor>,
}

impl SignatureMap {
    pub fn new(source: Signature, target: Signature, components: BTreeMap<usize, FinFunctor>) -> Result<Self> {
        for (&n, c) in source.arities() {
            let f = components
                .get(&n)
                .ok_or_else(|| Error::ArityMismatch(format!("no component at arity {n}")))?;
            let t = target
                .get(n)
                .ok_or_else(|| Error::ArityMismatch(format!("target has no symbols of arity {n}")))?;
            if **f.domain() != **c || **f.codomain() != **t {
                return Err(Error::TypeMismatch(format!("component at arity {n} has the wrong type")));
            }
        }
        Ok(SignatureMap {
            source,
            target,
            components,
        })
    }

    /// Whether every component is bijective on objects.
    pub fn is_objective(&self) -> bool {
        self.components.iter().all(|(&n, f)| {
            let t = self.target.get(n).map_or(0, |c| c.object_count());
            let mut seen = vec![false; t];
            f.object_map().iter().all(|&y| !std::mem::replace(&mut seen[y], true)) && seen.iter().all(|&s| s)
        }) && self
            .target
            .support()
            .iter()
            .all(|n| self.source.support().contains(n))
    }
}

/// The functor between truncated free algebras induced by a signature map.
pub fn induced_free_map(
    map: &SignatureMap,
    source: &FreeAlgebra,
    target: &FreeAlgebra,
) -> Result<FinFunctor> {
    let index: HashMap<&OmegaTree, usize> = target
        .summands
        .iter()
        .enumerate()
        .map(|(i, s)| (&s.tree, i))
        .collect();
    let mut objects = Vec::with_capacity(source.category.object_count());
    let mut morphisms = Vec::with_capacity(source.category.morphism_count());
    for s in &source.summands {
        let &ti = index
            .get(&s.tree)
            .ok_or_else(|| Error::TypeMismatch(format!("tree {} is missing from the target", s.tree)))?;
        let t = &target.summands[ti];
        let arities = s.tree.node_arities();
        let m = arities.len();
        let comp = |i: usize| -> Option<&FinFunctor> {
            if i < m {
                map.components.get(&arities[i])
            } else {
                None
            }
        };
        let sizes = |fs: &[Arc<FinCat>], ob: bool| -> Vec<usize> {
            fs.iter()
                .map(|f| if ob { f.object_count() } else { f.morphism_count() })
                .collect()
        };
        let (so, sm) = (sizes(&s.factors, true), sizes(&s.factors, false));
        let (to, tm) = (sizes(&t.factors, true), sizes(&t.factors, false));
        let mut tuple = vec![0; s.factors.len()];
        for i in 0..so.iter().product::<usize>() {
            decode_tuple(i, &so, &mut tuple);
            for (k, x) in tuple.iter_mut().enumerate() {
                if let Some(f) = comp(k) {
                    *x = f.object(*x);
                }
            }
            objects.push(t.object_offset + encode_tuple(&tuple, &to));
        }
        for i in 0..sm.iter().product::<usize>() {
            decode_tuple(i, &sm, &mut tuple);
            for (k, x) in tuple.iter_mut().enumerate() {
                if let Some(f) = comp(k) {
                    *x = f.morphism(*x);
                }
            }
            morphisms.push(t.morphism_offset + encode_tuple(&tuple, &tm));
        }
    }
    FinFunctor::new(source.category.clone(), target.category.clone(), objects, morphisms)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binary() -> Signature {
        Signature::discrete(&[("m", 2)])
    }

    #[test]
    fn empty_signature_gives_back_the_carrier() {
        let c = Arc::new(build::arrow());
        let f = eval_free_algebra(&Signature::empty(), &c, 4, &mut Budget::default()).unwrap();
        assert_eq!(f.category.object_count(), 2);
        assert_eq!(f.category.morphism_count(), 3);
        assert!(f.complete);
        let z = eval_zk(&Signature::empty(), 3, 2, &mut Budget::default()).unwrap();
        assert_eq!(z.object_count(), 3);
    }

    #[test]
    fn one_constant_on_the_terminal_category() {
        let sig = Signature::discrete(&[("e", 0)]);
        let one = Arc::new(build::terminal());
        let f = eval_free_algebra(&sig, &one, 1, &mut Budget::default()).unwrap();
        assert_eq!(f.object_count(), 2);
        assert!(f.category.object_id("(e)").is_some());
    }

    #[test]
    fn binary_counts() {
        let mut b = Budget::default();
        assert_eq!(eval_zk(&binary(), 1, 3, &mut b).unwrap().object_count(), 9);
        assert_eq!(eval_zk(&binary(), 2, 3, &mut b).unwrap().object_count(), 102);
        assert_eq!(zk_object_count(&binary(), 2, 3, &mut b).unwrap(), 102);
    }

    #[test]
    fn names_are_s_expressions() {
        let z = eval_zk(&binary(), 2, 2, &mut Budget::default()).unwrap();
        assert!(z.category.object_id("(m x1 (m x2 x1))").is_some());
        z.category.check_laws().unwrap();
    }

    #[test]
    fn non_discrete_signatures_are_handled() {
        let sig = Signature::new(BTreeMap::from([(1, Arc::new(build::arrow()))]));
        let z = eval_zk(&sig, 1, 2, &mut Budget::default()).unwrap();
        // trees: x, f(x) with f in {0,1}, f(g(x))
        assert_eq!(z.object_count(), 1 + 2 + 4);
        assert_eq!(z.category.morphism_count(), 1 + 3 + 9);
        z.category.check_laws().unwrap();
    }

    #[test]
    fn induced_map_of_a_renaming_is_bijective() {
        let s = Signature::discrete(&[("m", 2), ("e", 0)]);
        let t = Signature::discrete(&[("p", 2), ("u", 0)]);
        let comps = [0, 2]
            .into_iter()
            .map(|n| {
                let (a, b) = (s.get(n).unwrap().clone(), t.get(n).unwrap().clone());
                (n, FinFunctor::new(a, b, vec![0], vec![0]).unwrap())
            })
            .collect();
        let map = SignatureMap::new(s.clone(), t.clone(), comps).unwrap();
        assert!(map.is_objective());
        let mut b = Budget::default();
        let (zs, zt) = (eval_zk(&s, 2, 2, &mut b).unwrap(), eval_zk(&t, 2, 2, &mut b).unwrap());
        let f = induced_free_map(&map, &zs, &zt).unwrap();
        let mut seen = vec![false; zt.object_count()];
        assert!(f.object_map().iter().all(|&y| !std::mem::replace(&mut seen[y], true)));
        assert!(seen.into_iter().all(|x| x));
    }
}
