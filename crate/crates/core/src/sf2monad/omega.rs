use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::Result;

/// A finite planar tree: a leaf `⋆`, or a node with an ordered list of
/// children (possibly empty).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OmegaTree {
    Leaf,
    Node(Vec<OmegaTree>),
}

impl OmegaTree {
    /// `|α|`
    pub fn leaves(&self) -> usize {
        match self {
            OmegaTree::Leaf => 1,
            OmegaTree::Node(cs) => cs.iter().map(OmegaTree::leaves).sum(),
        }
    }

    pub fn nodes(&self) -> usize {
        match self {
            OmegaTree::Leaf => 0,
            OmegaTree::Node(cs) => 1 + cs.iter().map(OmegaTree::nodes).sum::<usize>(),
        }
    }

    /// `α̂` as multiplicities: arity `n` ↦ number of nodes of arity `n`.
    pub fn hat(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for a in self.node_arities() {
            *out.entry(a).or_insert(0) += 1;
        }
        out
    }

    /// Node arities in preorder; this is the order in which labelings are
    /// listed.
    pub fn node_arities(&self) -> Vec<usize> {
        fn go(t: &OmegaTree, out: &mut Vec<usize>) {
            if let OmegaTree::Node(cs) = t {
                out.push(cs.len());
                for c in cs {
                    go(c, out);
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut out);
        out
    }
}

impl fmt::Display for OmegaTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OmegaTree::Leaf => f.write_str("*"),
            OmegaTree::Node(cs) => {
                f.write_str("(")?;
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// A tree together with its cached `|α|` and `α̂`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaEntry {
    pub tree: OmegaTree,
    pub leaves: usize,
    pub nodes: usize,
    pub hat: BTreeMap<usize, usize>,
}

impl OmegaEntry {
    pub fn new(tree: OmegaTree) -> Self {
        OmegaEntry {
            leaves: tree.leaves(),
            nodes: tree.nodes(),
            hat: tree.hat(),
            tree,
        }
    }
}

/// Trees with at most `max_nodes` internal nodes, each of arity at most
/// `max_arity`. Node arity is otherwise unbounded, so the bound is needed
/// for a finite answer.
pub fn enumerate_omega(max_nodes: usize, max_arity: usize, budget: &mut Budget) -> Result<Vec<OmegaEntry>> {
    let arities: Vec<usize> = (0..=max_arity).collect();
    Ok(enumerate_trees(max_nodes, &arities, budget)?
        .into_iter()
        .map(OmegaEntry::new)
        .collect())
}

/// Trees with at most `max_nodes` internal nodes whose node arities lie in
/// `arities`. Ordered by node count, then root arity, then the split of the
/// remaining nodes among children (lexicographic), then children in order.
pub fn enumerate_trees(max_nodes: usize, arities: &[usize], budget: &mut Budget) -> Result<Vec<OmegaTree>> {
    let mut arities = arities.to_vec();
    arities.sort_unstable();
    arities.dedup();
    let mut memo: HashMap<usize, Vec<OmegaTree>> = HashMap::new();
    let mut out = Vec::new();
    for n in 0..=max_nodes {
        let level = exact(n, &arities, &mut memo, budget)?;
        out.extend(level);
    }
    Ok(out)
}

fn exact(
    n: usize,
    arities: &[usize],
    memo: &mut HashMap<usize, Vec<OmegaTree>>,
    budget: &mut Budget,
) -> Result<Vec<OmegaTree>> {
    if let Some(v) = memo.get(&n) {
        return Ok(v.clone());
    }
    let mut out = Vec::new();
    if n == 0 {
        out.push(OmegaTree::Leaf);
    } else {
        for &a in arities {
            if a == 0 {
                if n == 1 {
                    budget.tick("enumerating trees")?;
                    out.push(OmegaTree::Node(Vec::new()));
                }
                continue;
            }
            for split in compositions(n - 1, a) {
                let mut choices = Vec::with_capacity(a);
                for &k in &split {
                    choices.push(exact(k, arities, memo, budget)?);
                }
                if choices.iter().any(Vec::is_empty) {
                    continue;
                }
                let mut idx = vec![0; a];
                loop {
                    budget.tick("enumerating trees")?;
                    out.push(OmegaTree::Node(
                        idx.iter().zip(&choices).map(|(&i, c)| c[i].clone()).collect(),
                    ));
                    if !advance(&mut idx, &choices) {
                        break;
                    }
                }
            }
        }
    }
    memo.insert(n, out.clone());
    Ok(out)
}

/// Odometer step over `idx`, last position fastest.
fn advance<T>(idx: &mut [usize], choices: &[Vec<T>]) -> bool {
    for p in (0..idx.len()).rev() {
        idx[p] += 1;
        if idx[p] < choices[p].len() {
            return true;
        }
        idx[p] = 0;
    }
    false
}

/// Weak compositions of `total` into `parts` parts, lexicographic.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}
