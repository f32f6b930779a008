use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::budget::Budget;
use crate::error::Result;

use super::presentation::PiePresentation;
use super::signature::eval_zk;

/// The signature of the Set-monad induced by a presentation, with a
/// truncated check that the presented monad is free on it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SetMonadReport {
    /// arity ↦ symbols
    pub signature: BTreeMap<usize, Vec<String>>,
    pub n: usize,
    pub bound: usize,
    pub zk_objects: usize,
    pub term_objects: usize,
    /// whether the two object sets coincide
    pub agree: bool,
    /// a few elements of the symmetric difference, for diagnosis
    pub mismatches: Vec<String>,
}

/// Objects are untouched by the coinserters and coequifiers building the
/// presented monad, so its object set at `n` is that of `ZKΣ1` at `n`. We
/// compare it with the set of terms in `n` variables over `Σ1`, generated
/// by closure.
pub fn underlying_set_monad_signature(
    p: &PiePresentation,
    n: usize,
    bound: usize,
    budget: &mut Budget,
) -> Result<SetMonadReport> {
    let sigma = p.sigma1();
    let signature = sigma.object_symbols();
    let zk = eval_zk(&sigma, n, bound, budget)?;
    let zk_set: BTreeSet<String> = zk.category.objects().iter().cloned().collect();
    let terms = term_closure(&signature, n, bound, budget)?;
    let mismatches: Vec<String> = zk_set.symmetric_difference(&terms).take(5).cloned().collect();
    Ok(SetMonadReport {
        signature,
        n,
        bound,
        zk_objects: zk_set.len(),
        term_objects: terms.len(),
        agree: mismatches.is_empty(),
        mismatches,
    })
}

/// All terms with at most `bound` operation nodes over variables
/// `x1 … xn`, closed under applying symbols.
pub fn term_closure(
    signature: &BTreeMap<usize, Vec<String>>,
    n: usize,
    bound: usize,
    budget: &mut Budget,
) -> Result<BTreeSet<String>> {
    let mut known: BTreeMap<String, usize> = (1..=n).map(|i| (format!("x{i}"), 0)).collect();
    loop {
        let current: Vec<(String, usize)> = known.iter().map(|(t, &k)| (t.clone(), k)).collect();
        let mut added = false;
        for (&arity, symbols) in signature {
            let mut idx = vec![0; arity];
            if arity > 0 && current.is_empty() {
                continue;
            }
            loop {
                let size: usize = idx.iter().map(|&i| current[i].1).sum::<usize>() + 1;
                if size <= bound {
                    for s in symbols {
                        budget.tick("closing terms")?;
                        let mut t = format!("({s}");
                        for &i in &idx {
                            t.push(' ');
                            t.push_str(&current[i].0);
                        }
                        t.push(')');
                        if !known.contains_key(&t) {
                            known.insert(t, size);
                            added = true;
                        }
                    }
                }
                let mut p = arity;
                while p > 0 {
                    idx[p - 1] += 1;
                    if idx[p - 1] < current.len() {
                        break;
                    }
                    idx[p - 1] = 0;
                    p -= 1;
                }
                if p == 0 {
                    break;
                }
            }
        }
        if !added {
            return Ok(known.into_keys().collect());
        }
    }
}
