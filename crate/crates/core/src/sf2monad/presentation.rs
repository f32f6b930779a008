use std::collections::HashSet;

use crate::error::{Error, Result};

use super::signature::Signature;
use super::terms::{OpTerm, TransTerm};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperationSymbol {
    pub name: String,
    pub arity: usize,
}

/// A basic transformation `source ⇒ target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub source: OpTerm,
    pub target: OpTerm,
}

impl Generator {
    pub fn arity(&self) -> usize {
        self.source.arity()
    }
}

/// An equation between parallel derived transformations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub name: String,
    pub left: TransTerm,
    pub right: TransTerm,
}

/// Basic operations, basic transformations between derived operations, and
/// equations between derived transformations. All three are discrete.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiePresentation {
    operations: Vec<OperationSymbol>,
    generators: Vec<Generator>,
    equations: Vec<Equation>,
}

impl PiePresentation {
    pub fn new(operations: Vec<OperationSymbol>, generators: Vec<Generator>, equations: Vec<Equation>) -> Result<Self> {
        let mut names = HashSet::new();
        for n in operations
            .iter()
            .map(|o| &o.name)
            .chain(generators.iter().map(|g| &g.name))
            .chain(equations.iter().map(|e| &e.name))
        {
            if !names.insert(n.clone()) {
                return Err(Error::Schema(format!("name {n} is declared twice")));
            }
        }
        let p = PiePresentation {
            operations,
            generators,
            equations,
        };
        for g in &p.generators {
            p.check_term(&g.source)?;
            p.check_term(&g.target)?;
            if g.source.arity() != g.target.arity() {
                return Err(Error::ArityMismatch(format!(
                    "generator {} has source arity {} and target arity {}",
                    g.name,
                    g.source.arity(),
                    g.target.arity()
                )));
            }
        }
        for e in &p.equations {
            let l = e.left.endpoints(&p)?;
            let r = e.right.endpoints(&p)?;
            if l != r {
                return Err(Error::TypeMismatch(format!(
                    "equation {} relates {} ⇒ {} to {} ⇒ {}",
                    e.name, l.0, l.1, r.0, r.1
                )));
            }
        }
        Ok(p)
    }

    pub fn empty() -> Self {
        PiePresentation {
            operations: Vec::new(),
            generators: Vec::new(),
            equations: Vec::new(),
        }
    }

    pub fn operations(&self) -> &[OperationSymbol] {
        &self.operations
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }

    pub fn operation(&self, name: &str) -> Option<&OperationSymbol> {
        self.operations.iter().find(|o| o.name == name)
    }

    pub fn generator(&self, name: &str) -> Option<&Generator> {
        self.generators.iter().find(|g| g.name == name)
    }

    /// `Σ1` as a discrete signature.
    pub fn sigma1(&self) -> Signature {
        let pairs: Vec<(&str, usize)> = self.operations.iter().map(|o| (o.name.as_str(), o.arity)).collect();
        Signature::discrete(&pairs)
    }

    /// Every symbol of `t` is a basic operation of the arity it is used at.
    pub fn check_term(&self, t: &OpTerm) -> Result<()> {
        for (s, n) in t.labels() {
            match self.operation(s) {
                Some(o) if o.arity == n => {}
                Some(o) => {
                    return Err(Error::ArityMismatch(format!(
                        "{s} has arity {} but is applied to {n} arguments",
                        o.arity
                    )))
                }
                None => return Err(Error::ArityMismatch(format!("unknown operation {s}"))),
            }
        }
        Ok(())
    }
}
