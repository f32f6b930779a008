use std::fmt;

use crate::error::{Error, Result};

use super::omega::OmegaTree;
use super::presentation::PiePresentation;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Sexp {
    Atom(String),
    List(Vec<Sexp>),
}

fn parse_sexp(input: &str) -> Result<Sexp> {
    let spaced = input.replace('(', " ( ").replace(')', " ) ");
    let tokens: Vec<&str> = spaced.split_whitespace().collect();
    let mut pos = 0;
    let s = sexp_at(&tokens, &mut pos)?;
    if pos != tokens.len() {
        return Err(Error::Parse(format!("trailing input after {input:?}")));
    }
    Ok(s)
}

fn sexp_at(tokens: &[&str], pos: &mut usize) -> Result<Sexp> {
    let Some(&tok) = tokens.get(*pos) else {
        return Err(Error::Parse("unexpected end of term".into()));
    };
    *pos += 1;
    match tok {
        "(" => {
            let mut items = Vec::new();
            loop {
                match tokens.get(*pos) {
                    None => return Err(Error::Parse("unbalanced parenthesis".into())),
                    Some(&")") => {
                        *pos += 1;
                        return Ok(Sexp::List(items));
                    }
                    Some(_) => items.push(sexp_at(tokens, pos)?),
                }
            }
        }
        ")" => Err(Error::Parse("unexpected ')'".into())),
        a => Ok(Sexp::Atom(a.to_string())),
    }
}

fn var_number(a: &str) -> Option<usize> {
    a.strip_prefix('_')?.parse().ok()
}

/// A linear derived-operation term. Leaves are variables, numbered left to
/// right, so a term of arity `k` uses `_1 … _k` once each, in order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum OpTerm {
    Var,
    Op(String, Vec<OpTerm>),
}

impl OpTerm {
    pub fn op(symbol: &str, args: Vec<OpTerm>) -> Self {
        OpTerm::Op(symbol.to_string(), args)
    }

    pub fn constant(symbol: &str) -> Self {
        OpTerm::Op(symbol.to_string(), Vec::new())
    }

    pub fn arity(&self) -> usize {
        match self {
            OpTerm::Var => 1,
            OpTerm::Op(_, args) => args.iter().map(OpTerm::arity).sum(),
        }
    }

    pub fn nodes(&self) -> usize {
        match self {
            OpTerm::Var => 0,
            OpTerm::Op(_, args) => 1 + args.iter().map(OpTerm::nodes).sum::<usize>(),
        }
    }

    /// The underlying tree.
    pub fn tree(&self) -> OmegaTree {
        match self {
            OpTerm::Var => OmegaTree::Leaf,
            OpTerm::Op(_, args) => OmegaTree::Node(args.iter().map(OpTerm::tree).collect()),
        }
    }

    /// Node labels in preorder.
    pub fn labels(&self) -> Vec<(&str, usize)> {
        fn go<'a>(t: &'a OpTerm, out: &mut Vec<(&'a str, usize)>) {
            if let OpTerm::Op(s, args) = t {
                out.push((s, args.len()));
                for a in args {
                    go(a, out);
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut out);
        out
    }

    /// Replaces the `i`-th leaf by `args[i]`.
    pub fn substitute(&self, args: &[OpTerm]) -> Result<OpTerm> {
        if args.len() != self.arity() {
            return Err(Error::ArityMismatch(format!(
                "{self} has arity {} but {} arguments were supplied",
                self.arity(),
                args.len()
            )));
        }
        fn go(t: &OpTerm, args: &[OpTerm], i: &mut usize) -> OpTerm {
            match t {
                OpTerm::Var => {
                    *i += 1;
                    args[*i - 1].clone()
                }
                OpTerm::Op(s, cs) => OpTerm::Op(s.clone(), cs.iter().map(|c| go(c, args, i)).collect()),
            }
        }
        Ok(go(self, args, &mut 0))
    }

    pub fn parse(input: &str) -> Result<OpTerm> {
        let t = ContextTerm::from_sexp(&parse_sexp(input)?, false)?;
        Ok(t.to_op().expect("no hole was admitted"))
    }
}

fn write_vars(f: &mut fmt::Formatter<'_>, t: &ContextTerm, i: &mut usize) -> fmt::Result {
    match t {
        ContextTerm::Hole => f.write_str("?"),
        ContextTerm::Var => {
            *i += 1;
            write!(f, "_{i}")
        }
        ContextTerm::Op(s, args) => {
            write!(f, "({s}")?;
            for a in args {
                f.write_str(" ")?;
                write_vars(f, a, i)?;
            }
            f.write_str(")")
        }
    }
}

impl fmt::Display for OpTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_vars(f, &ContextTerm::from_op(self), &mut 0)
    }
}

/// An operation term with exactly one hole `?`, for placing a 2-cell
/// inside an argument. Its arity counts variables only.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ContextTerm {
    Hole,
    Var,
    Op(String, Vec<ContextTerm>),
}

impl ContextTerm {
    fn from_op(t: &OpTerm) -> Self {
        match t {
            OpTerm::Var => ContextTerm::Var,
            OpTerm::Op(s, args) => ContextTerm::Op(s.clone(), args.iter().map(ContextTerm::from_op).collect()),
        }
    }

    fn to_op(&self) -> Option<OpTerm> {
        match self {
            ContextTerm::Hole => None,
            ContextTerm::Var => Some(OpTerm::Var),
            ContextTerm::Op(s, args) => Some(OpTerm::Op(
                s.clone(),
                args.iter().map(ContextTerm::to_op).collect::<Option<_>>()?,
            )),
        }
    }

    fn holes(&self) -> usize {
        match self {
            ContextTerm::Hole => 1,
            ContextTerm::Var => 0,
            ContextTerm::Op(_, args) => args.iter().map(ContextTerm::holes).sum(),
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            ContextTerm::Hole => 0,
            ContextTerm::Var => 1,
            ContextTerm::Op(_, args) => args.iter().map(ContextTerm::arity).sum(),
        }
    }

    /// Number of variables to the left of the hole.
    pub fn hole_position(&self) -> usize {
        fn go(t: &ContextTerm, before: &mut usize) -> bool {
            match t {
                ContextTerm::Hole => true,
                ContextTerm::Var => {
                    *before += 1;
                    false
                }
                ContextTerm::Op(_, args) => args.iter().any(|a| go(a, before)),
            }
        }
        let mut n = 0;
        go(self, &mut n);
        n
    }

    /// Plugs `t` into the hole.
    pub fn fill(&self, t: &OpTerm) -> OpTerm {
        match self {
            ContextTerm::Hole => t.clone(),
            ContextTerm::Var => OpTerm::Var,
            ContextTerm::Op(s, args) => OpTerm::Op(s.clone(), args.iter().map(|a| a.fill(t)).collect()),
        }
    }

    pub fn parse(input: &str) -> Result<ContextTerm> {
        let t = ContextTerm::from_sexp(&parse_sexp(input)?, true)?;
        if t.holes() != 1 {
            return Err(Error::Parse(format!("context {input:?} must have exactly one hole")));
        }
        Ok(t)
    }

    fn from_sexp(s: &Sexp, allow_hole: bool) -> Result<ContextTerm> {
        ContextTerm::from_sexp_from(s, allow_hole, &mut 0)
    }

    /// Parses with variable numbering continuing after `next`.
    fn from_sexp_from(s: &Sexp, allow_hole: bool, next: &mut usize) -> Result<ContextTerm> {
        fn go(s: &Sexp, allow_hole: bool, next: &mut usize) -> Result<ContextTerm> {
            match s {
                Sexp::Atom(a) if a == "?" => {
                    if allow_hole {
                        Ok(ContextTerm::Hole)
                    } else {
                        Err(Error::Parse("hole outside a context".into()))
                    }
                }
                Sexp::Atom(a) => match var_number(a) {
                    Some(i) if i == *next + 1 => {
                        *next = i;
                        Ok(ContextTerm::Var)
                    }
                    Some(i) => Err(Error::Parse(format!(
                        "variable _{i} out of order; terms are linear and expect _{}",
                        *next + 1
                    ))),
                    None => Ok(ContextTerm::Op(a.clone(), Vec::new())),
                },
                Sexp::List(items) => {
                    let Some(Sexp::Atom(head)) = items.first() else {
                        return Err(Error::Parse("operation term must start with a symbol".into()));
                    };
                    if head == "?" || var_number(head).is_some() {
                        return Err(Error::Parse(format!("{head} cannot be applied")));
                    }
                    let args = items[1..]
                        .iter()
                        .map(|a| go(a, allow_hole, next))
                        .collect::<Result<_>>()?;
                    Ok(ContextTerm::Op(head.clone(), args))
                }
            }
        }
        go(s, allow_hole, next)
    }
}

impl fmt::Display for ContextTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_vars(f, self, &mut 0)
    }
}

/// A derived-transformation term. `VComp(u, v)` runs `u` first. In the
/// s-expression form the arguments of a generator share one variable
/// numbering, while each side of `vcomp` and both parts of `ctx` number
/// their variables on their own.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TransTerm {
    Id(OpTerm),
    Gen(String, Vec<OpTerm>),
    VComp(Box<TransTerm>, Box<TransTerm>),
    Context(ContextTerm, Box<TransTerm>),
}

impl TransTerm {
    pub fn id(t: OpTerm) -> Self {
        TransTerm::Id(t)
    }

    pub fn gen(name: &str, args: Vec<OpTerm>) -> Self {
        TransTerm::Gen(name.to_string(), args)
    }

    pub fn vcomp(u: TransTerm, v: TransTerm) -> Self {
        TransTerm::VComp(Box::new(u), Box::new(v))
    }

    pub fn context(h: ContextTerm, u: TransTerm) -> Self {
        TransTerm::Context(h, Box::new(u))
    }

    /// Source and target operation terms.
    pub fn endpoints(&self, p: &PiePresentation) -> Result<(OpTerm, OpTerm)> {
        match self {
            TransTerm::Id(t) => {
                p.check_term(t)?;
                Ok((t.clone(), t.clone()))
            }
            TransTerm::Gen(name, args) => {
                let g = p
                    .generator(name)
                    .ok_or_else(|| Error::ArityMismatch(format!("unknown generator {name}")))?;
                for a in args {
                    p.check_term(a)?;
                }
                Ok((g.source.substitute(args)?, g.target.substitute(args)?))
            }
            TransTerm::VComp(u, v) => {
                let (su, tu) = u.endpoints(p)?;
                let (sv, tv) = v.endpoints(p)?;
                if tu != sv {
                    return Err(Error::NonComposable(format!("{tu} is not {sv}")));
                }
                Ok((su, tv))
            }
            TransTerm::Context(h, u) => {
                p.check_term(&h.fill(&OpTerm::Var))?;
                let (s, t) = u.endpoints(p)?;
                Ok((h.fill(&s), h.fill(&t)))
            }
        }
    }

    /// `(id t)`, `(gen name t1 … tk)`, `(vcomp u v …)` and `(ctx h u)`.
    pub fn parse(input: &str) -> Result<TransTerm> {
        TransTerm::from_sexp(&parse_sexp(input)?)
    }

    fn from_sexp(s: &Sexp) -> Result<TransTerm> {
        let Sexp::List(items) = s else {
            return Err(Error::Parse("transformation term must be a list".into()));
        };
        let Some(Sexp::Atom(head)) = items.first() else {
            return Err(Error::Parse("transformation term must start with a keyword".into()));
        };
        let op = |s: &Sexp| -> Result<OpTerm> {
            let t = ContextTerm::from_sexp(s, false)?;
            Ok(t.to_op().expect("no hole was admitted"))
        };
        match (head.as_str(), &items[1..]) {
            ("id", [t]) => Ok(TransTerm::Id(op(t)?)),
            ("gen", [Sexp::Atom(name), args @ ..]) => {
                // arguments share one numbering, left to right
                let mut next = 0;
                let args = args
                    .iter()
                    .map(|a| {
                        let t = ContextTerm::from_sexp_from(a, false, &mut next)?;
                        Ok(t.to_op().expect("no hole was admitted"))
                    })
                    .collect::<Result<_>>()?;
                Ok(TransTerm::Gen(name.clone(), args))
            }
            ("vcomp", [first, rest @ ..]) if !rest.is_empty() => {
                let mut acc = TransTerm::from_sexp(first)?;
                for r in rest {
                    acc = TransTerm::vcomp(acc, TransTerm::from_sexp(r)?);
                }
                Ok(acc)
            }
            ("ctx", [h, u]) => {
                let h = ContextTerm::from_sexp(h, true)?;
                if h.holes() != 1 {
                    return Err(Error::Parse("context must have exactly one hole".into()));
                }
                Ok(TransTerm::context(h, TransTerm::from_sexp(u)?))
            }
            _ => Err(Error::Parse(format!("malformed transformation term headed by {head}"))),
        }
    }
}

impl fmt::Display for TransTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransTerm::Id(t) => write!(f, "(id {t})"),
            TransTerm::Gen(name, args) => {
                write!(f, "(gen {name}")?;
                let mut i = 0;
                for a in args {
                    f.write_str(" ")?;
                    write_vars(f, &ContextTerm::from_op(a), &mut i)?;
                }
                f.write_str(")")
            }
            TransTerm::VComp(u, v) => write!(f, "(vcomp {u} {v})"),
            TransTerm::Context(h, u) => write!(f, "(ctx {h} {u})"),
        }
    }
}
