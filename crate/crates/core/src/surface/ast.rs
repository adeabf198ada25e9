//! Equational surface syntax.

use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::diag::Span;
use crate::ident::Ident;

/// Unpolarized surface type.
#[derive(Clone, Debug, PartialEq)]
pub enum SType {
    /// An atom applied to index expressions (`vec n`).
    Atom(Ident, Vec<SExpr>),
    Arrow(Box<SType>, Box<SType>),
    Sum(Box<SType>, Box<SType>),
    Prod(Box<SType>, Box<SType>),
    With(Box<SType>, Box<SType>),
    Pi(Ident, Box<SType>, Box<SType>),
    Sigma(Ident, Box<SType>, Box<SType>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SPat {
    Var(Ident),
    Wild,
    At(Ident, Box<SPat>),
    Pair(Box<SPat>, Box<SPat>),
    Inl(Box<SPat>),
    Inr(Box<SPat>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SExpr {
    /// A name applied to zero or more arguments.
    App(Ident, Vec<SExpr>),
    Pair(Box<SExpr>, Box<SExpr>),
    Inl(Box<SExpr>),
    Inr(Box<SExpr>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Clause {
    pub lhs: Vec<SPat>,
    pub rhs: SExpr,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq)]
pub enum DeclKind {
    Atom,
    /// A type without clauses.
    Postulate(SType),
    Def(SType, Vec<Clause>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceDecl {
    pub name: Ident,
    pub span: Span,
    pub kind: DeclKind,
}

impl SType {
    pub fn atom(name: &str) -> SType {
        SType::Atom(Ident::new(name), Vec::new())
    }

    pub fn arrow(a: SType, b: SType) -> SType {
        SType::Arrow(Box::new(a), Box::new(b))
    }

    pub fn sum(a: SType, b: SType) -> SType {
        SType::Sum(Box::new(a), Box::new(b))
    }

    pub fn prod(a: SType, b: SType) -> SType {
        SType::Prod(Box::new(a), Box::new(b))
    }

    pub fn with(a: SType, b: SType) -> SType {
        SType::With(Box::new(a), Box::new(b))
    }
}

impl SPat {
    pub fn var(x: &str) -> SPat {
        SPat::Var(Ident::new(x))
    }

    pub fn pair(p: SPat, q: SPat) -> SPat {
        SPat::Pair(Box::new(p), Box::new(q))
    }

    pub fn inl(p: SPat) -> SPat {
        SPat::Inl(Box::new(p))
    }

    pub fn inr(p: SPat) -> SPat {
        SPat::Inr(Box::new(p))
    }

    /// Variables bound by the pattern, left to right.
    pub fn vars(&self) -> Vec<Ident> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect(&self, out: &mut Vec<Ident>) {
        match self {
            SPat::Var(x) => out.push(x.clone()),
            SPat::Wild => {}
            SPat::At(x, p) => {
                out.push(x.clone());
                p.collect(out);
            }
            SPat::Pair(p, q) => {
                p.collect(out);
                q.collect(out);
            }
            SPat::Inl(p) | SPat::Inr(p) => p.collect(out),
        }
    }

    /// True for a constructor pattern (after peeling `x @`).
    pub fn is_test(&self) -> bool {
        match self {
            SPat::Var(_) | SPat::Wild => false,
            SPat::At(_, p) => p.is_test(),
            SPat::Pair(..) | SPat::Inl(_) | SPat::Inr(_) => true,
        }
    }
}

impl SExpr {
    pub fn var(x: &str) -> SExpr {
        SExpr::App(Ident::new(x), Vec::new())
    }

    pub fn app(f: &str, args: Vec<SExpr>) -> SExpr {
        SExpr::App(Ident::new(f), args)
    }
}
