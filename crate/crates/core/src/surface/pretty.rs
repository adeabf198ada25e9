//! Surface printing and reconstruction of equations from core terms.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::{self, Display, Formatter, Write};

use super::ast::{SExpr, SPat, SType};
use crate::ident::Ident;
use crate::subst::{free_in_neg, free_in_pos, Side};
use crate::syntax::{DataVal, NegType, Pattern, PosType, Spine, Term};

const TOP: u8 = 0;
const WITH: u8 = 1;
const SUM: u8 = 2;
const PROD: u8 = 3;
const ATOM: u8 = 4;

fn write_ty(f: &mut Formatter<'_>, t: &SType, prec: u8) -> fmt::Result {
    let wrap = |f: &mut Formatter<'_>, on: bool, body: &dyn Fn(&mut Formatter<'_>) -> fmt::Result| {
        if on {
            f.write_char('(')?;
        }
        body(f)?;
        if on {
            f.write_char(')')?;
        }
        Ok(())
    };
    match t {
        SType::Atom(a, args) => {
            if args.is_empty() {
                return write!(f, "{a}");
            }
            wrap(f, prec >= ATOM, &|f| {
                write!(f, "{a}")?;
                for e in args {
                    write!(f, " {}", Atomic(e))?;
                }
                Ok(())
            })
        }
        SType::Arrow(a, b) => wrap(f, prec > TOP, &|f| {
            write_ty(f, a, WITH)?;
            f.write_str(" -> ")?;
            write_ty(f, b, TOP)
        }),
        SType::With(a, b) => wrap(f, prec > WITH, &|f| {
            write_ty(f, a, SUM)?;
            f.write_str(" /\\ ")?;
            write_ty(f, b, WITH)
        }),
        SType::Sum(a, b) => wrap(f, prec > SUM, &|f| {
            write_ty(f, a, PROD)?;
            f.write_str(" + ")?;
            write_ty(f, b, SUM)
        }),
        SType::Prod(a, b) => wrap(f, prec > PROD, &|f| {
            write_ty(f, a, ATOM)?;
            f.write_str(" * ")?;
            write_ty(f, b, PROD)
        }),
        SType::Pi(x, a, b) | SType::Sigma(x, a, b) => wrap(f, prec > TOP, &|f| {
            let q = if matches!(t, SType::Pi(..)) { "Pi" } else { "Sigma" };
            write!(f, "{q} ({x} : ")?;
            write_ty(f, a, TOP)?;
            f.write_str("). ")?;
            write_ty(f, b, TOP)
        }),
    }
}

impl Display for SType {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write_ty(f, self, TOP)
    }
}

impl Display for SPat {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            SPat::Var(x) => write!(f, "{x}"),
            SPat::Wild => f.write_char('_'),
            SPat::At(x, p) => write!(f, "{x}@{}", AtomicPat(p)),
            SPat::Pair(p, q) => write!(f, "({p}, {q})"),
            SPat::Inl(p) => write!(f, "inl {}", AtomicPat(p)),
            SPat::Inr(p) => write!(f, "inr {}", AtomicPat(p)),
        }
    }
}

struct AtomicPat<'a>(&'a SPat);

impl Display for AtomicPat<'_> {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self.0 {
            SPat::Var(_) | SPat::Wild | SPat::Pair(..) => write!(f, "{}", self.0),
            p => write!(f, "({p})"),
        }
    }
}

impl Display for SExpr {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            SExpr::App(x, args) => {
                write!(f, "{x}")?;
                for a in args {
                    write!(f, " {}", Atomic(a))?;
                }
                Ok(())
            }
            SExpr::Pair(a, b) => write!(f, "({a}, {b})"),
            SExpr::Inl(a) => write!(f, "inl {}", Atomic(a)),
            SExpr::Inr(a) => write!(f, "inr {}", Atomic(a)),
        }
    }
}

struct Atomic<'a>(&'a SExpr);

impl Display for Atomic<'_> {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self.0 {
            SExpr::App(_, args) if args.is_empty() => write!(f, "{}", self.0),
            SExpr::Pair(..) => write!(f, "{}", self.0),
            e => write!(f, "({e})"),
        }
    }
}

pub fn pattern_text(p: &SPat) -> String {
    alloc::format!("{p}")
}

/// Argument patterns as they appear after a function name.
pub fn pats_text(ps: &[SPat]) -> String {
    let mut out = String::new();
    for (i, p) in ps.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{}", AtomicPat(p));
    }
    out
}

/// Forgets polarity shifts. Vacuous `Π`/`Σ` become `->`/`*`.
pub fn unpolarize(n: &NegType) -> SType {
    match n {
        NegType::Atom(a, args) => SType::Atom(a.clone(), args.iter().map(|d| data_expr(d).unwrap_or_else(|| SExpr::var("?"))).collect()),
        NegType::Up(p) => unpolarize_pos(p),
        NegType::Imp(p, m) => SType::arrow(unpolarize_pos(p), unpolarize(m)),
        NegType::With(a, b) => SType::with(unpolarize(a), unpolarize(b)),
        NegType::Pi(x, p, m) if !free_in_neg(m).contains(x) => SType::arrow(unpolarize_pos(p), unpolarize(m)),
        NegType::Pi(x, p, m) => SType::Pi(x.clone(), Box::new(unpolarize_pos(p)), Box::new(unpolarize(m))),
    }
}

pub fn unpolarize_pos(p: &PosType) -> SType {
    match p {
        PosType::Down(n) => unpolarize(n),
        PosType::Or(a, b) => SType::sum(unpolarize_pos(a), unpolarize_pos(b)),
        PosType::Prod(a, b) => SType::prod(unpolarize_pos(a), unpolarize_pos(b)),
        PosType::Sigma(x, a, b) if !free_in_pos(b).contains(x) => SType::prod(unpolarize_pos(a), unpolarize_pos(b)),
        PosType::Sigma(x, a, b) => SType::Sigma(x.clone(), Box::new(unpolarize_pos(a)), Box::new(unpolarize_pos(b))),
    }
}

fn data_expr(d: &DataVal) -> Option<SExpr> {
    Some(match d {
        DataVal::Thunk(t) => return term_expr(t),
        DataVal::Pair(a, b) => SExpr::Pair(Box::new(data_expr(a)?), Box::new(data_expr(b)?)),
        DataVal::Inl(a) => SExpr::Inl(Box::new(data_expr(a)?)),
        DataVal::Inr(a) => SExpr::Inr(Box::new(data_expr(a)?)),
    })
}

fn term_expr(t: &Term) -> Option<SExpr> {
    match t {
        Term::Done(d) => data_expr(d),
        Term::App(x, k) => {
            let mut args = Vec::new();
            let mut k = k;
            loop {
                match k {
                    Spine::Nil => break,
                    Spine::Cons(d, rest) => {
                        args.push(data_expr(d)?);
                        k = rest;
                    }
                    _ => return None,
                }
            }
            Some(SExpr::App(x.clone(), args))
        }
        Term::Pair(a, b) => Some(SExpr::Pair(Box::new(term_expr(a)?), Box::new(term_expr(b)?))),
        _ => None,
    }
}

/// Reads equations back from a compiled term: λs give the argument
/// patterns, each path through the eliminations gives one clause.
/// Terms outside that image print as `name = <core>`.
pub fn pretty_equations(name: &Ident, t: &Term, ty: &NegType) -> String {
    let mut out = alloc::format!("{name} : {}\n", unpolarize(ty));
    let mut args = Vec::new();
    let mut body = t;
    while let Term::Lam(p, b) = body {
        args.push(p.clone());
        body = b;
    }
    let mut lines = Vec::new();
    let ok = Walker { args: &args, labels: BTreeMap::new(), vars: BTreeMap::new() }.walk(body, &mut lines);
    if ok.is_some() {
        for (pats, rhs) in lines {
            if pats.is_empty() {
                let _ = writeln!(out, "{name} = {rhs}");
            } else {
                let _ = writeln!(out, "{name} {} = {rhs}", pats_text(&pats));
            }
        }
    } else {
        let _ = writeln!(out, "{name} = {t}");
    }
    out
}

#[derive(Clone)]
struct Walker<'a> {
    args: &'a [Pattern],
    labels: BTreeMap<Ident, Side>,
    vars: BTreeMap<Ident, SPat>,
}

impl Walker<'_> {
    fn walk(&self, t: &Term, out: &mut Vec<(Vec<SPat>, SExpr)>) -> Option<()> {
        match t {
            Term::Split(w, l, r) => {
                for (side, branch) in [(Side::Left, l), (Side::Right, r)] {
                    let mut next = self.clone();
                    next.labels.insert(w.clone(), side);
                    next.walk(branch, out)?;
                }
                Some(())
            }
            Term::Case { scrut, left_var, left, right_var, right } => {
                for (v, branch, inj) in [(left_var, left, SPat::inl as fn(SPat) -> SPat), (right_var, right, SPat::inr)] {
                    let mut next = self.clone();
                    next.vars.insert(scrut.clone(), inj(SPat::Var(v.clone())));
                    next.walk(branch, out)?;
                }
                Some(())
            }
            Term::LetPair { first, second, scrut, body } => {
                let mut next = self.clone();
                next.vars.insert(scrut.clone(), SPat::pair(SPat::Var(first.clone()), SPat::Var(second.clone())));
                next.walk(body, out)
            }
            _ => {
                let pats = self.args.iter().map(|p| self.pattern(p)).collect::<Option<Vec<_>>>()?;
                out.push((pats, term_expr(t)?));
                Some(())
            }
        }
    }

    fn var(&self, x: &Ident) -> SPat {
        match self.vars.get(x) {
            Some(SPat::Pair(a, b)) => SPat::pair(self.expand(a), self.expand(b)),
            Some(SPat::Inl(a)) => SPat::inl(self.expand(a)),
            Some(SPat::Inr(a)) => SPat::inr(self.expand(a)),
            _ => SPat::Var(x.clone()),
        }
    }

    fn expand(&self, p: &SPat) -> SPat {
        match p {
            SPat::Var(x) => self.var(x),
            other => other.clone(),
        }
    }

    fn pattern(&self, p: &Pattern) -> Option<SPat> {
        Some(match p {
            Pattern::Var(x) => self.var(x),
            Pattern::Wild => SPat::Wild,
            Pattern::Pair(a, b) => SPat::pair(self.pattern(a)?, self.pattern(b)?),
            Pattern::Or(w, a, b) => match self.labels.get(w)? {
                Side::Left => SPat::inl(self.pattern(a)?),
                Side::Right => SPat::inr(self.pattern(b)?),
            },
            Pattern::At(a, b) => match &**a {
                Pattern::Var(x) => SPat::At(x.clone(), Box::new(self.pattern(b)?)),
                _ => return None,
            },
        })
    }
}
