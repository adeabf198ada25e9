//! Canonical text form of core syntax.
//!
//! ```text
//! t ::= done d | \p. t | x k | <t, u> | split w { inl -> t ; inr -> u }
//!     | split x { inl y -> t ; inr z -> u } | let (y, z) = x in t
//!     | let p : P = d in t | (t : N) k
//! k ::= [] | (d :: ... :: k) | .1 k | .2 k | (kappa p. t)
//! d ::= thunk t | (d, e) | inl d | inr d
//! p ::= x | _ | (p, q) | [p | q]_w | p @ q
//! ```
//!
//! Types bind, loosest first: `->` and `Pi`/`Sigma`, then `/\`, `+`, `*`,
//! and the prefix shifts `up` / `down`. Binary connectives associate to the
//! right. Identifiers with a non-zero tag print as `name#tag`.

use alloc::string::String;
use core::fmt::{self, Display, Formatter, Write};

use crate::syntax::{DataVal, NegType, Pattern, PosType, Sig, Spine, Term};

const TOP: u8 = 0;
const WITH: u8 = 1;
const OR: u8 = 2;
const PROD: u8 = 3;
const ATOM: u8 = 4;

fn write_neg(f: &mut Formatter<'_>, n: &NegType, prec: u8) -> fmt::Result {
    match n {
        NegType::Atom(a, args) => {
            write!(f, "{a}")?;
            if !args.is_empty() {
                f.write_char('{')?;
                for (i, d) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{d}")?;
                }
                f.write_char('}')?;
            }
            Ok(())
        }
        NegType::Up(p) => {
            f.write_str("up ")?;
            write_pos(f, p, ATOM)
        }
        NegType::Imp(p, m) => parens(f, prec > TOP, |f| {
            write_pos(f, p, WITH)?;
            f.write_str(" -> ")?;
            write_neg(f, m, TOP)
        }),
        NegType::With(a, b) => parens(f, prec > WITH, |f| {
            write_neg(f, a, OR)?;
            f.write_str(" /\\ ")?;
            write_neg(f, b, WITH)
        }),
        NegType::Pi(x, p, m) => parens(f, prec > TOP, |f| {
            write!(f, "Pi ({x} : ")?;
            write_pos(f, p, TOP)?;
            f.write_str("). ")?;
            write_neg(f, m, TOP)
        }),
    }
}

fn write_pos(f: &mut Formatter<'_>, p: &PosType, prec: u8) -> fmt::Result {
    match p {
        PosType::Down(n) => {
            f.write_str("down ")?;
            write_neg(f, n, ATOM)
        }
        PosType::Or(a, b) => parens(f, prec > OR, |f| {
            write_pos(f, a, PROD)?;
            f.write_str(" + ")?;
            write_pos(f, b, OR)
        }),
        PosType::Prod(a, b) => parens(f, prec > PROD, |f| {
            write_pos(f, a, ATOM)?;
            f.write_str(" * ")?;
            write_pos(f, b, PROD)
        }),
        PosType::Sigma(x, a, b) => parens(f, prec > TOP, |f| {
            write!(f, "Sigma ({x} : ")?;
            write_pos(f, a, TOP)?;
            f.write_str("). ")?;
            write_pos(f, b, TOP)
        }),
    }
}

fn parens(f: &mut Formatter<'_>, on: bool, body: impl FnOnce(&mut Formatter<'_>) -> fmt::Result) -> fmt::Result {
    if on {
        f.write_char('(')?;
    }
    body(f)?;
    if on {
        f.write_char(')')?;
    }
    Ok(())
}

impl Display for NegType {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write_neg(f, self, TOP)
    }
}

impl Display for PosType {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write_pos(f, self, TOP)
    }
}

impl Display for Pattern {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Pattern::Var(x) => write!(f, "{x}"),
            Pattern::Wild => f.write_char('_'),
            Pattern::Pair(p, q) => write!(f, "({p}, {q})"),
            Pattern::Or(w, p, q) => write!(f, "[{p} | {q}]_{w}"),
            Pattern::At(p, q) => {
                if matches!(**p, Pattern::At(..)) {
                    write!(f, "({p}) @ {q}")
                } else {
                    write!(f, "{p} @ {q}")
                }
            }
        }
    }
}

impl Display for DataVal {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            DataVal::Thunk(t) => write!(f, "thunk {t}"),
            DataVal::Pair(d, e) => write!(f, "({d}, {e})"),
            DataVal::Inl(d) => write!(f, "inl {d}"),
            DataVal::Inr(d) => write!(f, "inr {d}"),
        }
    }
}

impl Display for Spine {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Spine::Nil => f.write_str("[]"),
            Spine::Proj1(k) => write!(f, ".1 {k}"),
            Spine::Proj2(k) => write!(f, ".2 {k}"),
            Spine::Kappa(p, t) => write!(f, "(kappa {p}. {t})"),
            Spine::Cons(d, k) => {
                write!(f, "({d}")?;
                let mut rest = &**k;
                while let Spine::Cons(e, r) = rest {
                    write!(f, " :: {e}")?;
                    rest = r;
                }
                write!(f, " :: {rest})")
            }
        }
    }
}

impl Display for Term {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Term::Done(d) => write!(f, "done {d}"),
            Term::Lam(p, t) => write!(f, "\\{p}. {t}"),
            Term::App(x, k) => write!(f, "{x} {k}"),
            Term::Pair(t, u) => write!(f, "<{t}, {u}>"),
            Term::Split(w, t, u) => write!(f, "split {w} {{ inl -> {t} ; inr -> {u} }}"),
            Term::Case { scrut, left_var, left, right_var, right } => {
                write!(f, "split {scrut} {{ inl {left_var} -> {left} ; inr {right_var} -> {right} }}")
            }
            Term::LetPair { first, second, scrut, body } => write!(f, "let ({first}, {second}) = {scrut} in {body}"),
            Term::BindCut { pat, data, ty, body } => write!(f, "let {pat} : {ty} = {data} in {body}"),
            Term::AppCut { fun, ty, spine } => write!(f, "({fun} : {ty}) {spine}"),
        }
    }
}

/// The core file format: one `atom`, `postulate` or `def` line per entry.
pub fn print_sig(sig: &Sig) -> String {
    let mut out = String::new();
    for a in sig.atoms() {
        let _ = writeln!(out, "atom {a}");
    }
    for e in sig.entries() {
        let _ = match &e.body {
            None => writeln!(out, "postulate {} : {}", e.name, e.ty),
            Some(b) => writeln!(out, "def {} : {} = {}", e.name, e.ty, b),
        };
    }
    out
}
