//! Insertion of the minimal polarity shifts into surface types.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::ast::{SExpr, SType};
use crate::ident::Ident;
use crate::subst::{free_in_neg, free_in_pos};
use crate::syntax::{DataVal, Mode, NegType, PosType, Spine, Term};

/// Polarizes a declared type. Atoms and arrows are negative, sums and
/// products positive; `↓` and `↑` are added exactly where a formula of one
/// polarity sits in a position of the other. In dependent mode `->`
/// becomes `Π` and `*` becomes `Σ`, with a binder that occurs nowhere.
pub fn polarize(ty: &SType, mode: Mode) -> NegType {
    neg(ty, mode)
}

pub fn polarize_pos(ty: &SType, mode: Mode) -> PosType {
    pos(ty, mode)
}

fn neg(ty: &SType, mode: Mode) -> NegType {
    match ty {
        SType::Atom(a, args) => NegType::Atom(a.clone(), args.iter().map(index).collect()),
        SType::Arrow(a, b) => {
            let (a, b) = (pos(a, mode), neg(b, mode));
            match mode {
                Mode::Propositional => NegType::imp(a, b),
                Mode::Dependent => {
                    let x = unused_binder(&free_in_neg(&b));
                    NegType::pi(x, a, b)
                }
            }
        }
        SType::With(a, b) => NegType::with(neg(a, mode), neg(b, mode)),
        SType::Pi(x, a, b) => NegType::pi(x.clone(), pos(a, mode), neg(b, mode)),
        SType::Sum(..) | SType::Prod(..) | SType::Sigma(..) => NegType::up(pos(ty, mode)),
    }
}

fn pos(ty: &SType, mode: Mode) -> PosType {
    match ty {
        SType::Sum(a, b) => PosType::or(pos(a, mode), pos(b, mode)),
        SType::Prod(a, b) => {
            let (a, b) = (pos(a, mode), pos(b, mode));
            match mode {
                Mode::Propositional => PosType::prod(a, b),
                Mode::Dependent => {
                    let x = unused_binder(&free_in_pos(&b));
                    PosType::sigma(x, a, b)
                }
            }
        }
        SType::Sigma(x, a, b) => PosType::sigma(x.clone(), pos(a, mode), pos(b, mode)),
        SType::Atom(..) | SType::Arrow(..) | SType::With(..) | SType::Pi(..) => PosType::down(neg(ty, mode)),
    }
}

/// `x`, `x1`, `x2`, … avoiding `used`.
fn unused_binder(used: &BTreeSet<Ident>) -> Ident {
    let base = Ident::new("x");
    if !used.contains(&base) {
        return base;
    }
    (1..)
        .map(|i| Ident::new(&alloc::format!("x{i}")))
        .find(|x| !used.contains(x))
        .expect("unbounded supply")
}

/// Elaborates an index expression without types: a name is the
/// η-injection of that variable, an application is thunked.
pub fn index(e: &SExpr) -> DataVal {
    match e {
        SExpr::App(x, args) if args.is_empty() => DataVal::var(x.clone()),
        SExpr::App(f, args) => {
            let args: Vec<DataVal> = args.iter().map(index).collect();
            DataVal::thunk(Term::App(f.clone(), Spine::from_args(args)))
        }
        SExpr::Pair(a, b) => DataVal::pair(index(a), index(b)),
        SExpr::Inl(a) => DataVal::inl(index(a)),
        SExpr::Inr(a) => DataVal::inr(index(a)),
    }
}
