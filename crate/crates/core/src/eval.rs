//! Evaluation by cut elimination.
//!
//! Reduction is a first-order rewrite system on terms that keep both cut
//! forms explicit:
//!
//! ```text
//! R1  (\p. t : P -> N) (d :: k)         ~>  (let p : P = d in t : N) k
//! R2  (done d : up P) (kappa p. t)      ~>  let p : P = d in t
//! R3  (<t, u> : N /\ M) .1 k            ~>  (t : N) k          (.2 symmetric)
//! R4  (t : N) []                        ~>  t
//! R5  let (p, q) = (d, e) in t          ~>  let p = d in let q = e in t
//!     let [p | q]_w = inl d in t        ~>  let p = d in t[split w := left]
//!     let p @ q = d in t                ~>  let p = d in let q = d in t
//!     let _ = d in t                    ~>  t
//! R6  let x = d in t                    ~>  t{d/x}
//! R7  (x k1 : N) k2                     ~>  x (k1 ++ k2)
//!     ((t : M) k1 : N) k2               ~>  (t : M) (k1 ++ k2)
//!     (split w {t ; u} : N) k           ~>  split w {(t : N) k ; (u : N) k}
//!     f k                               ~>  (body of f : type of f) k
//! ```
//!
//! The strategy is leftmost-outermost and reduces under binders, except that
//! the head of an application cut is reduced before the cut itself. A
//! definition is unfolded wherever its name is reached in head position;
//! postulates never unfold, and applications of them are normal.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::check::{data_shape, shape, spine_shape};
use crate::ident::Ident;
use crate::subst::{free_in_data, free_in_neg, free_in_pos, free_in_spine, freshen_pattern, select_branch, spine_concat, subst_data_in_neg, subst_data_in_pos, subst_term, Renaming, Side, Subst};
use crate::syntax::{DataVal, NegType, Pattern, PosType, Sig, Spine, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Reduction {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
}

impl fmt::Display for Reduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = match self {
            Reduction::R1 => 1,
            Reduction::R2 => 2,
            Reduction::R3 => 3,
            Reduction::R4 => 4,
            Reduction::R5 => 5,
            Reduction::R6 => 6,
            Reduction::R7 => 7,
        };
        write!(f, "R{n}")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum StepResult {
    Stepped { next: Term, rule: Reduction },
    NormalForm,
    Stuck(String),
}

pub fn step(sig: &Sig, t: &Term) -> StepResult {
    match (Stepper { sig }).term(t, &mut Vec::new()) {
        Out::Step(next, rule) => StepResult::Stepped { next, rule },
        Out::Normal => StepResult::NormalForm,
        Out::Stuck(why) => StepResult::Stuck(why),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Normalized {
    pub term: Term,
    pub steps: usize,
    /// Reason reduction stopped short of a normal form, if it did.
    pub stuck: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FuelExhausted {
    pub steps: usize,
    pub last: Box<Term>,
}

impl fmt::Display for FuelExhausted {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "fuel exhausted after {} steps", self.steps)
    }
}

pub fn normalize(sig: &Sig, t: &Term, fuel: usize) -> Result<Normalized, FuelExhausted> {
    run(sig, t, fuel, |_, _| {})
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trace {
    /// Each applied rule with the term it produced.
    pub steps: Vec<(Reduction, Term)>,
    pub result: Normalized,
}

impl Trace {
    pub fn rules(&self) -> Vec<Reduction> {
        self.steps.iter().map(|(r, _)| *r).collect()
    }
}

pub fn trace(sig: &Sig, t: &Term, fuel: usize) -> Result<Trace, FuelExhausted> {
    let mut steps = Vec::new();
    let result = run(sig, t, fuel, |rule, next| steps.push((rule, next.clone())))?;
    Ok(Trace { steps, result })
}

fn run(sig: &Sig, t: &Term, fuel: usize, mut on_step: impl FnMut(Reduction, &Term)) -> Result<Normalized, FuelExhausted> {
    let mut cur = t.clone();
    let mut steps = 0;
    loop {
        match step(sig, &cur) {
            StepResult::NormalForm => return Ok(Normalized { term: cur, steps, stuck: None }),
            StepResult::Stuck(why) => return Ok(Normalized { term: cur, steps, stuck: Some(why) }),
            StepResult::Stepped { next, rule } => {
                if steps == fuel {
                    return Err(FuelExhausted { steps, last: Box::new(cur) });
                }
                steps += 1;
                on_step(rule, &next);
                cur = next;
            }
        }
    }
}

/// Normalizes every term embedded in a formula, drawing on a shared budget.
pub fn normalize_neg(sig: &Sig, ty: &NegType, fuel: &mut usize) -> Result<NegType, FuelExhausted> {
    Ok(match ty {
        NegType::Atom(a, args) => {
            let mut out = Vec::with_capacity(args.len());
            for d in args {
                out.push(normalize_data(sig, d, fuel)?);
            }
            NegType::Atom(a.clone(), out)
        }
        NegType::Up(p) => NegType::up(normalize_pos(sig, p, fuel)?),
        NegType::Imp(p, n) => NegType::imp(normalize_pos(sig, p, fuel)?, normalize_neg(sig, n, fuel)?),
        NegType::With(a, b) => NegType::with(normalize_neg(sig, a, fuel)?, normalize_neg(sig, b, fuel)?),
        NegType::Pi(x, p, n) => NegType::pi(x.clone(), normalize_pos(sig, p, fuel)?, normalize_neg(sig, n, fuel)?),
    })
}

pub fn normalize_pos(sig: &Sig, ty: &PosType, fuel: &mut usize) -> Result<PosType, FuelExhausted> {
    Ok(match ty {
        PosType::Down(n) => PosType::down(normalize_neg(sig, n, fuel)?),
        PosType::Or(a, b) => PosType::or(normalize_pos(sig, a, fuel)?, normalize_pos(sig, b, fuel)?),
        PosType::Prod(a, b) => PosType::prod(normalize_pos(sig, a, fuel)?, normalize_pos(sig, b, fuel)?),
        PosType::Sigma(x, a, b) => {
            PosType::sigma(x.clone(), normalize_pos(sig, a, fuel)?, normalize_pos(sig, b, fuel)?)
        }
    })
}

pub fn normalize_data(sig: &Sig, d: &DataVal, fuel: &mut usize) -> Result<DataVal, FuelExhausted> {
    Ok(match d {
        DataVal::Thunk(t) => {
            let n = normalize(sig, t, *fuel)?;
            *fuel -= n.steps;
            DataVal::thunk(n.term)
        }
        DataVal::Pair(a, b) => DataVal::pair(normalize_data(sig, a, fuel)?, normalize_data(sig, b, fuel)?),
        DataVal::Inl(a) => DataVal::inl(normalize_data(sig, a, fuel)?),
        DataVal::Inr(a) => DataVal::inr(normalize_data(sig, a, fuel)?),
    })
}

enum Out<T> {
    Step(T, Reduction),
    Normal,
    Stuck(String),
}

impl<T> Out<T> {
    fn map<U>(self, f: impl FnOnce(T) -> U) -> Out<U> {
        match self {
            Out::Step(t, r) => Out::Step(f(t), r),
            Out::Normal => Out::Normal,
            Out::Stuck(s) => Out::Stuck(s),
        }
    }

    /// Falls through to `next` only when `self` is normal.
    fn or_else(self, next: impl FnOnce() -> Out<T>) -> Out<T> {
        match self {
            Out::Normal => next(),
            other => other,
        }
    }
}

fn stuck<T>(why: String) -> Out<T> {
    Out::Stuck(why)
}

struct Stepper<'a> {
    sig: &'a Sig,
}

impl Stepper<'_> {
    fn scoped<T>(&self, bound: &mut Vec<Ident>, binders: Vec<Ident>, f: impl FnOnce(&mut Vec<Ident>) -> T) -> T {
        let mark = bound.len();
        bound.extend(binders);
        let r = f(bound);
        bound.truncate(mark);
        r
    }

    fn term(&self, t: &Term, bound: &mut Vec<Ident>) -> Out<Term> {
        match t {
            Term::AppCut { fun, ty, spine } => self.app_cut(fun, ty, spine, bound),
            Term::BindCut { pat, data, ty, body } => self.bind_cut(pat, data, ty, body),
            Term::Done(d) => self.data(d, bound).map(Term::Done),
            Term::Lam(p, b) => self.scoped(bound, p.binders(), |bound| self.term(b, bound)).map(|b| Term::lam(p.clone(), b)),
            Term::App(x, k) => {
                if !bound.contains(x) {
                    if let Some(entry) = self.sig.lookup(x) {
                        if let Some(body) = &entry.body {
                            return Out::Step(Term::app_cut(body.clone(), entry.ty.clone(), k.clone()), Reduction::R7);
                        }
                    }
                }
                self.spine(k, bound).map(|k| Term::App(x.clone(), k))
            }
            Term::Pair(l, r) => self
                .term(l, bound)
                .map(|l| Term::pair(l, (**r).clone()))
                .or_else(|| self.term(r, bound).map(|r| Term::pair((**l).clone(), r))),
            Term::Split(w, l, r) => self
                .term(l, bound)
                .map(|l| Term::split(w.clone(), l, (**r).clone()))
                .or_else(|| self.term(r, bound).map(|r| Term::split(w.clone(), (**l).clone(), r))),
            Term::Case { scrut, left_var, left, right_var, right } => self
                .scoped(bound, alloc::vec![left_var.clone()], |bound| self.term(left, bound))
                .map(|l| Term::case(scrut.clone(), left_var.clone(), l, right_var.clone(), (**right).clone()))
                .or_else(|| {
                    self.scoped(bound, alloc::vec![right_var.clone()], |bound| self.term(right, bound))
                        .map(|r| Term::case(scrut.clone(), left_var.clone(), (**left).clone(), right_var.clone(), r))
                }),
            Term::LetPair { first, second, scrut, body } => self
                .scoped(bound, alloc::vec![first.clone(), second.clone()], |bound| self.term(body, bound))
                .map(|b| Term::let_pair(first.clone(), second.clone(), scrut.clone(), b)),
        }
    }

    fn data(&self, d: &DataVal, bound: &mut Vec<Ident>) -> Out<DataVal> {
        match d {
            DataVal::Thunk(t) => self.term(t, bound).map(DataVal::thunk),
            DataVal::Pair(a, b) => self
                .data(a, bound)
                .map(|a| DataVal::pair(a, (**b).clone()))
                .or_else(|| self.data(b, bound).map(|b| DataVal::pair((**a).clone(), b))),
            DataVal::Inl(a) => self.data(a, bound).map(DataVal::inl),
            DataVal::Inr(a) => self.data(a, bound).map(DataVal::inr),
        }
    }

    fn spine(&self, k: &Spine, bound: &mut Vec<Ident>) -> Out<Spine> {
        match k {
            Spine::Nil => Out::Normal,
            Spine::Cons(d, r) => self
                .data(d, bound)
                .map(|d| Spine::cons(d, (**r).clone()))
                .or_else(|| self.spine(r, bound).map(|r| Spine::cons(d.clone(), r))),
            Spine::Proj1(r) => self.spine(r, bound).map(Spine::proj1),
            Spine::Proj2(r) => self.spine(r, bound).map(Spine::proj2),
            Spine::Kappa(p, t) => {
                self.scoped(bound, p.binders(), |bound| self.term(t, bound)).map(|t| Spine::kappa(p.clone(), t))
            }
        }
    }

    fn app_cut(&self, fun: &Term, ty: &NegType, k: &Spine, bound: &mut Vec<Ident>) -> Out<Term> {
        let is_cut = matches!(fun, Term::AppCut { .. } | Term::BindCut { .. });
        if is_cut {
            return match self.term(fun, bound) {
                Out::Step(f, r) => Out::Step(Term::app_cut(f, ty.clone(), k.clone()), r),
                Out::Stuck(why) => Out::Stuck(why),
                Out::Normal => match fun {
                    Term::AppCut { fun: inner, ty: inner_ty, spine: k1 } => {
                        Out::Step(Term::app_cut((**inner).clone(), inner_ty.clone(), spine_concat(k1, k, ty)), Reduction::R7)
                    }
                    Term::BindCut { pat, data, ty: pty, body } => {
                        let avoid = free_in_spine(k).into_iter().chain(free_in_neg(ty)).collect();
                        let (pat, body) = freshen_pattern(pat, body, &avoid);
                        Out::Step(
                            Term::bind_cut(pat, data.clone(), pty.clone(), Term::app_cut(body, ty.clone(), k.clone())),
                            Reduction::R7,
                        )
                    }
                    _ => unreachable!(),
                },
            };
        }
        match (fun, k) {
            (_, Spine::Nil) => Out::Step(fun.clone(), Reduction::R4),
            (Term::Lam(p, body), Spine::Cons(d, rest)) => match ty {
                NegType::Imp(a, n) => Out::Step(
                    Term::app_cut(Term::bind_cut(p.clone(), d.clone(), (**a).clone(), (**body).clone()), (**n).clone(), (**rest).clone()),
                    Reduction::R1,
                ),
                NegType::Pi(x, a, n) => Out::Step(
                    Term::app_cut(
                        Term::bind_cut(p.clone(), d.clone(), (**a).clone(), (**body).clone()),
                        subst_data_in_neg(n, x, a, d),
                        (**rest).clone(),
                    ),
                    Reduction::R1,
                ),
                _ => stuck(alloc::format!("lambda annotated with {ty}")),
            },
            (Term::Done(d), Spine::Kappa(p, t)) => match ty {
                NegType::Up(a) => Out::Step(Term::bind_cut(p.clone(), d.clone(), (**a).clone(), (**t).clone()), Reduction::R2),
                _ => stuck(alloc::format!("done annotated with {ty}")),
            },
            (Term::Pair(l, r), Spine::Proj1(rest) | Spine::Proj2(rest)) => match ty {
                NegType::With(n, m) => {
                    let (t, n) = if matches!(k, Spine::Proj1(_)) { (l, n) } else { (r, m) };
                    Out::Step(Term::app_cut((**t).clone(), (**n).clone(), (**rest).clone()), Reduction::R3)
                }
                _ => stuck(alloc::format!("pair annotated with {ty}")),
            },
            (Term::App(x, k1), _) => Out::Step(Term::App(x.clone(), spine_concat(k1, k, ty)), Reduction::R7),
            (Term::Split(w, l, r), _) => Out::Step(
                Term::split(
                    w.clone(),
                    Term::app_cut((**l).clone(), ty.clone(), k.clone()),
                    Term::app_cut((**r).clone(), ty.clone(), k.clone()),
                ),
                Reduction::R7,
            ),
            (Term::Case { scrut, left_var, left, right_var, right }, _) => {
                let avoid = cut_names(ty, k);
                let (y, l) = rename_away(left_var, left, &avoid);
                let (z, r) = rename_away(right_var, right, &avoid);
                let anon = placeholder();
                let push = |datum: DataVal, body: Term| {
                    let s = Subst::new(scrut, &datum, &anon);
                    Term::app_cut(body, s.neg(ty), s.spine(k))
                };
                let l = push(DataVal::inl(DataVal::var(y.clone())), l);
                let r = push(DataVal::inr(DataVal::var(z.clone())), r);
                Out::Step(Term::case(scrut.clone(), y, l, z, r), Reduction::R7)
            }
            (Term::LetPair { first, second, scrut, body }, _) => {
                let avoid = cut_names(ty, k);
                let (y, body) = rename_away(first, body, &avoid);
                let (z, body) = rename_away(second, &body, &avoid);
                let datum = DataVal::pair(DataVal::var(y.clone()), DataVal::var(z.clone()));
                let anon = placeholder();
                let s = Subst::new(scrut, &datum, &anon);
                Out::Step(Term::let_pair(y, z, scrut.clone(), Term::app_cut(body, s.neg(ty), s.spine(k))), Reduction::R7)
            }
            _ => stuck(alloc::format!("{} applied to {}", shape(fun), spine_shape(k))),
        }
    }

    fn bind_cut(&self, pat: &Pattern, d: &DataVal, ty: &PosType, body: &Term) -> Out<Term> {
        match (pat, d) {
            (Pattern::Var(x), _) => Out::Step(subst_term(body, x, ty, d), Reduction::R6),
            (Pattern::Wild, _) => Out::Step(body.clone(), Reduction::R5),
            (Pattern::At(p, q), _) => {
                let avoid = free_in_data(d).into_iter().chain(free_in_pos(ty)).collect();
                let (p, body) = freshen_pattern(p, body, &avoid);
                let inner = Term::bind_cut((**q).clone(), d.clone(), ty.clone(), body);
                Out::Step(Term::bind_cut(p, d.clone(), ty.clone(), inner), Reduction::R5)
            }
            (Pattern::Pair(p, q), DataVal::Pair(d1, d2)) => {
                let (a, b) = match ty {
                    PosType::Prod(a, b) => ((**a).clone(), (**b).clone()),
                    PosType::Sigma(x, a, b) => ((**a).clone(), subst_data_in_pos(b, x, a, d1)),
                    _ => return stuck(alloc::format!("pair pattern annotated with {ty}")),
                };
                let avoid = free_in_data(d2).into_iter().chain(free_in_pos(&b)).collect();
                let (p, body) = freshen_pattern(p, body, &avoid);
                let inner = Term::bind_cut((**q).clone(), (**d2).clone(), b, body);
                Out::Step(Term::bind_cut(p, (**d1).clone(), a, inner), Reduction::R5)
            }
            (Pattern::Or(w, p, q), DataVal::Inl(e) | DataVal::Inr(e)) => {
                let PosType::Or(a, b) = ty else {
                    return stuck(alloc::format!("or-pattern annotated with {ty}"));
                };
                let (side, p, a) = if matches!(d, DataVal::Inl(_)) { (Side::Left, p, a) } else { (Side::Right, q, b) };
                let body = select_branch(body, w, side);
                Out::Step(Term::bind_cut((**p).clone(), (**e).clone(), (**a).clone(), body), Reduction::R5)
            }
            _ => stuck(alloc::format!("pattern {pat} against {}", data_shape(d))),
        }
    }
}

/// Type passed when substituting constructor data built from variables for
/// a scrutinee; such substitutions never consult it.
fn placeholder() -> PosType {
    let a = PosType::down(NegType::atom("_"));
    PosType::or(a.clone(), a)
}

fn cut_names(ty: &NegType, k: &Spine) -> BTreeSet<Ident> {
    let mut s = free_in_neg(ty);
    s.extend(free_in_spine(k));
    s
}

fn rename_away(x: &Ident, body: &Term, avoid: &BTreeSet<Ident>) -> (Ident, Term) {
    if avoid.contains(x) {
        let y = x.fresh();
        let mut ren = Renaming::new();
        ren.insert(x.clone(), y.clone());
        let body = ren.term(body);
        (y, body)
    } else {
        (x.clone(), body.clone())
    }
}
