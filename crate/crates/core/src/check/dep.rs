//! Variable-based dependent checking.
//!
//! Binders are variables only. An assumption of type `↓N` is usable at
//! once; an assumption of type `P ∨ Q` or `Σ(x:P).Q` stays pending until
//! the subject eliminates it with `split x {…}` or `let (y, z) = x in …`,
//! which substitutes the constructor form for `x` in the goal and in the
//! rest of the telescope. Types are compared by [`convert_neg`]: local
//! definitions introduced by binding cuts are unfolded, embedded terms are
//! normalized under a fuel budget, and the results compared up to renaming.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::{data_shape, shape, CheckConfig};
use crate::alpha::alpha_eq;
use crate::diag::{Diagnostic, Rule};
use crate::eval::{normalize_neg, normalize_pos};
use crate::ident::Ident;
use crate::subst::{Renaming, Subst};
use crate::syntax::{DataVal, DepCtx, Mode, NegType, Pattern, PosType, Sig, Spine, Term};
use crate::wf;

pub fn dep_check_term(sig: &Sig, ctx: &DepCtx, t: &Term, goal: &NegType, cfg: CheckConfig) -> Result<(), Diagnostic> {
    let c = DepChecker::new(sig, cfg);
    c.term(&c.telescope(ctx), t, goal)
}

pub fn dep_check_data(sig: &Sig, ctx: &DepCtx, d: &DataVal, goal: &PosType, cfg: CheckConfig) -> Result<(), Diagnostic> {
    let c = DepChecker::new(sig, cfg);
    c.data(&c.telescope(ctx), d, goal)
}

pub fn dep_check_spine(
    sig: &Sig,
    ctx: &DepCtx,
    focus: &NegType,
    k: &Spine,
    goal: &NegType,
    cfg: CheckConfig,
) -> Result<(), Diagnostic> {
    let c = DepChecker::new(sig, cfg);
    c.spine(&hide(&c.telescope(ctx)), focus, k, goal)
}

/// One instance of the dependent binding cut
///
/// ```text
///   Γ ⊨ d : [A]      Γ, x:A, Δ ⊢ t : B
///  ------------------------------------
///   Γ, Δ{d/x} ⊢ x = d in t : B{d/x}
/// ```
///
/// Checks both premises and returns the conclusion's context and type.
#[allow(clippy::too_many_arguments)]
pub fn dep_bind_cut(
    sig: &Sig,
    gamma: &DepCtx,
    x: &Ident,
    a: &PosType,
    d: &DataVal,
    delta: &DepCtx,
    t: &Term,
    b: &NegType,
    cfg: CheckConfig,
) -> Result<(DepCtx, NegType), Diagnostic> {
    let c = DepChecker::new(sig, cfg);
    let g = c.telescope(gamma);
    let scope: BTreeSet<Ident> = g.iter().map(|e| e.name.clone()).collect();
    for v in crate::subst::free_in_data(d) {
        if !scope.contains(&v) && sig.lookup(&v).is_none() {
            return Err(Diagnostic::new(Rule::Scope, "data over the context before the cut", v).within(Rule::CutBind));
        }
    }
    c.data(&hide(&g), d, a).map_err(|e| e.within(Rule::CutBind))?;
    let mut premise = gamma.clone();
    premise.push((x.clone(), a.clone()));
    premise.extend(delta.iter().cloned());
    c.term(&c.telescope(&premise), t, b).map_err(|e| e.within(Rule::CutBind))?;

    let s = Subst::new(x, d, a);
    let mut concl = gamma.clone();
    concl.extend(delta.iter().map(|(y, ty)| (y.clone(), s.pos(ty))));
    Ok((concl, s.neg(b)))
}

/// Definitional equality of negative formulas.
pub fn convert_neg(sig: &Sig, a: &NegType, b: &NegType, fuel: usize) -> Result<bool, Diagnostic> {
    if alpha_eq(a, b) {
        return Ok(true);
    }
    let mut budget = fuel;
    let a = normalize_neg(sig, a, &mut budget).map_err(fuel_error)?;
    let b = normalize_neg(sig, b, &mut budget).map_err(fuel_error)?;
    Ok(alpha_eq(&a, &b))
}

pub fn convert_pos(sig: &Sig, a: &PosType, b: &PosType, fuel: usize) -> Result<bool, Diagnostic> {
    if alpha_eq(a, b) {
        return Ok(true);
    }
    let mut budget = fuel;
    let a = normalize_pos(sig, a, &mut budget).map_err(fuel_error)?;
    let b = normalize_pos(sig, b, &mut budget).map_err(fuel_error)?;
    Ok(alpha_eq(&a, &b))
}

fn fuel_error(e: crate::eval::FuelExhausted) -> Diagnostic {
    Diagnostic::new(Rule::ConversionFuel, "normalizable type indices", alloc::format!("{e}"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum State {
    /// `x : ↓N`, usable as an application head.
    Stored,
    /// A disjunction or Σ still to be eliminated.
    Pending,
    /// A pending assumption out of reach of the focused premise; it scopes
    /// types but can be neither used nor eliminated.
    Hidden,
}

#[derive(Clone, Debug)]
struct Entry {
    name: Ident,
    ty: PosType,
    state: State,
    def: Option<DataVal>,
}

type Tele = Vec<Entry>;

fn hide(ctx: &Tele) -> Tele {
    ctx.iter()
        .map(|e| Entry { state: if e.state == State::Pending { State::Hidden } else { e.state }, ..e.clone() })
        .collect()
}

fn state_for(ty: &PosType) -> State {
    if matches!(ty, PosType::Down(_)) {
        State::Stored
    } else {
        State::Pending
    }
}

pub struct DepChecker<'a> {
    sig: &'a Sig,
    cfg: CheckConfig,
}

impl<'a> DepChecker<'a> {
    pub fn new(sig: &'a Sig, cfg: CheckConfig) -> DepChecker<'a> {
        DepChecker { sig, cfg }
    }

    fn telescope(&self, ctx: &DepCtx) -> Tele {
        ctx.iter()
            .map(|(x, ty)| Entry { name: x.clone(), ty: ty.clone(), state: state_for(ty), def: None })
            .collect()
    }

    fn scope(ctx: &Tele) -> BTreeSet<Ident> {
        ctx.iter().map(|e| e.name.clone()).collect()
    }

    /// A binder name that captures nothing in the telescope or signature.
    fn binder(&self, ctx: &Tele, x: &Ident) -> Ident {
        if self.sig.is_declared(x) || ctx.iter().any(|e| &e.name == x) {
            x.fresh()
        } else {
            x.clone()
        }
    }

    fn well_formed_neg(&self, ctx: &Tele, ty: &NegType) -> Result<(), Diagnostic> {
        match wf::neg_diagnostics(ty, self.sig, Mode::Dependent, &Self::scope(ctx)).into_iter().next() {
            Some(d) => Err(d),
            None => Ok(()),
        }
    }

    fn well_formed_pos(&self, ctx: &Tele, ty: &PosType) -> Result<(), Diagnostic> {
        match wf::pos_diagnostics(ty, self.sig, Mode::Dependent, &Self::scope(ctx)).into_iter().next() {
            Some(d) => Err(d),
            None => Ok(()),
        }
    }

    fn convert(&self, ctx: &Tele, a: &NegType, b: &NegType) -> Result<bool, Diagnostic> {
        if alpha_eq(a, b) {
            return Ok(true);
        }
        let (mut a, mut b) = (a.clone(), b.clone());
        for e in ctx.iter().rev() {
            if let Some(d) = &e.def {
                let s = Subst::new(&e.name, d, &e.ty);
                a = s.neg(&a);
                b = s.neg(&b);
            }
        }
        convert_neg(self.sig, &a, &b, self.cfg.fuel)
    }

    fn term(&self, ctx: &Tele, t: &Term, goal: &NegType) -> Result<(), Diagnostic> {
        match t {
            Term::Lam(p, body) => {
                let Pattern::Var(x) = p else {
                    return Err(Diagnostic::new(Rule::Mode, "a variable binder", p).within(Rule::PiRight));
                };
                let (b, a, n) = match goal {
                    NegType::Pi(b, a, n) => (Some(b), a, n),
                    NegType::Imp(a, n) => (None, a, n),
                    _ => return Err(Diagnostic::new(Rule::PiRight, goal, shape(t))),
                };
                let x2 = self.binder(ctx, x);
                let body = rename(x, &x2, body);
                let n = match b {
                    Some(b) if b != &x2 => {
                        let mut r = Renaming::new();
                        r.insert(b.clone(), x2.clone());
                        r.neg(n)
                    }
                    _ => (**n).clone(),
                };
                let mut ctx = ctx.clone();
                ctx.push(Entry { name: x2, ty: (**a).clone(), state: state_for(a), def: None });
                self.term(&ctx, &body, &n).map_err(|e| e.within(Rule::PiRight))
            }
            Term::Pair(l, r) => {
                let NegType::With(a, b) = goal else {
                    return Err(Diagnostic::new(Rule::WithRight, goal, shape(t)));
                };
                self.term(ctx, l, a).map_err(|e| e.within(Rule::WithRight))?;
                self.term(ctx, r, b).map_err(|e| e.within(Rule::WithRight))
            }
            Term::Done(d) => {
                self.no_pending(ctx, Rule::Done)?;
                let NegType::Up(a) = goal else {
                    return Err(Diagnostic::new(Rule::Done, goal, shape(t)));
                };
                self.data(ctx, d, a).map_err(|e| e.within(Rule::Done))
            }
            Term::App(x, k) => {
                self.no_pending(ctx, Rule::Focus)?;
                let n = match ctx.iter().rev().find(|e| &e.name == x) {
                    Some(Entry { ty: PosType::Down(n), state: State::Stored, .. }) => (**n).clone(),
                    Some(e) => {
                        return Err(Diagnostic::new(Rule::Focus, "a variable of type down N", alloc::format!("{x} : {}", e.ty)))
                    }
                    None => match self.sig.lookup(x) {
                        Some(e) => e.ty.clone(),
                        None => {
                            return Err(Diagnostic::new(Rule::Scope, "a variable of type down N", alloc::format!("unbound {x}")))
                        }
                    },
                };
                self.spine(ctx, &n, k, goal).map_err(|e| e.within(Rule::Focus))
            }
            Term::Case { scrut, left_var, left, right_var, right } => {
                let (i, ty) = self.pending(ctx, scrut, Rule::OrLeft)?;
                let PosType::Or(a, b) = &ty else {
                    return Err(Diagnostic::new(Rule::OrLeft, "a disjunction", &ty));
                };
                for (v, branch, comp, inj) in [
                    (left_var, left, a, DataVal::inl as fn(DataVal) -> DataVal),
                    (right_var, right, b, DataVal::inr),
                ] {
                    let y = self.binder(ctx, v);
                    let branch = rename(v, &y, branch);
                    let motive = inj(DataVal::var(y.clone()));
                    let entry = Entry { name: y, ty: (**comp).clone(), state: state_for(comp), def: None };
                    let (ctx2, goal2) = replace(ctx, i, alloc::vec![entry], &motive, &ty, goal);
                    self.term(&ctx2, &branch, &goal2).map_err(|e| e.within(Rule::OrLeft))?;
                }
                Ok(())
            }
            Term::LetPair { first, second, scrut, body } => {
                let (i, ty) = self.pending(ctx, scrut, Rule::SigmaLeft)?;
                let y = self.binder(ctx, first);
                let body = rename(first, &y, body);
                let z = if second == &y { second.fresh() } else { self.binder(ctx, second) };
                let body = rename(second, &z, &body);
                let (a, b) = match &ty {
                    PosType::Sigma(bx, a, b) => {
                        let mut r = Renaming::new();
                        r.insert(bx.clone(), y.clone());
                        ((**a).clone(), r.pos(b))
                    }
                    PosType::Prod(a, b) => ((**a).clone(), (**b).clone()),
                    _ => return Err(Diagnostic::new(Rule::SigmaLeft, "a Sigma formula", &ty)),
                };
                let motive = DataVal::pair(DataVal::var(y.clone()), DataVal::var(z.clone()));
                let entries = alloc::vec![
                    Entry { name: y, state: state_for(&a), ty: a, def: None },
                    Entry { name: z, state: state_for(&b), ty: b, def: None },
                ];
                let (ctx2, goal2) = replace(ctx, i, entries, &motive, &ty, goal);
                self.term(&ctx2, &body, &goal2).map_err(|e| e.within(Rule::SigmaLeft))
            }
            Term::Split(..) => Err(Diagnostic::new(Rule::Mode, "split on a variable", "split on a pattern label")),
            Term::BindCut { pat, data, ty, body } => {
                let Pattern::Var(x) = pat else {
                    return Err(Diagnostic::new(Rule::Mode, "a variable binder", pat).within(Rule::CutBind));
                };
                self.well_formed_pos(ctx, ty).map_err(|e| e.within(Rule::CutBind))?;
                self.data(&hide(ctx), data, ty).map_err(|e| e.within(Rule::CutBind))?;
                let x2 = self.binder(ctx, x);
                let body = rename(x, &x2, body);
                let mut ctx = ctx.clone();
                ctx.push(Entry { name: x2, ty: ty.clone(), state: state_for(ty), def: Some(data.clone()) });
                self.term(&ctx, &body, goal).map_err(|e| e.within(Rule::CutBind))
            }
            Term::AppCut { fun, ty, spine } => {
                self.well_formed_neg(ctx, ty).map_err(|e| e.within(Rule::CutApp))?;
                self.term(ctx, fun, ty).map_err(|e| e.within(Rule::CutApp))?;
                self.spine(&hide(ctx), ty, spine, goal).map_err(|e| e.within(Rule::CutApp))
            }
        }
    }

    fn no_pending(&self, ctx: &Tele, rule: Rule) -> Result<(), Diagnostic> {
        match ctx.iter().find(|e| e.state == State::Pending) {
            Some(e) => Err(Diagnostic::new(rule, "no pending assumptions", alloc::format!("{} : {}", e.name, e.ty))
                .with_note("eliminate every disjunction and Sigma first")),
            None => Ok(()),
        }
    }

    fn pending(&self, ctx: &Tele, x: &Ident, rule: Rule) -> Result<(usize, PosType), Diagnostic> {
        match ctx.iter().rposition(|e| &e.name == x) {
            Some(i) if ctx[i].state == State::Pending => Ok((i, ctx[i].ty.clone())),
            Some(i) => Err(Diagnostic::new(rule, "a pending assumption", alloc::format!("{x} : {}", ctx[i].ty))),
            None => Err(Diagnostic::new(Rule::Scope, "a pending assumption", alloc::format!("unbound {x}"))),
        }
    }

    fn data(&self, ctx: &Tele, d: &DataVal, goal: &PosType) -> Result<(), Diagnostic> {
        match (d, goal) {
            (DataVal::Thunk(t), PosType::Down(n)) => self.term(&hide(ctx), t, n).map_err(|e| e.within(Rule::Thunk)),
            (DataVal::Pair(d1, d2), PosType::Sigma(x, a, b)) => {
                self.data(ctx, d1, a).map_err(|e| e.within(Rule::SigmaRight))?;
                let b = Subst::new(x, d1, a).pos(b);
                self.data(ctx, d2, &b).map_err(|e| e.within(Rule::SigmaRight))
            }
            (DataVal::Pair(d1, d2), PosType::Prod(a, b)) => {
                self.data(ctx, d1, a).map_err(|e| e.within(Rule::ProdRight))?;
                self.data(ctx, d2, b).map_err(|e| e.within(Rule::ProdRight))
            }
            (DataVal::Inl(e), PosType::Or(a, _)) => self.data(ctx, e, a).map_err(|e| e.within(Rule::OrRight)),
            (DataVal::Inr(e), PosType::Or(_, b)) => self.data(ctx, e, b).map_err(|e| e.within(Rule::OrRight)),
            (_, PosType::Down(_)) => Err(Diagnostic::new(Rule::Thunk, goal, data_shape(d))),
            (_, PosType::Sigma(..)) => Err(Diagnostic::new(Rule::SigmaRight, goal, data_shape(d))),
            (_, PosType::Prod(..)) => Err(Diagnostic::new(Rule::ProdRight, goal, data_shape(d))),
            (_, PosType::Or(..)) => Err(Diagnostic::new(Rule::OrRight, goal, data_shape(d))),
        }
    }

    fn spine(&self, ctx: &Tele, focus: &NegType, k: &Spine, goal: &NegType) -> Result<(), Diagnostic> {
        match (k, focus) {
            (Spine::Nil, _) => {
                if self.convert(ctx, focus, goal)? {
                    Ok(())
                } else {
                    Err(Diagnostic::new(Rule::Conversion, goal, focus).with_note("spine ends at an inconvertible formula"))
                }
            }
            (Spine::Cons(d, r), NegType::Pi(x, a, n)) => {
                self.data(ctx, d, a).map_err(|e| e.within(Rule::PiLeft))?;
                let n = Subst::new(x, d, a).neg(n);
                self.spine(ctx, &n, r, goal).map_err(|e| e.within(Rule::PiLeft))
            }
            (Spine::Cons(d, r), NegType::Imp(a, n)) => {
                self.data(ctx, d, a).map_err(|e| e.within(Rule::ImpLeft))?;
                self.spine(ctx, n, r, goal).map_err(|e| e.within(Rule::ImpLeft))
            }
            (Spine::Cons(..), _) => Err(Diagnostic::new(Rule::PiLeft, "a Pi formula", focus)),
            (Spine::Proj1(r), NegType::With(n, _)) => self.spine(ctx, n, r, goal).map_err(|e| e.within(Rule::WithLeft1)),
            (Spine::Proj1(_), _) => Err(Diagnostic::new(Rule::WithLeft1, "a formula N /\\ M", focus)),
            (Spine::Proj2(r), NegType::With(_, m)) => self.spine(ctx, m, r, goal).map_err(|e| e.within(Rule::WithLeft2)),
            (Spine::Proj2(_), _) => Err(Diagnostic::new(Rule::WithLeft2, "a formula N /\\ M", focus)),
            (Spine::Kappa(p, t), NegType::Up(a)) => {
                let Pattern::Var(y) = p else {
                    return Err(Diagnostic::new(Rule::Mode, "a variable binder", p).within(Rule::Blur));
                };
                let y2 = self.binder(ctx, y);
                let t = rename(y, &y2, t);
                let mut ctx = ctx.clone();
                ctx.push(Entry { name: y2, ty: (**a).clone(), state: state_for(a), def: None });
                self.term(&ctx, &t, goal).map_err(|e| e.within(Rule::Blur))
            }
            (Spine::Kappa(..), _) => Err(Diagnostic::new(Rule::Blur, "a formula up P", focus)),
        }
    }
}

fn rename(from: &Ident, to: &Ident, t: &Term) -> Term {
    if from == to {
        return t.clone();
    }
    let mut r = Renaming::new();
    r.insert(from.clone(), to.clone());
    r.term(t)
}

/// Replaces entry `i` (of type `ty`) by `entries`, substituting `motive`
/// for it in the later entries and in the goal.
fn replace(ctx: &Tele, i: usize, entries: Vec<Entry>, motive: &DataVal, ty: &PosType, goal: &NegType) -> (Tele, NegType) {
    let x = &ctx[i].name;
    let s = Subst::new(x, motive, ty);
    let mut out: Tele = ctx[..i].to_vec();
    out.extend(entries);
    for e in &ctx[i + 1..] {
        out.push(Entry {
            name: e.name.clone(),
            ty: s.pos(&e.ty),
            state: e.state,
            def: e.def.as_ref().map(|d| s.data(d)),
        });
    }
    (out, s.neg(goal))
}
