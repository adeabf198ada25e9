//! Pattern-based propositional checking.
//!
//! The inversion zone is decomposed eagerly, left to right, before the
//! subject is inspected: `x : ↓N` moves to the persistent zone, product
//! patterns split, `p @ q` duplicates and `_` drops. Or-pattern assumptions
//! wait until the subject names their label with `split`, which makes the
//! procedure deterministic without fixing the order of splits.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::{data_shape, shape, spine_shape, CheckConfig};
use crate::alpha::alpha_eq;
use crate::diag::{Diagnostic, Rule};
use crate::ident::Ident;
use crate::syntax::{Ctx, DataVal, Mode, NegType, Pattern, PosType, Sig, Spine, Term};
use crate::wf;

/// `Ψ | Γ ⊢ t : N` with `Ψ` given by the signature.
pub fn check_term(sig: &Sig, ctx: &Ctx, t: &Term, goal: &NegType, cfg: CheckConfig) -> Result<(), Diagnostic> {
    PropChecker::new(sig, cfg).term(&mut Vec::new(), ctx.clone(), t, goal)
}

/// `Ψ ⊨ d : [P]`.
pub fn check_data(sig: &Sig, d: &DataVal, goal: &PosType, cfg: CheckConfig) -> Result<(), Diagnostic> {
    PropChecker::new(sig, cfg).data(&mut Vec::new(), d, goal)
}

/// `Ψ, [N] ⊨ k : M`.
pub fn check_spine(sig: &Sig, focus: &NegType, k: &Spine, goal: &NegType, cfg: CheckConfig) -> Result<(), Diagnostic> {
    PropChecker::new(sig, cfg).spine(&mut Vec::new(), focus, k, goal)
}

/// Local part of the persistent zone: stored variables, latest last.
pub type Locals = Vec<(Ident, NegType)>;

pub struct PropChecker<'a> {
    sig: &'a Sig,
    cfg: CheckConfig,
}

impl<'a> PropChecker<'a> {
    pub fn new(sig: &'a Sig, cfg: CheckConfig) -> PropChecker<'a> {
        PropChecker { sig, cfg }
    }

    fn lookup(&self, psi: &Locals, x: &Ident) -> Option<NegType> {
        if let Some((_, n)) = psi.iter().rev().find(|(y, _)| y == x) {
            return Some(n.clone());
        }
        self.sig.lookup(x).map(|e| e.ty.clone())
    }

    fn annotation(&self, ty_ok: bool, ty: &dyn core::fmt::Display) -> Result<(), Diagnostic> {
        if ty_ok {
            Ok(())
        } else {
            Err(Diagnostic::new(Rule::Mode, "a well-formed propositional cut formula", ty))
        }
    }

    pub fn term(&self, psi: &mut Locals, gamma: Ctx, t: &Term, goal: &NegType) -> Result<(), Diagnostic> {
        let mark = psi.len();
        let r = self.invert(psi, gamma, t, goal);
        psi.truncate(mark);
        r
    }

    /// Decomposes every assumption except or-patterns, and variables
    /// shadowed by them, then dispatches on the subject.
    fn invert(&self, psi: &mut Locals, gamma: Ctx, t: &Term, goal: &NegType) -> Result<(), Diagnostic> {
        let mut pending: Ctx = Vec::new();
        let mut todo: Ctx = gamma;
        todo.reverse();
        while let Some((p, ty)) = todo.pop() {
            match (p, ty) {
                // An outer or-pattern binding the same name must be
                // stored first, so the inner binding shadows it.
                (Pattern::Var(x), PosType::Down(n)) if pending.iter().any(|(q, _)| q.vars().contains(&x)) => {
                    pending.push((Pattern::Var(x), PosType::Down(n)))
                }
                (Pattern::Var(x), PosType::Down(n)) => psi.push((x, *n)),
                (Pattern::Var(x), ty) => {
                    return Err(Diagnostic::new(Rule::Store, "a formula down N", &ty)
                        .with_note(alloc::format!("variable {x} can only bind a thunk")))
                }
                (Pattern::Pair(p, q), PosType::Prod(a, b)) => {
                    todo.push((*q, *b));
                    todo.push((*p, *a));
                }
                (p @ Pattern::Pair(..), ty) => {
                    return Err(Diagnostic::new(Rule::ProdLeft, &ty, alloc::format!("pair pattern {p}")))
                }
                (Pattern::At(p, q), ty) => {
                    if !self.cfg.structural_patterns {
                        return Err(structural_off(Rule::Contraction));
                    }
                    todo.push((*q, ty.clone()));
                    todo.push((*p, ty));
                }
                (Pattern::Wild, _) => {
                    if !self.cfg.structural_patterns {
                        return Err(structural_off(Rule::Weakening));
                    }
                }
                (p @ Pattern::Or(..), ty @ PosType::Or(..)) => pending.push((p, ty)),
                (p @ Pattern::Or(..), ty) => {
                    return Err(Diagnostic::new(Rule::OrLeft, &ty, alloc::format!("or-pattern {p}")))
                }
            }
        }
        self.dispatch(psi, pending, t, goal)
    }

    fn dispatch(&self, psi: &mut Locals, pending: Ctx, t: &Term, goal: &NegType) -> Result<(), Diagnostic> {
        match t {
            Term::Split(w, l, r) => {
                let Some(i) = pending.iter().position(|(p, _)| matches!(p, Pattern::Or(v, ..) if v == w)) else {
                    return Err(Diagnostic::new(Rule::OrLeft, alloc::format!("an or-assumption labelled {w}"), "none at hand"));
                };
                let (Pattern::Or(_, pl, pr), PosType::Or(tl, tr)) = pending[i].clone() else { unreachable!() };
                let mut left = pending.clone();
                left[i] = (*pl, *tl);
                self.term(psi, left, l, goal).map_err(|e| e.within(Rule::OrLeft))?;
                let mut right = pending;
                right[i] = (*pr, *tr);
                self.term(psi, right, r, goal).map_err(|e| e.within(Rule::OrLeft))
            }
            Term::Lam(p, body) => {
                let NegType::Imp(a, n) = goal else {
                    return Err(Diagnostic::new(Rule::ImpRight, goal, shape(t)));
                };
                self.check_new_pattern(&pending, p)?;
                let mut gamma = pending;
                gamma.push((p.clone(), (**a).clone()));
                self.term(psi, gamma, body, n).map_err(|e| e.within(Rule::ImpRight))
            }
            Term::Pair(l, r) => {
                let NegType::With(a, b) = goal else {
                    return Err(Diagnostic::new(Rule::WithRight, goal, shape(t)));
                };
                self.term(psi, pending.clone(), l, a).map_err(|e| e.within(Rule::WithRight))?;
                self.term(psi, pending, r, b).map_err(|e| e.within(Rule::WithRight))
            }
            Term::Done(d) => {
                if let Some((p, _)) = pending.first() {
                    return Err(Diagnostic::new(Rule::Done, "an empty inversion context", alloc::format!("pending {p}"))
                        .with_note("every or-assumption must be split before done"));
                }
                let NegType::Up(a) = goal else {
                    return Err(Diagnostic::new(Rule::Done, goal, shape(t)));
                };
                self.data(psi, d, a).map_err(|e| e.within(Rule::Done))
            }
            Term::App(x, k) => {
                if let Some((p, _)) = pending.first() {
                    return Err(Diagnostic::new(Rule::Focus, "an empty inversion context", alloc::format!("pending {p}"))
                        .with_note("every or-assumption must be split before focusing"));
                }
                let Some(n) = self.lookup(psi, x) else {
                    return Err(Diagnostic::new(Rule::Scope, "a variable of type down N", alloc::format!("unbound {x}")));
                };
                self.spine(psi, &n, k, goal).map_err(|e| e.within(Rule::Focus))
            }
            Term::BindCut { pat, data, ty, body } => {
                self.annotation(wf::well_formed_pos(ty, self.sig, Mode::Propositional, &BTreeSet::new()), ty)?;
                self.data(psi, data, ty).map_err(|e| e.within(Rule::CutBind))?;
                self.check_new_pattern(&pending, pat)?;
                let mut gamma = pending;
                gamma.push((pat.clone(), ty.clone()));
                self.term(psi, gamma, body, goal).map_err(|e| e.within(Rule::CutBind))
            }
            Term::AppCut { fun, ty, spine } => {
                self.annotation(wf::well_formed_neg(ty, self.sig, Mode::Propositional, &BTreeSet::new()), ty)?;
                self.term(psi, pending, fun, ty).map_err(|e| e.within(Rule::CutApp))?;
                self.spine(psi, ty, spine, goal).map_err(|e| e.within(Rule::CutApp))
            }
            Term::Case { .. } | Term::LetPair { .. } => {
                Err(Diagnostic::new(Rule::Mode, "a propositional term", shape(t)))
            }
        }
    }

    /// A pattern entering the inversion zone must be linear, and its labels
    /// must not shadow a label still waiting for its split.
    fn check_new_pattern(&self, pending: &Ctx, p: &Pattern) -> Result<(), Diagnostic> {
        if !p.is_linear() {
            return Err(Diagnostic::new(Rule::Scope, "a linear pattern", p));
        }
        for w in p.labels() {
            if pending.iter().any(|(q, _)| q.labels().contains(&w)) {
                return Err(Diagnostic::new(Rule::Scope, "a fresh label", alloc::format!("label {w} already pending")));
            }
        }
        Ok(())
    }

    pub fn data(&self, psi: &mut Locals, d: &DataVal, goal: &PosType) -> Result<(), Diagnostic> {
        match (d, goal) {
            (DataVal::Thunk(t), PosType::Down(n)) => self.term(psi, Vec::new(), t, n).map_err(|e| e.within(Rule::Thunk)),
            (DataVal::Thunk(_), _) => Err(Diagnostic::new(Rule::Thunk, goal, data_shape(d))),
            (DataVal::Pair(a, b), PosType::Prod(p, q)) => {
                self.data(psi, a, p).map_err(|e| e.within(Rule::ProdRight))?;
                self.data(psi, b, q).map_err(|e| e.within(Rule::ProdRight))
            }
            (DataVal::Inl(a), PosType::Or(p, _)) => self.data(psi, a, p).map_err(|e| e.within(Rule::OrRight)),
            (DataVal::Inr(a), PosType::Or(_, q)) => self.data(psi, a, q).map_err(|e| e.within(Rule::OrRight)),
            (_, PosType::Down(_)) => Err(Diagnostic::new(Rule::Thunk, goal, data_shape(d))),
            (_, PosType::Prod(..)) => Err(Diagnostic::new(Rule::ProdRight, goal, data_shape(d))),
            (_, PosType::Or(..)) => Err(Diagnostic::new(Rule::OrRight, goal, data_shape(d))),
            (_, PosType::Sigma(..)) => Err(Diagnostic::new(Rule::Mode, "a propositional formula", goal)),
        }
    }

    pub fn spine(&self, psi: &mut Locals, focus: &NegType, k: &Spine, goal: &NegType) -> Result<(), Diagnostic> {
        match (k, focus) {
            (Spine::Nil, _) => {
                if alpha_eq(focus, goal) {
                    Ok(())
                } else {
                    Err(Diagnostic::new(Rule::Axiom, goal, focus).with_note("spine ends at a different formula"))
                }
            }
            (Spine::Cons(d, r), NegType::Imp(p, n)) => {
                self.data(psi, d, p).map_err(|e| e.within(Rule::ImpLeft))?;
                self.spine(psi, n, r, goal).map_err(|e| e.within(Rule::ImpLeft))
            }
            (Spine::Cons(..), _) => Err(Diagnostic::new(Rule::ImpLeft, "a formula P -> N", focus)),
            (Spine::Proj1(r), NegType::With(n, _)) => self.spine(psi, n, r, goal).map_err(|e| e.within(Rule::WithLeft1)),
            (Spine::Proj1(_), _) => Err(Diagnostic::new(Rule::WithLeft1, "a formula N /\\ M", focus)),
            (Spine::Proj2(r), NegType::With(_, m)) => self.spine(psi, m, r, goal).map_err(|e| e.within(Rule::WithLeft2)),
            (Spine::Proj2(_), _) => Err(Diagnostic::new(Rule::WithLeft2, "a formula N /\\ M", focus)),
            (Spine::Kappa(p, t), NegType::Up(a)) => {
                if !p.is_linear() {
                    return Err(Diagnostic::new(Rule::Scope, "a linear pattern", p));
                }
                let gamma = alloc::vec![(p.clone(), (**a).clone())];
                self.term(psi, gamma, t, goal).map_err(|e| e.within(Rule::Blur))
            }
            (Spine::Kappa(..), _) => Err(Diagnostic::new(Rule::Blur, "a formula up P", focus)
                .with_note(alloc::format!("{} applied to a non-shifted formula", spine_shape(k)))),
        }
    }
}

fn structural_off(rule: Rule) -> Diagnostic {
    Diagnostic::new(Rule::StructuralDisabled, "a linear pattern", alloc::format!("{rule} pattern"))
        .with_note("enable structural patterns to use p @ q and _")
}
