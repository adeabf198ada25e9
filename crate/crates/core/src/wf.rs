//! Well-formedness of formulas: mode-specific grammar, declared atoms, and
//! scoping of the data embedded in dependent types.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::diag::{Diagnostic, Rule};
use crate::ident::Ident;
use crate::subst::free_in_data;
use crate::syntax::{Mode, NegType, PosType, Sig};

pub fn well_formed_neg(ty: &NegType, sig: &Sig, mode: Mode, scope: &BTreeSet<Ident>) -> bool {
    neg_diagnostics(ty, sig, mode, scope).is_empty()
}

pub fn well_formed_pos(ty: &PosType, sig: &Sig, mode: Mode, scope: &BTreeSet<Ident>) -> bool {
    pos_diagnostics(ty, sig, mode, scope).is_empty()
}

pub fn neg_diagnostics(ty: &NegType, sig: &Sig, mode: Mode, scope: &BTreeSet<Ident>) -> Vec<Diagnostic> {
    let mut w = Wf { sig, mode, scope: scope.iter().cloned().collect(), out: Vec::new() };
    w.neg(ty);
    w.out
}

pub fn pos_diagnostics(ty: &PosType, sig: &Sig, mode: Mode, scope: &BTreeSet<Ident>) -> Vec<Diagnostic> {
    let mut w = Wf { sig, mode, scope: scope.iter().cloned().collect(), out: Vec::new() };
    w.pos(ty);
    w.out
}

struct Wf<'a> {
    sig: &'a Sig,
    mode: Mode,
    scope: Vec<Ident>,
    out: Vec<Diagnostic>,
}

impl Wf<'_> {
    fn mode_error(&mut self, connective: &str, current: Mode) {
        let (expected, found) = match current {
            Mode::Propositional => ("a propositional formula", "dependent"),
            Mode::Dependent => ("a dependent-mode formula", "propositional"),
        };
        self.out.push(
            Diagnostic::new(Rule::Mode, expected, alloc::format!("{found} connective {connective}"))
                .with_note("the two rule sets use disjoint connectives"),
        );
    }

    fn bound<F: FnOnce(&mut Self)>(&mut self, x: &Ident, f: F) {
        self.scope.push(x.clone());
        f(self);
        self.scope.pop();
    }

    fn neg(&mut self, n: &NegType) {
        match n {
            NegType::Atom(a, args) => {
                if !self.sig.has_atom(a) {
                    self.out.push(Diagnostic::new(Rule::Scope, "a declared atom", a));
                }
                if !args.is_empty() && self.mode == Mode::Propositional {
                    self.out.push(Diagnostic::new(Rule::Mode, "an unindexed atom", n));
                }
                for d in args {
                    for x in free_in_data(d) {
                        if !self.scope.contains(&x) && self.sig.lookup(&x).is_none() {
                            self.out.push(Diagnostic::new(Rule::Scope, "a variable in scope", x));
                        }
                    }
                }
            }
            NegType::Up(p) => self.pos(p),
            NegType::Imp(p, m) => {
                if self.mode == Mode::Dependent {
                    self.mode_error("->", Mode::Dependent);
                }
                self.pos(p);
                self.neg(m);
            }
            NegType::With(a, b) => {
                self.neg(a);
                self.neg(b);
            }
            NegType::Pi(x, p, m) => {
                if self.mode == Mode::Propositional {
                    self.mode_error("Pi", Mode::Propositional);
                }
                self.pos(p);
                self.bound(x, |w| w.neg(m));
            }
        }
    }

    fn pos(&mut self, p: &PosType) {
        match p {
            PosType::Down(n) => self.neg(n),
            PosType::Or(a, b) => {
                self.pos(a);
                self.pos(b);
            }
            PosType::Prod(a, b) => {
                if self.mode == Mode::Dependent {
                    self.mode_error("*", Mode::Dependent);
                }
                self.pos(a);
                self.pos(b);
            }
            PosType::Sigma(x, a, b) => {
                if self.mode == Mode::Propositional {
                    self.mode_error("Sigma", Mode::Propositional);
                }
                self.pos(a);
                self.bound(x, |w| w.pos(b));
            }
        }
    }
}
