//! Equality up to consistent renaming of bound variables and or-labels.

use alloc::vec::Vec;

use crate::ident::Ident;
use crate::syntax::{DataVal, NegType, Pattern, PosType, Spine, Term};

/// Alpha-equivalence for every syntactic sort.
pub trait AlphaEq {
    fn alpha_eq_in(&self, other: &Self, env: &mut Env) -> bool;
}

pub fn alpha_eq<T: AlphaEq + ?Sized>(a: &T, b: &T) -> bool {
    a.alpha_eq_in(b, &mut Env::default())
}

/// Pairs of binders in scope, innermost last.
#[derive(Default)]
pub struct Env {
    pairs: Vec<(Ident, Ident)>,
}

impl Env {
    fn var(&self, x: &Ident, y: &Ident) -> bool {
        for (a, b) in self.pairs.iter().rev() {
            if a == x || b == y {
                return a == x && b == y;
            }
        }
        x == y
    }

    fn scoped(&mut self, binders: impl IntoIterator<Item = (Ident, Ident)>, f: impl FnOnce(&mut Env) -> bool) -> bool {
        let mark = self.pairs.len();
        self.pairs.extend(binders);
        let ok = f(self);
        self.pairs.truncate(mark);
        ok
    }
}

/// Binders of two patterns of the same shape, paired up; `None` if the
/// shapes differ.
fn pattern_pairs(p: &Pattern, q: &Pattern, out: &mut Vec<(Ident, Ident)>) -> bool {
    match (p, q) {
        (Pattern::Var(x), Pattern::Var(y)) => {
            out.push((x.clone(), y.clone()));
            true
        }
        (Pattern::Pair(p1, p2), Pattern::Pair(q1, q2)) | (Pattern::At(p1, p2), Pattern::At(q1, q2)) => {
            pattern_pairs(p1, q1, out) && pattern_pairs(p2, q2, out)
        }
        (Pattern::Or(w, p1, p2), Pattern::Or(v, q1, q2)) => {
            out.push((w.clone(), v.clone()));
            pattern_pairs(p1, q1, out) && pattern_pairs(p2, q2, out)
        }
        (Pattern::Wild, Pattern::Wild) => true,
        _ => false,
    }
}

fn under_patterns(p: &Pattern, q: &Pattern, env: &mut Env, f: impl FnOnce(&mut Env) -> bool) -> bool {
    let mut pairs = Vec::new();
    pattern_pairs(p, q, &mut pairs) && env.scoped(pairs, f)
}

impl AlphaEq for Pattern {
    fn alpha_eq_in(&self, other: &Pattern, _env: &mut Env) -> bool {
        pattern_pairs(self, other, &mut Vec::new())
    }
}

impl AlphaEq for Term {
    fn alpha_eq_in(&self, other: &Term, env: &mut Env) -> bool {
        match (self, other) {
            (Term::Done(d), Term::Done(e)) => d.alpha_eq_in(e, env),
            (Term::Lam(p, t), Term::Lam(q, u)) => under_patterns(p, q, env, |env| t.alpha_eq_in(u, env)),
            (Term::App(x, k), Term::App(y, m)) => env.var(x, y) && k.alpha_eq_in(m, env),
            (Term::Pair(t1, t2), Term::Pair(u1, u2)) => t1.alpha_eq_in(u1, env) && t2.alpha_eq_in(u2, env),
            (Term::Split(w, t1, t2), Term::Split(v, u1, u2)) => {
                env.var(w, v) && t1.alpha_eq_in(u1, env) && t2.alpha_eq_in(u2, env)
            }
            (
                Term::Case { scrut: s1, left_var: l1, left: a1, right_var: r1, right: b1 },
                Term::Case { scrut: s2, left_var: l2, left: a2, right_var: r2, right: b2 },
            ) => {
                env.var(s1, s2)
                    && env.scoped([(l1.clone(), l2.clone())], |env| a1.alpha_eq_in(a2, env))
                    && env.scoped([(r1.clone(), r2.clone())], |env| b1.alpha_eq_in(b2, env))
            }
            (
                Term::LetPair { first: f1, second: g1, scrut: s1, body: b1 },
                Term::LetPair { first: f2, second: g2, scrut: s2, body: b2 },
            ) => {
                env.var(s1, s2)
                    && env.scoped([(f1.clone(), f2.clone()), (g1.clone(), g2.clone())], |env| b1.alpha_eq_in(b2, env))
            }
            (
                Term::BindCut { pat: p, data: d, ty: a, body: t },
                Term::BindCut { pat: q, data: e, ty: b, body: u },
            ) => {
                d.alpha_eq_in(e, env)
                    && a.alpha_eq_in(b, env)
                    && under_patterns(p, q, env, |env| t.alpha_eq_in(u, env))
            }
            (Term::AppCut { fun: t, ty: a, spine: k }, Term::AppCut { fun: u, ty: b, spine: m }) => {
                t.alpha_eq_in(u, env) && a.alpha_eq_in(b, env) && k.alpha_eq_in(m, env)
            }
            _ => false,
        }
    }
}

impl AlphaEq for DataVal {
    fn alpha_eq_in(&self, other: &DataVal, env: &mut Env) -> bool {
        match (self, other) {
            (DataVal::Thunk(t), DataVal::Thunk(u)) => t.alpha_eq_in(u, env),
            (DataVal::Pair(d1, d2), DataVal::Pair(e1, e2)) => d1.alpha_eq_in(e1, env) && d2.alpha_eq_in(e2, env),
            (DataVal::Inl(d), DataVal::Inl(e)) | (DataVal::Inr(d), DataVal::Inr(e)) => d.alpha_eq_in(e, env),
            _ => false,
        }
    }
}

impl AlphaEq for Spine {
    fn alpha_eq_in(&self, other: &Spine, env: &mut Env) -> bool {
        match (self, other) {
            (Spine::Nil, Spine::Nil) => true,
            (Spine::Cons(d, k), Spine::Cons(e, m)) => d.alpha_eq_in(e, env) && k.alpha_eq_in(m, env),
            (Spine::Proj1(k), Spine::Proj1(m)) | (Spine::Proj2(k), Spine::Proj2(m)) => k.alpha_eq_in(m, env),
            (Spine::Kappa(p, t), Spine::Kappa(q, u)) => under_patterns(p, q, env, |env| t.alpha_eq_in(u, env)),
            _ => false,
        }
    }
}

impl AlphaEq for NegType {
    fn alpha_eq_in(&self, other: &NegType, env: &mut Env) -> bool {
        match (self, other) {
            (NegType::Atom(a, xs), NegType::Atom(b, ys)) => {
                a == b && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| x.alpha_eq_in(y, env))
            }
            (NegType::Up(p), NegType::Up(q)) => p.alpha_eq_in(q, env),
            (NegType::Imp(p, n), NegType::Imp(q, m)) => p.alpha_eq_in(q, env) && n.alpha_eq_in(m, env),
            (NegType::With(n1, n2), NegType::With(m1, m2)) => n1.alpha_eq_in(m1, env) && n2.alpha_eq_in(m2, env),
            (NegType::Pi(x, p, n), NegType::Pi(y, q, m)) => {
                p.alpha_eq_in(q, env) && env.scoped([(x.clone(), y.clone())], |env| n.alpha_eq_in(m, env))
            }
            _ => false,
        }
    }
}

impl AlphaEq for PosType {
    fn alpha_eq_in(&self, other: &PosType, env: &mut Env) -> bool {
        match (self, other) {
            (PosType::Down(n), PosType::Down(m)) => n.alpha_eq_in(m, env),
            (PosType::Or(p1, p2), PosType::Or(q1, q2)) | (PosType::Prod(p1, p2), PosType::Prod(q1, q2)) => {
                p1.alpha_eq_in(q1, env) && p2.alpha_eq_in(q2, env)
            }
            (PosType::Sigma(x, p1, p2), PosType::Sigma(y, q1, q2)) => {
                p1.alpha_eq_in(q1, env) && env.scoped([(x.clone(), y.clone())], |env| p2.alpha_eq_in(q2, env))
            }
            _ => false,
        }
    }
}
