//! Derivability by exhaustive search over the propositional rules.
//!
//! Unlike the checker, the search never commits to an inversion order: any
//! assumption of the inversion zone may be decomposed next, and the
//! subject-directed rules are tried whenever their side conditions hold.

use seqcore_core::{DataVal, Ident, NegType, Pattern, PosType, Sig, Spine, Term};

pub struct Oracle<'a> {
    pub sig: &'a Sig,
    pub structural: bool,
}

type Psi = Vec<(Ident, NegType)>;
type Gamma = Vec<(Pattern, PosType)>;

fn labels(p: &Pattern, out: &mut Vec<Ident>) {
    match p {
        Pattern::Var(_) | Pattern::Wild => {}
        Pattern::Pair(a, b) | Pattern::At(a, b) => {
            labels(a, out);
            labels(b, out);
        }
        Pattern::Or(w, a, b) => {
            out.push(w.clone());
            labels(a, out);
            labels(b, out);
        }
    }
}

fn binds(p: &Pattern, x: &Ident) -> bool {
    match p {
        Pattern::Var(y) => y == x,
        Pattern::Wild => false,
        Pattern::Pair(a, b) | Pattern::At(a, b) | Pattern::Or(_, a, b) => binds(a, x) || binds(b, x),
    }
}

/// Names bound by one pattern, variables and labels alike, must differ.
fn linear(p: &Pattern) -> bool {
    fn go(p: &Pattern, seen: &mut Vec<Ident>) -> bool {
        let add = |x: &Ident, seen: &mut Vec<Ident>| {
            if seen.contains(x) {
                false
            } else {
                seen.push(x.clone());
                true
            }
        };
        match p {
            Pattern::Var(x) => add(x, seen),
            Pattern::Wild => true,
            Pattern::Pair(a, b) | Pattern::At(a, b) => go(a, seen) && go(b, seen),
            Pattern::Or(w, a, b) => add(w, seen) && go(a, seen) && go(b, seen),
        }
    }
    go(p, &mut Vec::new())
}

fn prop_pos(p: &PosType, sig: &Sig) -> bool {
    match p {
        PosType::Down(n) => prop_neg(n, sig),
        PosType::Or(a, b) | PosType::Prod(a, b) => prop_pos(a, sig) && prop_pos(b, sig),
        PosType::Sigma(..) => false,
    }
}

fn prop_neg(n: &NegType, sig: &Sig) -> bool {
    match n {
        NegType::Atom(a, args) => args.is_empty() && sig.has_atom(a),
        NegType::Up(p) => prop_pos(p, sig),
        NegType::Imp(p, m) => prop_pos(p, sig) && prop_neg(m, sig),
        NegType::With(a, b) => prop_neg(a, sig) && prop_neg(b, sig),
        NegType::Pi(..) => false,
    }
}

impl Oracle<'_> {
    fn lookup(&self, psi: &Psi, x: &Ident) -> Option<NegType> {
        psi.iter().rev().find(|(y, _)| y == x).map(|(_, n)| n.clone()).or_else(|| self.sig.lookup(x).map(|e| e.ty.clone()))
    }

    /// A pattern may join `Γ` when it is linear and shares no label with it.
    fn admissible(&self, gamma: &Gamma, p: &Pattern) -> bool {
        let mut mine = Vec::new();
        labels(p, &mut mine);
        let mut theirs = Vec::new();
        for (q, _) in gamma {
            labels(q, &mut theirs);
        }
        linear(p) && mine.iter().all(|w| !theirs.contains(w))
    }

    pub fn term(&self, psi: &Psi, gamma: &Gamma, t: &Term, goal: &NegType) -> bool {
        // Left rules on any assumption.
        for i in 0..gamma.len() {
            let (p, ty) = &gamma[i];
            let rest = |extra: Vec<(Pattern, PosType)>| {
                let mut g = gamma.clone();
                g.splice(i..=i, extra);
                g
            };
            let ok = match (p, ty) {
                // Lexical scope: an outer pattern binding `x` is stored first.
                (Pattern::Var(x), PosType::Down(n)) if !gamma[..i].iter().any(|(q, _)| binds(q, x)) => {
                    let mut psi = psi.clone();
                    psi.push((x.clone(), (**n).clone()));
                    self.term(&psi, &rest(vec![]), t, goal)
                }
                (Pattern::Pair(a, b), PosType::Prod(l, r)) => {
                    self.term(psi, &rest(vec![((**a).clone(), (**l).clone()), ((**b).clone(), (**r).clone())]), t, goal)
                }
                (Pattern::At(a, b), ty) if self.structural => {
                    self.term(psi, &rest(vec![((**a).clone(), ty.clone()), ((**b).clone(), ty.clone())]), t, goal)
                }
                (Pattern::Wild, _) if self.structural => self.term(psi, &rest(vec![]), t, goal),
                (Pattern::Or(w, a, b), PosType::Or(l, r)) => match t {
                    Term::Split(v, tl, tr) if v == w => {
                        self.term(psi, &rest(vec![((**a).clone(), (**l).clone())]), tl, goal)
                            && self.term(psi, &rest(vec![((**b).clone(), (**r).clone())]), tr, goal)
                    }
                    _ => false,
                },
                _ => false,
            };
            if ok {
                return true;
            }
        }
        // Right rules and cuts.
        match (t, goal) {
            (Term::Lam(p, body), NegType::Imp(a, n)) => {
                if !self.admissible(gamma, p) {
                    return false;
                }
                let mut g = gamma.clone();
                g.push((p.clone(), (**a).clone()));
                self.term(psi, &g, body, n)
            }
            (Term::Pair(l, r), NegType::With(a, b)) => self.term(psi, gamma, l, a) && self.term(psi, gamma, r, b),
            (Term::Done(d), NegType::Up(p)) => gamma.is_empty() && self.data(psi, d, p),
            (Term::App(x, k), _) => {
                gamma.is_empty() && self.lookup(psi, x).is_some_and(|n| self.spine(psi, &n, k, goal))
            }
            (Term::BindCut { pat, data, ty, body }, _) => {
                if !prop_pos(ty, self.sig) || !self.admissible(gamma, pat) || !self.data(psi, data, ty) {
                    return false;
                }
                let mut g = gamma.clone();
                g.push((pat.clone(), ty.clone()));
                self.term(psi, &g, body, goal)
            }
            (Term::AppCut { fun, ty, spine }, _) => {
                prop_neg(ty, self.sig) && self.term(psi, gamma, fun, ty) && self.spine(psi, ty, spine, goal)
            }
            _ => false,
        }
    }

    pub fn data(&self, psi: &Psi, d: &DataVal, goal: &PosType) -> bool {
        match (d, goal) {
            (DataVal::Thunk(t), PosType::Down(n)) => self.term(psi, &vec![], t, n),
            (DataVal::Pair(a, b), PosType::Prod(p, q)) => self.data(psi, a, p) && self.data(psi, b, q),
            (DataVal::Inl(a), PosType::Or(p, _)) => self.data(psi, a, p),
            (DataVal::Inr(a), PosType::Or(_, q)) => self.data(psi, a, q),
            _ => false,
        }
    }

    pub fn spine(&self, psi: &Psi, focus: &NegType, k: &Spine, goal: &NegType) -> bool {
        match (k, focus) {
            (Spine::Nil, _) => focus == goal,
            (Spine::Cons(d, r), NegType::Imp(p, n)) => self.data(psi, d, p) && self.spine(psi, n, r, goal),
            (Spine::Proj1(r), NegType::With(n, _)) => self.spine(psi, n, r, goal),
            (Spine::Proj2(r), NegType::With(_, m)) => self.spine(psi, m, r, goal),
            (Spine::Kappa(p, t), NegType::Up(a)) => linear(p) && self.term(psi, &vec![(p.clone(), (**a).clone())], t, goal),
            _ => false,
        }
    }
}
