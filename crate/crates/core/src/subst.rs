//! Free variables, renaming, capture-avoiding substitution of data for
//! variables, spine concatenation and label-directed branch selection.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::ident::Ident;
use crate::syntax::{DataVal, NegType, Pattern, PosType, Spine, Term};

// ---------------------------------------------------------------------------
// Free variables

/// Free identifiers of a term. Split labels and elimination scrutinees
/// count as occurrences.
pub fn free_in_term(t: &Term) -> BTreeSet<Ident> {
    let mut fv = FreeVars::default();
    fv.term(t);
    fv.out
}

pub fn free_in_data(d: &DataVal) -> BTreeSet<Ident> {
    let mut fv = FreeVars::default();
    fv.data(d);
    fv.out
}

pub fn free_in_spine(k: &Spine) -> BTreeSet<Ident> {
    let mut fv = FreeVars::default();
    fv.spine(k);
    fv.out
}

pub fn free_in_neg(n: &NegType) -> BTreeSet<Ident> {
    let mut fv = FreeVars::default();
    fv.neg(n);
    fv.out
}

pub fn free_in_pos(p: &PosType) -> BTreeSet<Ident> {
    let mut fv = FreeVars::default();
    fv.pos(p);
    fv.out
}

#[derive(Default)]
struct FreeVars {
    bound: Vec<Ident>,
    out: BTreeSet<Ident>,
}

impl FreeVars {
    fn occ(&mut self, x: &Ident) {
        if !self.bound.contains(x) {
            self.out.insert(x.clone());
        }
    }

    fn scoped<F: FnOnce(&mut Self)>(&mut self, binders: Vec<Ident>, f: F) {
        let mark = self.bound.len();
        self.bound.extend(binders);
        f(self);
        self.bound.truncate(mark);
    }

    fn term(&mut self, t: &Term) {
        match t {
            Term::Done(d) => self.data(d),
            Term::Lam(p, b) => self.scoped(p.binders(), |s| s.term(b)),
            Term::App(x, k) => {
                self.occ(x);
                self.spine(k);
            }
            Term::Pair(a, b) => {
                self.term(a);
                self.term(b);
            }
            Term::Split(w, a, b) => {
                self.occ(w);
                self.term(a);
                self.term(b);
            }
            Term::Case { scrut, left_var, left, right_var, right } => {
                self.occ(scrut);
                self.scoped(alloc::vec![left_var.clone()], |s| s.term(left));
                self.scoped(alloc::vec![right_var.clone()], |s| s.term(right));
            }
            Term::LetPair { first, second, scrut, body } => {
                self.occ(scrut);
                self.scoped(alloc::vec![first.clone(), second.clone()], |s| s.term(body));
            }
            Term::BindCut { pat, data, ty, body } => {
                self.data(data);
                self.pos(ty);
                self.scoped(pat.binders(), |s| s.term(body));
            }
            Term::AppCut { fun, ty, spine } => {
                self.term(fun);
                self.neg(ty);
                self.spine(spine);
            }
        }
    }

    fn data(&mut self, d: &DataVal) {
        match d {
            DataVal::Thunk(t) => self.term(t),
            DataVal::Pair(a, b) => {
                self.data(a);
                self.data(b);
            }
            DataVal::Inl(a) | DataVal::Inr(a) => self.data(a),
        }
    }

    fn spine(&mut self, k: &Spine) {
        match k {
            Spine::Nil => {}
            Spine::Cons(d, r) => {
                self.data(d);
                self.spine(r);
            }
            Spine::Proj1(r) | Spine::Proj2(r) => self.spine(r),
            Spine::Kappa(p, t) => self.scoped(p.binders(), |s| s.term(t)),
        }
    }

    fn neg(&mut self, n: &NegType) {
        match n {
            NegType::Atom(_, args) => args.iter().for_each(|d| self.data(d)),
            NegType::Up(p) => self.pos(p),
            NegType::Imp(p, n) => {
                self.pos(p);
                self.neg(n);
            }
            NegType::With(a, b) => {
                self.neg(a);
                self.neg(b);
            }
            NegType::Pi(x, p, n) => {
                self.pos(p);
                self.scoped(alloc::vec![x.clone()], |s| s.neg(n));
            }
        }
    }

    fn pos(&mut self, p: &PosType) {
        match p {
            PosType::Down(n) => self.neg(n),
            PosType::Or(a, b) | PosType::Prod(a, b) => {
                self.pos(a);
                self.pos(b);
            }
            PosType::Sigma(x, a, b) => {
                self.pos(a);
                self.scoped(alloc::vec![x.clone()], |s| s.pos(b));
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Renaming

/// Replaces free occurrences of the map's keys by its values. Values must
/// be fresh; renaming never needs to avoid capture.
#[derive(Clone, Debug, Default)]
pub struct Renaming {
    map: BTreeMap<Ident, Ident>,
}

impl Renaming {
    pub fn new() -> Renaming {
        Renaming::default()
    }

    pub fn insert(&mut self, from: Ident, to: Ident) {
        self.map.insert(from, to);
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    fn get(&self, x: &Ident) -> Ident {
        self.map.get(x).cloned().unwrap_or_else(|| x.clone())
    }

    fn without(&self, binders: &[Ident]) -> Option<Renaming> {
        if binders.iter().any(|b| self.map.contains_key(b)) {
            let mut inner = self.clone();
            for b in binders {
                inner.map.remove(b);
            }
            Some(inner)
        } else {
            None
        }
    }

    fn under<T>(&self, binders: &[Ident], f: impl FnOnce(&Renaming) -> T) -> T {
        match self.without(binders) {
            Some(inner) => f(&inner),
            None => f(self),
        }
    }

    /// Renames the binders of a pattern itself.
    pub fn pattern(&self, p: &Pattern) -> Pattern {
        match p {
            Pattern::Var(x) => Pattern::Var(self.get(x)),
            Pattern::Pair(a, b) => Pattern::pair(self.pattern(a), self.pattern(b)),
            Pattern::Or(w, a, b) => Pattern::or(self.get(w), self.pattern(a), self.pattern(b)),
            Pattern::At(a, b) => Pattern::at(self.pattern(a), self.pattern(b)),
            Pattern::Wild => Pattern::Wild,
        }
    }

    pub fn term(&self, t: &Term) -> Term {
        if self.is_empty() {
            return t.clone();
        }
        match t {
            Term::Done(d) => Term::Done(self.data(d)),
            Term::Lam(p, b) => Term::lam(p.clone(), self.under(&p.binders(), |r| r.term(b))),
            Term::App(x, k) => Term::App(self.get(x), self.spine(k)),
            Term::Pair(a, b) => Term::pair(self.term(a), self.term(b)),
            Term::Split(w, a, b) => Term::split(self.get(w), self.term(a), self.term(b)),
            Term::Case { scrut, left_var, left, right_var, right } => Term::case(
                self.get(scrut),
                left_var.clone(),
                self.under(core::slice::from_ref(left_var), |r| r.term(left)),
                right_var.clone(),
                self.under(core::slice::from_ref(right_var), |r| r.term(right)),
            ),
            Term::LetPair { first, second, scrut, body } => Term::let_pair(
                first.clone(),
                second.clone(),
                self.get(scrut),
                self.under(&[first.clone(), second.clone()], |r| r.term(body)),
            ),
            Term::BindCut { pat, data, ty, body } => Term::bind_cut(
                pat.clone(),
                self.data(data),
                self.pos(ty),
                self.under(&pat.binders(), |r| r.term(body)),
            ),
            Term::AppCut { fun, ty, spine } => Term::app_cut(self.term(fun), self.neg(ty), self.spine(spine)),
        }
    }

    pub fn data(&self, d: &DataVal) -> DataVal {
        match d {
            DataVal::Thunk(t) => DataVal::thunk(self.term(t)),
            DataVal::Pair(a, b) => DataVal::pair(self.data(a), self.data(b)),
            DataVal::Inl(a) => DataVal::inl(self.data(a)),
            DataVal::Inr(a) => DataVal::inr(self.data(a)),
        }
    }

    pub fn spine(&self, k: &Spine) -> Spine {
        match k {
            Spine::Nil => Spine::Nil,
            Spine::Cons(d, r) => Spine::cons(self.data(d), self.spine(r)),
            Spine::Proj1(r) => Spine::proj1(self.spine(r)),
            Spine::Proj2(r) => Spine::proj2(self.spine(r)),
            Spine::Kappa(p, t) => Spine::kappa(p.clone(), self.under(&p.binders(), |r| r.term(t))),
        }
    }

    pub fn neg(&self, n: &NegType) -> NegType {
        if self.is_empty() {
            return n.clone();
        }
        match n {
            NegType::Atom(a, args) => NegType::Atom(a.clone(), args.iter().map(|d| self.data(d)).collect()),
            NegType::Up(p) => NegType::up(self.pos(p)),
            NegType::Imp(p, m) => NegType::imp(self.pos(p), self.neg(m)),
            NegType::With(a, b) => NegType::with(self.neg(a), self.neg(b)),
            NegType::Pi(x, p, m) => {
                NegType::pi(x.clone(), self.pos(p), self.under(core::slice::from_ref(x), |r| r.neg(m)))
            }
        }
    }

    pub fn pos(&self, p: &PosType) -> PosType {
        if self.is_empty() {
            return p.clone();
        }
        match p {
            PosType::Down(n) => PosType::down(self.neg(n)),
            PosType::Or(a, b) => PosType::or(self.pos(a), self.pos(b)),
            PosType::Prod(a, b) => PosType::prod(self.pos(a), self.pos(b)),
            PosType::Sigma(x, a, b) => {
                PosType::sigma(x.clone(), self.pos(a), self.under(core::slice::from_ref(x), |r| r.pos(b)))
            }
        }
    }
}

/// Regenerates every binder of `p` that occurs in `avoid`, renaming the
/// scope `body` accordingly.
pub fn freshen_pattern(p: &Pattern, body: &Term, avoid: &BTreeSet<Ident>) -> (Pattern, Term) {
    let mut ren = Renaming::new();
    for b in p.binders() {
        if avoid.contains(&b) {
            ren.insert(b.clone(), b.fresh());
        }
    }
    if ren.is_empty() {
        (p.clone(), body.clone())
    } else {
        (ren.pattern(p), ren.term(body))
    }
}

fn freshen_var<T>(x: &Ident, body: &T, avoid: &BTreeSet<Ident>, apply: impl Fn(&Renaming, &T) -> T) -> (Ident, T)
where
    T: Clone,
{
    if avoid.contains(x) {
        let y = x.fresh();
        let mut ren = Renaming::new();
        ren.insert(x.clone(), y.clone());
        let b = apply(&ren, body);
        (y, b)
    } else {
        (x.clone(), body.clone())
    }
}

// ---------------------------------------------------------------------------
// Substitution of data for a variable

/// Capture-avoiding substitution `·{d/x}`.
///
/// `var_ty` is the type of `x`. It supplies the cut formula when an
/// application `x k` becomes the cut `u k` for `d = thunk u`, and the
/// component types when a dependent elimination on `x` is resolved.
pub struct Subst<'a> {
    var: &'a Ident,
    data: &'a DataVal,
    var_ty: &'a PosType,
    fv: BTreeSet<Ident>,
}

impl<'a> Subst<'a> {
    pub fn new(var: &'a Ident, data: &'a DataVal, var_ty: &'a PosType) -> Subst<'a> {
        Subst { var, data, var_ty, fv: free_in_data(data) }
    }

    pub fn term(&self, t: &Term) -> Term {
        match t {
            Term::Done(d) => Term::Done(self.data(d)),
            Term::Lam(p, b) => {
                let (p, b) = self.pattern_scope(p, b);
                Term::lam(p, b)
            }
            Term::App(y, k) => {
                let k = self.spine(k);
                if y == self.var {
                    self.head(k)
                } else {
                    Term::App(y.clone(), k)
                }
            }
            Term::Pair(a, b) => Term::pair(self.term(a), self.term(b)),
            Term::Split(w, a, b) => Term::split(w.clone(), self.term(a), self.term(b)),
            Term::Case { scrut, left_var, left, right_var, right } => {
                let (ly, l) = self.var_scope(left_var, left);
                let (ry, r) = self.var_scope(right_var, right);
                if scrut != self.var {
                    return Term::case(scrut.clone(), ly, l, ry, r);
                }
                // Without a disjunction type the components are assumed to be
                // variables, whose substitution needs no type.
                let (pl, pr) = match self.var_ty {
                    PosType::Or(pl, pr) => (&**pl, &**pr),
                    other => (other, other),
                };
                match (self.data.as_var(), self.data) {
                    (Some(w), _) => Term::case(w.clone(), ly, l, ry, r),
                    (None, DataVal::Inl(e)) => Subst::new(&ly, e, pl).term(&l),
                    (None, DataVal::Inr(e)) => Subst::new(&ry, e, pr).term(&r),
                    _ => Term::case(scrut.clone(), ly, l, ry, r),
                }
            }
            Term::LetPair { first, second, scrut, body } => {
                let (y, z, body) = self.pair_scope(first, second, body);
                if scrut != self.var {
                    return Term::let_pair(y, z, scrut.clone(), body);
                }
                if let Some(w) = self.data.as_var() {
                    return Term::let_pair(y, z, w.clone(), body);
                }
                match (self.data, self.var_ty) {
                    (DataVal::Pair(d1, d2), PosType::Prod(p, q)) => {
                        let body = Subst::new(&y, d1, p).term(&body);
                        Subst::new(&z, d2, q).term(&body)
                    }
                    (DataVal::Pair(d1, d2), PosType::Sigma(b, p, q)) => {
                        let q = Subst::new(b, d1, p).pos(q);
                        let body = Subst::new(&y, d1, p).term(&body);
                        Subst::new(&z, d2, &q).term(&body)
                    }
                    (DataVal::Pair(d1, d2), other) => {
                        let body = Subst::new(&y, d1, other).term(&body);
                        Subst::new(&z, d2, other).term(&body)
                    }
                    _ => Term::let_pair(y, z, scrut.clone(), body),
                }
            }
            Term::BindCut { pat, data, ty, body } => {
                let data = self.data(data);
                let ty = self.pos(ty);
                let (pat, body) = self.pattern_scope(pat, body);
                Term::bind_cut(pat, data, ty, body)
            }
            Term::AppCut { fun, ty, spine } => Term::app_cut(self.term(fun), self.neg(ty), self.spine(spine)),
        }
    }

    /// `(x k){d/x}` with `k` already substituted.
    fn head(&self, k: Spine) -> Term {
        if let Some(w) = self.data.as_var() {
            return Term::App(w.clone(), k);
        }
        match (self.data, self.var_ty) {
            (DataVal::Thunk(u), _) if k.is_empty() => (**u).clone(),
            (DataVal::Thunk(u), PosType::Down(n)) => Term::app_cut((**u).clone(), (**n).clone(), k),
            // Ill-typed occurrence; left in place.
            _ => Term::App(self.var.clone(), k),
        }
    }

    pub fn data(&self, d: &DataVal) -> DataVal {
        if d.as_var() == Some(self.var) {
            return self.data.clone();
        }
        match d {
            DataVal::Thunk(t) => DataVal::thunk(self.term(t)),
            DataVal::Pair(a, b) => DataVal::pair(self.data(a), self.data(b)),
            DataVal::Inl(a) => DataVal::inl(self.data(a)),
            DataVal::Inr(a) => DataVal::inr(self.data(a)),
        }
    }

    pub fn spine(&self, k: &Spine) -> Spine {
        match k {
            Spine::Nil => Spine::Nil,
            Spine::Cons(d, r) => Spine::cons(self.data(d), self.spine(r)),
            Spine::Proj1(r) => Spine::proj1(self.spine(r)),
            Spine::Proj2(r) => Spine::proj2(self.spine(r)),
            Spine::Kappa(p, t) => {
                let (p, t) = self.pattern_scope(p, t);
                Spine::kappa(p, t)
            }
        }
    }

    pub fn neg(&self, n: &NegType) -> NegType {
        match n {
            NegType::Atom(a, args) => NegType::Atom(a.clone(), args.iter().map(|d| self.data(d)).collect()),
            NegType::Up(p) => NegType::up(self.pos(p)),
            NegType::Imp(p, m) => NegType::imp(self.pos(p), self.neg(m)),
            NegType::With(a, b) => NegType::with(self.neg(a), self.neg(b)),
            NegType::Pi(y, p, m) => {
                let p = self.pos(p);
                if y == self.var {
                    return NegType::Pi(y.clone(), Box::new(p), m.clone());
                }
                let (y, m) = freshen_var(y, &**m, &self.fv, |r, m| r.neg(m));
                NegType::pi(y, p, self.neg(&m))
            }
        }
    }

    pub fn pos(&self, p: &PosType) -> PosType {
        match p {
            PosType::Down(n) => PosType::down(self.neg(n)),
            PosType::Or(a, b) => PosType::or(self.pos(a), self.pos(b)),
            PosType::Prod(a, b) => PosType::prod(self.pos(a), self.pos(b)),
            PosType::Sigma(y, a, b) => {
                let a = self.pos(a);
                if y == self.var {
                    return PosType::Sigma(y.clone(), Box::new(a), b.clone());
                }
                let (y, b) = freshen_var(y, &**b, &self.fv, |r, b| r.pos(b));
                PosType::sigma(y, a, self.pos(&b))
            }
        }
    }

    fn pattern_scope(&self, p: &Pattern, body: &Term) -> (Pattern, Term) {
        if p.binds(self.var) {
            return (p.clone(), body.clone());
        }
        let (p, body) = freshen_pattern(p, body, &self.fv);
        let body = self.term(&body);
        (p, body)
    }

    fn var_scope(&self, y: &Ident, body: &Term) -> (Ident, Term) {
        if y == self.var {
            return (y.clone(), body.clone());
        }
        let (y, body) = freshen_var(y, body, &self.fv, |r, t| r.term(t));
        let body = self.term(&body);
        (y, body)
    }

    fn pair_scope(&self, y: &Ident, z: &Ident, body: &Term) -> (Ident, Ident, Term) {
        if y == self.var || z == self.var {
            return (y.clone(), z.clone(), body.clone());
        }
        let (y, body) = freshen_var(y, body, &self.fv, |r, t| r.term(t));
        let (z, body) = freshen_var(z, &body, &self.fv, |r, t| r.term(t));
        let body = self.term(&body);
        (y, z, body)
    }
}

pub fn subst_term(t: &Term, var: &Ident, var_ty: &PosType, data: &DataVal) -> Term {
    Subst::new(var, data, var_ty).term(t)
}

/// `N{d/x}`. Propositional types contain no data and come back unchanged.
pub fn subst_data_in_neg(ty: &NegType, var: &Ident, var_ty: &PosType, data: &DataVal) -> NegType {
    Subst::new(var, data, var_ty).neg(ty)
}

pub fn subst_data_in_pos(ty: &PosType, var: &Ident, var_ty: &PosType, data: &DataVal) -> PosType {
    Subst::new(var, data, var_ty).pos(ty)
}

// ---------------------------------------------------------------------------
// Spines and branch selection

/// Concatenation of application contexts. `junction` is the type reached
/// at the end of `front`; it annotates the cut that a trailing κ absorbs.
pub fn spine_concat(front: &Spine, back: &Spine, junction: &NegType) -> Spine {
    match front {
        Spine::Nil => back.clone(),
        Spine::Cons(d, r) => Spine::cons(d.clone(), spine_concat(r, back, junction)),
        Spine::Proj1(r) => Spine::proj1(spine_concat(r, back, junction)),
        Spine::Proj2(r) => Spine::proj2(spine_concat(r, back, junction)),
        Spine::Kappa(p, t) => {
            let mut avoid = free_in_spine(back);
            avoid.extend(free_in_neg(junction));
            let (p, t) = freshen_pattern(p, t, &avoid);
            Spine::kappa(p, Term::app_cut(t, junction.clone(), back.clone()))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

/// Replaces every `split w {t ; u}` in scope of label `w` by the chosen
/// branch.
pub fn select_branch(t: &Term, w: &Ident, side: Side) -> Term {
    match t {
        Term::Split(v, l, r) if v == w => {
            let chosen = match side {
                Side::Left => l,
                Side::Right => r,
            };
            select_branch(chosen, w, side)
        }
        Term::Split(v, l, r) => Term::split(v.clone(), select_branch(l, w, side), select_branch(r, w, side)),
        Term::Done(d) => Term::Done(select_in_data(d, w, side)),
        Term::Lam(p, _) if p.binds(w) => t.clone(),
        Term::Lam(p, b) => Term::lam(p.clone(), select_branch(b, w, side)),
        Term::App(x, k) => Term::App(x.clone(), select_in_spine(k, w, side)),
        Term::Pair(a, b) => Term::pair(select_branch(a, w, side), select_branch(b, w, side)),
        Term::Case { scrut, left_var, left, right_var, right } => Term::case(
            scrut.clone(),
            left_var.clone(),
            if left_var == w { (**left).clone() } else { select_branch(left, w, side) },
            right_var.clone(),
            if right_var == w { (**right).clone() } else { select_branch(right, w, side) },
        ),
        Term::LetPair { first, second, .. } if first == w || second == w => t.clone(),
        Term::LetPair { first, second, scrut, body } => {
            Term::let_pair(first.clone(), second.clone(), scrut.clone(), select_branch(body, w, side))
        }
        Term::BindCut { pat, data, ty, body } => Term::bind_cut(
            pat.clone(),
            select_in_data(data, w, side),
            ty.clone(),
            if pat.binds(w) { (**body).clone() } else { select_branch(body, w, side) },
        ),
        Term::AppCut { fun, ty, spine } => {
            Term::app_cut(select_branch(fun, w, side), ty.clone(), select_in_spine(spine, w, side))
        }
    }
}

fn select_in_data(d: &DataVal, w: &Ident, side: Side) -> DataVal {
    match d {
        DataVal::Thunk(t) => DataVal::thunk(select_branch(t, w, side)),
        DataVal::Pair(a, b) => DataVal::pair(select_in_data(a, w, side), select_in_data(b, w, side)),
        DataVal::Inl(a) => DataVal::inl(select_in_data(a, w, side)),
        DataVal::Inr(a) => DataVal::inr(select_in_data(a, w, side)),
    }
}

fn select_in_spine(k: &Spine, w: &Ident, side: Side) -> Spine {
    match k {
        Spine::Nil => Spine::Nil,
        Spine::Cons(d, r) => Spine::cons(select_in_data(d, w, side), select_in_spine(r, w, side)),
        Spine::Proj1(r) => Spine::proj1(select_in_spine(r, w, side)),
        Spine::Proj2(r) => Spine::proj2(select_in_spine(r, w, side)),
        Spine::Kappa(p, _) if p.binds(w) => k.clone(),
        Spine::Kappa(p, t) => Spine::kappa(p.clone(), select_branch(t, w, side)),
    }
}
