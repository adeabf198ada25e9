//! Polarized formulas and the four syntactic sorts of the core calculus.
//!
//! Negative formulas are right-invertible (atoms, `↑P`, `P ⊃ N`, `N ∧ M`,
//! `Π(x:P).N`); positive formulas are left-invertible (`↓N`, `P ∨ Q`,
//! `P × Q`, `Σ(x:P).Q`). Terms, patterns, data and spines are the proof
//! terms of the inversion, pattern, right-focus and left-focus phases.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::ident::Ident;

/// Which rule set a program is checked with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Pattern-based rules over `⊃` and `×`.
    Propositional,
    /// Variable-based rules over `Π` and `Σ`.
    Dependent,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum NegType {
    /// An atom, applied to data indices in dependent mode. Propositional
    /// atoms have no indices.
    Atom(Ident, Vec<DataVal>),
    Up(Box<PosType>),
    Imp(Box<PosType>, Box<NegType>),
    With(Box<NegType>, Box<NegType>),
    Pi(Ident, Box<PosType>, Box<NegType>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PosType {
    Down(Box<NegType>),
    Or(Box<PosType>, Box<PosType>),
    Prod(Box<PosType>, Box<PosType>),
    Sigma(Ident, Box<PosType>, Box<PosType>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Done(DataVal),
    Lam(Pattern, Box<Term>),
    App(Ident, Spine),
    Pair(Box<Term>, Box<Term>),
    /// `split w { inl -> t ; inr -> u }`, resolved against the or-pattern
    /// labelled `w`.
    Split(Ident, Box<Term>, Box<Term>),
    /// Dependent disjunction elimination `split x { inl y -> t ; inr z -> u }`.
    Case {
        scrut: Ident,
        left_var: Ident,
        left: Box<Term>,
        right_var: Ident,
        right: Box<Term>,
    },
    /// Dependent pair elimination `let (first, second) = scrut in body`.
    LetPair {
        first: Ident,
        second: Ident,
        scrut: Ident,
        body: Box<Term>,
    },
    /// Binding cut `p = d in t`, annotated with the cut formula of `d`.
    BindCut {
        pat: Pattern,
        data: DataVal,
        ty: PosType,
        body: Box<Term>,
    },
    /// Application cut `t k`, annotated with the cut formula of `t`.
    AppCut {
        fun: Box<Term>,
        ty: NegType,
        spine: Spine,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Pattern {
    Var(Ident),
    Pair(Box<Pattern>, Box<Pattern>),
    Or(Ident, Box<Pattern>, Box<Pattern>),
    /// Contraction `p @ q`.
    At(Box<Pattern>, Box<Pattern>),
    /// Weakening `_`.
    Wild,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DataVal {
    Thunk(Box<Term>),
    Pair(Box<DataVal>, Box<DataVal>),
    Inl(Box<DataVal>),
    Inr(Box<DataVal>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Spine {
    Nil,
    Cons(DataVal, Box<Spine>),
    Proj1(Box<Spine>),
    Proj2(Box<Spine>),
    /// `κp.t`; only ever the last element of a spine.
    Kappa(Pattern, Box<Term>),
}

impl NegType {
    pub fn atom(name: &str) -> NegType {
        NegType::Atom(Ident::new(name), Vec::new())
    }

    pub fn up(p: PosType) -> NegType {
        NegType::Up(Box::new(p))
    }

    pub fn imp(p: PosType, n: NegType) -> NegType {
        NegType::Imp(Box::new(p), Box::new(n))
    }

    pub fn with(n: NegType, m: NegType) -> NegType {
        NegType::With(Box::new(n), Box::new(m))
    }

    pub fn pi(x: Ident, p: PosType, n: NegType) -> NegType {
        NegType::Pi(x, Box::new(p), Box::new(n))
    }
}

impl PosType {
    pub fn down(n: NegType) -> PosType {
        PosType::Down(Box::new(n))
    }

    pub fn or(p: PosType, q: PosType) -> PosType {
        PosType::Or(Box::new(p), Box::new(q))
    }

    pub fn prod(p: PosType, q: PosType) -> PosType {
        PosType::Prod(Box::new(p), Box::new(q))
    }

    pub fn sigma(x: Ident, p: PosType, q: PosType) -> PosType {
        PosType::Sigma(x, Box::new(p), Box::new(q))
    }
}

impl Term {
    pub fn lam(p: Pattern, body: Term) -> Term {
        Term::Lam(p, Box::new(body))
    }

    pub fn app(x: impl Into<Ident>, k: Spine) -> Term {
        Term::App(x.into(), k)
    }

    /// `x ε`.
    pub fn var(x: impl Into<Ident>) -> Term {
        Term::App(x.into(), Spine::Nil)
    }

    pub fn pair(t: Term, u: Term) -> Term {
        Term::Pair(Box::new(t), Box::new(u))
    }

    pub fn split(w: impl Into<Ident>, t: Term, u: Term) -> Term {
        Term::Split(w.into(), Box::new(t), Box::new(u))
    }

    pub fn bind_cut(pat: Pattern, data: DataVal, ty: PosType, body: Term) -> Term {
        Term::BindCut { pat, data, ty, body: Box::new(body) }
    }

    pub fn app_cut(fun: Term, ty: NegType, spine: Spine) -> Term {
        Term::AppCut { fun: Box::new(fun), ty, spine }
    }

    pub fn case(scrut: Ident, left_var: Ident, left: Term, right_var: Ident, right: Term) -> Term {
        Term::Case { scrut, left_var, left: Box::new(left), right_var, right: Box::new(right) }
    }

    pub fn let_pair(first: Ident, second: Ident, scrut: Ident, body: Term) -> Term {
        Term::LetPair { first, second, scrut, body: Box::new(body) }
    }

    /// True iff the term contains neither cut former.
    pub fn is_cut_free(&self) -> bool {
        match self {
            Term::Done(d) => d.is_cut_free(),
            Term::Lam(_, t) => t.is_cut_free(),
            Term::App(_, k) => k.is_cut_free(),
            Term::Pair(t, u) | Term::Split(_, t, u) => t.is_cut_free() && u.is_cut_free(),
            Term::Case { left, right, .. } => left.is_cut_free() && right.is_cut_free(),
            Term::LetPair { body, .. } => body.is_cut_free(),
            Term::BindCut { .. } | Term::AppCut { .. } => false,
        }
    }

    /// Number of syntax nodes across all four sorts (types excluded).
    pub fn size(&self) -> usize {
        match self {
            Term::Done(d) => 1 + d.size(),
            Term::Lam(p, t) => 1 + p.size() + t.size(),
            Term::App(_, k) => 1 + k.size(),
            Term::Pair(t, u) | Term::Split(_, t, u) => 1 + t.size() + u.size(),
            Term::Case { left, right, .. } => 1 + left.size() + right.size(),
            Term::LetPair { body, .. } => 1 + body.size(),
            Term::BindCut { pat, data, body, .. } => 1 + pat.size() + data.size() + body.size(),
            Term::AppCut { fun, spine, .. } => 1 + fun.size() + spine.size(),
        }
    }
}

impl Pattern {
    pub fn var(x: impl Into<Ident>) -> Pattern {
        Pattern::Var(x.into())
    }

    pub fn pair(p: Pattern, q: Pattern) -> Pattern {
        Pattern::Pair(Box::new(p), Box::new(q))
    }

    pub fn or(w: impl Into<Ident>, p: Pattern, q: Pattern) -> Pattern {
        Pattern::Or(w.into(), Box::new(p), Box::new(q))
    }

    pub fn at(p: Pattern, q: Pattern) -> Pattern {
        Pattern::At(Box::new(p), Box::new(q))
    }

    /// Variables bound by the pattern, left to right.
    pub fn vars(&self) -> Vec<Ident> {
        let mut out = Vec::new();
        self.collect(&mut out, false);
        out
    }

    /// Or-pattern labels, left to right.
    pub fn labels(&self) -> Vec<Ident> {
        let mut out = Vec::new();
        self.collect_labels(&mut out);
        out
    }

    /// Every identifier the pattern binds: variables and labels.
    pub fn binders(&self) -> Vec<Ident> {
        let mut out = Vec::new();
        self.collect(&mut out, true);
        out
    }

    fn collect(&self, out: &mut Vec<Ident>, with_labels: bool) {
        match self {
            Pattern::Var(x) => out.push(x.clone()),
            Pattern::Pair(p, q) | Pattern::At(p, q) => {
                p.collect(out, with_labels);
                q.collect(out, with_labels);
            }
            Pattern::Or(w, p, q) => {
                if with_labels {
                    out.push(w.clone());
                }
                p.collect(out, with_labels);
                q.collect(out, with_labels);
            }
            Pattern::Wild => {}
        }
    }

    fn collect_labels(&self, out: &mut Vec<Ident>) {
        match self {
            Pattern::Var(_) | Pattern::Wild => {}
            Pattern::Pair(p, q) | Pattern::At(p, q) => {
                p.collect_labels(out);
                q.collect_labels(out);
            }
            Pattern::Or(w, p, q) => {
                out.push(w.clone());
                p.collect_labels(out);
                q.collect_labels(out);
            }
        }
    }

    pub fn binds(&self, x: &Ident) -> bool {
        match self {
            Pattern::Var(y) => y == x,
            Pattern::Pair(p, q) | Pattern::At(p, q) => p.binds(x) || q.binds(x),
            Pattern::Or(w, p, q) => w == x || p.binds(x) || q.binds(x),
            Pattern::Wild => false,
        }
    }

    /// All variables and labels pairwise distinct.
    pub fn is_linear(&self) -> bool {
        let all = self.binders();
        let set: BTreeSet<&Ident> = all.iter().collect();
        set.len() == all.len()
    }

    pub fn uses_structural(&self) -> bool {
        match self {
            Pattern::Var(_) => false,
            Pattern::Wild | Pattern::At(..) => true,
            Pattern::Pair(p, q) | Pattern::Or(_, p, q) => p.uses_structural() || q.uses_structural(),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Pattern::Var(_) | Pattern::Wild => 1,
            Pattern::Pair(p, q) | Pattern::Or(_, p, q) | Pattern::At(p, q) => 1 + p.size() + q.size(),
        }
    }
}

impl DataVal {
    pub fn thunk(t: Term) -> DataVal {
        DataVal::Thunk(Box::new(t))
    }

    /// The η-injection `thunk (x ε)` of a variable into data.
    pub fn var(x: impl Into<Ident>) -> DataVal {
        DataVal::Thunk(Box::new(Term::var(x)))
    }

    pub fn pair(d: DataVal, e: DataVal) -> DataVal {
        DataVal::Pair(Box::new(d), Box::new(e))
    }

    pub fn inl(d: DataVal) -> DataVal {
        DataVal::Inl(Box::new(d))
    }

    pub fn inr(d: DataVal) -> DataVal {
        DataVal::Inr(Box::new(d))
    }

    /// `Some(x)` when the datum is the η-injection of variable `x`.
    pub fn as_var(&self) -> Option<&Ident> {
        match self {
            DataVal::Thunk(t) => match &**t {
                Term::App(x, Spine::Nil) => Some(x),
                _ => None,
            },
            _ => None,
        }
    }

    pub fn is_cut_free(&self) -> bool {
        match self {
            DataVal::Thunk(t) => t.is_cut_free(),
            DataVal::Pair(d, e) => d.is_cut_free() && e.is_cut_free(),
            DataVal::Inl(d) | DataVal::Inr(d) => d.is_cut_free(),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            DataVal::Thunk(t) => 1 + t.size(),
            DataVal::Pair(d, e) => 1 + d.size() + e.size(),
            DataVal::Inl(d) | DataVal::Inr(d) => 1 + d.size(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            DataVal::Thunk(_) => 1,
            DataVal::Pair(d, e) => 1 + d.depth().max(e.depth()),
            DataVal::Inl(d) | DataVal::Inr(d) => 1 + d.depth(),
        }
    }
}

impl Spine {
    pub fn cons(d: DataVal, k: Spine) -> Spine {
        Spine::Cons(d, Box::new(k))
    }

    pub fn proj1(k: Spine) -> Spine {
        Spine::Proj1(Box::new(k))
    }

    pub fn proj2(k: Spine) -> Spine {
        Spine::Proj2(Box::new(k))
    }

    pub fn kappa(p: Pattern, t: Term) -> Spine {
        Spine::Kappa(p, Box::new(t))
    }

    /// Builds `d1 :: … :: dn :: ε`.
    pub fn from_args(args: impl IntoIterator<Item = DataVal, IntoIter: DoubleEndedIterator>) -> Spine {
        args.into_iter().rev().fold(Spine::Nil, |k, d| Spine::cons(d, k))
    }

    /// Number of elements, counting κ as one and not counting `ε`.
    pub fn len(&self) -> usize {
        match self {
            Spine::Nil => 0,
            Spine::Kappa(..) => 1,
            Spine::Cons(_, k) | Spine::Proj1(k) | Spine::Proj2(k) => 1 + k.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Spine::Nil)
    }

    /// κ may only occur as the final element.
    pub fn kappa_is_final(&self) -> bool {
        match self {
            Spine::Nil | Spine::Kappa(..) => true,
            Spine::Cons(_, k) | Spine::Proj1(k) | Spine::Proj2(k) => k.kappa_is_final(),
        }
    }

    pub fn is_cut_free(&self) -> bool {
        match self {
            Spine::Nil => true,
            Spine::Cons(d, k) => d.is_cut_free() && k.is_cut_free(),
            Spine::Proj1(k) | Spine::Proj2(k) => k.is_cut_free(),
            Spine::Kappa(_, t) => t.is_cut_free(),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Spine::Nil => 1,
            Spine::Cons(d, k) => 1 + d.size() + k.size(),
            Spine::Proj1(k) | Spine::Proj2(k) => 1 + k.size(),
            Spine::Kappa(p, t) => 1 + p.size() + t.size(),
        }
    }
}

/// One persistent signature entry: a postulate (no body) or a definition.
#[derive(Clone, Debug, PartialEq)]
pub struct SigEntry {
    pub name: Ident,
    pub ty: NegType,
    pub body: Option<Term>,
}

/// The persistent zone: declared atoms plus named postulates and
/// definitions, each usable as a variable of type `↓N`.
#[derive(Clone, Debug, Default)]
pub struct Sig {
    atoms: BTreeSet<Ident>,
    entries: Vec<SigEntry>,
    index: BTreeMap<Ident, usize>,
}

impl Sig {
    pub fn new() -> Sig {
        Sig::default()
    }

    /// Returns false if the name is already declared.
    pub fn add_atom(&mut self, name: Ident) -> bool {
        if self.is_declared(&name) {
            return false;
        }
        self.atoms.insert(name)
    }

    /// Returns false if the name is already declared.
    pub fn add_entry(&mut self, name: Ident, ty: NegType, body: Option<Term>) -> bool {
        if self.is_declared(&name) {
            return false;
        }
        self.index.insert(name.clone(), self.entries.len());
        self.entries.push(SigEntry { name, ty, body });
        true
    }

    pub fn has_atom(&self, name: &Ident) -> bool {
        self.atoms.contains(name)
    }

    pub fn is_declared(&self, name: &Ident) -> bool {
        self.atoms.contains(name) || self.index.contains_key(name)
    }

    pub fn lookup(&self, name: &Ident) -> Option<&SigEntry> {
        self.index.get(name).map(|&i| &self.entries[i])
    }

    pub fn atoms(&self) -> impl Iterator<Item = &Ident> {
        self.atoms.iter()
    }

    pub fn entries(&self) -> &[SigEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.atoms.len() + self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// The linear inversion zone `Γ` of the pattern-based rules.
pub type Ctx = Vec<(Pattern, PosType)>;

/// The telescope `Γ` of the dependent rules.
pub type DepCtx = Vec<(Ident, PosType)>;
