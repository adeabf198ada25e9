//! First-match reference interpreter for surface clauses.
//!
//! Clauses are tried top to bottom against concrete argument data, without
//! any case tree; the chosen right-hand side is built directly as a core
//! term over the matched data.

use seqcore_core::surface::{Clause, SExpr, SPat};
use seqcore_core::{DataVal, Ident, NegType, PosType, Sig, Spine, Term};

type Env = Vec<(Ident, DataVal)>;

/// Every value of `ty` up to `depth`, with each thunk position filled by a
/// fresh postulate named after `prefix` and its path.
pub fn values(ty: &PosType, prefix: &str, depth: usize, sig: &mut Sig) -> Vec<DataVal> {
    if depth == 0 {
        return Vec::new();
    }
    match ty {
        PosType::Down(n) => {
            let k = Ident::new(prefix);
            sig.add_entry(k.clone(), (**n).clone(), None);
            vec![DataVal::thunk(Term::App(k, Spine::Nil))]
        }
        PosType::Or(p, q) => {
            let mut out: Vec<_> = values(p, &format!("{prefix}l"), depth - 1, sig).into_iter().map(DataVal::inl).collect();
            out.extend(values(q, &format!("{prefix}r"), depth - 1, sig).into_iter().map(DataVal::inr));
            out
        }
        PosType::Prod(p, q) | PosType::Sigma(_, p, q) => {
            let ls = values(p, &format!("{prefix}a"), depth - 1, sig);
            let rs = values(q, &format!("{prefix}b"), depth - 1, sig);
            ls.iter().flat_map(|l| rs.iter().map(move |r| DataVal::pair(l.clone(), r.clone()))).collect()
        }
    }
}

/// Argument types of `ty` in order, and the type left after them.
pub fn domains(ty: &NegType) -> (Vec<PosType>, NegType) {
    let mut doms = Vec::new();
    let mut cur = ty.clone();
    loop {
        match cur {
            NegType::Imp(p, n) | NegType::Pi(_, p, n) => {
                doms.push(*p);
                cur = *n;
            }
            other => return (doms, other),
        }
    }
}

/// Every combination of argument data for `doms`.
pub fn arguments(doms: &[PosType], depth: usize, sig: &mut Sig) -> Vec<Vec<DataVal>> {
    let mut rows = vec![Vec::new()];
    for (i, p) in doms.iter().enumerate() {
        let vs = values(p, &format!("k{i}"), depth, sig);
        rows = rows.iter().flat_map(|row| vs.iter().map(move |v| [row.clone(), vec![v.clone()]].concat())).collect();
    }
    rows
}

pub fn spine_of(args: &[DataVal]) -> Spine {
    args.iter().rev().fold(Spine::Nil, |k, d| Spine::cons(d.clone(), k))
}

fn matches(p: &SPat, d: &DataVal, env: &mut Env) -> bool {
    match (p, d) {
        (SPat::Var(x), _) => {
            env.push((x.clone(), d.clone()));
            true
        }
        (SPat::Wild, _) => true,
        (SPat::At(x, q), _) => {
            env.push((x.clone(), d.clone()));
            matches(q, d, env)
        }
        (SPat::Pair(p, q), DataVal::Pair(a, b)) => matches(p, a, env) && matches(q, b, env),
        (SPat::Inl(p), DataVal::Inl(a)) | (SPat::Inr(p), DataVal::Inr(a)) => matches(p, a, env),
        _ => false,
    }
}

/// The right-hand side selected for `args`, applied to any arguments
/// beyond the clauses' patterns.
pub fn interpret(sig: &Sig, ty: &NegType, clauses: &[Clause], args: &[DataVal]) -> Option<Term> {
    let arity = clauses.first()?.lhs.len();
    let mut result = ty.clone();
    for _ in 0..arity {
        result = match result {
            NegType::Imp(_, n) | NegType::Pi(_, _, n) => *n,
            other => panic!("too many patterns for {other}"),
        };
    }
    let (now, later) = args.split_at(arity);
    for clause in clauses {
        let mut env = Env::new();
        if clause.lhs.iter().zip(now).all(|(p, d)| matches(p, d, &mut env)) {
            let r = Rhs { sig, env: &env };
            let t = r.term(&clause.rhs, &result);
            return Some(if later.is_empty() {
                t
            } else if let Term::App(h, k) = t {
                Term::App(h, append(&k, later))
            } else {
                Term::app_cut(t, result, spine_of(later))
            });
        }
    }
    None
}

fn append(k: &Spine, more: &[DataVal]) -> Spine {
    match k {
        Spine::Nil => spine_of(more),
        Spine::Cons(d, rest) => Spine::cons(d.clone(), append(rest, more)),
        other => panic!("cannot extend spine {other}"),
    }
}

struct Rhs<'a> {
    sig: &'a Sig,
    env: &'a Env,
}

impl Rhs<'_> {
    fn bound(&self, x: &Ident) -> Option<&DataVal> {
        self.env.iter().rev().find(|(y, _)| y == x).map(|(_, d)| d)
    }

    fn term(&self, e: &SExpr, goal: &NegType) -> Term {
        match (e, goal) {
            (_, NegType::Up(p)) => Term::Done(self.data(e, p)),
            (SExpr::Pair(a, b), NegType::With(l, r)) => Term::pair(self.term(a, l), self.term(b, r)),
            (SExpr::App(h, args), _) => self.apply(h, args),
            _ => panic!("no term for {e:?} at {goal}"),
        }
    }

    fn apply(&self, h: &Ident, args: &[SExpr]) -> Term {
        let (head, ty) = match self.bound(h) {
            Some(DataVal::Thunk(t)) => match &**t {
                Term::App(g, Spine::Nil) => (g.clone(), self.sig.lookup(g).expect("postulated").ty.clone()),
                other => panic!("unexpected thunk {other}"),
            },
            Some(d) => panic!("{h} is bound to {d}, not a thunk"),
            None => (h.clone(), self.sig.lookup(h).unwrap_or_else(|| panic!("unknown {h}")).ty.clone()),
        };
        let (doms, _) = domains(&ty);
        let data: Vec<_> = args.iter().zip(&doms).map(|(a, p)| self.data(a, p)).collect();
        Term::App(head, spine_of(&data))
    }

    fn data(&self, e: &SExpr, goal: &PosType) -> DataVal {
        if let SExpr::App(x, args) = e {
            if args.is_empty() {
                if let Some(d) = self.bound(x) {
                    return d.clone();
                }
            }
        }
        match (e, goal) {
            (_, PosType::Down(n)) => DataVal::thunk(self.term(e, n)),
            (SExpr::Inl(a), PosType::Or(p, _)) => DataVal::inl(self.data(a, p)),
            (SExpr::Inr(a), PosType::Or(_, q)) => DataVal::inr(self.data(a, q)),
            (SExpr::Pair(a, b), PosType::Prod(p, q) | PosType::Sigma(_, p, q)) => {
                DataVal::pair(self.data(a, p), self.data(b, q))
            }
            _ => panic!("no data for {e:?} at {goal}"),
        }
    }
}
