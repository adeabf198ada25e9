//! Exhaustive enumeration of small core syntax over one atom `a`.
//!
//! Sizes agree with the `size` methods of the syntax: one per constructor
//! and per pattern variable. Cut annotations are drawn from a short fixed
//! list and do not count.

use seqcore_core::{DataVal, Ident, NegType, Pattern, PosType, Sig, Spine, Term};

pub fn a() -> NegType {
    NegType::atom("a")
}

pub fn da() -> PosType {
    PosType::down(a())
}

/// Atom `a` and a constant `c : a`.
pub fn sig() -> Sig {
    let mut sig = Sig::new();
    sig.add_atom(Ident::new("a"));
    sig.add_entry(Ident::new("c"), a(), None);
    sig
}

/// Goals against which enumerated terms are checked.
pub fn neg_goals() -> Vec<NegType> {
    let or = PosType::or(da(), da());
    let prod = PosType::prod(da(), da());
    vec![
        a(),
        NegType::up(da()),
        NegType::up(or.clone()),
        NegType::up(prod.clone()),
        NegType::imp(da(), a()),
        NegType::imp(da(), NegType::imp(da(), a())),
        NegType::imp(prod, a()),
        NegType::imp(or.clone(), a()),
        NegType::imp(or, NegType::up(da())),
        NegType::imp(PosType::down(NegType::imp(da(), a())), a()),
        NegType::with(a(), a()),
        NegType::imp(PosType::down(NegType::up(da())), a()),
    ]
}

pub fn pos_goals() -> Vec<PosType> {
    vec![
        da(),
        PosType::or(da(), da()),
        PosType::prod(da(), da()),
        PosType::down(NegType::imp(da(), a())),
        PosType::down(NegType::up(da())),
    ]
}

fn cut_pos() -> Vec<PosType> {
    vec![da(), PosType::or(da(), da())]
}

fn cut_neg() -> Vec<NegType> {
    vec![a(), NegType::imp(da(), a())]
}

pub struct Enum {
    vars: Vec<Ident>,
    heads: Vec<Ident>,
    label: Ident,
    pats: Vec<Vec<Pattern>>,
    data: Vec<Vec<DataVal>>,
    spines: Vec<Vec<Spine>>,
    terms: Vec<Vec<Term>>,
}

impl Enum {
    /// Builds every sort up to `max` and keeps them indexed by exact size.
    pub fn new(max: usize) -> Enum {
        let vars = vec![Ident::new("x"), Ident::new("y")];
        let mut heads = vars.clone();
        heads.push(Ident::new("c"));
        let mut e = Enum {
            vars,
            heads,
            label: Ident::new("w"),
            pats: vec![Vec::new()],
            data: vec![Vec::new()],
            spines: vec![Vec::new()],
            terms: vec![Vec::new()],
        };
        for n in 1..=max {
            let p = e.gen_pats(n);
            e.pats.push(p);
            let t = e.gen_terms(n);
            e.terms.push(t);
            let d = e.gen_data(n);
            e.data.push(d);
            let k = e.gen_spines(n);
            e.spines.push(k);
        }
        e
    }

    pub fn patterns(&self, n: usize) -> &[Pattern] {
        &self.pats[n]
    }

    pub fn terms(&self, n: usize) -> &[Term] {
        &self.terms[n]
    }

    pub fn data(&self, n: usize) -> &[DataVal] {
        &self.data[n]
    }

    pub fn spines(&self, n: usize) -> &[Spine] {
        &self.spines[n]
    }

    /// Splits of `n - 1` into two positive sizes.
    fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
        (1..n.saturating_sub(1)).map(move |i| (i, n - 1 - i))
    }

    fn gen_pats(&self, n: usize) -> Vec<Pattern> {
        let mut out = Vec::new();
        if n == 1 {
            out.extend(self.vars.iter().cloned().map(Pattern::Var));
            out.push(Pattern::Wild);
            return out;
        }
        for (i, j) in Self::pairs(n) {
            for p in &self.pats[i] {
                for q in &self.pats[j] {
                    out.push(Pattern::pair(p.clone(), q.clone()));
                    out.push(Pattern::Or(self.label.clone(), Box::new(p.clone()), Box::new(q.clone())));
                    out.push(Pattern::at(p.clone(), q.clone()));
                }
            }
        }
        out
    }

    fn gen_data(&self, n: usize) -> Vec<DataVal> {
        let mut out = Vec::new();
        if n < 2 {
            return out;
        }
        out.extend(self.terms[n - 1].iter().cloned().map(DataVal::thunk));
        for d in &self.data[n - 1] {
            out.push(DataVal::inl(d.clone()));
            out.push(DataVal::inr(d.clone()));
        }
        for (i, j) in Self::pairs(n) {
            for d in &self.data[i] {
                for e in &self.data[j] {
                    out.push(DataVal::pair(d.clone(), e.clone()));
                }
            }
        }
        out
    }

    fn gen_spines(&self, n: usize) -> Vec<Spine> {
        let mut out = Vec::new();
        if n == 1 {
            out.push(Spine::Nil);
            return out;
        }
        for k in &self.spines[n - 1] {
            out.push(Spine::proj1(k.clone()));
            out.push(Spine::proj2(k.clone()));
        }
        for (i, j) in Self::pairs(n) {
            for d in &self.data[i] {
                for k in &self.spines[j] {
                    out.push(Spine::cons(d.clone(), k.clone()));
                }
            }
            for p in &self.pats[i] {
                for t in &self.terms[j] {
                    out.push(Spine::kappa(p.clone(), t.clone()));
                }
            }
        }
        out
    }

    fn gen_terms(&self, n: usize) -> Vec<Term> {
        let mut out = Vec::new();
        if n >= 2 {
            for k in &self.spines[n - 1] {
                for x in &self.heads {
                    out.push(Term::App(x.clone(), k.clone()));
                }
            }
            for d in &self.data[n - 1] {
                out.push(Term::Done(d.clone()));
            }
        }
        for (i, j) in Self::pairs(n) {
            for p in &self.pats[i] {
                for t in &self.terms[j] {
                    out.push(Term::lam(p.clone(), t.clone()));
                }
            }
            for t in &self.terms[i] {
                for u in &self.terms[j] {
                    out.push(Term::pair(t.clone(), u.clone()));
                    out.push(Term::Split(self.label.clone(), Box::new(t.clone()), Box::new(u.clone())));
                }
            }
            for t in &self.terms[i] {
                for k in &self.spines[j] {
                    for ty in cut_neg() {
                        out.push(Term::app_cut(t.clone(), ty, k.clone()));
                    }
                }
            }
        }
        // let p : P = d in t, with p + d + t = n - 1.
        for ip in 1..n {
            for id in 1..n {
                let Some(it) = (n - 1).checked_sub(ip + id).filter(|&it| it > 0) else { continue };
                for p in &self.pats[ip] {
                    for d in &self.data[id] {
                        for t in &self.terms[it] {
                            for ty in cut_pos() {
                                out.push(Term::bind_cut(p.clone(), d.clone(), ty, t.clone()));
                            }
                        }
                    }
                }
            }
        }
        out
    }
}
