use std::collections::BTreeSet;

use proptest::prelude::*;
use seqcore_core::check::prop::check_term;
use seqcore_core::check::CheckConfig;
use seqcore_core::eval::normalize;
use seqcore_core::program::{build_program, ProgramConfig};
use seqcore_core::subst::freshen_pattern;
use seqcore_core::surface::{Clause, DeclKind, SExpr, SPat, SType, SurfaceDecl};
use seqcore_core::{alpha_eq, DataVal, Ident, NegType, Pattern, PosType, Rule, Sig, Span, Spine, Term};

fn a() -> NegType {
    NegType::atom("a")
}

fn da() -> PosType {
    PosType::down(a())
}

fn sig() -> Sig {
    let mut s = Sig::new();
    s.add_atom(Ident::new("a"));
    s.add_entry(Ident::new("c"), a(), None);
    s
}

fn var() -> impl Strategy<Value = Ident> {
    prop_oneof![Just(Ident::new("x")), Just(Ident::new("y")), Just(Ident::new("z"))]
}

fn pattern() -> impl Strategy<Value = Pattern> {
    var().prop_map(Pattern::Var).prop_recursive(2, 6, 2, |p| {
        prop_oneof![
            (p.clone(), p.clone()).prop_map(|(l, r)| Pattern::pair(l, r)),
            (p.clone(), p).prop_map(|(l, r)| Pattern::or("w", l, r)),
        ]
    })
}

fn cut_pos() -> impl Strategy<Value = PosType> {
    prop_oneof![Just(da()), Just(PosType::or(da(), da())), Just(PosType::prod(da(), da()))]
}

fn cut_neg() -> impl Strategy<Value = NegType> {
    prop_oneof![Just(a()), Just(NegType::imp(da(), a())), Just(NegType::up(da()))]
}

fn term() -> impl Strategy<Value = Term> {
    let head = prop_oneof![var(), Just(Ident::new("c"))];
    head.prop_map(|x| Term::App(x, Spine::Nil)).prop_recursive(4, 24, 3, |t| {
        let data = t.clone().prop_map(DataVal::thunk).prop_recursive(2, 4, 2, |d| {
            prop_oneof![
                d.clone().prop_map(DataVal::inl),
                d.clone().prop_map(DataVal::inr),
                (d.clone(), d).prop_map(|(l, r)| DataVal::pair(l, r)),
            ]
        });
        let spine = prop_oneof![
            Just(Spine::Nil),
            data.clone().prop_map(|d| Spine::cons(d, Spine::Nil)),
            (pattern(), t.clone()).prop_map(|(p, u)| Spine::kappa(p, u)),
        ];
        prop_oneof![
            (pattern(), t.clone()).prop_map(|(p, b)| Term::lam(p, b)),
            data.clone().prop_map(Term::Done),
            (t.clone(), t.clone()).prop_map(|(l, r)| Term::split("w", l, r)),
            (t.clone(), cut_neg(), spine.clone()).prop_map(|(f, n, k)| Term::app_cut(f, n, k)),
            (pattern(), data, cut_pos(), t.clone()).prop_map(|(p, d, ty, b)| Term::bind_cut(p, d, ty, b)),
            (var(), spine).prop_map(|(x, k)| Term::App(x, k)),
        ]
    })
}

/// Builds a well-typed term by decoding a list of choices; once the
/// choices run out every goal takes its smallest inhabitant.
struct Typed {
    choices: Vec<u8>,
    next: usize,
    fresh: usize,
}

impl Typed {
    fn pick(&mut self, n: u8) -> u8 {
        let c = self.choices.get(self.next).copied().unwrap_or(0);
        self.next += 1;
        c % n
    }

    fn name(&mut self) -> Ident {
        self.fresh += 1;
        Ident::new(&format!("v{}", self.fresh))
    }

    fn term(&mut self, goal: &NegType, scope: &[Ident]) -> Term {
        match goal {
            NegType::Up(p) => Term::Done(self.data(p, scope)),
            NegType::Imp(p, n) => {
                let (pat, bound) = self.pattern(p);
                let inner: Vec<_> = scope.iter().cloned().chain(bound).collect();
                let body = self.term(n, &inner);
                Term::lam(pat, body)
            }
            _ => self.atom(scope),
        }
    }

    fn pattern(&mut self, p: &PosType) -> (Pattern, Vec<Ident>) {
        match p {
            PosType::Down(_) => {
                let x = self.name();
                (Pattern::Var(x.clone()), vec![x])
            }
            PosType::Prod(l, r) => {
                let (pl, mut bl) = self.pattern(l);
                let (pr, br) = self.pattern(r);
                bl.extend(br);
                (Pattern::pair(pl, pr), bl)
            }
            other => panic!("no pattern for {other}"),
        }
    }

    fn data(&mut self, p: &PosType, scope: &[Ident]) -> DataVal {
        match p {
            PosType::Down(n) => DataVal::thunk(self.term(n, scope)),
            PosType::Or(l, r) => {
                if self.pick(2) == 0 {
                    DataVal::inl(self.data(l, scope))
                } else {
                    DataVal::inr(self.data(r, scope))
                }
            }
            PosType::Prod(l, r) => DataVal::pair(self.data(l, scope), self.data(r, scope)),
            PosType::Sigma(..) => panic!("propositional only"),
        }
    }

    /// A term of type `a`, possibly a cut.
    fn atom(&mut self, scope: &[Ident]) -> Term {
        match self.pick(6) {
            1 if !scope.is_empty() => {
                let i = self.pick(scope.len() as u8) as usize;
                Term::App(scope[i].clone(), Spine::Nil)
            }
            2 => {
                let f = NegType::imp(da(), a());
                let fun = self.term(&f, scope);
                let arg = self.data(&da(), scope);
                Term::app_cut(fun, f, Spine::cons(arg, Spine::Nil))
            }
            3 => {
                let x = self.name();
                let d = self.data(&da(), scope);
                let inner: Vec<_> = scope.iter().cloned().chain([x.clone()]).collect();
                Term::bind_cut(Pattern::Var(x), d, da(), self.atom(&inner))
            }
            4 => {
                let up = NegType::up(PosType::prod(da(), da()));
                let fun = self.term(&up, scope);
                let (x, y) = (self.name(), self.name());
                let inner: Vec<_> = scope.iter().cloned().chain([x.clone(), y.clone()]).collect();
                let body = self.atom(&inner);
                Term::app_cut(fun, up, Spine::kappa(Pattern::pair(Pattern::Var(x), Pattern::Var(y)), body))
            }
            5 => {
                let w = self.name();
                let or = PosType::or(da(), da());
                let d = self.data(&or, scope);
                let (x, y) = (self.name(), self.name());
                let left = self.atom(&[scope, std::slice::from_ref(&x)].concat());
                let right = self.atom(&[scope, std::slice::from_ref(&y)].concat());
                Term::bind_cut(Pattern::or(w.clone(), Pattern::Var(x), Pattern::Var(y)), d, or, Term::split(w, left, right))
            }
            _ => Term::App(Ident::new("c"), Spine::Nil),
        }
    }
}

fn typed_goal() -> impl Strategy<Value = NegType> {
    prop_oneof![
        Just(a()),
        Just(NegType::up(da())),
        Just(NegType::imp(da(), a())),
        Just(NegType::imp(PosType::prod(da(), da()), NegType::up(PosType::or(da(), da())))),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn well_typed_terms_normalize_to_well_typed_cut_free_terms(
        choices in prop::collection::vec(any::<u8>(), 0..60),
        g in typed_goal(),
    ) {
        let s = sig();
        let t = Typed { choices, next: 0, fresh: 0 }.term(&g, &[]);
        prop_assert!(check_term(&s, &Vec::new(), &t, &g, CheckConfig::default()).is_ok(), "generated {} : {}", t, g);
        let n = normalize(&s, &t, 10_000).expect("terminates");
        prop_assert!(n.stuck.is_none(), "{} stuck: {:?}", t, n.stuck);
        prop_assert!(n.term.is_cut_free(), "{} normalized to {}", t, n.term);
        prop_assert!(check_term(&s, &Vec::new(), &n.term, &g, CheckConfig::default()).is_ok());
    }

    #[test]
    fn alpha_equality_is_reflexive_and_survives_renaming(p in pattern(), body in term()) {
        let t = Term::lam(p.clone(), body.clone());
        prop_assert!(alpha_eq(&t, &t));
        let avoid: BTreeSet<Ident> = ["x", "y", "z", "w"].into_iter().map(Ident::new).collect();
        let (p2, body2) = freshen_pattern(&p, &body, &avoid);
        prop_assert!(p2.vars().iter().all(|v| !avoid.contains(v)));
        prop_assert!(alpha_eq(&t, &Term::lam(p2, body2)));
    }

    #[test]
    fn normalization_is_deterministic(t in term()) {
        let s = sig();
        match (normalize(&s, &t, 200), normalize(&s, &t, 200)) {
            (Ok(m), Ok(n)) => {
                prop_assert!(alpha_eq(&m.term, &n.term));
                prop_assert_eq!(m.steps, n.steps);
            }
            (Err(m), Err(n)) => prop_assert_eq!(m.steps, n.steps),
            _ => prop_assert!(false, "fuel use differs"),
        }
    }
}

fn side(name: &'static str) -> impl Strategy<Value = SPat> {
    let leaf = prop_oneof![Just(SPat::Wild), Just(SPat::var(name))];
    prop_oneof![leaf.clone(), leaf.clone().prop_map(SPat::inl), leaf.prop_map(SPat::inr)]
}

fn spat() -> impl Strategy<Value = SPat> {
    prop_oneof![
        Just(SPat::Wild),
        Just(SPat::var("v")),
        (side("l"), side("r")).prop_map(|(l, r)| SPat::pair(l, r)),
    ]
}

fn sum() -> SType {
    SType::sum(SType::atom("a"), SType::atom("a"))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    /// Clause sets over `(a + a) * (a + a) -> a` that return the first
    /// projection either compile to a checked term or report coverage.
    #[test]
    fn compiled_clauses_check_or_report_coverage(lhs in prop::collection::vec(spat(), 1..5)) {
        let clauses: Vec<Clause> = lhs
            .iter()
            .enumerate()
            .map(|(i, p)| Clause { lhs: vec![p.clone()], rhs: SExpr::app("c", vec![]), span: Span::new(i as u32 + 3, 1) })
            .collect();
        let ty = SType::arrow(SType::prod(sum(), sum()), SType::atom("a"));
        let decls = vec![
            SurfaceDecl { name: Ident::new("a"), span: Span::new(1, 1), kind: DeclKind::Atom },
            SurfaceDecl { name: Ident::new("c"), span: Span::new(2, 1), kind: DeclKind::Postulate(SType::atom("a")) },
            SurfaceDecl { name: Ident::new("f"), span: Span::new(3, 1), kind: DeclKind::Def(ty, clauses) },
        ];
        let prog = build_program(&decls, ProgramConfig::default());
        let catch_all = lhs.iter().any(|p| matches!(p, SPat::Wild | SPat::Var(_)));
        if catch_all {
            prop_assert!(prog.is_ok(), "{:?}", prog.errors);
        }
        if !prog.is_ok() {
            prop_assert!(prog.errors.iter().all(|d| d.rule == Rule::Coverage), "{:?}", prog.errors);
        }
    }
}
