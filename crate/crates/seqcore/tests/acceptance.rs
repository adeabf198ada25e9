//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::time::{Duration, Instant};

use common::corpus::{self, Example, EXAMPLES};
use common::enumerate::{self, Enum};
use common::oracle::Oracle;
use common::reference;

use seqcore::core_syntax::{parse_data, parse_neg, parse_sig, parse_spine, parse_term};
use seqcore::parse::parse_program;
use seqcore::{run_source, Command, RunConfig};
use seqcore_core::check::dep::dep_check_term;
use seqcore_core::check::prop::{check_data, check_spine, check_term};
use seqcore_core::check::CheckConfig;
use seqcore_core::eval::{normalize, trace, Reduction};
use seqcore_core::print::print_sig;
use seqcore_core::program::{build_program, Program, ProgramConfig};
use seqcore_core::subst::subst_data_in_neg;
use seqcore_core::surface::{pretty_equations, DeclKind};
use seqcore_core::{alpha_eq, Ctx, DataVal, Ident, Mode, NegType, Pattern, PosType, Sig, Spine, Term};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

const ENUM_SIZE: usize = 8;
const ARG_DEPTH: usize = 3;
const FUEL: usize = 10_000;

fn main() {
    let started = Instant::now();
    let e = Enum::new(ENUM_SIZE);
    let criteria: Vec<Criterion> = vec![
        ("worked example compiles to the expected term", Box::new(worked_example_typing)),
        ("worked example runs", Box::new(worked_example_dynamics)),
        ("beta and kappa traces", Box::new(golden_traces)),
        ("subject reduction", Box::new(|| subject_reduction(&e))),
        ("checker agrees with the rule-search oracle", Box::new(|| checker_vs_oracle(&e))),
        ("compiler agrees with the first-match interpreter", Box::new(compiler_vs_reference)),
        ("normal forms are cut-free", Box::new(cut_free_normal_forms)),
        ("dependent fragment", Box::new(dependent_fragment)),
        ("structural patterns", Box::new(structural_patterns)),
        ("round trips", Box::new(|| round_trips(&e))),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let res = std::panic::catch_unwind(std::panic::AssertUnwindSafe(run))
            .unwrap_or_else(|p| Err(format!("panicked: {}", panic_text(&p))));
        let ms = t.elapsed().as_millis();
        match res {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({ms} ms)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} ({ms} ms)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed in {:.1?}", criteria.len() - failed, criteria.len(), started.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}

fn panic_text(p: &Box<dyn std::any::Any + Send>) -> String {
    p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default()
}

fn ensure(cond: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(why())
    }
}

fn id(s: &str) -> Ident {
    Ident::new(s)
}

fn term(src: &str) -> Term {
    parse_term(src).unwrap_or_else(|d| panic!("{}", d.render("<term>")))
}

fn neg(src: &str) -> NegType {
    parse_neg(src).unwrap_or_else(|d| panic!("{}", d.render("<type>")))
}

fn within(limit: Duration, t: Instant) -> Result<(), String> {
    ensure(t.elapsed() < limit, || format!("took {:.1?}, limit {limit:?}", t.elapsed()))
}

fn example(file: &str) -> &'static Example {
    EXAMPLES.iter().find(|e| e.file == file).expect("listed example")
}

fn worked_example_typing() -> Outcome {
    let t = Instant::now();
    let prog = corpus::build(example("f.seq"));
    ensure(prog.is_ok(), || format!("errors: {:?}", prog.errors))?;
    ensure(prog.declarations == 3, || format!("{} declarations", prog.declarations))?;
    let f = prog.definition(&id("f")).ok_or("no definition f")?;
    let displayed = term("\\[(x, y) | z]_w. split w { inl -> add (thunk x [] :: thunk y [] :: []) ; inr -> z [] }");
    ensure(alpha_eq(&f.term, &displayed), || format!("compiled {}", f.term))?;
    within(Duration::from_secs(1), t)?;
    Ok(format!("f = {}", f.term))
}

fn worked_example_dynamics() -> Outcome {
    let prog = corpus::build(example("f.seq"));
    let mut sig = prog.sig.clone();
    for k in ["q", "r"] {
        sig.add_entry(id(k), neg("ℕ"), None);
    }
    let (q, r) = (DataVal::var(id("q")), DataVal::var(id("r")));
    let cases = [
        (DataVal::inr(q.clone()), "inr q", "q []"),
        (DataVal::inl(DataVal::pair(q, r)), "inl (q, r)", "add (thunk q [] :: thunk r [] :: [])"),
    ];
    let mut steps = Vec::new();
    for (d, arg, expected) in cases {
        let input = Term::App(id("f"), Spine::cons(d, Spine::Nil));
        let n = normalize(&sig, &input, FUEL).map_err(|e| e.to_string())?;
        ensure(alpha_eq(&n.term, &term(expected)), || format!("{input} gave {}", n.term))?;
        ensure(n.steps <= 20, || format!("{input} took {} steps", n.steps))?;
        steps.push(n.steps);
        let mut cfg = RunConfig::new(Command::Run, "f.seq");
        cfg.entry = Some("f".into());
        cfg.arg = Some(arg.into());
        let out = run_source(&cfg, &corpus::source("f.seq"));
        ensure(out.code == 0 && out.stdout.trim() == expected, || format!("run --arg '{arg}': {out:?}"))?;
    }
    Ok(format!("{} and {} steps", steps[0], steps[1]))
}

fn golden_traces() -> Outcome {
    let mut sig = Sig::new();
    sig.add_atom(id("a"));
    sig.add_entry(id("c"), neg("a"), None);
    let cases = [
        ("(\\x. x [] : down a -> a) (thunk c [] :: [])", vec![Reduction::R1, Reduction::R6, Reduction::R4]),
        ("(done (thunk c []) : up down a) (kappa x. x [])", vec![Reduction::R2, Reduction::R6]),
    ];
    for (src, rules) in &cases {
        let tr = trace(&sig, &term(src), FUEL).map_err(|e| e.to_string())?;
        ensure(&tr.rules() == rules, || format!("{src}: {:?}", tr.rules()))?;
        ensure(alpha_eq(&tr.result.term, &term("c []")), || format!("{src} gave {}", tr.result.term))?;
    }
    Ok("R1 R6 R4 and R2 R6".into())
}

fn focus_types() -> Vec<NegType> {
    use enumerate::{a, da};
    vec![
        a(),
        NegType::imp(da(), a()),
        NegType::with(a(), a()),
        NegType::up(da()),
        NegType::up(PosType::or(da(), da())),
        NegType::imp(da(), NegType::up(da())),
    ]
}

/// Well-typed closed terms: the enumerated ones containing a cut, plus
/// larger application and binding cuts assembled from enumerated
/// well-typed pieces.
fn redexes(e: &Enum, sig: &Sig) -> Vec<(Term, NegType)> {
    use enumerate::{a, da};
    let cfg = CheckConfig::default();
    let goals = enumerate::neg_goals();
    let mut out = Vec::new();
    let mut typed: Vec<Vec<(Term, NegType)>> = vec![Vec::new()];
    for n in 1..=ENUM_SIZE {
        let mut here = Vec::new();
        for t in e.terms(n) {
            for g in goals.iter().chain(&focus_types()) {
                if check_term(sig, &Ctx::new(), t, g, cfg).is_ok() {
                    here.push((t.clone(), g.clone()));
                    if !t.is_cut_free() {
                        out.push((t.clone(), g.clone()));
                    }
                }
            }
        }
        typed.push(here);
    }
    let foci = focus_types();
    for total in ENUM_SIZE + 1..=12 {
        for (tn, pieces) in typed.iter().enumerate().skip(2) {
            let Some(kn) = (total - 1).checked_sub(tn).filter(|&k| k > 0 && k <= ENUM_SIZE) else { continue };
            for (t, n) in pieces.iter().filter(|(_, n)| foci.contains(n)) {
                for k in e.spines(kn) {
                    for g in &goals {
                        if check_spine(sig, n, k, g, cfg).is_ok() {
                            out.push((Term::app_cut(t.clone(), n.clone(), k.clone()), g.clone()));
                        }
                    }
                }
            }
        }
    }
    let cut_types = [da(), PosType::or(da(), da()), PosType::prod(da(), da()), PosType::down(NegType::imp(da(), a()))];
    for ty in &cut_types {
        let data: Vec<_> = (1..=5).flat_map(|n| e.data(n)).filter(|d| check_data(sig, d, ty, cfg).is_ok()).collect();
        for p in (1..=3).flat_map(|n| e.patterns(n)) {
            let ctx = vec![(p.clone(), ty.clone())];
            for body in (1..=6).flat_map(|n| e.terms(n)) {
                for g in &goals {
                    if check_term(sig, &ctx, body, g, cfg).is_err() {
                        continue;
                    }
                    for d in data.iter().filter(|d| 1 + p.size() + d.size() + body.size() <= 12) {
                        out.push((Term::bind_cut(p.clone(), (*d).clone(), ty.clone(), body.clone()), g.clone()));
                    }
                }
            }
        }
    }
    out
}

fn subject_reduction(e: &Enum) -> Outcome {
    let t0 = Instant::now();
    let sig = enumerate::sig();
    let cfg = CheckConfig::default();
    let terms = redexes(e, &sig);
    ensure(terms.len() >= 500, || format!("only {} generated terms", terms.len()))?;
    let max = terms.iter().map(|(t, _)| t.size()).max().unwrap_or(0);
    let mut steps = 0;
    for (t, goal) in &terms {
        let tr = trace(&sig, t, FUEL).map_err(|err| format!("{t}: {err}"))?;
        for (rule, next) in &tr.steps {
            steps += 1;
            check_term(&sig, &Ctx::new(), next, goal, cfg)
                .map_err(|d| format!("{t} : {goal} stepped by {rule} to ill-typed {next}: {}", d.render("<step>")))?;
        }
    }
    let mut corpus_steps = 0;
    for ex in EXAMPLES {
        let prog = corpus::build(ex);
        for run in applications(ex, &prog) {
            let tr = trace(&run.sig, &run.term, FUEL).map_err(|err| format!("{}: {err}", run.term))?;
            for (rule, next) in &tr.steps {
                corpus_steps += 1;
                let res = if ex.dependent {
                    dep_check_term(&run.sig, &Vec::new(), next, &run.goal, ex_cfg(ex))
                } else {
                    check_term(&run.sig, &Ctx::new(), next, &run.goal, ex_cfg(ex))
                };
                res.map_err(|d| format!("{} stepped by {rule} to ill-typed {next}: {}", run.term, d.render(ex.file)))?;
            }
        }
    }
    within(Duration::from_secs(60), t0)?;
    Ok(format!(
        "{} generated terms up to size {max}, {steps} steps; {corpus_steps} example steps",
        terms.len()
    ))
}

fn ex_cfg(ex: &Example) -> CheckConfig {
    CheckConfig::default().structural(ex.structural)
}

fn contexts() -> Vec<Ctx> {
    use enumerate::{a, da};
    vec![
        Vec::new(),
        vec![(Pattern::var("x"), da())],
        vec![(Pattern::var("x"), PosType::down(NegType::imp(da(), a())))],
        vec![(Pattern::or("w", Pattern::var("x"), Pattern::var("y")), PosType::or(da(), da()))],
        vec![(Pattern::pair(Pattern::var("x"), Pattern::Wild), PosType::prod(da(), da()))],
    ]
}

fn checker_vs_oracle(e: &Enum) -> Outcome {
    let sig = enumerate::sig();
    let goals = enumerate::neg_goals();
    let pos_goals = enumerate::pos_goals();
    let foci = focus_types();
    let ctxs = contexts();
    let mut checked = 0usize;
    let mut accepted = 0usize;
    for structural in [false, true] {
        let cfg = CheckConfig::default().structural(structural);
        let oracle = Oracle { sig: &sig, structural };
        let mut agree = |what: String, mine: bool, theirs: bool| {
            checked += 1;
            accepted += mine as usize;
            ensure(mine == theirs, || format!("structural={structural}: {what}: checker {mine}, oracle {theirs}"))
        };
        for n in 1..=ENUM_SIZE {
            for t in e.terms(n) {
                for ctx in &ctxs {
                    for g in &goals {
                        let mine = check_term(&sig, ctx, t, g, cfg).is_ok();
                        agree(format!("{ctx:?} |- {t} : {g}"), mine, oracle.term(&Vec::new(), ctx, t, g))?;
                    }
                }
            }
            for d in e.data(n) {
                for p in &pos_goals {
                    let mine = check_data(&sig, d, p, cfg).is_ok();
                    agree(format!("{d} : {p}"), mine, oracle.data(&Vec::new(), d, p))?;
                }
            }
            for k in e.spines(n) {
                for f in &foci {
                    for g in &goals {
                        let mine = check_spine(&sig, f, k, g, cfg).is_ok();
                        agree(format!("[{f}] {k} : {g}"), mine, oracle.spine(&Vec::new(), f, k, g))?;
                    }
                }
            }
        }
    }
    let trees = data_trees(3);
    let goal = PosType::or(PosType::prod(enumerate::da(), enumerate::da()), enumerate::da());
    let oracle = Oracle { sig: &sig, structural: false };
    for d in &trees {
        let mine = check_data(&sig, d, &goal, CheckConfig::default()).is_ok();
        ensure(mine == oracle.data(&Vec::new(), d, &goal), || format!("{d} : {goal}"))?;
    }
    Ok(format!("{checked} judgments agree, {accepted} derivable; {} data trees of depth 3", trees.len()))
}

/// Every datum of depth at most `depth` built over the single closed thunk
/// `thunk c []`.
fn data_trees(depth: usize) -> Vec<DataVal> {
    let leaf = DataVal::thunk(Term::App(id("c"), Spine::Nil));
    if depth <= 1 {
        return vec![leaf];
    }
    let smaller = data_trees(depth - 1);
    let mut out = vec![leaf];
    for d in &smaller {
        out.push(DataVal::inl(d.clone()));
        out.push(DataVal::inr(d.clone()));
        for e in &smaller {
            out.push(DataVal::pair(d.clone(), e.clone()));
        }
    }
    out
}

/// One full application of an example definition to enumerated arguments.
struct Application {
    sig: Sig,
    name: Ident,
    args: Vec<DataVal>,
    term: Term,
    goal: NegType,
}

fn applications(ex: &Example, prog: &Program) -> Vec<Application> {
    let mut out = Vec::new();
    for def in &prog.definitions {
        let mut sig = prog.sig.clone();
        let (doms, _) = reference::domains(&def.ty);
        for args in reference::arguments(&doms, ARG_DEPTH, &mut sig) {
            let mut goal = def.ty.clone();
            for d in &args {
                goal = match goal {
                    NegType::Imp(_, n) => *n,
                    NegType::Pi(x, p, n) if ex.dependent => subst_data_in_neg(&n, &x, &p, d),
                    other => panic!("unexpected {other}"),
                };
            }
            let term = Term::App(def.name.clone(), reference::spine_of(&args));
            out.push(Application { sig: sig.clone(), name: def.name.clone(), args, term, goal });
        }
    }
    out
}

fn clauses<'a>(decls: &'a [seqcore_core::surface::SurfaceDecl], name: &Ident) -> &'a [seqcore_core::surface::Clause] {
    decls
        .iter()
        .find_map(|d| match &d.kind {
            DeclKind::Def(_, cs) if &d.name == name => Some(cs.as_slice()),
            _ => None,
        })
        .expect("declared")
}

fn compiler_vs_reference() -> Outcome {
    let mut runs = 0;
    for ex in EXAMPLES {
        let prog = corpus::build(ex);
        ensure(prog.is_ok(), || format!("{}: {:?}", ex.file, prog.errors))?;
        let decls = corpus::decls(ex.file);
        for run in applications(ex, &prog) {
            let def = prog.definition(&run.name).expect("defined");
            let expected = reference::interpret(&run.sig, &def.ty, clauses(&decls, &run.name), &run.args)
                .ok_or_else(|| format!("{}: no clause matches {}", ex.file, run.term))?;
            let want = normalize(&run.sig, &expected, FUEL).map_err(|e| e.to_string())?;
            let got = normalize(&run.sig, &run.term, FUEL).map_err(|e| e.to_string())?;
            ensure(alpha_eq(&got.term, &want.term) && got.stuck.is_none() && want.stuck.is_none(), || {
                format!("{}: {} gave {}, first match gives {}", ex.file, run.term, got.term, want.term)
            })?;
            runs += 1;
        }
    }
    Ok(format!("{runs} applications across {} files", EXAMPLES.len()))
}

fn cut_free_normal_forms() -> Outcome {
    let mut runs = 0;
    let mut files = 0;
    for ex in EXAMPLES {
        let decls = corpus::decls(ex.file);
        if decls.iter().any(|d| matches!(d.kind, DeclKind::Postulate(_))) {
            continue;
        }
        files += 1;
        let prog = corpus::build(ex);
        for run in applications(ex, &prog) {
            let n = normalize(&run.sig, &run.term, FUEL).map_err(|e| format!("{}: {e}", run.term))?;
            ensure(n.term.is_cut_free(), || format!("{}: normal form {} has a cut", run.term, n.term))?;
            runs += 1;
        }
    }
    Ok(format!("{runs} normal forms from {files} postulate-free files"))
}

fn program(src: &str, mode: Mode) -> Program {
    let decls = parse_program(src).unwrap_or_else(|d| panic!("{}", d.render("<src>")));
    build_program(&decls, ProgramConfig { mode, ..ProgramConfig::default() })
}

const ILL_TYPED: &[&str] = &[
    "atom a\natom b\nbad : a -> b\nbad x = x\n",
    "atom a\natom b\nbad : a + b -> a\nbad (inl x) = x\n",
    "atom a\natom b\nbad : a * b -> b * a\nbad (x, y) = (x, y)\n",
    "atom a\nbad : a -> a -> a\nbad x = x\n",
    "atom a\natom b\nbad : a + b -> b + a\nbad (inl x) = inl x\nbad (inr y) = inr y\n",
];

fn dependent_fragment() -> Outcome {
    let header = "atom nat\natom vec\npostulate zero : nat\npostulate one : nat\npostulate replicate : Pi (n : nat). vec n\n";
    let swap = format!("{header}swap : (Sigma (x : nat). vec zero) -> Sigma (y : vec zero). nat\nswap (x, y) = (y, x)\n");
    let prog = program(&swap, Mode::Dependent);
    ensure(prog.is_ok(), || format!("degenerate sigma swap: {:?}", prog.errors))?;

    let good = format!("{header}rep0 : vec zero\nrep0 = replicate zero\n");
    let bad = format!("{header}rep0 : vec zero\nrep0 = replicate one\n");
    ensure(program(&good, Mode::Dependent).is_ok(), || "replicate zero : vec zero rejected".into())?;
    ensure(!program(&bad, Mode::Dependent).is_ok(), || "replicate one : vec zero accepted".into())?;
    let dep = corpus::build(example("dependent.seq"));
    ensure(dep.is_ok(), || format!("dependent.seq: {:?}", dep.errors))?;

    // Each branch of a dependent split sees the goal at its constructor.
    let sig = parse_sig(
        "atom nat\natom T\npostulate tl : Pi (y : down nat). T{inl thunk y []}\npostulate tr : Pi (z : down nat). T{inr thunk z []}\n",
    )
    .map_err(|d| d.render("<sig>"))?;
    let motive = neg("Pi (x : down nat + down nat). T{thunk x []}");
    let cfg = CheckConfig::default();
    let right = term("\\x. split x { inl y -> tl (thunk y [] :: []) ; inr z -> tr (thunk z [] :: []) }");
    let crossed = term("\\x. split x { inl y -> tr (thunk y [] :: []) ; inr z -> tl (thunk z [] :: []) }");
    dep_check_term(&sig, &Vec::new(), &right, &motive, cfg).map_err(|d| format!("motive: {}", d.render("<term>")))?;
    ensure(dep_check_term(&sig, &Vec::new(), &crossed, &motive, cfg).is_err(), || "crossed branches accepted".into())?;

    let mut files = 0;
    for ex in EXAMPLES.iter().filter(|e| !e.dependent) {
        let decls = corpus::decls(ex.file);
        let p = build_program(&decls, corpus::config(ex, false));
        let d = build_program(&decls, corpus::config(ex, true));
        ensure(p.is_ok() && d.is_ok(), || format!("{}: {:?} / {:?}", ex.file, p.errors, d.errors))?;
        files += 1;
    }
    for src in ILL_TYPED {
        let p = program(src, Mode::Propositional);
        let d = program(src, Mode::Dependent);
        ensure(!p.is_ok() && !d.is_ok(), || format!("accepted by one mode only: {src}"))?;
    }
    Ok(format!("swap, Pi application, motive; {files} files and {} rejections agree", ILL_TYPED.len()))
}

fn structural_patterns() -> Outcome {
    let sig = enumerate::sig();
    let cases = [
        ("\\_. c []", "down a -> a"),
        ("\\x @ y. x []", "down a -> a"),
        ("\\(x, _). x []", "down a * down a -> a"),
        ("let _ : down a = thunk c [] in c []", "a"),
    ];
    for (src, ty) in cases {
        let (t, n) = (term(src), neg(ty));
        let on = check_term(&sig, &Ctx::new(), &t, &n, CheckConfig::default().structural(true));
        let off = check_term(&sig, &Ctx::new(), &t, &n, CheckConfig::default().structural(false));
        ensure(on.is_ok(), || format!("{src} rejected with the flag on: {:?}", on))?;
        ensure(off.is_err(), || format!("{src} accepted with the flag off"))?;
    }
    let prog = corpus::build(example("structural.seq"));
    ensure(prog.is_ok(), || format!("structural.seq: {:?}", prog.errors))?;
    let konst = prog.definition(&id("const")).ok_or("no const")?;
    ensure(alpha_eq(&konst.term, &term("\\x. \\_. x []")), || format!("const = {}", konst.term))?;
    Ok(format!("{} core terms; const = {}", cases.len(), konst.term))
}

fn round_trips(e: &Enum) -> Outcome {
    let mut defs = 0;
    for ex in EXAMPLES {
        let prog = corpus::build(ex);
        let decls = corpus::decls(ex.file);
        let mut again = Vec::new();
        for d in &decls {
            match &d.kind {
                DeclKind::Def(..) => {
                    let def = prog.definition(&d.name).expect("defined");
                    let text = pretty_equations(&def.name, &def.term, &def.ty);
                    again.extend(parse_program(&text).map_err(|err| format!("{}\n{text}", err.render(ex.file)))?);
                }
                _ => again.push(d.clone()),
            }
        }
        let prog2 = build_program(&again, corpus::config(ex, ex.dependent));
        ensure(prog2.is_ok(), || format!("{}: reparsed program fails: {:?}", ex.file, prog2.errors))?;
        for def in &prog.definitions {
            let def2 = prog2.definition(&def.name).expect("redefined");
            ensure(alpha_eq(&def.term, &def2.term), || format!("{}: {} became {}", def.name, def.term, def2.term))?;
            let (t1, t2) = (pretty_equations(&def.name, &def.term, &def.ty), pretty_equations(&def2.name, &def2.term, &def2.ty));
            ensure(t1 == t2, || format!("{}: pretty output changed:\n{t1}\n{t2}", def.name))?;
            defs += 1;
        }
        let printed = print_sig(&prog.sig);
        let sig2 = parse_sig(&printed).map_err(|d| format!("{}: {}", ex.file, d.render("<sig>")))?;
        ensure(print_sig(&sig2) == printed, || format!("{}: signature print is not stable", ex.file))?;
    }
    let mut core = 0;
    for n in 1..=ENUM_SIZE {
        for t in e.terms(n) {
            ensure(parse_term(&t.to_string()).ok().as_ref() == Some(t), || format!("term {t}"))?;
        }
        for d in e.data(n) {
            ensure(parse_data(&d.to_string()).ok().as_ref() == Some(d), || format!("data {d}"))?;
        }
        for k in e.spines(n) {
            ensure(parse_spine(&k.to_string()).ok().as_ref() == Some(k), || format!("spine {k}"))?;
        }
        core += e.terms(n).len() + e.data(n).len() + e.spines(n).len();
    }
    Ok(format!("{defs} definitions re-elaborate identically; {core} core objects print and parse back"))
}
