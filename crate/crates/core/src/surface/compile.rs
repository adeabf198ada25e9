//! Compilation of clause sets into core terms through splitting trees.
//!
//! Every argument is η-expanded along its type: products are opened,
//! disjunctions split, and each `↓N` leaf gets a variable. The splitting
//! tree fixes the order in which disjunctions are split (first-match
//! semantics, leftmost test of the first remaining clause first); a leaf
//! splits whatever its clause left untested so that every assumption has
//! been decomposed when the right-hand side runs.
//!
//! Propositional mode emits one λ per argument over the fully expanded
//! pattern and a `split` per disjunction node. Dependent mode binds each
//! argument to a variable and emits explicit `let (y, z) = x in …` and
//! `split x { inl y -> … ; inr z -> … }` eliminations.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use super::ast::{Clause, DeclKind, SExpr, SPat, SurfaceDecl};
use super::polarize::polarize;
use super::pretty::{pattern_text, pats_text};
use crate::diag::{Diagnostic, Rule, Span, Warning, WarningKind};
use crate::ident::Ident;
use crate::subst::{Side, Subst};
use crate::syntax::{DataVal, Mode, NegType, Pattern, PosType, Sig, Spine, Term};

pub type NodeId = usize;

/// Splitting tree over the scrutinee nodes of [`Compiled::nodes`].
#[derive(Clone, Debug, PartialEq)]
pub enum CaseTree {
    /// The clause whose right-hand side runs, with its variable bindings
    /// and the branch taken at each disjunction on the way.
    Leaf { clause: usize, binds: Vec<(Ident, NodeId)>, sides: Vec<(NodeId, Side)> },
    Split { node: NodeId, left: Box<CaseTree>, right: Box<CaseTree> },
    Pair { node: NodeId, sub: Box<CaseTree> },
    /// No clause applies; `missing` is a pattern for the uncovered inputs.
    Fail { missing: String },
}

impl CaseTree {
    pub fn has_fail(&self) -> bool {
        match self {
            CaseTree::Fail { .. } => true,
            CaseTree::Leaf { .. } => false,
            CaseTree::Split { left, right, .. } => left.has_fail() || right.has_fail(),
            CaseTree::Pair { sub, .. } => sub.has_fail(),
        }
    }

    fn first_fail(&self) -> Option<&str> {
        match self {
            CaseTree::Fail { missing } => Some(missing),
            CaseTree::Leaf { .. } => None,
            CaseTree::Split { left, right, .. } => left.first_fail().or_else(|| right.first_fail()),
            CaseTree::Pair { sub, .. } => sub.first_fail(),
        }
    }

    pub fn leaves(&self) -> usize {
        match self {
            CaseTree::Fail { .. } | CaseTree::Leaf { .. } => 1,
            CaseTree::Split { left, right, .. } => left.leaves() + right.leaves(),
            CaseTree::Pair { sub, .. } => sub.leaves(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum NodeKind {
    Var,
    Prod(NodeId, NodeId),
    Or(NodeId, NodeId),
}

/// One position inside an argument.
#[derive(Clone, Debug, PartialEq)]
pub struct Node {
    pub ty: PosType,
    pub kind: NodeKind,
    /// Core variable or label; `None` for nodes the emitted term never names.
    pub name: Option<Ident>,
}

#[derive(Clone, Debug)]
pub struct Compiled {
    pub term: Term,
    pub ty: NegType,
    pub tree: CaseTree,
    pub nodes: Vec<Node>,
    pub warnings: Vec<Warning>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CompileConfig {
    pub mode: Mode,
    /// Emit `_` for arguments every clause ignores.
    pub structural_patterns: bool,
}

impl CompileConfig {
    pub fn new(mode: Mode) -> CompileConfig {
        CompileConfig { mode, structural_patterns: false }
    }
}

/// Compiles a definition. The signature must hold everything the clauses
/// mention, and not the definition itself.
pub fn compile_clauses(decl: &SurfaceDecl, sig: &Sig, cfg: CompileConfig) -> Result<Compiled, Diagnostic> {
    let DeclKind::Def(sty, clauses) = &decl.kind else {
        return Err(Diagnostic::new(Rule::Arity, "a definition with clauses", "a declaration without clauses").at(decl.span));
    };
    let ty = polarize(sty, cfg.mode);
    compile_typed(&decl.name, decl.span, &ty, clauses, sig, cfg)
}

pub fn compile_typed(
    name: &Ident,
    span: Span,
    ty: &NegType,
    clauses: &[Clause],
    sig: &Sig,
    cfg: CompileConfig,
) -> Result<Compiled, Diagnostic> {
    let Some(first) = clauses.first() else {
        return Err(Diagnostic::new(Rule::Coverage, "at least one clause", "none").at(span));
    };
    let arity = first.lhs.len();
    if let Some(c) = clauses.iter().find(|c| c.lhs.len() != arity) {
        return Err(Diagnostic::new(Rule::Arity, alloc::format!("{arity} patterns"), c.lhs.len()).at(c.span));
    }
    let mut arg_tys = Vec::with_capacity(arity);
    let mut res = ty.clone();
    for _ in 0..arity {
        res = match res {
            NegType::Imp(a, n) | NegType::Pi(_, a, n) => {
                arg_tys.push(*a);
                *n
            }
            other => {
                return Err(Diagnostic::new(Rule::Arity, alloc::format!("at least {arity} arguments"), ty)
                    .with_note(alloc::format!("no argument left at {other}"))
                    .at(span))
            }
        };
    }

    let mut nodes: Vec<Node> = Vec::new();
    let roots: Vec<NodeId> = arg_tys.iter().map(|a| expand(&mut nodes, a)).collect();

    for c in clauses {
        let vars: Vec<Ident> = c.lhs.iter().flat_map(SPat::vars).collect();
        let distinct: BTreeSet<&Ident> = vars.iter().collect();
        if distinct.len() != vars.len() {
            return Err(Diagnostic::new(Rule::Scope, "linear clause patterns", pats_text(&c.lhs)).at(c.span));
        }
        for (p, &root) in c.lhs.iter().zip(&roots) {
            check_pattern(&nodes, p, root).map_err(|d| d.at(c.span))?;
        }
    }

    let weakened: Vec<bool> = (0..arity)
        .map(|i| {
            cfg.structural_patterns
                && cfg.mode == Mode::Propositional
                && clauses.iter().all(|c| c.lhs[i] == SPat::Wild)
        })
        .collect();

    name_nodes(&mut nodes, &roots, clauses, sig, name, cfg.mode, &weakened);

    let frontier: Vec<NodeId> = roots.iter().zip(&weakened).filter(|(_, w)| !**w).map(|(r, _)| *r).collect();
    let rows: Vec<Row> = clauses
        .iter()
        .enumerate()
        .map(|(i, c)| Row {
            clause: i,
            pats: c.lhs.iter().zip(&weakened).filter(|(_, w)| !**w).map(|(p, _)| p.clone()).collect(),
            binds: Vec::new(),
        })
        .collect();

    let mut b = Builder { nodes: &nodes, roots: &roots, used: BTreeSet::new(), overlaps: BTreeMap::new() };
    let tree = b.build(frontier, rows, Vec::new());
    if let Some(missing) = tree.first_fail() {
        return Err(Diagnostic::new(Rule::Coverage, "exhaustive clauses", missing)
            .with_note(alloc::format!("no clause matches {name} {missing}"))
            .at(span));
    }

    let mut warnings = Vec::new();
    for (i, c) in clauses.iter().enumerate() {
        if !b.used.contains(&i) {
            warnings.push(Warning {
                kind: WarningKind::Unused,
                span: c.span,
                message: alloc::format!("clause {name} {} is never reached", pats_text(&c.lhs)),
            });
        } else if let Some(earlier) = b.overlaps.get(&i) {
            warnings.push(Warning {
                kind: WarningKind::Overlap,
                span: c.span,
                message: alloc::format!(
                    "clause {name} {} is partly shadowed by the clause at line {}",
                    pats_text(&c.lhs),
                    clauses[*earlier].span.line
                ),
            });
        }
    }

    let emitter = Emitter { nodes: &nodes, sig, clauses, mode: cfg.mode, res: &res };
    let mut body = emitter.tree(&tree)?;
    for (i, &root) in roots.iter().enumerate().rev() {
        let pat = match cfg.mode {
            Mode::Propositional if weakened[i] => Pattern::Wild,
            Mode::Propositional => core_pattern(&nodes, root),
            Mode::Dependent => Pattern::Var(nodes[root].name.clone().expect("named root")),
        };
        body = Term::lam(pat, body);
    }
    Ok(Compiled { term: body, ty: ty.clone(), tree, nodes, warnings })
}

fn expand(nodes: &mut Vec<Node>, ty: &PosType) -> NodeId {
    let kind = match ty {
        PosType::Down(_) => NodeKind::Var,
        PosType::Prod(a, b) | PosType::Sigma(_, a, b) => {
            let a = expand(nodes, a);
            let b = expand(nodes, b);
            NodeKind::Prod(a, b)
        }
        PosType::Or(a, b) => {
            let a = expand(nodes, a);
            let b = expand(nodes, b);
            NodeKind::Or(a, b)
        }
    };
    nodes.push(Node { ty: ty.clone(), kind, name: None });
    nodes.len() - 1
}

fn check_pattern(nodes: &[Node], p: &SPat, n: NodeId) -> Result<(), Diagnostic> {
    match (p, &nodes[n].kind) {
        (SPat::Var(_) | SPat::Wild, _) => Ok(()),
        (SPat::At(_, q), _) => check_pattern(nodes, q, n),
        (SPat::Pair(a, b), NodeKind::Prod(l, r)) => {
            check_pattern(nodes, a, *l)?;
            check_pattern(nodes, b, *r)
        }
        (SPat::Inl(a), NodeKind::Or(l, _)) => check_pattern(nodes, a, *l),
        (SPat::Inr(a), NodeKind::Or(_, r)) => check_pattern(nodes, a, *r),
        (SPat::Pair(..), _) => Err(Diagnostic::new(Rule::ProdLeft, &nodes[n].ty, alloc::format!("pair pattern {}", pattern_text(p)))),
        (_, _) => Err(Diagnostic::new(Rule::OrLeft, &nodes[n].ty, alloc::format!("injection pattern {}", pattern_text(p)))),
    }
}

/// Readable, pairwise distinct names, preferring the clause variables bound
/// at each node and avoiding every name of the signature.
fn name_nodes(
    nodes: &mut [Node],
    roots: &[NodeId],
    clauses: &[Clause],
    sig: &Sig,
    decl: &Ident,
    mode: Mode,
    weakened: &[bool],
) {
    let mut prefer: BTreeMap<NodeId, Ident> = BTreeMap::new();
    fn walk(nodes: &[Node], p: &SPat, n: NodeId, prefer: &mut BTreeMap<NodeId, Ident>) {
        match (p, &nodes[n].kind) {
            (SPat::Var(x), _) => {
                prefer.entry(n).or_insert_with(|| x.clone());
            }
            (SPat::At(x, q), _) => {
                prefer.entry(n).or_insert_with(|| x.clone());
                walk(nodes, q, n, prefer);
            }
            (SPat::Pair(a, b), NodeKind::Prod(l, r)) => {
                walk(nodes, a, *l, prefer);
                walk(nodes, b, *r, prefer);
            }
            (SPat::Inl(a), NodeKind::Or(l, _)) => walk(nodes, a, *l, prefer),
            (SPat::Inr(a), NodeKind::Or(_, r)) => walk(nodes, a, *r, prefer),
            _ => {}
        }
    }
    for c in clauses {
        for (p, &root) in c.lhs.iter().zip(roots) {
            walk(nodes, p, root, &mut prefer);
        }
    }

    let mut supply = NameSupply::new(sig, decl);
    fn assign(nodes: &mut [Node], n: NodeId, mode: Mode, prefer: &BTreeMap<NodeId, Ident>, supply: &mut NameSupply) {
        let kind = nodes[n].kind.clone();
        let name = match (&kind, mode) {
            (NodeKind::Var, _) => Some(supply.fresh(prefer.get(&n).map_or("x", |x| x.name()))),
            (NodeKind::Or(..), Mode::Propositional) => Some(supply.fresh("w")),
            (NodeKind::Or(..), Mode::Dependent) => Some(supply.fresh(prefer.get(&n).map_or("w", |x| x.name()))),
            (NodeKind::Prod(..), Mode::Propositional) => None,
            (NodeKind::Prod(..), Mode::Dependent) => Some(supply.fresh(prefer.get(&n).map_or("p", |x| x.name()))),
        };
        nodes[n].name = name;
        if let NodeKind::Prod(a, b) | NodeKind::Or(a, b) = kind {
            assign(nodes, a, mode, prefer, supply);
            assign(nodes, b, mode, prefer, supply);
        }
    }
    // Clause variables claim their names before generated ones.
    let mut order: Vec<NodeId> = Vec::new();
    fn preorder(nodes: &[Node], n: NodeId, out: &mut Vec<NodeId>) {
        out.push(n);
        if let NodeKind::Prod(a, b) | NodeKind::Or(a, b) = nodes[n].kind {
            preorder(nodes, a, out);
            preorder(nodes, b, out);
        }
    }
    for (i, &r) in roots.iter().enumerate() {
        if !weakened[i] || mode == Mode::Dependent {
            preorder(nodes, r, &mut order);
        }
    }
    for &n in &order {
        if let Some(x) = prefer.get(&n) {
            supply.reserve(x);
        }
    }
    for (i, &r) in roots.iter().enumerate() {
        if !weakened[i] || mode == Mode::Dependent {
            assign(nodes, r, mode, &prefer, &mut supply);
        }
    }
}

/// Generates `base`, `base1`, `base2`, … skipping names already taken.
pub struct NameSupply {
    taken: BTreeSet<Ident>,
    reserved: BTreeSet<Ident>,
}

impl NameSupply {
    pub fn new(sig: &Sig, decl: &Ident) -> NameSupply {
        let mut taken: BTreeSet<Ident> = sig.atoms().cloned().collect();
        taken.extend(sig.entries().iter().map(|e| e.name.clone()));
        taken.insert(decl.clone());
        NameSupply { taken, reserved: BTreeSet::new() }
    }

    fn reserve(&mut self, x: &Ident) {
        self.reserved.insert(x.clone());
    }

    pub fn fresh(&mut self, base: &str) -> Ident {
        let ok = |s: &NameSupply, x: &Ident, own: bool| !s.taken.contains(x) && (own || !s.reserved.contains(x));
        let first = Ident::new(base);
        // A reserved name is free for the node that asked for it.
        let own = self.reserved.remove(&first);
        let pick = if ok(self, &first, own) {
            first
        } else {
            (1..)
                .map(|i| Ident::new(&alloc::format!("{base}{i}")))
                .find(|x| ok(self, x, false))
                .expect("unbounded supply")
        };
        self.taken.insert(pick.clone());
        pick
    }
}

fn core_pattern(nodes: &[Node], n: NodeId) -> Pattern {
    match nodes[n].kind {
        NodeKind::Var => Pattern::Var(nodes[n].name.clone().expect("named leaf")),
        NodeKind::Prod(a, b) => Pattern::pair(core_pattern(nodes, a), core_pattern(nodes, b)),
        NodeKind::Or(a, b) => Pattern::Or(
            nodes[n].name.clone().expect("named label"),
            Box::new(core_pattern(nodes, a)),
            Box::new(core_pattern(nodes, b)),
        ),
    }
}

#[derive(Clone, Debug)]
struct Row {
    clause: usize,
    pats: Vec<SPat>,
    binds: Vec<(Ident, NodeId)>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Decision {
    Opened,
    Took(Side),
}

struct Builder<'a> {
    nodes: &'a [Node],
    roots: &'a [NodeId],
    used: BTreeSet<usize>,
    /// Later clause -> earliest clause that shadows part of it.
    overlaps: BTreeMap<usize, usize>,
}

impl Builder<'_> {
    fn build(&mut self, frontier: Vec<NodeId>, mut rows: Vec<Row>, decisions: Vec<(NodeId, Decision)>) -> CaseTree {
        for row in &mut rows {
            for (c, &n) in frontier.iter().enumerate() {
                loop {
                    match core::mem::replace(&mut row.pats[c], SPat::Wild) {
                        SPat::Var(x) => row.binds.push((x, n)),
                        SPat::At(x, p) => {
                            row.binds.push((x, n));
                            row.pats[c] = *p;
                        }
                        other => {
                            row.pats[c] = other;
                            break;
                        }
                    }
                }
            }
        }
        let Some(first) = rows.first() else {
            return CaseTree::Fail { missing: self.missing(&decisions) };
        };
        let Some(c) = first.pats.iter().position(SPat::is_test) else {
            return self.leaf(frontier, rows, decisions);
        };
        let node = frontier[c];
        match self.nodes[node].kind {
            NodeKind::Prod(a, b) => {
                let mut fr = frontier.clone();
                fr.splice(c..=c, [a, b]);
                let rows = rows
                    .into_iter()
                    .map(|mut r| {
                        let (p, q) = match r.pats.remove(c) {
                            SPat::Pair(p, q) => (*p, *q),
                            _ => (SPat::Wild, SPat::Wild),
                        };
                        r.pats.splice(c..c, [p, q]);
                        r
                    })
                    .collect();
                let mut ds = decisions;
                ds.push((node, Decision::Opened));
                CaseTree::Pair { node, sub: Box::new(self.build(fr, rows, ds)) }
            }
            NodeKind::Or(a, b) => {
                let mut branch = |child: NodeId, side: Side| {
                    let mut fr = frontier.clone();
                    fr[c] = child;
                    let rows = rows
                        .iter()
                        .filter_map(|r| {
                            let p = match (&r.pats[c], side) {
                                (SPat::Inl(p), Side::Left) | (SPat::Inr(p), Side::Right) => (**p).clone(),
                                (SPat::Wild, _) => SPat::Wild,
                                _ => return None,
                            };
                            let mut r = r.clone();
                            r.pats[c] = p;
                            Some(r)
                        })
                        .collect();
                    let mut ds = decisions.clone();
                    ds.push((node, Decision::Took(side)));
                    self.build(fr, rows, ds)
                };
                let left = branch(a, Side::Left);
                let right = branch(b, Side::Right);
                CaseTree::Split { node, left: Box::new(left), right: Box::new(right) }
            }
            NodeKind::Var => unreachable!("patterns are checked against node kinds"),
        }
    }

    fn leaf(&mut self, frontier: Vec<NodeId>, rows: Vec<Row>, decisions: Vec<(NodeId, Decision)>) -> CaseTree {
        let chosen = rows[0].clone();
        self.used.insert(chosen.clause);
        for r in &rows[1..] {
            if r.pats.iter().any(SPat::is_test) {
                self.overlaps.entry(r.clause).or_insert(chosen.clause);
            }
        }
        let sides: Vec<(NodeId, Side)> = decisions
            .iter()
            .filter_map(|(n, d)| match d {
                Decision::Took(s) => Some((*n, *s)),
                Decision::Opened => None,
            })
            .collect();
        self.complete(frontier, &chosen, sides)
    }

    /// Opens or splits every compound node the chosen clause left alone.
    fn complete(&self, frontier: Vec<NodeId>, row: &Row, sides: Vec<(NodeId, Side)>) -> CaseTree {
        let Some(c) = frontier.iter().position(|&n| self.nodes[n].kind != NodeKind::Var) else {
            return CaseTree::Leaf { clause: row.clause, binds: row.binds.clone(), sides };
        };
        let node = frontier[c];
        match self.nodes[node].kind {
            NodeKind::Prod(a, b) => {
                let mut fr = frontier;
                fr.splice(c..=c, [a, b]);
                CaseTree::Pair { node, sub: Box::new(self.complete(fr, row, sides)) }
            }
            NodeKind::Or(a, b) => {
                let go = |child: NodeId, side: Side| {
                    let mut fr = frontier.clone();
                    fr[c] = child;
                    let mut s = sides.clone();
                    s.push((node, side));
                    Box::new(self.complete(fr, row, s))
                };
                let left = go(a, Side::Left);
                let right = go(b, Side::Right);
                CaseTree::Split { node, left, right }
            }
            NodeKind::Var => unreachable!(),
        }
    }

    fn missing(&self, decisions: &[(NodeId, Decision)]) -> String {
        let d: BTreeMap<NodeId, Decision> = decisions.iter().cloned().collect();
        fn pat(nodes: &[Node], d: &BTreeMap<NodeId, Decision>, n: NodeId) -> SPat {
            match (d.get(&n), &nodes[n].kind) {
                (Some(Decision::Opened), NodeKind::Prod(a, b)) => SPat::pair(pat(nodes, d, *a), pat(nodes, d, *b)),
                (Some(Decision::Took(Side::Left)), NodeKind::Or(a, _)) => SPat::inl(pat(nodes, d, *a)),
                (Some(Decision::Took(Side::Right)), NodeKind::Or(_, b)) => SPat::inr(pat(nodes, d, *b)),
                _ => SPat::Wild,
            }
        }
        let pats: Vec<SPat> = self.roots.iter().map(|&r| pat(self.nodes, &d, r)).collect();
        match pats.as_slice() {
            [one] => pattern_text(one),
            _ => pats_text(&pats),
        }
    }
}

struct Emitter<'a> {
    nodes: &'a [Node],
    sig: &'a Sig,
    clauses: &'a [Clause],
    mode: Mode,
    res: &'a NegType,
}

impl Emitter<'_> {
    fn name(&self, n: NodeId) -> Ident {
        self.nodes[n].name.clone().expect("named node")
    }

    fn tree(&self, t: &CaseTree) -> Result<Term, Diagnostic> {
        match t {
            CaseTree::Fail { .. } => unreachable!("coverage is checked before emission"),
            CaseTree::Pair { node, sub } => {
                let body = self.tree(sub)?;
                Ok(match (self.mode, &self.nodes[*node].kind) {
                    (Mode::Dependent, NodeKind::Prod(a, b)) => Term::let_pair(self.name(*a), self.name(*b), self.name(*node), body),
                    _ => body,
                })
            }
            CaseTree::Split { node, left, right } => {
                let (l, r) = (self.tree(left)?, self.tree(right)?);
                Ok(match (self.mode, &self.nodes[*node].kind) {
                    (Mode::Dependent, NodeKind::Or(a, b)) => Term::case(self.name(*node), self.name(*a), l, self.name(*b), r),
                    _ => Term::Split(self.name(*node), Box::new(l), Box::new(r)),
                })
            }
            CaseTree::Leaf { clause, binds, sides } => {
                let c = &self.clauses[*clause];
                let el = Elab {
                    nodes: self.nodes,
                    sig: self.sig,
                    env: binds.iter().cloned().collect(),
                    sides: sides.iter().cloned().collect(),
                };
                el.term(&c.rhs, self.res).map_err(|d| d.at(c.span))
            }
        }
    }
}

/// Type-directed elaboration of a right-hand side. Only the shapes of the
/// formulas matter: arguments become spine elements, `done` is inserted
/// at shifted goals, variables in thunk positions are η-injected.
struct Elab<'a> {
    nodes: &'a [Node],
    sig: &'a Sig,
    env: BTreeMap<Ident, NodeId>,
    sides: BTreeMap<NodeId, Side>,
}

enum Head {
    Fun(Ident, NegType),
    Data,
}

impl Elab<'_> {
    fn head(&self, f: &Ident) -> Result<Head, Diagnostic> {
        if let Some(&n) = self.env.get(f) {
            return Ok(match (&self.nodes[n].kind, &self.nodes[n].ty) {
                (NodeKind::Var, PosType::Down(ty)) => Head::Fun(self.nodes[n].name.clone().expect("named leaf"), (**ty).clone()),
                _ => Head::Data,
            });
        }
        match self.sig.lookup(f) {
            Some(e) => Ok(Head::Fun(f.clone(), e.ty.clone())),
            None => Err(Diagnostic::new(Rule::Scope, "a clause variable or declared name", alloc::format!("unbound {f}"))),
        }
    }

    fn recon(&self, n: NodeId) -> DataVal {
        match self.nodes[n].kind {
            NodeKind::Var => DataVal::var(self.nodes[n].name.clone().expect("named leaf")),
            NodeKind::Prod(a, b) => DataVal::pair(self.recon(a), self.recon(b)),
            NodeKind::Or(a, b) => match self.sides.get(&n) {
                Some(Side::Left) => DataVal::inl(self.recon(a)),
                _ => DataVal::inr(self.recon(b)),
            },
        }
    }

    fn term(&self, e: &SExpr, goal: &NegType) -> Result<Term, Diagnostic> {
        if let SExpr::App(f, args) = e {
            match self.head(f)? {
                Head::Fun(x, ty) => {
                    let (k, _) = self.spine(args, &ty)?;
                    return Ok(Term::App(x, k));
                }
                Head::Data if !args.is_empty() => {
                    return Err(Diagnostic::new(Rule::Focus, "a function", alloc::format!("data variable {f} applied")))
                }
                Head::Data => {}
            }
        }
        match (e, goal) {
            (_, NegType::Up(p)) => Ok(Term::Done(self.data(e, p)?)),
            (SExpr::Pair(a, b), NegType::With(n, m)) => Ok(Term::pair(self.term(a, n)?, self.term(b, m)?)),
            _ => Err(Diagnostic::new(Rule::Focus, goal, expr_shape(e))),
        }
    }

    fn spine(&self, args: &[SExpr], ty: &NegType) -> Result<(Spine, NegType), Diagnostic> {
        let mut focus = ty.clone();
        let mut out = Vec::with_capacity(args.len());
        for a in args {
            focus = match focus {
                NegType::Imp(p, n) => {
                    out.push(self.data(a, &p)?);
                    *n
                }
                NegType::Pi(x, p, n) => {
                    let d = self.data(a, &p)?;
                    let n = Subst::new(&x, &d, &p).neg(&n);
                    out.push(d);
                    n
                }
                other => return Err(Diagnostic::new(Rule::Arity, "fewer arguments", alloc::format!("argument applied at {other}"))),
            };
        }
        Ok((Spine::from_args(out), focus))
    }

    fn data(&self, e: &SExpr, goal: &PosType) -> Result<DataVal, Diagnostic> {
        if let SExpr::App(x, args) = e {
            if args.is_empty() {
                if let Some(&n) = self.env.get(x) {
                    return Ok(self.recon(n));
                }
            }
        }
        match (e, goal) {
            (_, PosType::Down(n)) => Ok(DataVal::thunk(self.term(e, n)?)),
            (SExpr::Inl(a), PosType::Or(p, _)) => Ok(DataVal::inl(self.data(a, p)?)),
            (SExpr::Inr(a), PosType::Or(_, q)) => Ok(DataVal::inr(self.data(a, q)?)),
            (SExpr::Pair(a, b), PosType::Prod(p, q)) => Ok(DataVal::pair(self.data(a, p)?, self.data(b, q)?)),
            (SExpr::Pair(a, b), PosType::Sigma(x, p, q)) => {
                let d = self.data(a, p)?;
                let q = Subst::new(x, &d, p).pos(q);
                let e = self.data(b, &q)?;
                Ok(DataVal::pair(d, e))
            }
            (SExpr::App(..), _) => Err(Diagnostic::new(Rule::Thunk, goal, "an application in a data position")
                .with_note("only thunks may hold computations; bind the result through a definition returning a shifted type")),
            (_, PosType::Or(..)) => Err(Diagnostic::new(Rule::OrRight, goal, expr_shape(e))),
            (_, PosType::Prod(..)) => Err(Diagnostic::new(Rule::ProdRight, goal, expr_shape(e))),
            (_, PosType::Sigma(..)) => Err(Diagnostic::new(Rule::SigmaRight, goal, expr_shape(e))),
        }
    }
}

/// Elaborates a closed expression at a positive type, as for an argument
/// supplied from outside the program.
pub fn elaborate_data(e: &SExpr, goal: &PosType, sig: &Sig) -> Result<DataVal, Diagnostic> {
    Elab { nodes: &[], sig, env: BTreeMap::new(), sides: BTreeMap::new() }.data(e, goal)
}

fn expr_shape(e: &SExpr) -> &'static str {
    match e {
        SExpr::App(..) => "an application",
        SExpr::Pair(..) => "a pair",
        SExpr::Inl(_) => "inl",
        SExpr::Inr(_) => "inr",
    }
}
