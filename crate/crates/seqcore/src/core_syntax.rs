//! Reader for the canonical core syntax printed by `seqcore core`.
//!
//! Types are read into an unsorted tree first and then sorted by polarity,
//! so `(down a * down b)` and `(a -> b)` share one parenthesis rule.

use seqcore_core::{DataVal, Diagnostic, Ident, NegType, Pattern, PosType, Rule, Sig, Span, Spine, Term};

use crate::lexer::{lex, Cursor, Tok};

pub fn parse_term(src: &str) -> Result<Term, Diagnostic> {
    whole(src, term)
}

pub fn parse_data(src: &str) -> Result<DataVal, Diagnostic> {
    whole(src, data)
}

pub fn parse_spine(src: &str) -> Result<Spine, Diagnostic> {
    whole(src, spine)
}

pub fn parse_core_pattern(src: &str) -> Result<Pattern, Diagnostic> {
    whole(src, pattern)
}

pub fn parse_neg(src: &str) -> Result<NegType, Diagnostic> {
    whole(src, neg)
}

pub fn parse_pos(src: &str) -> Result<PosType, Diagnostic> {
    whole(src, pos)
}

/// Reads the `atom` / `postulate` / `def` line format of `print_sig`.
pub fn parse_sig(src: &str) -> Result<Sig, Diagnostic> {
    let mut sig = Sig::new();
    for (i, line) in src.lines().enumerate() {
        let line_no = i as u32 + 1;
        let toks: Vec<_> = lex(line)
            .map_err(|d| relocate(d, line_no))?
            .into_iter()
            .filter(|t| t.tok != Tok::Newline)
            .collect();
        if toks.is_empty() {
            continue;
        }
        let mut c = Cursor::new(toks);
        let entry = (|| {
            let span = c.span();
            if c.eat_kw("atom") {
                let a = ident(c.name()?);
                end(&c)?;
                return Ok((a, None, None, span));
            }
            let def = c.eat_kw("def");
            if !def {
                c.expect_kw("postulate")?;
            }
            let name = ident(c.name()?);
            c.expect_sym(":")?;
            let ty = neg(&mut c)?;
            let body = if def {
                c.expect_sym("=")?;
                Some(term(&mut c)?)
            } else {
                None
            };
            end(&c)?;
            Ok((name, Some(ty), body, span))
        })()
        .map_err(|d| relocate(d, line_no))?;
        let (name, ty, body, span) = entry;
        let fresh = match ty {
            None => sig.add_atom(name.clone()),
            Some(ty) => sig.add_entry(name.clone(), ty, body),
        };
        if !fresh {
            return Err(Diagnostic::new(Rule::Scope, "a fresh name", format!("{name} declared twice"))
                .at(Span::new(line_no, span.col)));
        }
    }
    Ok(sig)
}

fn relocate(mut d: Diagnostic, line: u32) -> Diagnostic {
    if let Some(s) = d.span.as_mut() {
        s.line = line;
    }
    d
}

fn whole<T>(src: &str, f: fn(&mut Cursor) -> Result<T, Diagnostic>) -> Result<T, Diagnostic> {
    let toks = lex(src)?.into_iter().filter(|t| t.tok != Tok::Newline).collect();
    let mut c = Cursor::new(toks);
    let out = f(&mut c)?;
    end(&c)?;
    Ok(out)
}

fn end(c: &Cursor) -> Result<(), Diagnostic> {
    if c.at_end() {
        Ok(())
    } else {
        Err(c.error("end of input"))
    }
}

fn ident((name, tag): (String, u32)) -> Ident {
    Ident::with_tag(&name, tag)
}

fn term(c: &mut Cursor) -> Result<Term, Diagnostic> {
    if c.eat_kw("done") {
        return Ok(Term::Done(data(c)?));
    }
    if c.eat_sym("\\") {
        let p = pattern(c)?;
        c.expect_sym(".")?;
        return Ok(Term::lam(p, term(c)?));
    }
    if c.eat_sym("<") {
        let t = term(c)?;
        c.expect_sym(",")?;
        let u = term(c)?;
        c.expect_sym(">")?;
        return Ok(Term::pair(t, u));
    }
    if c.eat_kw("split") {
        let w = ident(c.name()?);
        c.expect_sym("{")?;
        c.expect_kw("inl")?;
        if c.eat_sym("->") {
            let t = term(c)?;
            c.expect_sym(";")?;
            c.expect_kw("inr")?;
            c.expect_sym("->")?;
            let u = term(c)?;
            c.expect_sym("}")?;
            return Ok(Term::Split(w, Box::new(t), Box::new(u)));
        }
        let y = ident(c.name()?);
        c.expect_sym("->")?;
        let t = term(c)?;
        c.expect_sym(";")?;
        c.expect_kw("inr")?;
        let z = ident(c.name()?);
        c.expect_sym("->")?;
        let u = term(c)?;
        c.expect_sym("}")?;
        return Ok(Term::case(w, y, t, z, u));
    }
    if c.eat_kw("let") {
        let p = pattern(c)?;
        if c.eat_sym("=") {
            let Pattern::Pair(a, b) = p else {
                return Err(c.error("`:` after a non-pair pattern"));
            };
            let (Pattern::Var(y), Pattern::Var(z)) = (*a, *b) else {
                return Err(c.error("a pair of variables before `=`"));
            };
            let x = ident(c.name()?);
            c.expect_kw("in")?;
            return Ok(Term::let_pair(y, z, x, term(c)?));
        }
        c.expect_sym(":")?;
        let ty = pos(c)?;
        c.expect_sym("=")?;
        let d = data(c)?;
        c.expect_kw("in")?;
        return Ok(Term::bind_cut(p, d, ty, term(c)?));
    }
    if c.eat_sym("(") {
        let t = term(c)?;
        c.expect_sym(":")?;
        let ty = neg(c)?;
        c.expect_sym(")")?;
        let k = spine(c)?;
        return Ok(Term::app_cut(t, ty, k));
    }
    if c.is_name() {
        let x = ident(c.name()?);
        return Ok(Term::App(x, spine(c)?));
    }
    Err(c.error("a term"))
}

fn spine_starts(c: &Cursor) -> bool {
    c.is_sym("[]") || c.is_sym(".1") || c.is_sym(".2") || (c.is_sym("(") && matches!(c.peek_at(1), Some(Tok::Name(k, 0)) if k == "kappa"))
}

fn spine(c: &mut Cursor) -> Result<Spine, Diagnostic> {
    if c.eat_sym("[]") {
        return Ok(Spine::Nil);
    }
    if c.eat_sym(".1") {
        return Ok(Spine::proj1(spine(c)?));
    }
    if c.eat_sym(".2") {
        return Ok(Spine::proj2(spine(c)?));
    }
    c.expect_sym("(")?;
    if c.eat_kw("kappa") {
        let p = pattern(c)?;
        c.expect_sym(".")?;
        let t = term(c)?;
        c.expect_sym(")")?;
        return Ok(Spine::kappa(p, t));
    }
    let mut args = vec![data(c)?];
    c.expect_sym("::")?;
    while !spine_starts(c) {
        args.push(data(c)?);
        c.expect_sym("::")?;
    }
    let mut k = spine(c)?;
    c.expect_sym(")")?;
    for d in args.into_iter().rev() {
        k = Spine::cons(d, k);
    }
    Ok(k)
}

fn data(c: &mut Cursor) -> Result<DataVal, Diagnostic> {
    if c.eat_kw("thunk") {
        return Ok(DataVal::thunk(term(c)?));
    }
    if c.eat_kw("inl") {
        return Ok(DataVal::inl(data(c)?));
    }
    if c.eat_kw("inr") {
        return Ok(DataVal::inr(data(c)?));
    }
    if c.eat_sym("(") {
        let d = data(c)?;
        if c.eat_sym(",") {
            let e = data(c)?;
            c.expect_sym(")")?;
            return Ok(DataVal::pair(d, e));
        }
        c.expect_sym(")")?;
        return Ok(d);
    }
    Err(c.error("data"))
}

fn pattern(c: &mut Cursor) -> Result<Pattern, Diagnostic> {
    let p = atomic_pattern(c)?;
    if c.eat_sym("@") {
        return Ok(Pattern::at(p, pattern(c)?));
    }
    Ok(p)
}

fn atomic_pattern(c: &mut Cursor) -> Result<Pattern, Diagnostic> {
    if c.eat_sym("_") {
        return Ok(Pattern::Wild);
    }
    if c.eat_sym("(") {
        let p = pattern(c)?;
        if c.eat_sym(",") {
            let q = pattern(c)?;
            c.expect_sym(")")?;
            return Ok(Pattern::pair(p, q));
        }
        c.expect_sym(")")?;
        return Ok(p);
    }
    if c.eat_sym("[") {
        let p = pattern(c)?;
        c.expect_sym("|")?;
        let q = pattern(c)?;
        c.expect_sym("]_")?;
        let w = ident(c.name()?);
        return Ok(Pattern::Or(w, Box::new(p), Box::new(q)));
    }
    if c.is_name() {
        return Ok(Pattern::Var(ident(c.name()?)));
    }
    Err(c.error("a pattern"))
}

/// Polarity-agnostic type tree.
enum Ty {
    Atom(Ident, Vec<DataVal>),
    Up(Box<Ty>),
    Down(Box<Ty>),
    Arrow(Box<Ty>, Box<Ty>),
    With(Box<Ty>, Box<Ty>),
    Or(Box<Ty>, Box<Ty>),
    Prod(Box<Ty>, Box<Ty>),
    Pi(Ident, Box<Ty>, Box<Ty>),
    Sigma(Ident, Box<Ty>, Box<Ty>),
}

fn neg(c: &mut Cursor) -> Result<NegType, Diagnostic> {
    let span = c.span();
    let t = ty(c)?;
    to_neg(t).map_err(|d| d.at(span))
}

fn pos(c: &mut Cursor) -> Result<PosType, Diagnostic> {
    let span = c.span();
    let t = ty(c)?;
    to_pos(t).map_err(|d| d.at(span))
}

fn to_neg(t: Ty) -> Result<NegType, Diagnostic> {
    Ok(match t {
        Ty::Atom(a, args) => NegType::Atom(a, args),
        Ty::Up(p) => NegType::up(to_pos(*p)?),
        Ty::Arrow(p, n) => NegType::imp(to_pos(*p)?, to_neg(*n)?),
        Ty::With(a, b) => NegType::with(to_neg(*a)?, to_neg(*b)?),
        Ty::Pi(x, p, n) => NegType::pi(x, to_pos(*p)?, to_neg(*n)?),
        Ty::Down(_) | Ty::Or(..) | Ty::Prod(..) | Ty::Sigma(..) => {
            return Err(Diagnostic::new(Rule::Parse, "a negative type", "a positive type"))
        }
    })
}

fn to_pos(t: Ty) -> Result<PosType, Diagnostic> {
    Ok(match t {
        Ty::Down(n) => PosType::down(to_neg(*n)?),
        Ty::Or(a, b) => PosType::or(to_pos(*a)?, to_pos(*b)?),
        Ty::Prod(a, b) => PosType::prod(to_pos(*a)?, to_pos(*b)?),
        Ty::Sigma(x, a, b) => PosType::sigma(x, to_pos(*a)?, to_pos(*b)?),
        Ty::Atom(..) | Ty::Up(_) | Ty::Arrow(..) | Ty::With(..) | Ty::Pi(..) => {
            return Err(Diagnostic::new(Rule::Parse, "a positive type", "a negative type"))
        }
    })
}

fn ty(c: &mut Cursor) -> Result<Ty, Diagnostic> {
    if c.is_kw("Pi") || c.is_kw("Sigma") {
        let pi = c.eat_kw("Pi");
        if !pi {
            c.bump();
        }
        c.expect_sym("(")?;
        let x = ident(c.name()?);
        c.expect_sym(":")?;
        let a = Box::new(ty(c)?);
        c.expect_sym(")")?;
        c.expect_sym(".")?;
        let b = Box::new(ty(c)?);
        return Ok(if pi { Ty::Pi(x, a, b) } else { Ty::Sigma(x, a, b) });
    }
    let a = with(c)?;
    if c.eat_sym("->") {
        return Ok(Ty::Arrow(Box::new(a), Box::new(ty(c)?)));
    }
    Ok(a)
}

fn with(c: &mut Cursor) -> Result<Ty, Diagnostic> {
    let a = or(c)?;
    if c.eat_sym("/\\") {
        return Ok(Ty::With(Box::new(a), Box::new(with(c)?)));
    }
    Ok(a)
}

fn or(c: &mut Cursor) -> Result<Ty, Diagnostic> {
    let a = prod(c)?;
    if c.eat_sym("+") {
        return Ok(Ty::Or(Box::new(a), Box::new(or(c)?)));
    }
    Ok(a)
}

fn prod(c: &mut Cursor) -> Result<Ty, Diagnostic> {
    let a = atomic_ty(c)?;
    if c.eat_sym("*") {
        return Ok(Ty::Prod(Box::new(a), Box::new(prod(c)?)));
    }
    Ok(a)
}

fn atomic_ty(c: &mut Cursor) -> Result<Ty, Diagnostic> {
    if c.eat_kw("up") {
        return Ok(Ty::Up(Box::new(atomic_ty(c)?)));
    }
    if c.eat_kw("down") {
        return Ok(Ty::Down(Box::new(atomic_ty(c)?)));
    }
    if c.eat_sym("(") {
        let t = ty(c)?;
        c.expect_sym(")")?;
        return Ok(t);
    }
    if c.is_name() {
        let a = ident(c.name()?);
        let mut args = Vec::new();
        if c.eat_sym("{") {
            args.push(data(c)?);
            while c.eat_sym(",") {
                args.push(data(c)?);
            }
            c.expect_sym("}")?;
        }
        return Ok(Ty::Atom(a, args));
    }
    Err(c.error("a type"))
}
