//! Parser for `.seq` surface programs.
//!
//! ```text
//! decl   ::= 'atom' name | 'postulate' name ':' type | name ':' type clause*
//! clause ::= name pat* '=' expr
//! type   ::= ('Pi' | 'Sigma') '(' name ':' type ')' '.' type | with ('->' type)?
//! with   ::= sum ('/\' with)? ;  sum ::= prod ('+' sum)? ;  prod ::= app ('*' prod)?
//! app    ::= name aexpr* | '(' type ')'
//! pat    ::= name '@' pat | 'inl' pat | 'inr' pat | name | '_' | '(' pat ',' pat ')' | '(' pat ')'
//! expr   ::= 'inl' aexpr | 'inr' aexpr | name aexpr* | aexpr
//! aexpr  ::= name | '(' expr ',' expr ')' | '(' expr ')'
//! ```
//!
//! Each declaration and clause starts in column 1; indented lines continue
//! the previous one.

use seqcore_core::surface::{Clause, DeclKind, SExpr, SPat, SType, SurfaceDecl};
use seqcore_core::{Diagnostic, Ident, Rule};

use crate::lexer::{lex, Cursor, Tok};

pub fn parse_program(src: &str) -> Result<Vec<SurfaceDecl>, Diagnostic> {
    let toks = lex(src)?;
    let mut lines: Vec<Vec<_>> = vec![Vec::new()];
    for t in toks {
        if t.tok == Tok::Newline {
            lines.push(Vec::new());
        } else {
            lines.last_mut().expect("non-empty").push(t);
        }
    }
    let mut decls: Vec<SurfaceDecl> = Vec::new();
    // Index into `decls` of the definition whose clauses may follow.
    let mut open: Option<usize> = None;
    for line in lines.into_iter().filter(|l| !l.is_empty()) {
        let mut c = Cursor::new(line);
        let span = c.span();
        if c.eat_kw("atom") {
            let name = ident(c.name()?);
            end(&c)?;
            decls.push(SurfaceDecl { name, span, kind: DeclKind::Atom });
            open = None;
        } else if c.eat_kw("postulate") {
            let name = ident(c.name()?);
            c.expect_sym(":")?;
            let ty = ty(&mut c)?;
            end(&c)?;
            decls.push(SurfaceDecl { name, span, kind: DeclKind::Postulate(ty) });
            open = None;
        } else if c.is_name() && matches!(c.peek_at(1), Some(Tok::Sym(":"))) {
            let name = ident(c.name()?);
            c.bump();
            let ty = ty(&mut c)?;
            end(&c)?;
            decls.push(SurfaceDecl { name, span, kind: DeclKind::Def(ty, Vec::new()) });
            open = Some(decls.len() - 1);
        } else {
            let name = ident(c.name()?);
            let Some(i) = open.filter(|&i| decls[i].name == name) else {
                return Err(Diagnostic::new(Rule::Parse, "a declaration", format!("clause for `{name}` without a type"))
                    .at(span));
            };
            let mut lhs = Vec::new();
            while !c.is_sym("=") && !c.at_end() {
                lhs.push(pat(&mut c)?);
            }
            c.expect_sym("=")?;
            let rhs = expr(&mut c)?;
            end(&c)?;
            let DeclKind::Def(_, clauses) = &mut decls[i].kind else { unreachable!() };
            if let Some(first) = clauses.first() {
                if first.lhs.len() != lhs.len() {
                    return Err(Diagnostic::new(
                        Rule::Arity,
                        format!("{} patterns, as in the first clause", first.lhs.len()),
                        lhs.len(),
                    )
                    .at(span));
                }
            }
            clauses.push(Clause { lhs, rhs, span });
        }
    }
    Ok(decls)
}

pub fn parse_type(src: &str) -> Result<SType, Diagnostic> {
    whole(src, ty)
}

pub fn parse_expr(src: &str) -> Result<SExpr, Diagnostic> {
    whole(src, expr)
}

pub fn parse_pattern(src: &str) -> Result<SPat, Diagnostic> {
    whole(src, pat)
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
        Err(c.error("end of line"))
    }
}

fn ident((name, tag): (String, u32)) -> Ident {
    Ident::with_tag(&name, tag)
}

fn ty(c: &mut Cursor) -> Result<SType, Diagnostic> {
    if c.is_kw("Pi") || c.is_kw("Sigma") {
        return binder(c);
    }
    let a = with(c)?;
    if c.eat_sym("->") {
        Ok(SType::arrow(a, ty(c)?))
    } else {
        Ok(a)
    }
}

fn binder(c: &mut Cursor) -> Result<SType, Diagnostic> {
    let pi = c.eat_kw("Pi");
    if !pi {
        c.expect_kw("Sigma")?;
    }
    c.expect_sym("(")?;
    let x = ident(c.name()?);
    c.expect_sym(":")?;
    let a = Box::new(ty(c)?);
    c.expect_sym(")")?;
    c.expect_sym(".")?;
    let b = Box::new(ty(c)?);
    Ok(if pi { SType::Pi(x, a, b) } else { SType::Sigma(x, a, b) })
}

fn with(c: &mut Cursor) -> Result<SType, Diagnostic> {
    let a = sum(c)?;
    if c.eat_sym("/\\") {
        Ok(SType::with(a, with(c)?))
    } else {
        Ok(a)
    }
}

fn sum(c: &mut Cursor) -> Result<SType, Diagnostic> {
    let a = prod(c)?;
    if c.eat_sym("+") {
        Ok(SType::sum(a, sum(c)?))
    } else {
        Ok(a)
    }
}

fn prod(c: &mut Cursor) -> Result<SType, Diagnostic> {
    let a = app(c)?;
    if c.eat_sym("*") {
        Ok(SType::prod(a, prod(c)?))
    } else {
        Ok(a)
    }
}

fn app(c: &mut Cursor) -> Result<SType, Diagnostic> {
    if c.eat_sym("(") {
        let t = ty(c)?;
        c.expect_sym(")")?;
        return Ok(t);
    }
    if c.is_kw("Pi") || c.is_kw("Sigma") {
        return binder(c);
    }
    if !c.is_name() {
        return Err(c.error("a type"));
    }
    let a = ident(c.name()?);
    let mut args = Vec::new();
    while c.is_name() || c.is_sym("(") {
        args.push(aexpr(c)?);
    }
    Ok(SType::Atom(a, args))
}

fn pat(c: &mut Cursor) -> Result<SPat, Diagnostic> {
    if c.eat_kw("inl") {
        return Ok(SPat::inl(pat(c)?));
    }
    if c.eat_kw("inr") {
        return Ok(SPat::inr(pat(c)?));
    }
    if c.eat_sym("_") {
        return Ok(SPat::Wild);
    }
    if c.eat_sym("(") {
        let p = pat(c)?;
        if c.eat_sym(",") {
            let q = pat(c)?;
            c.expect_sym(")")?;
            return Ok(SPat::pair(p, q));
        }
        c.expect_sym(")")?;
        return Ok(p);
    }
    if !c.is_name() {
        return Err(c.error("a pattern"));
    }
    let x = ident(c.name()?);
    if c.eat_sym("@") {
        return Ok(SPat::At(x, Box::new(pat(c)?)));
    }
    Ok(SPat::Var(x))
}

fn expr(c: &mut Cursor) -> Result<SExpr, Diagnostic> {
    if c.eat_kw("inl") {
        return Ok(SExpr::Inl(Box::new(aexpr(c)?)));
    }
    if c.eat_kw("inr") {
        return Ok(SExpr::Inr(Box::new(aexpr(c)?)));
    }
    if c.is_name() {
        let f = ident(c.name()?);
        let mut args = Vec::new();
        while c.is_name() || c.is_sym("(") {
            args.push(aexpr(c)?);
        }
        return Ok(SExpr::App(f, args));
    }
    aexpr(c)
}

fn aexpr(c: &mut Cursor) -> Result<SExpr, Diagnostic> {
    if c.is_name() {
        return Ok(SExpr::App(ident(c.name()?), Vec::new()));
    }
    if c.eat_sym("(") {
        let e = expr(c)?;
        if c.eat_sym(",") {
            let f = expr(c)?;
            c.expect_sym(")")?;
            return Ok(SExpr::Pair(Box::new(e), Box::new(f)));
        }
        c.expect_sym(")")?;
        return Ok(e);
    }
    Err(c.error("an expression"))
}
