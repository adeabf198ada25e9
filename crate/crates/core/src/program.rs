//! Whole programs: sequential signature construction in file order.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::check::dep::dep_check_term;
use crate::check::prop::check_term;
use crate::check::{CheckConfig, DEFAULT_FUEL};
use crate::diag::{Diagnostic, Rule, Warning};
use crate::ident::Ident;
use crate::surface::ast::{DeclKind, SurfaceDecl};
use crate::surface::compile::{compile_clauses, CompileConfig, Compiled};
use crate::surface::polarize::polarize;
use crate::syntax::{Mode, NegType, Sig, Term};
use crate::wf::neg_diagnostics;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProgramConfig {
    pub mode: Mode,
    pub structural_patterns: bool,
    pub fuel: usize,
}

impl Default for ProgramConfig {
    fn default() -> ProgramConfig {
        ProgramConfig { mode: Mode::Propositional, structural_patterns: false, fuel: DEFAULT_FUEL }
    }
}

impl ProgramConfig {
    pub fn check_config(&self) -> CheckConfig {
        CheckConfig { structural_patterns: self.structural_patterns, fuel: self.fuel }
    }

    pub fn compile_config(&self) -> CompileConfig {
        CompileConfig { mode: self.mode, structural_patterns: self.structural_patterns }
    }
}

/// A definition that compiled and typechecked.
#[derive(Clone, Debug)]
pub struct Definition {
    pub name: Ident,
    pub ty: NegType,
    pub term: Term,
    pub compiled: Compiled,
}

#[derive(Clone, Debug, Default)]
pub struct Program {
    pub sig: Sig,
    pub definitions: Vec<Definition>,
    /// Number of surface declarations, successful or not.
    pub declarations: usize,
    pub errors: Vec<Diagnostic>,
    pub warnings: Vec<Warning>,
}

impl Program {
    pub fn is_ok(&self) -> bool {
        self.errors.is_empty()
    }

    pub fn definition(&self, name: &Ident) -> Option<&Definition> {
        self.definitions.iter().find(|d| &d.name == name)
    }
}

/// Declarations enter the signature one by one; each may use only those
/// before it. A definition that fails still enters, without a body, so
/// later declarations are checked against its type.
pub fn build_program(decls: &[SurfaceDecl], cfg: ProgramConfig) -> Program {
    let mut prog = Program { declarations: decls.len(), ..Program::default() };
    let scope = BTreeSet::new();
    for decl in decls {
        if prog.sig.is_declared(&decl.name) {
            prog.errors.push(
                Diagnostic::new(Rule::Scope, "a fresh name", alloc::format!("{} declared twice", decl.name)).at(decl.span),
            );
            continue;
        }
        let sty = match &decl.kind {
            DeclKind::Atom => {
                prog.sig.add_atom(decl.name.clone());
                continue;
            }
            DeclKind::Postulate(t) | DeclKind::Def(t, _) => t,
        };
        let ty = polarize(sty, cfg.mode);
        let wf = neg_diagnostics(&ty, &prog.sig, cfg.mode, &scope);
        if !wf.is_empty() {
            prog.errors.extend(wf.into_iter().map(|d| d.at(decl.span)));
            prog.sig.add_entry(decl.name.clone(), ty, None);
            continue;
        }
        if let DeclKind::Def(..) = decl.kind {
            match compile_and_check(decl, &ty, &prog.sig, cfg) {
                Ok(compiled) => {
                    prog.warnings.extend(compiled.warnings.iter().cloned());
                    prog.sig.add_entry(decl.name.clone(), ty.clone(), Some(compiled.term.clone()));
                    prog.definitions.push(Definition { name: decl.name.clone(), ty, term: compiled.term.clone(), compiled });
                    continue;
                }
                Err(d) => prog.errors.push(d.at(decl.span)),
            }
        }
        prog.sig.add_entry(decl.name.clone(), ty, None);
    }
    prog
}

fn compile_and_check(decl: &SurfaceDecl, ty: &NegType, sig: &Sig, cfg: ProgramConfig) -> Result<Compiled, Diagnostic> {
    let compiled = compile_clauses(decl, sig, cfg.compile_config())?;
    match cfg.mode {
        Mode::Propositional => check_term(sig, &Vec::new(), &compiled.term, ty, cfg.check_config())?,
        Mode::Dependent => dep_check_term(sig, &Vec::new(), &compiled.term, ty, cfg.check_config())?,
    }
    Ok(compiled)
}
