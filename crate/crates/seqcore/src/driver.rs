//! Batch commands over one `.seq` file.

use std::path::PathBuf;

use seqcore_core::check::dep::dep_check_data;
use seqcore_core::check::prop::check_data;
use seqcore_core::check::DEFAULT_FUEL;
use seqcore_core::eval::{normalize, trace, FuelExhausted};
use seqcore_core::print::print_sig;
use seqcore_core::program::{build_program, Program, ProgramConfig};
use seqcore_core::surface::{elaborate_data, SExpr};
use seqcore_core::{DataVal, Diagnostic, Ident, Mode, NegType, PosType, Rule, Sig, Spine, Term};

use crate::parse::{parse_expr, parse_program};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Check,
    Run,
    Core,
    Trace,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub file: PathBuf,
    pub entry: Option<String>,
    pub arg: Option<String>,
    pub dependent: bool,
    pub structural_patterns: bool,
    pub fuel: usize,
}

impl RunConfig {
    pub fn new(command: Command, file: impl Into<PathBuf>) -> RunConfig {
        RunConfig {
            command,
            file: file.into(),
            entry: None,
            arg: None,
            dependent: false,
            structural_patterns: false,
            fuel: DEFAULT_FUEL,
        }
    }

    pub fn program_config(&self) -> ProgramConfig {
        ProgramConfig {
            mode: if self.dependent { Mode::Dependent } else { Mode::Propositional },
            structural_patterns: self.structural_patterns,
            fuel: self.fuel,
        }
    }
}

pub mod exit {
    pub const OK: i32 = 0;
    pub const TYPE: i32 = 1;
    pub const PARSE: i32 = 2;
    pub const FUEL: i32 = 3;
    pub const USAGE: i32 = 4;
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn fail(mut self, code: i32, line: impl AsRef<str>) -> Outcome {
        self.stderr.push_str(line.as_ref());
        self.stderr.push('\n');
        self.code = code;
        self
    }
}

/// Reads the file named in `cfg` and runs the command on it.
pub fn execute(cfg: &RunConfig) -> Outcome {
    match std::fs::read_to_string(&cfg.file) {
        Ok(src) => run_source(cfg, &src),
        Err(e) => Outcome::default().fail(exit::USAGE, format!("error: cannot read {}: {e}", cfg.file.display())),
    }
}

pub fn run_source(cfg: &RunConfig, src: &str) -> Outcome {
    let file = cfg.file.display().to_string();
    let mut out = Outcome::default();
    if matches!(cfg.command, Command::Run | Command::Trace) && cfg.entry.is_none() {
        return out.fail(exit::USAGE, "error: --entry is required for run and trace");
    }
    let decls = match parse_program(src) {
        Ok(d) => d,
        Err(d) => return out.fail(exit::PARSE, d.render(&file)),
    };
    let prog = build_program(&decls, cfg.program_config());
    for w in &prog.warnings {
        out.stderr.push_str(&w.render(&file));
        out.stderr.push('\n');
    }
    if !prog.is_ok() {
        let code = if prog.errors.iter().any(|d| d.rule == Rule::ConversionFuel) { exit::FUEL } else { exit::TYPE };
        for d in &prog.errors {
            out = out.fail(code, d.render(&file));
        }
        return out;
    }
    match cfg.command {
        Command::Check => {
            out.stdout = format!("ok ({} declarations)\n", prog.declarations);
            out
        }
        Command::Core => {
            out.stdout = print_sig(&prog.sig);
            out
        }
        Command::Run | Command::Trace => run_entry(cfg, &prog, &file, out),
    }
}

fn run_entry(cfg: &RunConfig, prog: &Program, file: &str, out: Outcome) -> Outcome {
    let name = Ident::new(cfg.entry.as_deref().expect("checked by caller"));
    let Some(entry) = prog.sig.lookup(&name) else {
        return out.fail(exit::USAGE, format!("error: no declaration named {name}"));
    };
    let mut sig = prog.sig.clone();
    let spine = match &cfg.arg {
        None => Spine::Nil,
        Some(src) => {
            let arg_ty = match &entry.ty {
                NegType::Imp(p, _) | NegType::Pi(_, p, _) => (**p).clone(),
                other => return out.fail(exit::USAGE, format!("error: {name} : {other} takes no argument")),
            };
            let expr = match parse_expr(src) {
                Ok(e) => e,
                Err(d) => return out.fail(exit::PARSE, d.render("<arg>")),
            };
            match argument(cfg, &mut sig, &expr, &arg_ty) {
                Ok(d) => Spine::cons(d, Spine::Nil),
                Err(d) => return out.fail(exit::TYPE, d.render("<arg>")),
            }
        }
    };
    let t = Term::App(name, spine);
    let fuel_error = |out: Outcome, e: FuelExhausted| {
        out.fail(exit::FUEL, format!("ERROR fuel at {file}:1:1: expected a normal form within {} steps, found {}", cfg.fuel, e.last))
    };
    let mut out = out;
    let result = if cfg.command == Command::Trace {
        match trace(&sig, &t, cfg.fuel) {
            Ok(tr) => {
                out.stdout.push_str(&format!("   {t}\n"));
                for (rule, next) in &tr.steps {
                    out.stdout.push_str(&format!("{rule} {next}\n"));
                }
                tr.result
            }
            Err(e) => return fuel_error(out, e),
        }
    } else {
        match normalize(&sig, &t, cfg.fuel) {
            Ok(n) => n,
            Err(e) => return fuel_error(out, e),
        }
    };
    if let Some(why) = &result.stuck {
        out.stderr.push_str(&format!("note: evaluation stuck: {why}\n"));
    }
    out.stdout.push_str(&format!("{}\n", result.term));
    out
}

/// Elaborates and checks `--arg`, postulating its unknown names at the
/// types their positions demand.
fn argument(cfg: &RunConfig, sig: &mut Sig, e: &SExpr, ty: &PosType) -> Result<DataVal, Diagnostic> {
    postulate_free(sig, e, ty)?;
    let d = elaborate_data(e, ty, sig)?;
    let pc = cfg.program_config();
    match pc.mode {
        Mode::Propositional => check_data(sig, &d, ty, pc.check_config())?,
        Mode::Dependent => dep_check_data(sig, &Vec::new(), &d, ty, pc.check_config())?,
    }
    Ok(d)
}

fn postulate_free(sig: &mut Sig, e: &SExpr, ty: &PosType) -> Result<(), Diagnostic> {
    match (e, ty) {
        (SExpr::App(x, args), PosType::Down(n)) if args.is_empty() && !sig.is_declared(x) => {
            sig.add_entry(x.clone(), (**n).clone(), None);
            Ok(())
        }
        (SExpr::Inl(a), PosType::Or(p, _)) => postulate_free(sig, a, p),
        (SExpr::Inr(a), PosType::Or(_, q)) => postulate_free(sig, a, q),
        (SExpr::Pair(a, b), PosType::Prod(p, q) | PosType::Sigma(_, p, q)) => {
            postulate_free(sig, a, p)?;
            postulate_free(sig, b, q)
        }
        _ => Ok(()),
    }
}
