//! The example programs shipped in `examples/`.

use std::path::PathBuf;

use seqcore::parse::parse_program;
use seqcore_core::program::{build_program, Program, ProgramConfig};
use seqcore_core::surface::SurfaceDecl;
use seqcore_core::Mode;

pub struct Example {
    pub file: &'static str,
    /// Needs the dependent rules.
    pub dependent: bool,
    /// Uses `_` for an argument no clause inspects.
    pub structural: bool,
}

pub const EXAMPLES: &[Example] = &[
    Example { file: "f.seq", dependent: false, structural: false },
    Example { file: "swap.seq", dependent: false, structural: false },
    Example { file: "or_comm.seq", dependent: false, structural: false },
    Example { file: "distrib.seq", dependent: false, structural: false },
    Example { file: "combinators.seq", dependent: false, structural: false },
    Example { file: "multi.seq", dependent: false, structural: false },
    Example { file: "structural.seq", dependent: false, structural: true },
    Example { file: "dependent.seq", dependent: true, structural: false },
];

pub fn path(file: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples").join(file)
}

pub fn source(file: &str) -> String {
    std::fs::read_to_string(path(file)).unwrap_or_else(|e| panic!("{file}: {e}"))
}

pub fn decls(file: &str) -> Vec<SurfaceDecl> {
    parse_program(&source(file)).unwrap_or_else(|d| panic!("{}", d.render(file)))
}

pub fn config(ex: &Example, dependent: bool) -> ProgramConfig {
    ProgramConfig {
        mode: if dependent { Mode::Dependent } else { Mode::Propositional },
        structural_patterns: ex.structural,
        ..ProgramConfig::default()
    }
}

/// The program in its intended mode.
pub fn build(ex: &Example) -> Program {
    build_program(&decls(ex.file), config(ex, ex.dependent))
}
