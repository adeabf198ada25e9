//! The equational surface language and its compilation to core terms.

pub mod ast;
pub mod compile;
pub mod polarize;
pub mod pretty;

pub use ast::{Clause, DeclKind, SExpr, SPat, SType, SurfaceDecl};
pub use compile::{compile_clauses, elaborate_data, CaseTree, CompileConfig, Compiled};
pub use polarize::{polarize, polarize_pos};
pub use pretty::{pretty_equations, unpolarize};
