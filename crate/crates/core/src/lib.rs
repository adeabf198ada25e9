//! Kernel of a small functional language whose internal representation is a
//! focused intuitionistic sequent calculus.
//!
//! Equational programs are compiled into four sorts of core syntax (terms,
//! patterns, data and spines), checked by a pattern-based propositional
//! rule set or a variable-based dependent one, and run by cut elimination.
//!
//! The crate is `no_std` and needs only `alloc`. Parsing of files, the
//! command-line driver and other IO live in the `seqcore` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod alpha;
pub mod check;
pub mod diag;
pub mod eval;
pub mod ident;
pub mod matching;
pub mod print;
pub mod program;
pub mod subst;
pub mod surface;
pub mod syntax;
pub mod wf;

pub use alpha::alpha_eq;
pub use diag::{Diagnostic, Rule, Span};
pub use ident::Ident;
pub use syntax::{Ctx, DataVal, DepCtx, Mode, NegType, Pattern, PosType, Sig, SigEntry, Spine, Term};
