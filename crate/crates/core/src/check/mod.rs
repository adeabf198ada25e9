//! Type checking for the two rule sets.
//!
//! [`prop`] decides the pattern-based propositional judgments (inversion,
//! right focus, left focus, and the two cuts). [`dep`] decides the
//! variable-based dependent judgments with `Π`, `Σ` and motive
//! substitution.

pub mod dep;
pub mod prop;

pub const DEFAULT_FUEL: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckConfig {
    /// Accept `p @ q` and `_` patterns.
    pub structural_patterns: bool,
    /// Step budget for normalization during conversion.
    pub fuel: usize,
}

impl Default for CheckConfig {
    fn default() -> CheckConfig {
        CheckConfig { structural_patterns: false, fuel: DEFAULT_FUEL }
    }
}

impl CheckConfig {
    pub fn structural(self, on: bool) -> CheckConfig {
        CheckConfig { structural_patterns: on, ..self }
    }
}

/// Short description of a term's outermost shape, for diagnostics.
pub(crate) fn shape(t: &crate::syntax::Term) -> &'static str {
    use crate::syntax::Term;
    match t {
        Term::Done(_) => "done",
        Term::Lam(..) => "lambda",
        Term::App(..) => "application",
        Term::Pair(..) => "pair <_, _>",
        Term::Split(..) => "split",
        Term::Case { .. } => "dependent split",
        Term::LetPair { .. } => "pair let",
        Term::BindCut { .. } => "binding cut",
        Term::AppCut { .. } => "application cut",
    }
}

pub(crate) fn data_shape(d: &crate::syntax::DataVal) -> &'static str {
    use crate::syntax::DataVal;
    match d {
        DataVal::Thunk(_) => "thunk",
        DataVal::Pair(..) => "data pair",
        DataVal::Inl(_) => "inl",
        DataVal::Inr(_) => "inr",
    }
}

pub(crate) fn spine_shape(k: &crate::syntax::Spine) -> &'static str {
    use crate::syntax::Spine;
    match k {
        Spine::Nil => "end of spine",
        Spine::Cons(..) => "argument",
        Spine::Proj1(_) => "first projection",
        Spine::Proj2(_) => "second projection",
        Spine::Kappa(..) => "kappa",
    }
}
