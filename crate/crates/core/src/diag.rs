//! Structured errors and warnings.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

/// Identity of the rule (or pipeline stage) that failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    // inversion
    ImpRight,
    WithRight,
    Done,
    Focus,
    Store,
    ProdLeft,
    OrLeft,
    CutBind,
    CutApp,
    // structural patterns
    Contraction,
    Weakening,
    StructuralDisabled,
    // right and left focus
    Axiom,
    ImpLeft,
    WithLeft1,
    WithLeft2,
    Blur,
    Thunk,
    ProdRight,
    OrRight,
    // dependent
    PiRight,
    PiLeft,
    SigmaLeft,
    SigmaRight,
    Conversion,
    ConversionFuel,
    // plumbing
    Mode,
    Scope,
    Parse,
    Coverage,
    Arity,
    Fuel,
}

impl Rule {
    pub fn as_str(self) -> &'static str {
        match self {
            Rule::ImpRight => "imp-right",
            Rule::WithRight => "with-right",
            Rule::Done => "done",
            Rule::Focus => "focus",
            Rule::Store => "store",
            Rule::ProdLeft => "prod-left",
            Rule::OrLeft => "or-left",
            Rule::CutBind => "cut-bind",
            Rule::CutApp => "cut-app",
            Rule::Contraction => "contraction",
            Rule::Weakening => "weakening",
            Rule::StructuralDisabled => "structural-disabled",
            Rule::Axiom => "axiom",
            Rule::ImpLeft => "imp-left",
            Rule::WithLeft1 => "with-left-1",
            Rule::WithLeft2 => "with-left-2",
            Rule::Blur => "blur",
            Rule::Thunk => "thunk",
            Rule::ProdRight => "prod-right",
            Rule::OrRight => "or-right",
            Rule::PiRight => "pi-right",
            Rule::PiLeft => "pi-left",
            Rule::SigmaLeft => "sigma-left",
            Rule::SigmaRight => "sigma-right",
            Rule::Conversion => "conversion",
            Rule::ConversionFuel => "conversion-fuel",
            Rule::Mode => "mode",
            Rule::Scope => "scope",
            Rule::Parse => "parse",
            Rule::Coverage => "coverage",
            Rule::Arity => "arity",
            Rule::Fuel => "fuel",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// 1-based source position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Span {
    pub line: u32,
    pub col: u32,
}

impl Span {
    pub fn new(line: u32, col: u32) -> Span {
        Span { line, col }
    }
}

impl Default for Span {
    fn default() -> Span {
        Span { line: 1, col: 1 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub rule: Rule,
    pub span: Option<Span>,
    pub expected: String,
    pub found: String,
    pub note: String,
    /// Rules of the enclosing judgments, innermost first.
    pub trail: Vec<Rule>,
}

impl Diagnostic {
    pub fn new(rule: Rule, expected: impl ToString, found: impl ToString) -> Diagnostic {
        Diagnostic {
            rule,
            span: None,
            expected: expected.to_string(),
            found: found.to_string(),
            note: String::new(),
            trail: Vec::new(),
        }
    }

    pub fn with_note(mut self, note: impl ToString) -> Diagnostic {
        self.note = note.to_string();
        self
    }

    /// Records the judgment the failure propagated through.
    pub fn within(mut self, rule: Rule) -> Diagnostic {
        self.trail.push(rule);
        self
    }

    /// Sets the span unless a more precise one is already known.
    pub fn at(mut self, span: Span) -> Diagnostic {
        self.span.get_or_insert(span);
        self
    }

    /// `ERROR <rule> at <file>:<line>:<col>: expected <ty>, found <shape>`,
    /// followed by indented note and trail lines when present.
    pub fn render(&self, file: &str) -> String {
        let span = self.span.unwrap_or_default();
        let mut out = alloc::format!(
            "ERROR {} at {}:{}:{}: expected {}, found {}",
            self.rule,
            file,
            span.line,
            span.col,
            self.expected,
            self.found
        );
        if !self.note.is_empty() {
            out.push_str("\n  note: ");
            out.push_str(&self.note);
        }
        if !self.trail.is_empty() {
            out.push_str("\n  in: ");
            for (i, r) in self.trail.iter().enumerate() {
                if i > 0 {
                    out.push_str(" < ");
                }
                out.push_str(r.as_str());
            }
        }
        out
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: expected {}, found {}", self.rule, self.expected, self.found)?;
        if !self.note.is_empty() {
            write!(f, " ({})", self.note)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WarningKind {
    Overlap,
    Unused,
}

impl WarningKind {
    pub fn as_str(self) -> &'static str {
        match self {
            WarningKind::Overlap => "overlap",
            WarningKind::Unused => "unused-clause",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Warning {
    pub kind: WarningKind,
    pub span: Span,
    pub message: String,
}

impl Warning {
    pub fn render(&self, file: &str) -> String {
        alloc::format!(
            "WARNING {} at {}:{}:{}: {}",
            self.kind.as_str(),
            file,
            self.span.line,
            self.span.col,
            self.message
        )
    }
}
