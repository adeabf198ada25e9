//! Decomposition of a datum according to the shape of a pattern.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::ident::Ident;
use crate::subst::Side;
use crate::syntax::{DataVal, Pattern};

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Match {
    /// Variable bindings in left-to-right pattern order.
    pub bindings: Vec<(Ident, DataVal)>,
    /// For every or-pattern met on the way, the branch the datum selected.
    pub branches: Vec<(Ident, Side)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub pattern: String,
    pub data: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pattern `{}` does not match datum `{}`", self.pattern, self.data)
    }
}

pub fn match_pattern(pat: &Pattern, data: &DataVal) -> Result<Match, Mismatch> {
    let mut m = Match::default();
    go(pat, data, &mut m)?;
    Ok(m)
}

fn go(pat: &Pattern, data: &DataVal, m: &mut Match) -> Result<(), Mismatch> {
    match (pat, data) {
        (Pattern::Var(x), d) => m.bindings.push((x.clone(), d.clone())),
        (Pattern::Wild, _) => {}
        (Pattern::At(p, q), d) => {
            go(p, d, m)?;
            go(q, d, m)?;
        }
        (Pattern::Pair(p, q), DataVal::Pair(d, e)) => {
            go(p, d, m)?;
            go(q, e, m)?;
        }
        (Pattern::Or(w, p, _), DataVal::Inl(d)) => {
            m.branches.push((w.clone(), Side::Left));
            go(p, d, m)?;
        }
        (Pattern::Or(w, _, q), DataVal::Inr(d)) => {
            m.branches.push((w.clone(), Side::Right));
            go(q, d, m)?;
        }
        _ => {
            return Err(Mismatch {
                pattern: alloc::format!("{pat}"),
                data: alloc::format!("{data}"),
            })
        }
    }
    Ok(())
}
