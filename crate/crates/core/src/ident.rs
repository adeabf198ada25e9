//! Identifiers with a freshness tag.
//!
//! Names written by the user carry tag `0`. Capture-avoiding operations
//! regenerate binders with [`Ident::fresh`], which keeps the printable name
//! and draws a new tag from a process-wide counter.

use alloc::sync::Arc;
use core::fmt;
use core::sync::atomic::{AtomicU32, Ordering};

static NEXT_TAG: AtomicU32 = AtomicU32::new(1);

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ident {
    name: Arc<str>,
    tag: u32,
}

impl Ident {
    pub fn new(name: &str) -> Ident {
        Ident { name: Arc::from(name), tag: 0 }
    }

    /// Rebuilds an identifier read back from printed syntax. The global
    /// counter is bumped past `tag` so later fresh names cannot collide.
    pub fn with_tag(name: &str, tag: u32) -> Ident {
        if tag != 0 {
            NEXT_TAG.fetch_max(tag.saturating_add(1), Ordering::Relaxed);
        }
        Ident { name: Arc::from(name), tag }
    }

    pub fn fresh(&self) -> Ident {
        let tag = NEXT_TAG.fetch_add(1, Ordering::Relaxed);
        Ident { name: self.name.clone(), tag }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn tag(&self) -> u32 {
        self.tag
    }
}

impl From<&str> for Ident {
    fn from(name: &str) -> Ident {
        Ident::new(name)
    }
}

impl fmt::Display for Ident {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.tag == 0 {
            f.write_str(&self.name)
        } else {
            write!(f, "{}#{}", self.name, self.tag)
        }
    }
}

impl fmt::Debug for Ident {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
