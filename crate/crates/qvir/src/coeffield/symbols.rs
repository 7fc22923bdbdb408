use std::sync::Arc;

use super::poly::MAX_SYMBOLS;
use crate::error::{Error, Result};

/// Ordered, immutable list of symbol names shared by rational functions.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct SymbolTable {
    names: Vec<String>,
}

impl SymbolTable {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Arc<SymbolTable>> {
        if names.len() > MAX_SYMBOLS {
            return Err(Error::Usage(format!(
                "at most {MAX_SYMBOLS} symbols are supported, got {}",
                names.len()
            )));
        }
        let mut out: Vec<String> = Vec::with_capacity(names.len());
        for n in names {
            let n = n.as_ref();
            let valid = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(Error::Usage(format!("invalid symbol name {n:?}")));
            }
            if matches!(n, "q" | "t" | "v") {
                return Err(Error::Usage(format!(
                    "{n} is derived from u and s and cannot be a symbol"
                )));
            }
            if out.iter().any(|o| o == n) {
                return Err(Error::Usage(format!("duplicate symbol {n}")));
            }
            out.push(n.to_string());
        }
        Ok(Arc::new(SymbolTable { names: out }))
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

pub(crate) fn same_table(a: &Arc<SymbolTable>, b: &Arc<SymbolTable>) -> bool {
    Arc::ptr_eq(a, b) || a.names == b.names
}
