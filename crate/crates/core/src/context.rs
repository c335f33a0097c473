//! The ambient variable context: an ordered list of ring variables.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Shared handle to a [`VariableContext`]; everything monomial-valued carries one.
pub type Ctx = Arc<VariableContext>;

/// Ordered variable names of the ambient ring `k[x1..xs]` localized at the
/// maximal ideal generated by all variables. All exponent vectors are
/// interpreted positionally against one context.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VariableContext {
    names: Vec<String>,
}

impl VariableContext {
    /// Build a context from distinct, well-formed variable names.
    pub fn new<S: Into<String>>(names: Vec<S>) -> Result<Ctx> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidInput(
                "a context needs at least one variable".into(),
            ));
        }
        for name in &names {
            if !valid_name(name) {
                return Err(Error::InvalidInput(format!("bad variable name {name:?}")));
            }
        }
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(Error::InvalidInput(format!(
                    "duplicate variable name {name:?}"
                )));
            }
        }
        Ok(Arc::new(VariableContext { names }))
    }

    /// Number of variables `s`.
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// A name is a letter followed by letters, digits or underscores. The literal
/// `1` is reserved for the trivial monomial.
fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
