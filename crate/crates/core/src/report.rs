//! Violations reported by the structural checkers.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    /// Which property failed.
    pub check: String,
    /// The offending index (column, diagonal or strand), when there is one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    pub detail: String,
}

impl Violation {
    pub fn new(check: &str, detail: impl Into<String>) -> Self {
        Violation {
            check: check.to_string(),
            index: None,
            detail: detail.into(),
        }
    }

    pub fn at(check: &str, index: usize, detail: impl Into<String>) -> Self {
        Violation {
            check: check.to_string(),
            index: Some(index),
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.check, self.detail)
    }
}
