use std::sync::Arc;

use crate::error::{Error, Result};

/// The only supported order: degree-lexicographic, ties broken by the
/// exponent of the last declared variable first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    #[default]
    DegLex,
}

/// Polynomial ring `Q[params][vars]`.
///
/// Variables are listed in increasing precedence: for `[x, y, z]` the
/// order has `x < y < z`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    vars: Vec<String>,
    params: Vec<String>,
    order: MonomialOrder,
}

impl Ring {
    pub fn new<S: AsRef<str>>(vars: &[S], params: &[S]) -> Arc<Ring> {
        Arc::new(Ring {
            vars: vars.iter().map(|s| s.as_ref().to_string()).collect(),
            params: params.iter().map(|s| s.as_ref().to_string()).collect(),
            order: MonomialOrder::DegLex,
        })
    }

    pub fn vars_only<S: AsRef<str>>(vars: &[S]) -> Arc<Ring> {
        Ring::new::<S>(vars, &[])
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn nparams(&self) -> usize {
        self.params.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn param_index(&self, name: &str) -> Option<usize> {
        self.params.iter().position(|v| v == name)
    }

    /// Same ring without parameters.
    pub fn without_params(&self) -> Arc<Ring> {
        Ring::new(&self.vars, &[])
    }

    /// Same variables with the given parameter list.
    pub fn with_params<S: AsRef<str>>(&self, params: &[S]) -> Arc<Ring> {
        Arc::new(Ring {
            vars: self.vars.clone(),
            params: params.iter().map(|s| s.as_ref().to_string()).collect(),
            order: self.order,
        })
    }

    pub(crate) fn describe(&self) -> String {
        if self.params.is_empty() {
            self.vars.join(",")
        } else {
            format!("{}; params {}", self.vars.join(","), self.params.join(","))
        }
    }

    pub(crate) fn check_same(&self, other: &Ring) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RingMismatch {
                left: self.describe(),
                right: other.describe(),
            })
        }
    }

    pub(crate) fn check_same_vars(&self, other: &Ring) -> Result<()> {
        if self.vars == other.vars && self.order == other.order {
            Ok(())
        } else {
            Err(Error::RingMismatch {
                left: self.describe(),
                right: other.describe(),
            })
        }
    }
}
