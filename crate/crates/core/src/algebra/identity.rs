use std::collections::BTreeSet;
use std::fmt;

use super::polynomial::Polynomial;
use super::symbol::{OpSymbol, Variable};

/// A polynomial asserted to vanish identically.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Identity {
    name: String,
    lhs: Polynomial,
    variables: Vec<Variable>,
    signature: BTreeSet<OpSymbol>,
}

impl Identity {
    /// Variables are taken in name order.
    pub fn new(name: impl Into<String>, lhs: Polynomial) -> Self {
        let variables = lhs.variables().into_iter().collect();
        let signature = lhs.ops();
        Identity { name: name.into(), lhs, variables, signature }
    }

    /// Uses an explicit variable order; every variable of `lhs` must be
    /// listed.
    pub fn with_variables(name: impl Into<String>, lhs: Polynomial, variables: Vec<Variable>) -> Self {
        let used = lhs.variables();
        assert!(used.iter().all(|v| variables.contains(v)), "identity variables must cover the polynomial");
        let signature = lhs.ops();
        Identity { name: name.into(), lhs, variables, signature }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn lhs(&self) -> &Polynomial {
        &self.lhs
    }

    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn signature(&self) -> &BTreeSet<OpSymbol> {
        &self.signature
    }

    pub fn degree(&self) -> Option<usize> {
        self.lhs.degree()
    }

    pub fn is_multilinear(&self) -> bool {
        self.lhs.is_multilinear() && self.lhs.variables().len() == self.variables.len()
    }

    pub fn renamed(&self, name: impl Into<String>) -> Identity {
        Identity { name: name.into(), ..self.clone() }
    }

    pub fn map_lhs(&self, f: impl FnOnce(&Polynomial) -> Polynomial) -> Identity {
        let lhs = f(&self.lhs);
        Identity { name: self.name.clone(), signature: lhs.ops(), variables: self.variables.clone(), lhs }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.name, super::format::format_polynomial(&self.lhs))
    }
}
