use std::fmt;
use std::sync::Arc;

/// An indeterminate, compared by name only.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Variable(Arc<str>);

impl Variable {
    pub fn new(name: &str) -> Self {
        assert!(!name.is_empty(), "variable names must be nonempty");
        Variable(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Variable {
    fn from(s: &str) -> Self {
        Variable::new(s)
    }
}

/// Convenience: `vars("abcde")` yields the single-letter variables a..e.
pub fn vars(letters: &str) -> Vec<Variable> {
    letters.chars().map(|c| Variable::new(&c.to_string())).collect()
}

/// Returns a name not in `taken`, built from `base` plus a numeric suffix.
pub fn fresh_variable(base: &str, taken: &[Variable]) -> Variable {
    (1..).map(|k| format!("{base}{k}")).find(|n| taken.iter().all(|v| v.name() != n)).map(|n| Variable::new(&n)).unwrap()
}

/// An operation symbol. Operations produced by the KP algorithm carry a
/// variant subscript; the source operation has none.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OpSymbol {
    name: Arc<str>,
    arity: usize,
    variant: Option<u32>,
}

impl OpSymbol {
    pub fn new(name: &str, arity: usize) -> Self {
        assert!(arity > 0, "operations have positive arity");
        OpSymbol { name: Arc::from(name), arity, variant: None }
    }

    pub fn with_variant(&self, variant: u32) -> Self {
        assert!(variant > 0, "variant subscripts start at 1");
        OpSymbol { name: self.name.clone(), arity: self.arity, variant: Some(variant) }
    }

    /// The same symbol without its subscript.
    pub fn base(&self) -> Self {
        OpSymbol { name: self.name.clone(), arity: self.arity, variant: None }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn variant(&self) -> Option<u32> {
        self.variant
    }
}

impl fmt::Display for OpSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.variant {
            Some(k) => write!(f, "{}_{}", self.name, k),
            None => f.write_str(&self.name),
        }
    }
}

impl fmt::Debug for OpSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self, self.arity)
    }
}
