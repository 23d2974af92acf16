use std::cmp::Ordering;
use std::collections::BTreeSet;

use super::symbol::{OpSymbol, Variable};

/// A planar operation tree over named variables.
///
/// Monomials are ordered first by shape (leaf < apply, then operation
/// symbol, then children's shapes left to right) and then by the sequence of
/// leaf variables. Two trees with the same shape and leaf sequence are equal,
/// so this order is total and agrees with `Eq`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Monomial {
    Leaf(Variable),
    Apply(OpSymbol, Vec<Monomial>),
}

impl Monomial {
    pub fn leaf(v: impl Into<Variable>) -> Self {
        Monomial::Leaf(v.into())
    }

    /// Builds `op(children..)`. Panics on an arity mismatch; parsers and
    /// other fallible entry points check arity before calling this.
    pub fn apply(op: &OpSymbol, children: Vec<Monomial>) -> Self {
        assert_eq!(op.arity(), children.len(), "arity mismatch for {op}");
        Monomial::Apply(op.clone(), children)
    }

    pub fn degree(&self) -> usize {
        match self {
            Monomial::Leaf(_) => 1,
            Monomial::Apply(_, ch) => ch.iter().map(Monomial::degree).sum(),
        }
    }

    /// Leaf variables read left to right.
    pub fn leaves(&self) -> Vec<Variable> {
        let mut out = Vec::with_capacity(8);
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<Variable>) {
        match self {
            Monomial::Leaf(v) => out.push(v.clone()),
            Monomial::Apply(_, ch) => ch.iter().for_each(|c| c.collect_leaves(out)),
        }
    }

    pub fn is_multilinear(&self) -> bool {
        let leaves = self.leaves();
        let set: BTreeSet<_> = leaves.iter().collect();
        set.len() == leaves.len()
    }

    pub fn ops(&self) -> BTreeSet<OpSymbol> {
        let mut out = BTreeSet::new();
        self.collect_ops(&mut out);
        out
    }

    fn collect_ops(&self, out: &mut BTreeSet<OpSymbol>) {
        if let Monomial::Apply(op, ch) = self {
            out.insert(op.clone());
            ch.iter().for_each(|c| c.collect_ops(out));
        }
    }

    /// The same tree with every leaf replaced by `f(leaf)`.
    pub fn map_leaves(&self, f: &mut impl FnMut(&Variable) -> Variable) -> Monomial {
        match self {
            Monomial::Leaf(v) => Monomial::Leaf(f(v)),
            Monomial::Apply(op, ch) => Monomial::Apply(op.clone(), ch.iter().map(|c| c.map_leaves(f)).collect()),
        }
    }

    /// The same tree with every operation symbol replaced by `f(op)`.
    pub fn map_ops(&self, f: &mut impl FnMut(&OpSymbol) -> OpSymbol) -> Monomial {
        match self {
            Monomial::Leaf(v) => Monomial::Leaf(v.clone()),
            Monomial::Apply(op, ch) => {
                let new_op = f(op);
                Monomial::Apply(new_op, ch.iter().map(|c| c.map_ops(f)).collect())
            }
        }
    }

    /// Replaces leaves positionally: the i-th leaf (left to right) becomes
    /// `letters[i]`. The shape is unchanged.
    pub fn with_leaves(&self, letters: &[Variable]) -> Monomial {
        let mut it = letters.iter();
        let out = self.map_leaves(&mut |_| it.next().expect("too few letters").clone());
        debug_assert!(it.next().is_none(), "too many letters");
        out
    }

    /// Compares only the shapes of two trees, ignoring variables.
    pub fn cmp_shape(&self, other: &Monomial) -> Ordering {
        match (self, other) {
            (Monomial::Leaf(_), Monomial::Leaf(_)) => Ordering::Equal,
            (Monomial::Leaf(_), Monomial::Apply(..)) => Ordering::Less,
            (Monomial::Apply(..), Monomial::Leaf(_)) => Ordering::Greater,
            (Monomial::Apply(o1, c1), Monomial::Apply(o2, c2)) => o1.cmp(o2).then_with(|| {
                for (a, b) in c1.iter().zip(c2) {
                    let ord = a.cmp_shape(b);
                    if ord != Ordering::Equal {
                        return ord;
                    }
                }
                c1.len().cmp(&c2.len())
            }),
        }
    }

    // Only meaningful when shapes are equal: walks both trees in lockstep.
    fn cmp_leaves_same_shape(&self, other: &Monomial) -> Ordering {
        match (self, other) {
            (Monomial::Leaf(a), Monomial::Leaf(b)) => a.cmp(b),
            (Monomial::Apply(_, c1), Monomial::Apply(_, c2)) => {
                for (a, b) in c1.iter().zip(c2) {
                    let ord = a.cmp_leaves_same_shape(b);
                    if ord != Ordering::Equal {
                        return ord;
                    }
                }
                Ordering::Equal
            }
            _ => unreachable!("shapes differ"),
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_shape(other).then_with(|| self.cmp_leaves_same_shape(other))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(a: &str, b: &str, c: &str) -> Monomial {
        let op = OpSymbol::new("t", 3);
        Monomial::apply(&op, vec![Monomial::leaf(a), Monomial::leaf(b), Monomial::leaf(c)])
    }

    #[test]
    fn order_is_shape_then_leaves() {
        let op = OpSymbol::new("t", 3);
        let inner_first = Monomial::apply(&op, vec![t("a", "b", "c"), Monomial::leaf("d"), Monomial::leaf("e")]);
        let inner_last = Monomial::apply(&op, vec![Monomial::leaf("a"), Monomial::leaf("b"), t("c", "d", "e")]);
        // leaf < apply in the first child decides the shape order
        assert!(inner_last < inner_first);
        assert!(t("a", "b", "c") < t("a", "c", "b"));
        assert!(Monomial::leaf("z") < t("a", "b", "c"));
    }

    #[test]
    fn leaves_and_relabel() {
        let m = t("c", "a", "b");
        assert_eq!(m.leaves(), crate::algebra::vars("cab"));
        assert_eq!(m.with_leaves(&crate::algebra::vars("xyz")).leaves(), crate::algebra::vars("xyz"));
        assert!(m.is_multilinear());
        assert!(!t("a", "a", "b").is_multilinear());
    }
}
