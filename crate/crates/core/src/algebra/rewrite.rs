use std::collections::BTreeMap;

use super::monomial::Monomial;
use super::polynomial::Polynomial;
use super::substitute::{relabel, substitute};
use super::symbol::{OpSymbol, Variable};
use crate::error::{Error, Result};

/// `op(x1,..,xn) -> replacement(x1,..,xn)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pattern: OpSymbol,
    slots: Vec<Variable>,
    replacement: Polynomial,
}

impl RewriteRule {
    pub fn new(pattern: OpSymbol, slots: Vec<Variable>, replacement: Polynomial) -> Result<Self> {
        if slots.len() != pattern.arity() {
            return Err(Error::Arity { op: pattern.to_string(), expected: pattern.arity(), got: slots.len() });
        }
        let mut sorted = slots.clone();
        sorted.sort();
        sorted.dedup();
        let used: Vec<_> = replacement.variables().into_iter().collect();
        if sorted.len() != slots.len() || !replacement.is_multilinear() || (!replacement.is_zero() && used != sorted) {
            return Err(Error::NotMultilinear(format!("rule for {pattern}")));
        }
        Ok(RewriteRule { pattern, slots, replacement })
    }

    /// Reads a rule from `lhs = rhs` where `lhs` is a single operation
    /// applied to distinct variables.
    pub fn from_equation(lhs: &Monomial, rhs: Polynomial) -> Result<Self> {
        match lhs {
            Monomial::Apply(op, children) => {
                let slots = children
                    .iter()
                    .map(|c| match c {
                        Monomial::Leaf(v) => Ok(v.clone()),
                        other => Err(Error::NotMultilinear(format!("rule pattern argument {other:?}"))),
                    })
                    .collect::<Result<Vec<_>>>()?;
                RewriteRule::new(op.clone(), slots, rhs)
            }
            Monomial::Leaf(v) => Err(Error::NotMultilinear(format!("rule pattern {v}"))),
        }
    }

    pub fn pattern(&self) -> &OpSymbol {
        &self.pattern
    }

    pub fn replacement(&self) -> &Polynomial {
        &self.replacement
    }

    fn instantiate(&self, args: &[Polynomial]) -> Result<Polynomial> {
        let mut asg = relabel(&self.slots, &self.slots);
        for (slot, arg) in self.slots.iter().zip(args) {
            asg.insert(slot.clone(), arg.clone());
        }
        substitute(&self.replacement, &asg)
    }
}

/// Rewrites until no pattern symbol of `rules` remains in `p`.
pub fn apply_rules(p: &Polynomial, rules: &[RewriteRule]) -> Result<Polynomial> {
    if rules.is_empty() {
        return Ok(p.clone());
    }
    let by_op: BTreeMap<&OpSymbol, &RewriteRule> = rules.iter().map(|r| (&r.pattern, r)).collect();
    let max_degree = p.degrees().into_iter().max().unwrap_or(0);
    let budget = (max_degree + 2) * (rules.len() + 1);
    let mut current = p.clone();
    for _ in 0..budget {
        if !current.ops().iter().any(|o| by_op.contains_key(o)) {
            return Ok(current);
        }
        current = current.terms().map(|(m, c)| rewrite_once(m, &by_op).map(|q| q.scale(c))).sum::<Result<Polynomial>>()?;
    }
    if current.ops().iter().any(|o| by_op.contains_key(o)) {
        Err(Error::CyclicRules(budget))
    } else {
        Ok(current)
    }
}

fn rewrite_once(m: &Monomial, rules: &BTreeMap<&OpSymbol, &RewriteRule>) -> Result<Polynomial> {
    match m {
        Monomial::Leaf(_) => Ok(Polynomial::monomial(m.clone())),
        Monomial::Apply(op, children) => {
            let args = children.iter().map(|c| rewrite_once(c, rules)).collect::<Result<Vec<_>>>()?;
            match rules.get(op) {
                Some(rule) => rule.instantiate(&args),
                None => Ok(Polynomial::apply(op, &args)),
            }
        }
    }
}
