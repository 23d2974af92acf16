use std::collections::{BTreeMap, BTreeSet};

use super::monomial::Monomial;
use super::polynomial::Polynomial;
use super::symbol::Variable;
use crate::error::{Error, Result};

pub type Assignment = BTreeMap<Variable, Polynomial>;

/// Builds an assignment from parallel slices, e.g. `relabel(&[a,b], &[b,a])`.
pub fn relabel(from: &[Variable], to: &[Variable]) -> Assignment {
    assert_eq!(from.len(), to.len());
    from.iter().cloned().zip(to.iter().map(|v| Polynomial::var(v.clone()))).collect()
}

/// Plugs polynomials into the variables of `p` and expands by
/// distributivity. Assignment values must be multilinear with pairwise
/// disjoint variable sets, so a multilinear `p` stays multilinear.
pub fn substitute(p: &Polynomial, assignment: &Assignment) -> Result<Polynomial> {
    let mut seen: BTreeSet<Variable> = BTreeSet::new();
    for v in p.variables() {
        let value = assignment.get(&v).ok_or_else(|| Error::UnassignedVariable(v.to_string()))?;
        for w in value.variables() {
            if !seen.insert(w.clone()) {
                return Err(Error::VariableClash(w.to_string()));
            }
        }
    }
    specialize(p, assignment)
}

/// Like [`substitute`] but allows repeated variables in the values (for
/// instance setting `b = c`). The result may fail to be multilinear.
pub fn specialize(p: &Polynomial, assignment: &Assignment) -> Result<Polynomial> {
    let mut out = Polynomial::zero();
    for (m, c) in p.terms() {
        out += &substitute_monomial(m, assignment)?.scale(c);
    }
    Ok(out)
}

fn substitute_monomial(m: &Monomial, assignment: &Assignment) -> Result<Polynomial> {
    match m {
        Monomial::Leaf(v) => assignment.get(v).cloned().ok_or_else(|| Error::UnassignedVariable(v.to_string())),
        Monomial::Apply(op, children) => {
            let args = children.iter().map(|c| substitute_monomial(c, assignment)).collect::<Result<Vec<_>>>()?;
            Ok(Polynomial::apply(op, &args))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_infix, vars, OpSymbol};

    fn mul() -> OpSymbol {
        OpSymbol::new("mul", 2)
    }

    fn inf(s: &str) -> Polynomial {
        parse_infix(s, &mul()).unwrap()
    }

    #[test]
    fn identity_assignment_is_noop() {
        let op = OpSymbol::new("t", 3);
        let p = Polynomial::apply(&op, &vars("abc").into_iter().map(Polynomial::var).collect::<Vec<_>>());
        let v = vars("abc");
        assert_eq!(substitute(&p, &relabel(&v, &v)).unwrap(), p);
    }

    #[test]
    fn plug_in_product() {
        let mut asg = Assignment::new();
        asg.insert("a".into(), Polynomial::var("a"));
        asg.insert("b".into(), inf("cd"));
        assert_eq!(substitute(&inf("ab"), &asg).unwrap(), inf("a(cd)"));
    }

    #[test]
    fn errors() {
        let mut asg = Assignment::new();
        asg.insert("a".into(), Polynomial::var("c"));
        assert!(matches!(substitute(&inf("ab"), &asg), Err(Error::UnassignedVariable(_))));
        asg.insert("b".into(), inf("cd"));
        assert!(matches!(substitute(&inf("ab"), &asg), Err(Error::VariableClash(_))));
        assert_eq!(specialize(&inf("ab"), &asg).unwrap(), inf("c(cd)"));
    }
}
