use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::symbol::{OpSymbol, Variable};
use crate::Rational;

/// A finite linear combination of monomials with exact rational
/// coefficients. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(Rational::one(), m)
    }

    pub fn var(v: impl Into<Variable>) -> Self {
        Self::monomial(Monomial::leaf(v))
    }

    pub fn term(coeff: Rational, m: Monomial) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(m, coeff);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect() }
    }

    /// Degrees of the monomials that occur.
    pub fn degrees(&self) -> BTreeSet<usize> {
        self.terms.keys().map(Monomial::degree).collect()
    }

    /// The common degree of all monomials, if homogeneous and nonzero.
    pub fn degree(&self) -> Option<usize> {
        let d = self.degrees();
        if d.len() == 1 {
            d.into_iter().next()
        } else {
            None
        }
    }

    pub fn variables(&self) -> BTreeSet<Variable> {
        self.terms.keys().flat_map(|m| m.leaves()).collect()
    }

    pub fn ops(&self) -> BTreeSet<OpSymbol> {
        self.terms.keys().flat_map(|m| m.ops()).collect()
    }

    /// True if every monomial uses each of the polynomial's variables
    /// exactly once.
    pub fn is_multilinear(&self) -> bool {
        let all = self.variables();
        self.terms.keys().all(|m| {
            let leaves = m.leaves();
            leaves.len() == all.len() && leaves.iter().collect::<BTreeSet<_>>().len() == all.len()
        })
    }

    /// `op(args..)` extended multilinearly over the argument polynomials.
    pub fn apply(op: &OpSymbol, args: &[Polynomial]) -> Polynomial {
        assert_eq!(op.arity(), args.len(), "arity mismatch for {op}");
        let mut acc: Vec<(Vec<Monomial>, Rational)> = vec![(Vec::new(), Rational::one())];
        for arg in args {
            let mut next = Vec::with_capacity(acc.len() * arg.len());
            for (ms, c) in &acc {
                for (m, k) in arg.terms() {
                    let mut ms = ms.clone();
                    ms.push(m.clone());
                    next.push((ms, c * k));
                }
            }
            acc = next;
        }
        let mut out = Polynomial::zero();
        for (children, c) in acc {
            out.add_term(Monomial::apply(op, children), c);
        }
        out
    }

    pub fn map_monomials(&self, mut f: impl FnMut(&Monomial) -> Monomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            out.add_term(f(m), c.clone());
        }
        out
    }

    /// Linear extension of a monomial-to-polynomial map.
    pub fn flat_map(&self, mut f: impl FnMut(&Monomial) -> Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            out += &f(m).scale(c);
        }
        out
    }

    pub fn rename_vars(&self, map: &BTreeMap<Variable, Variable>) -> Polynomial {
        self.map_monomials(|m| m.map_leaves(&mut |v| map.get(v).cloned().unwrap_or_else(|| v.clone())))
    }

    pub fn rename_ops(&self, map: &BTreeMap<OpSymbol, OpSymbol>) -> Polynomial {
        self.map_monomials(|m| m.map_ops(&mut |o| map.get(o).cloned().unwrap_or_else(|| o.clone())))
    }

    /// Clears denominators, divides by the gcd of the integer coefficients
    /// and makes the leading (smallest) monomial's coefficient positive.
    pub fn primitive(&self) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let lcm = self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.terms.values().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, n| acc.gcd(n));
        if ints[0].is_negative() {
            g = -g;
        }
        Polynomial { terms: self.terms.keys().zip(ints).map(|(m, n)| (m.clone(), Rational::from_integer(n / &g))).collect() }
    }

    /// True if `self = λ·other` for some nonzero rational λ.
    pub fn proportional(&self, other: &Polynomial) -> bool {
        self.is_zero() == other.is_zero() && self.primitive() == other.primitive()
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        self += &rhs;
        self
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(mut self, rhs: Polynomial) -> Polynomial {
        self -= &rhs;
        self
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl Mul<&Polynomial> for &Rational {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        rhs.scale(self)
    }
}

impl Mul<Polynomial> for i64 {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        rhs.scale(&Rational::from_integer(self.into()))
    }
}

impl From<Monomial> for Polynomial {
    fn from(m: Monomial) -> Self {
        Polynomial::monomial(m)
    }
}

impl std::iter::Sum for Polynomial {
    fn sum<I: Iterator<Item = Polynomial>>(iter: I) -> Self {
        iter.fold(Polynomial::zero(), |acc, p| acc + p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn cancellation_removes_terms() {
        let p = Polynomial::var("a") + Polynomial::var("b");
        let z = &p + &(-&p);
        assert!(z.is_zero());
        assert_eq!(z.len(), 0);
    }

    #[test]
    fn apply_is_multilinear() {
        let op = OpSymbol::new("m", 2);
        let s = Polynomial::var("a") + Polynomial::var("b");
        let p = Polynomial::apply(&op, &[s.clone(), s]);
        assert_eq!(p.len(), 4);
        assert_eq!(p.degree(), Some(2));
        assert!(!p.is_multilinear());
    }

    #[test]
    fn primitive_clears_denominators_and_sign() {
        let p = Polynomial::term(q(-1, 2), Monomial::leaf("a")) + Polynomial::term(q(3, 4), Monomial::leaf("b"));
        let prim = p.primitive();
        assert_eq!(prim.coeff(&Monomial::leaf("a")), q(2, 1));
        assert_eq!(prim.coeff(&Monomial::leaf("b")), q(-3, 1));
        assert!(p.proportional(&prim));
    }
}
