//! Commutative polynomials over the rationals in named unknowns, used for
//! symbolic structure constants and the equations they must satisfy.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::Rational;

/// Sorted `(unknown, exponent)` pairs with positive exponents.
pub type Mono = Vec<(Arc<str>, u32)>;

#[derive(Clone, PartialEq, Eq, Debug, Default, Hash, PartialOrd, Ord)]
pub struct MPoly {
    terms: BTreeMap<Mono, Rational>,
}

fn mono_mul(a: &Mono, b: &Mono) -> Mono {
    let mut out: BTreeMap<Arc<str>, u32> = a.iter().cloned().collect();
    for (v, e) in b {
        *out.entry(v.clone()).or_insert(0) += e;
    }
    out.into_iter().collect()
}

fn mono_degree(m: &Mono) -> u32 {
    m.iter().map(|(_, e)| e).sum()
}

impl MPoly {
    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![(Arc::from(name), 1)], Rational::one());
        MPoly { terms }
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = MPoly::default();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: Mono, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = MPoly::default();
        for (m, k) in &self.terms {
            out.add_term(m.clone(), k * c);
        }
        out
    }

    /// The constant value, if the polynomial has no unknowns.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(mono_degree).max()
    }

    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|m| mono_degree(m) == d)
    }

    pub fn unknowns(&self) -> Vec<Arc<str>> {
        let mut v: Vec<Arc<str>> = self.terms.keys().flat_map(|m| m.iter().map(|(x, _)| x.clone())).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Replaces unknowns by polynomials; unknowns missing from `values` stay.
    pub fn substitute(&self, values: &BTreeMap<String, MPoly>) -> MPoly {
        let mut out = MPoly::default();
        for (m, c) in &self.terms {
            let mut term = MPoly::constant(c.clone());
            for (v, e) in m {
                let base = values.get(v.as_ref()).cloned().unwrap_or_else(|| MPoly::var(v));
                for _ in 0..*e {
                    term = &term * &base;
                }
            }
            out = out + term;
        }
        out
    }

    /// Evaluates at rational values; every unknown must be assigned.
    pub fn eval(&self, values: &BTreeMap<String, Rational>) -> Option<Rational> {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m {
                let x = values.get(v.as_ref())?;
                for _ in 0..*e {
                    t *= x;
                }
            }
            total += t;
        }
        Some(total)
    }

    /// Scales to integer coefficients with gcd one and a positive first term.
    pub fn primitive(&self) -> MPoly {
        let Some(first) = self.terms.values().next() else {
            return MPoly::default();
        };
        let den = self.terms.values().fold(num_bigint::BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
        let num =
            self.terms.values().fold(num_bigint::BigInt::zero(), |acc, c| num_integer::Integer::gcd(&acc, &(c.numer() * &den / c.denom())));
        let mut factor = Rational::new(den, num);
        if first.is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    // terms with positive coefficients first, then higher degree first
    fn display_order(&self) -> Vec<(&Mono, &Rational)> {
        let mut v: Vec<(&Mono, &Rational)> = self.terms.iter().collect();
        v.sort_by(|(m1, c1), (m2, c2)| {
            c1.is_negative().cmp(&c2.is_negative()).then(mono_degree(m2).cmp(&mono_degree(m1))).then(m1.cmp(m2))
        });
        v
    }

    /// Text usable directly in front of a basis name: `""`, `"-"`, `"2"`,
    /// `"ζ"`, `"(1-ζ)"`.
    pub fn prefix(&self) -> String {
        if let Some(c) = self.as_constant() {
            return rational_prefix(&c);
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            return format!("{}{}", rational_prefix(c), mono_text(m, ""));
        }
        format!("({})", self.render(""))
    }

    fn render(&self, times: &str) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.display_order().into_iter().enumerate() {
            let neg = c.is_negative();
            if i > 0 {
                s.push(if neg { '-' } else { '+' });
            } else if neg {
                s.push('-');
            }
            let mag = c.abs();
            if m.is_empty() {
                s.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    s.push_str(&mag.to_string());
                    s.push_str(times);
                }
                s.push_str(&mono_text(m, times));
            }
        }
        s
    }
}

/// Prefix for a rational coefficient in front of a name.
pub fn rational_prefix(c: &Rational) -> String {
    if c.is_one() {
        String::new()
    } else if (-c).is_one() {
        "-".into()
    } else if c.is_integer() {
        c.to_string()
    } else {
        format!("({c})")
    }
}

fn mono_text(m: &Mono, times: &str) -> String {
    let parts: Vec<String> = m.iter().map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") }).collect();
    parts.join(if times.is_empty() { "" } else { times })
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("*"))
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Add for MPoly {
    type Output = MPoly;
    fn add(self, rhs: MPoly) -> MPoly {
        &self + &rhs
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self + &-rhs
    }
}

impl Sub for MPoly {
    type Output = MPoly;
    fn sub(self, rhs: MPoly) -> MPoly {
        &self - &rhs
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&-Rational::one())
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut out = MPoly::default();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(mono_mul(m1, m2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for MPoly {
    type Output = MPoly;
    fn mul(self, rhs: MPoly) -> MPoly {
        &self * &rhs
    }
}

impl Zero for MPoly {
    fn zero() -> Self {
        MPoly::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for MPoly {
    fn one() -> Self {
        MPoly::constant(Rational::one())
    }
}

impl From<Rational> for MPoly {
    fn from(c: Rational) -> Self {
        MPoly::constant(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn ring_laws_on_samples() {
        let x = MPoly::var("x");
        let y = MPoly::var("y");
        let p = &x + &y;
        let q = &x - &y;
        assert_eq!(&p * &q, &(&x * &x) - &(&y * &y));
        assert!((&p - &p).is_zero());
        assert_eq!((&p * &q).degree(), Some(2));
        assert!((&p * &q).is_homogeneous(2));
    }

    #[test]
    fn prefixes() {
        let z = MPoly::var("ζ");
        let one = MPoly::one();
        assert_eq!(z.prefix(), "ζ");
        assert_eq!((&one - &z).prefix(), "(1-ζ)");
        assert_eq!((&z - &one).prefix(), "(ζ-1)");
        assert_eq!((-&z).prefix(), "-ζ");
        assert_eq!(MPoly::constant(rat(-2, 1)).prefix(), "-2");
        assert_eq!(one.prefix(), "");
    }

    #[test]
    fn evaluation_and_substitution() {
        let z = MPoly::var("z");
        let p = &(&z * &z) - &MPoly::constant(rat(1, 1));
        let mut at = BTreeMap::new();
        at.insert("z".to_string(), rat(3, 1));
        assert_eq!(p.eval(&at), Some(rat(8, 1)));
        let mut sub = BTreeMap::new();
        sub.insert("z".to_string(), MPoly::var("w") + MPoly::one());
        let w = MPoly::var("w");
        assert_eq!(p.substitute(&sub), &(&w * &w) + &(&w + &w));
    }

    #[test]
    fn primitive_form() {
        let p = MPoly::var("a").scale(&rat(-2, 3)) + MPoly::var("b").scale(&rat(4, 3));
        assert_eq!(p.primitive().to_string(), "a-2*b");
    }
}
