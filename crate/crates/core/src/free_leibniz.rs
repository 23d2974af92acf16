//! The free (right) Leibniz algebra on a set of letters. A word
//! `v1 v2 ... vm` stands for the left-normalized product
//! `((v1 v2) ...) vm`; these words form a basis.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;

use crate::algebra::{write_coefficient, Identity, Monomial, Polynomial, Variable};
use crate::error::{Error, Result};
use crate::Rational;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TensorWord(Vec<Variable>);

impl TensorWord {
    pub fn new(letters: Vec<Variable>) -> Self {
        assert!(!letters.is_empty(), "words are nonempty");
        TensorWord(letters)
    }

    pub fn letter(v: Variable) -> Self {
        TensorWord(vec![v])
    }

    pub fn letters(&self) -> &[Variable] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn appended(&self, v: &Variable) -> TensorWord {
        let mut l = self.0.clone();
        l.push(v.clone());
        TensorWord(l)
    }
}

impl fmt::Display for TensorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let short = self.0.iter().all(|v| v.name().chars().count() == 1);
        let sep = if short { "" } else { " " };
        let names: Vec<&str> = self.0.iter().map(|v| v.name()).collect();
        f.write_str(&names.join(sep))
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TensorPolynomial {
    terms: BTreeMap<TensorWord, Rational>,
}

impl TensorPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn word(w: TensorWord) -> Self {
        let mut p = Self::zero();
        p.add_term(w, Rational::from_integer(1.into()));
        p
    }

    pub fn letter(v: Variable) -> Self {
        Self::word(TensorWord::letter(v))
    }

    /// Parses juxtaposed single-letter words like `abcd - abdc`.
    pub fn from_words(spec: &[(i64, &str)]) -> Self {
        let mut p = Self::zero();
        for (c, w) in spec {
            let letters = w.chars().map(|ch| Variable::new(&ch.to_string())).collect();
            p.add_term(TensorWord::new(letters), Rational::from_integer((*c).into()));
        }
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

    pub fn terms(&self) -> impl Iterator<Item = (&TensorWord, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &TensorWord) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, w: TensorWord, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        TensorPolynomial { terms: self.terms.iter().map(|(w, k)| (w.clone(), k * c)).collect() }
    }

    pub fn into_terms(self) -> BTreeMap<TensorWord, Rational> {
        self.terms
    }

    fn letters(&self) -> Vec<Variable> {
        let mut v: Vec<Variable> = self.terms.keys().flat_map(|w| w.0.iter().cloned()).collect();
        v.sort();
        v.dedup();
        v
    }

    fn append(&self, v: &Variable) -> Self {
        TensorPolynomial { terms: self.terms.iter().map(|(w, c)| (w.appended(v), c.clone())).collect() }
    }
}

impl Add for &TensorPolynomial {
    type Output = TensorPolynomial;
    fn add(self, rhs: &TensorPolynomial) -> TensorPolynomial {
        let mut out = self.clone();
        for (w, c) in rhs.terms() {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Sub for &TensorPolynomial {
    type Output = TensorPolynomial;
    fn sub(self, rhs: &TensorPolynomial) -> TensorPolynomial {
        self + &-rhs
    }
}

impl Add for TensorPolynomial {
    type Output = TensorPolynomial;
    fn add(self, rhs: TensorPolynomial) -> TensorPolynomial {
        &self + &rhs
    }
}

impl Sub for TensorPolynomial {
    type Output = TensorPolynomial;
    fn sub(self, rhs: TensorPolynomial) -> TensorPolynomial {
        &self - &rhs
    }
}

impl Neg for &TensorPolynomial {
    type Output = TensorPolynomial;
    fn neg(self) -> TensorPolynomial {
        self.scale(&Rational::from_integer((-1).into()))
    }
}

impl fmt::Display for TensorPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut s = String::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            write_coefficient(&mut s, c, i == 0, "*");
            s.push_str(&w.to_string());
        }
        f.write_str(&s)
    }
}

/// Product of two words: appending for a single letter on the right,
/// otherwise `w (Y z) = (w Y) z - (w z) Y`.
fn word_product(w: &TensorWord, v: &TensorWord) -> TensorPolynomial {
    let (z, y) = v.0.split_last().unwrap();
    if y.is_empty() {
        return TensorPolynomial::word(w.appended(z));
    }
    let y = TensorWord(y.to_vec());
    let first = word_product(w, &y).append(z);
    let second = word_product(&w.appended(z), &y);
    first - second
}

/// The Leibniz product, extended bilinearly.
pub fn free_product(u: &TensorPolynomial, v: &TensorPolynomial) -> TensorPolynomial {
    let mut out = TensorPolynomial::zero();
    for (a, ca) in u.terms() {
        for (b, cb) in v.terms() {
            let c = ca * cb;
            for (w, k) in word_product(a, b).terms {
                out.add_term(w, k * &c);
            }
        }
    }
    out
}

/// As [`free_product`], rejecting factors that share a letter.
pub fn free_product_checked(u: &TensorPolynomial, v: &TensorPolynomial) -> Result<TensorPolynomial> {
    let lv = v.letters();
    if let Some(x) = u.letters().into_iter().find(|x| lv.binary_search(x).is_ok()) {
        return Err(Error::LetterClash(x.to_string()));
    }
    Ok(free_product(u, v))
}

/// Expands a tree whose binary nodes are Leibniz products and whose ternary
/// nodes are iterated products `<x,y,z> = (xy)z`.
pub fn expand_monomial(m: &Monomial) -> Result<TensorPolynomial> {
    match m {
        Monomial::Leaf(v) => Ok(TensorPolynomial::letter(v.clone())),
        Monomial::Apply(op, ch) => {
            let args = ch.iter().map(expand_monomial).collect::<Result<Vec<_>>>()?;
            match args.len() {
                2 => Ok(free_product(&args[0], &args[1])),
                3 => Ok(free_product(&free_product(&args[0], &args[1]), &args[2])),
                _ => Err(Error::WrongSignature { expected: "binary or ternary".into(), found: format!("{op:?}") }),
            }
        }
    }
}

pub fn expand(p: &Polynomial) -> Result<TensorPolynomial> {
    let mut out = TensorPolynomial::zero();
    for (m, c) in p.terms() {
        out = out + expand_monomial(m)?.scale(c);
    }
    Ok(out)
}

fn require_arity(p: &Polynomial, arity: usize) -> Result<()> {
    match p.ops().into_iter().find(|o| o.arity() != arity) {
        Some(o) => Err(Error::WrongSignature { expected: format!("arity {arity}"), found: format!("{o:?}") }),
        None => Ok(()),
    }
}

pub fn expand_binary_tree(p: &Polynomial) -> Result<TensorPolynomial> {
    require_arity(p, 2)?;
    expand(p)
}

pub fn expand_ternary(p: &Polynomial) -> Result<TensorPolynomial> {
    require_arity(p, 3)?;
    expand(p)
}

/// Whether the iterated bracket of the free Leibniz algebra satisfies `id`.
pub fn holds_in_free(id: &Identity) -> Result<bool> {
    if !id.is_multilinear() {
        return Err(Error::NotMultilinear(id.name().to_string()));
    }
    Ok(expand_ternary(id.lhs())?.is_zero())
}
