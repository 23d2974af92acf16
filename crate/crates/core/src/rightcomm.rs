//! The free right-commutative algebra, where `a(bc) = a(cb)`, in multilinear
//! degrees up to five. Every subtree hanging below a right child is then
//! fully commutative, so a word is a left spine carrying unordered trees.
//! Canonical words write each commutative product with the larger factor
//! first and equal factors in letter order, which is the least letter
//! sequence in the orbit of the word's association type.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use num_traits::Zero;

use crate::algebra::{format_infix_monomial, parse_infix, vars, write_coefficient, Identity, Monomial, OpSymbol, Polynomial, Variable};
use crate::consequence::{lifted_instances, Combination, SpanCertificate, SpanEngine, SpanOutcome};
use crate::error::{Error, Result};
use crate::linalg::Coordinates;
use crate::Rational;

pub const MAX_DEGREE: usize = 5;

/// The binary product used for all right-commutative work.
pub fn mul() -> OpSymbol {
    OpSymbol::new("mul", 2)
}

fn children(m: &Monomial) -> Option<(&Monomial, &Monomial)> {
    match m {
        Monomial::Apply(_, ch) if ch.len() == 2 => Some((&ch[0], &ch[1])),
        _ => None,
    }
}

/// Order on association types: degree, then size of the right factor,
/// then the left factor, then the right factor.
pub fn cmp_type(a: &Monomial, b: &Monomial) -> Ordering {
    match (children(a), children(b)) {
        (None, None) => Ordering::Equal,
        (None, Some(_)) => Ordering::Less,
        (Some(_), None) => Ordering::Greater,
        (Some((l1, r1)), Some((l2, r2))) => {
            a.degree().cmp(&b.degree()).then(r1.degree().cmp(&r2.degree())).then_with(|| cmp_type(l1, l2)).then_with(|| cmp_type(r1, r2))
        }
    }
}

// order of the two factors of a commutative product
fn factor_order(x: &Monomial, y: &Monomial) -> Ordering {
    y.degree().cmp(&x.degree()).then_with(|| cmp_type(x, y)).then_with(|| x.leaves().cmp(&y.leaves()))
}

fn canonical(m: &Monomial, commutative: bool) -> Monomial {
    match m {
        Monomial::Leaf(_) => m.clone(),
        Monomial::Apply(op, ch) => {
            let l = canonical(&ch[0], commutative);
            let r = canonical(&ch[1], true);
            if commutative && factor_order(&l, &r) == Ordering::Greater {
                Monomial::Apply(op.clone(), vec![r, l])
            } else {
                Monomial::Apply(op.clone(), vec![l, r])
            }
        }
    }
}

fn shape_of(m: &Monomial) -> Monomial {
    m.map_leaves(&mut |_| Variable::new("_"))
}

/// Canonical association types of one degree, in type order.
pub fn rc_types(degree: usize) -> Vec<Monomial> {
    let set: BTreeSet<ShapeKey> = crate::consequence::shapes(&[mul()], degree).iter().map(|t| ShapeKey(canonical(t, false))).collect();
    set.into_iter().map(|k| k.0).collect()
}

#[derive(PartialEq, Eq)]
struct ShapeKey(Monomial);

impl Ord for ShapeKey {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_type(&self.0, &other.0)
    }
}

impl PartialOrd for ShapeKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A canonical word of the free right-commutative algebra.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RCWord(Monomial);

impl RCWord {
    pub fn monomial(&self) -> &Monomial {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.degree()
    }

    pub fn letters(&self) -> Vec<Variable> {
        self.0.leaves()
    }

    /// 1-based position of the word's association type in [`rc_types`].
    pub fn type_index(&self) -> usize {
        let shape = shape_of(&self.0);
        rc_types(self.degree()).iter().position(|t| *t == shape).expect("canonical words have canonical shapes") + 1
    }
}

impl Ord for RCWord {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_type(&self.0, &other.0).then_with(|| self.0.leaves().cmp(&other.0.leaves()))
    }
}

impl PartialOrd for RCWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for RCWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_infix_monomial(&self.0))
    }
}

pub fn rc_straighten(m: &Monomial) -> Result<RCWord> {
    if m.degree() > MAX_DEGREE {
        return Err(Error::DegreeTooLarge(m.degree()));
    }
    if let Some(op) = m.ops().into_iter().find(|o| o.arity() != 2) {
        return Err(Error::WrongSignature { expected: "binary".into(), found: format!("{op:?}") });
    }
    Ok(RCWord(canonical(m, false)))
}

/// Linear combination of canonical words; iteration follows type order and
/// then letter order.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct RCPolynomial {
    terms: Combination<RCWord>,
}

impl RCPolynomial {
    pub fn zero() -> Self {
        Self::default()
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

    pub fn terms(&self) -> impl Iterator<Item = (&RCWord, &Rational)> {
        self.terms.iter()
    }

    pub fn combination(&self) -> &Combination<RCWord> {
        &self.terms
    }

    pub fn add_term(&mut self, w: RCWord, c: Rational) {
        let e = self.terms.entry(w.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add_scaled(&mut self, other: &RCPolynomial, c: &Rational) {
        for (w, k) in other.terms() {
            self.add_term(w.clone(), k * c);
        }
    }

    pub fn to_polynomial(&self) -> Polynomial {
        let mut p = Polynomial::zero();
        for (w, c) in &self.terms {
            p.add_term(w.0.clone(), c.clone());
        }
        p
    }
}

impl fmt::Display for RCPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut s = String::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            write_coefficient(&mut s, c, i == 0, "");
            s.push_str(&w.to_string());
        }
        f.write_str(&s)
    }
}

pub fn rc_expand(p: &Polynomial) -> Result<RCPolynomial> {
    let mut out = RCPolynomial::zero();
    for (m, c) in p.terms() {
        out.add_term(rc_straighten(m)?, c.clone());
    }
    Ok(out)
}

/// Replaces every ternary node `<x,y,z>` by `(x,z,y) = (xz)y - x(zy)`.
pub fn permuted_associator(p: &Polynomial) -> Result<Polynomial> {
    let mul = mul();
    let mut out = Polynomial::zero();
    for (m, c) in p.terms() {
        out += &associator_monomial(m, &mul)?.scale(c);
    }
    Ok(out)
}

fn associator_monomial(m: &Monomial, mul: &OpSymbol) -> Result<Polynomial> {
    match m {
        Monomial::Leaf(v) => Ok(Polynomial::var(v.clone())),
        Monomial::Apply(op, ch) if op.arity() == 3 => {
            let x = associator_monomial(&ch[0], mul)?;
            let y = associator_monomial(&ch[1], mul)?;
            let z = associator_monomial(&ch[2], mul)?;
            let xz = Polynomial::apply(mul, &[x.clone(), z.clone()]);
            let zy = Polynomial::apply(mul, &[z, y.clone()]);
            Ok(Polynomial::apply(mul, &[xz, y]) - Polynomial::apply(mul, &[x, zy]))
        }
        Monomial::Apply(op, _) => Err(Error::WrongSignature { expected: "ternary".into(), found: format!("{op:?}") }),
    }
}

pub fn permuted_associator_expand(id: &Identity) -> Result<RCPolynomial> {
    if !id.is_multilinear() {
        return Err(Error::NotMultilinear(id.name().to_string()));
    }
    rc_expand(&permuted_associator(id.lhs())?)
}

/// Linearized right Jordan identity.
pub fn rj() -> Identity {
    let p = parse_infix("(d(ab))c + (d(ac))b + (d(bc))a - (da)(bc) - (db)(ac) - (dc)(ab)", &mul()).unwrap();
    Identity::with_variables("RJ", p, vars("abcd"))
}

/// Linearized right Osborn identity.
pub fn ro() -> Identity {
    let p = parse_infix("((ac)b)d + ((ad)b)c - (ab)(cd) - (ac)(bd) - (ad)(bc) + a((cd)b)", &mul()).unwrap();
    Identity::with_variables("RO", p, vars("abcd"))
}

/// Every canonical multilinear word in the given letters.
pub fn canonical_words(letters: &[Variable]) -> Vec<RCWord> {
    let set: BTreeSet<RCWord> = rc_types(letters.len())
        .iter()
        .flat_map(|t| letters.iter().cloned().permutations(letters.len()).map(move |p| RCWord(canonical(&t.with_leaves(&p), false))))
        .collect();
    set.into_iter().collect()
}

/// Span of the lifted instances of RJ and RO in degree five, straightened.
pub struct JordanReducer {
    engine: SpanEngine<RCWord>,
    generators: Vec<(String, RCPolynomial)>,
}

impl JordanReducer {
    /// Generators whose labels appear in `preferred` are eliminated first,
    /// in the listed order, so certificates favour them.
    pub fn new(preferred: &[&str]) -> Result<Self> {
        let letters = vars("abcde");
        let mut all = Vec::new();
        for id in [rj(), ro()] {
            for inst in lifted_instances(&id, 5, &letters, &mul())? {
                all.push((inst.label, rc_expand(&inst.poly)?));
            }
        }
        let rank = |label: &str| preferred.iter().position(|p| *p == label).unwrap_or(preferred.len());
        all.sort_by_key(|(label, _)| rank(label));
        let mut engine = SpanEngine::new(Coordinates::from_keys(canonical_words(&letters)));
        for (label, p) in &all {
            engine.add(label.clone(), p.combination())?;
        }
        Ok(JordanReducer { engine, generators: all })
    }

    pub fn rank(&self) -> usize {
        self.engine.rank()
    }

    pub fn generators(&self) -> &[(String, RCPolynomial)] {
        &self.generators
    }

    pub fn reduces(&self, target: &RCPolynomial) -> Result<SpanOutcome<RCWord>> {
        self.engine.query(target.combination())
    }

    pub fn expand_certificate(&self, cert: &SpanCertificate) -> RCPolynomial {
        let mut out = RCPolynomial::zero();
        for t in &cert.terms {
            out.add_scaled(&self.generators[t.index].1, &t.coeff);
        }
        out
    }
}

pub fn jordan_reduces(target: &RCPolynomial) -> Result<SpanOutcome<RCWord>> {
    JordanReducer::new(&[])?.reduces(target)
}
