//! Consequences of multilinear identities at a fixed degree: ambient bases,
//! relabeled and lifted instances, span membership with certificates, and
//! kernels of expansion maps.

use std::collections::{BTreeMap, HashMap};
use std::fmt::{self, Display};

use itertools::Itertools;
use num_traits::Zero;

use crate::algebra::{format_infix_monomial, relabel, substitute, Identity, Monomial, OpSymbol, Polynomial, Variable};
use crate::error::{Error, Result};
use crate::linalg::{kernel, Coordinates, Echelon, SparseVec};
use crate::Rational;

/// Finite linear combination over an arbitrary key type.
pub type Combination<K> = BTreeMap<K, Rational>;

pub fn combination_of(p: &Polynomial) -> Combination<Monomial> {
    p.terms().map(|(m, c)| (m.clone(), c.clone())).collect()
}

pub fn polynomial_of(c: &Combination<Monomial>) -> Polynomial {
    let mut p = Polynomial::zero();
    for (m, k) in c {
        p.add_term(m.clone(), k.clone());
    }
    p
}

/// All multilinear monomials of one degree in a signature, in monomial
/// order.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    signature: Vec<OpSymbol>,
    degree: usize,
    vars: Vec<Variable>,
    shapes: usize,
    coords: Coordinates<Monomial>,
}

impl MonomialBasis {
    pub fn signature(&self) -> &[OpSymbol] {
        &self.signature
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }

    pub fn shape_count(&self) -> usize {
        self.shapes
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        self.coords.keys()
    }

    pub fn coordinates(&self) -> &Coordinates<Monomial> {
        &self.coords
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.coords.get(m)
    }

    pub fn vector(&self, p: &Polynomial) -> Result<SparseVec> {
        to_vector(&self.coords, &combination_of(p))
    }

    pub fn polynomial(&self, v: &SparseVec) -> Polynomial {
        let mut p = Polynomial::zero();
        for (i, c) in v {
            p.add_term(self.coords.key(*i).clone(), c.clone());
        }
        p
    }
}

/// Every tree with `leaves` leaves over the signature, leaves named `_`.
pub fn shapes(signature: &[OpSymbol], leaves: usize) -> Vec<Monomial> {
    let mut memo: HashMap<usize, Vec<Monomial>> = HashMap::new();
    shapes_rec(signature, leaves, &mut memo)
}

fn shapes_rec(sig: &[OpSymbol], n: usize, memo: &mut HashMap<usize, Vec<Monomial>>) -> Vec<Monomial> {
    if let Some(s) = memo.get(&n) {
        return s.clone();
    }
    let mut out = Vec::new();
    if n == 1 {
        out.push(Monomial::leaf("_"));
    }
    for op in sig {
        for parts in compositions(n, op.arity()) {
            let options: Vec<Vec<Monomial>> = parts.iter().map(|&p| shapes_rec(sig, p, memo)).collect();
            for children in options.into_iter().multi_cartesian_product() {
                out.push(Monomial::apply(op, children));
            }
        }
    }
    out.sort();
    memo.insert(n, out.clone());
    out
}

fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    if n < k {
        return vec![];
    }
    let mut out = Vec::new();
    for first in 1..=n - (k - 1) {
        for mut rest in compositions(n - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub fn enumerate_basis(signature: &[OpSymbol], degree: usize, vars: &[Variable]) -> Result<MonomialBasis> {
    if vars.len() != degree {
        return Err(Error::DegreeMismatch { expected: degree, got: vars.len() });
    }
    let trees = shapes(signature, degree);
    if trees.is_empty() {
        return Err(Error::DegreeNotExpressible { degree, signature: signature.iter().map(|o| format!("{o:?}")).join(", ") });
    }
    let mut monomials: Vec<Monomial> =
        trees.iter().flat_map(|t| vars.iter().cloned().permutations(degree).map(move |p| t.with_leaves(&p))).collect();
    monomials.sort();
    Ok(MonomialBasis {
        signature: signature.to_vec(),
        degree,
        vars: vars.to_vec(),
        shapes: trees.len(),
        coords: Coordinates::from_keys(monomials),
    })
}

/// A labeled polynomial consequence of an identity, e.g. `RJ(ce,b,d,a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub label: String,
    pub poly: Polynomial,
}

impl Instance {
    pub fn new(label: impl Into<String>, poly: Polynomial) -> Self {
        Instance { label: label.into(), poly }
    }

    pub fn of(id: &Identity) -> Self {
        Instance::new(id.name(), id.lhs().clone())
    }
}

fn argument_label(p: &Polynomial) -> String {
    match p.terms().next() {
        Some((m, _)) if p.len() == 1 => match m {
            Monomial::Leaf(v) => v.to_string(),
            _ => format_infix_monomial(m),
        },
        _ => format!("({p})"),
    }
}

fn instance_label(id: &Identity, args: &[Polynomial]) -> String {
    format!("{}({})", id.name(), args.iter().map(argument_label).join(","))
}

/// One instance per bijective relabeling of the identity's variables.
pub fn same_degree_instances(id: &Identity, vars: &[Variable]) -> Result<Vec<Instance>> {
    let d = id.variables().len();
    if d != vars.len() {
        return Err(Error::DegreeMismatch { expected: vars.len(), got: d });
    }
    vars.iter()
        .cloned()
        .permutations(d)
        .map(|perm| {
            let poly = substitute(id.lhs(), &relabel(id.variables(), &perm))?;
            let args: Vec<Polynomial> = perm.iter().cloned().map(Polynomial::var).collect();
            Ok(Instance::new(instance_label(id, &args), poly))
        })
        .collect()
}

/// Instances one degree up for a binary operation `op`: a product `xy` of
/// two letters plugged into one variable, or the whole instance multiplied
/// by a letter on the left or on the right.
pub fn lifted_instances(id: &Identity, target_degree: usize, vars: &[Variable], op: &OpSymbol) -> Result<Vec<Instance>> {
    if op.arity() != 2 {
        return Err(Error::WrongSignature { expected: "binary".into(), found: format!("{op:?}") });
    }
    let d = id.variables().len();
    if target_degree <= d {
        return Err(Error::DegreeMismatch { expected: d + 1, got: target_degree });
    }
    if target_degree != d + 1 {
        return Err(Error::UnsupportedLift(target_degree - d));
    }
    if vars.len() != target_degree {
        return Err(Error::DegreeMismatch { expected: target_degree, got: vars.len() });
    }
    let mut out = Vec::new();
    let product =
        |x: &Variable, y: &Variable| Polynomial::monomial(Monomial::apply(op, vec![Monomial::Leaf(x.clone()), Monomial::Leaf(y.clone())]));
    for slot in 0..d {
        for pair in vars.iter().permutations(2) {
            let rest: Vec<Variable> = vars.iter().filter(|v| !pair.contains(v)).cloned().collect();
            for perm in rest.iter().cloned().permutations(d - 1) {
                let mut args: Vec<Polynomial> = perm.into_iter().map(Polynomial::var).collect();
                args.insert(slot, product(pair[0], pair[1]));
                let asg = id.variables().iter().cloned().zip(args.iter().cloned()).collect();
                out.push(Instance::new(instance_label(id, &args), substitute(id.lhs(), &asg)?));
            }
        }
    }
    for perm in vars.iter().cloned().permutations(d) {
        let extra = vars.iter().find(|v| !perm.contains(v)).unwrap().clone();
        let inst = substitute(id.lhs(), &relabel(id.variables(), &perm))?;
        let args: Vec<Polynomial> = perm.iter().cloned().map(Polynomial::var).collect();
        let label = instance_label(id, &args);
        let x = Polynomial::var(extra.clone());
        out.push(Instance::new(format!("{extra}{label}"), Polynomial::apply(op, &[x.clone(), inst.clone()])));
        out.push(Instance::new(format!("{label}{extra}"), Polynomial::apply(op, &[inst, x])));
    }
    Ok(out)
}

/// Rational combination of labeled generators.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpanCertificate {
    pub terms: Vec<CertificateTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateTerm {
    pub index: usize,
    pub label: String,
    pub coeff: Rational,
}

impl SpanCertificate {
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn labels(&self) -> Vec<&str> {
        self.terms.iter().map(|t| t.label.as_str()).collect()
    }

    pub fn coeff_of(&self, label: &str) -> Rational {
        self.terms.iter().filter(|t| t.label == label).map(|t| t.coeff.clone()).fold(Rational::zero(), |a, b| a + b)
    }

    /// Re-expands the certificate against the generators it was built from.
    pub fn expand(&self, generators: &[Instance]) -> Polynomial {
        let mut p = Polynomial::zero();
        for t in &self.terms {
            p += &generators[t.index].poly.scale(&t.coeff);
        }
        p
    }
}

impl Display for SpanCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut s = String::new();
        for (i, t) in self.terms.iter().enumerate() {
            crate::algebra::write_coefficient(&mut s, &t.coeff, i == 0, "*");
            s.push_str(&t.label);
        }
        f.write_str(&s)
    }
}

#[derive(Clone, Debug)]
pub enum SpanOutcome<K> {
    InSpan(SpanCertificate),
    /// `witness` is the first coordinate, in basis order, left unmatched.
    NotInSpan {
        witness: K,
        residual: Combination<K>,
    },
}

impl<K> SpanOutcome<K> {
    pub fn is_in_span(&self) -> bool {
        matches!(self, SpanOutcome::InSpan(_))
    }

    pub fn certificate(&self) -> Option<&SpanCertificate> {
        match self {
            SpanOutcome::InSpan(c) => Some(c),
            SpanOutcome::NotInSpan { .. } => None,
        }
    }
}

fn to_vector<K: Ord + Clone + Display>(coords: &Coordinates<K>, c: &Combination<K>) -> Result<SparseVec> {
    c.iter().map(|(k, v)| coords.get(k).map(|i| (i, v.clone())).ok_or_else(|| Error::OutsideBasis(k.to_string()))).collect()
}

/// Incremental span of labeled generators in a fixed coordinate space.
/// Generators are eliminated in insertion order, so a target lying in the
/// span of an independent prefix is certified by that prefix alone.
#[derive(Clone, Debug)]
pub struct SpanEngine<K: Ord + Clone> {
    coords: Coordinates<K>,
    echelon: Echelon,
    labels: Vec<String>,
}

impl<K: Ord + Clone + Display> SpanEngine<K> {
    pub fn new(coords: Coordinates<K>) -> Self {
        SpanEngine { coords, echelon: Echelon::new(), labels: Vec::new() }
    }

    /// Returns whether the generator enlarged the span.
    pub fn add(&mut self, label: impl Into<String>, v: &Combination<K>) -> Result<bool> {
        let vec = to_vector(&self.coords, v)?;
        self.labels.push(label.into());
        Ok(!self.echelon.insert(&vec).in_span())
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    pub fn generators(&self) -> usize {
        self.labels.len()
    }

    pub fn query(&self, target: &Combination<K>) -> Result<SpanOutcome<K>> {
        let vec = to_vector(&self.coords, target)?;
        let red = self.echelon.reduce(&vec);
        if let Some((&w, _)) = red.residual.iter().next() {
            let residual = red.residual.iter().map(|(i, c)| (self.coords.key(*i).clone(), c.clone())).collect();
            return Ok(SpanOutcome::NotInSpan { witness: self.coords.key(w).clone(), residual });
        }
        let terms = self
            .echelon
            .combination(&red)
            .into_iter()
            .map(|(index, coeff)| CertificateTerm { index, label: self.labels[index].clone(), coeff })
            .collect();
        Ok(SpanOutcome::InSpan(SpanCertificate { terms }))
    }

    pub fn contains(&self, target: &Combination<K>) -> Result<bool> {
        Ok(self.query(target)?.is_in_span())
    }
}

/// Span engine over a monomial basis, loaded with `generators`.
pub fn span_engine(generators: &[Instance], basis: &MonomialBasis) -> Result<SpanEngine<Monomial>> {
    let mut engine = SpanEngine::new(basis.coordinates().clone());
    for g in generators {
        engine.add(g.label.clone(), &combination_of(&g.poly))?;
    }
    Ok(engine)
}

pub fn in_span(target: &Polynomial, generators: &[Instance], basis: &MonomialBasis) -> Result<SpanOutcome<Monomial>> {
    span_engine(generators, basis)?.query(&combination_of(target))
}

/// Relabeled instances of every identity in the set.
pub fn instances_of_set(ids: &[Identity], vars: &[Variable]) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for id in ids {
        out.extend(same_degree_instances(id, vars)?);
    }
    Ok(out)
}

/// Result of comparing two identity sets at one degree.
#[derive(Clone, Debug)]
pub struct Equivalence {
    /// Each identity of the first set against instances of the second.
    pub forward: Vec<(String, SpanOutcome<Monomial>)>,
    pub backward: Vec<(String, SpanOutcome<Monomial>)>,
    pub forward_generators: Vec<Instance>,
    pub backward_generators: Vec<Instance>,
}

impl Equivalence {
    pub fn holds(&self) -> bool {
        self.forward.iter().chain(&self.backward).all(|(_, o)| o.is_in_span())
    }
}

fn signature_of(ids: &[&Identity]) -> Vec<OpSymbol> {
    let mut ops: Vec<OpSymbol> = ids.iter().flat_map(|i| i.signature().iter().cloned()).collect();
    ops.sort();
    ops.dedup();
    ops
}

/// Mutual span inclusion of the relabeled instances of `a` and `b` at
/// `degree`, over the operations occurring in either set.
pub fn sets_equivalent(a: &[Identity], b: &[Identity], degree: usize, vars: &[Variable]) -> Result<Equivalence> {
    for id in a.iter().chain(b) {
        if !id.is_multilinear() {
            return Err(Error::NotMultilinear(id.name().to_string()));
        }
        if id.degree().is_some_and(|d| d != degree) {
            return Err(Error::DegreeMismatch { expected: degree, got: id.degree().unwrap() });
        }
    }
    let all: Vec<&Identity> = a.iter().chain(b).collect();
    let basis = enumerate_basis(&signature_of(&all), degree, vars)?;
    let ga = instances_of_set(a, vars)?;
    let gb = instances_of_set(b, vars)?;
    let ea = span_engine(&ga, &basis)?;
    let eb = span_engine(&gb, &basis)?;
    let check = |ids: &[Identity], engine: &SpanEngine<Monomial>| -> Result<Vec<(String, SpanOutcome<Monomial>)>> {
        ids.iter()
            .map(|id| {
                let lhs = substitute(id.lhs(), &relabel(id.variables(), vars))?;
                Ok((id.name().to_string(), engine.query(&combination_of(&lhs))?))
            })
            .collect()
    };
    Ok(Equivalence { forward: check(a, &eb)?, backward: check(b, &ea)?, forward_generators: gb, backward_generators: ga })
}

/// Kernel of the linear map that sends each basis monomial to
/// `expand(monomial)`, as polynomials in reduced row echelon form.
pub fn kernel_of_expansion<K, F>(basis: &MonomialBasis, mut expand: F) -> Vec<Polynomial>
where
    K: Ord + Clone,
    F: FnMut(&Monomial) -> Combination<K>,
{
    let mut target: Coordinates<K> = Coordinates::new();
    let images: Vec<SparseVec> = basis
        .monomials()
        .iter()
        .map(|m| expand(m).into_iter().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (target.intern(k), c)).collect())
        .collect();
    kernel(&images).iter().map(|v| basis.polynomial(v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_document, vars};

    #[test]
    fn basis_sizes() {
        let t = OpSymbol::new("t", 3);
        let b = enumerate_basis(std::slice::from_ref(&t), 5, &vars("abcde")).unwrap();
        assert_eq!((b.shape_count(), b.len()), (3, 360));
        assert_eq!(enumerate_basis(std::slice::from_ref(&t), 3, &vars("abc")).unwrap().len(), 6);
        let m = OpSymbol::new("mul", 2);
        assert_eq!(enumerate_basis(&[m], 3, &vars("abc")).unwrap().len(), 12);
        assert!(matches!(enumerate_basis(&[t], 4, &vars("abcd")), Err(Error::DegreeNotExpressible { .. })));
    }

    #[test]
    fn basis_is_sorted_and_distinct() {
        let m = OpSymbol::new("mul", 2);
        let b = enumerate_basis(&[m], 4, &vars("abcd")).unwrap();
        assert_eq!(b.len(), 5 * 24);
        assert!(b.monomials().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn zero_is_in_empty_span() {
        let t = OpSymbol::new("t", 3);
        let b = enumerate_basis(&[t], 3, &vars("abc")).unwrap();
        let out = in_span(&Polynomial::zero(), &[], &b).unwrap();
        assert!(out.certificate().unwrap().is_empty());
    }

    #[test]
    fn witness_is_first_unmatched_monomial() {
        let d = parse_document("op t/3\nx: t(a,b,c) + t(b,a,c)\ny: t(a,b,c) - t(c,b,a)").unwrap();
        let b = enumerate_basis(&[OpSymbol::new("t", 3)], 3, &vars("abc")).unwrap();
        let gens = vec![Instance::of(&d.identity("x").unwrap())];
        match in_span(&d.get("y").unwrap(), &gens, &b).unwrap() {
            SpanOutcome::NotInSpan { witness, .. } => assert_eq!(witness.to_string(), "t(b,a,c)"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn instance_counts_and_labels() {
        let d = parse_document("op mul/2\nRJ: mul(mul(d,mul(a,b)),c) + mul(mul(d,mul(a,c)),b)").unwrap();
        let id = Identity::with_variables("RJ", d.get("RJ").unwrap(), vars("abcd"));
        let mul = OpSymbol::new("mul", 2);
        let lifted = lifted_instances(&id, 5, &vars("abcde"), &mul).unwrap();
        assert_eq!(lifted.len(), 720);
        assert!(lifted.iter().any(|i| i.label == "RJ(ce,b,d,a)"));
        assert!(lifted.iter().any(|i| i.label == "cRJ(a,d,e,b)"));
        assert!(lifted.iter().any(|i| i.label == "RJ(a,b,c,e)d"));
        assert!(matches!(lifted_instances(&id, 6, &vars("abcdef"), &mul), Err(Error::UnsupportedLift(2))));
        let same = same_degree_instances(&id, &vars("abcd")).unwrap();
        assert_eq!(same.len(), 24);
        assert_eq!(same[0].poly, *id.lhs());
    }
}
