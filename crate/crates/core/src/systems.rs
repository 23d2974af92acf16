//! Finite-dimensional triple systems and binary algebras given by structure
//! constants: identity checking on basis tuples, the universal Leibniz
//! envelope `U(T) = T + T⊗T`, the quadratic equations for two-dimensional
//! systems, and table printing.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Map, Value};

use crate::algebra::{parse_polynomial, Identity, Monomial, Polynomial, Signature, Variable};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::mpoly::{rational_prefix, MPoly};
use crate::Rational;

/// Coefficient ring for structure constants.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Display
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Text placed before a basis name: `""` for one, `"-"` for minus one.
    fn prefix(&self) -> String;

    fn from_rational(c: &Rational) -> Self;
}

impl Scalar for Rational {
    fn prefix(&self) -> String {
        rational_prefix(self)
    }

    fn from_rational(c: &Rational) -> Self {
        c.clone()
    }
}

impl Scalar for MPoly {
    fn prefix(&self) -> String {
        MPoly::prefix(self)
    }

    fn from_rational(c: &Rational) -> Self {
        MPoly::constant(c.clone())
    }
}

fn unit<C: Scalar>(n: usize, i: usize) -> Vec<C> {
    let mut v = vec![C::zero(); n];
    v[i] = C::one();
    v
}

fn axpy<C: Scalar>(acc: &mut [C], c: &C, v: &[C]) {
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a = a.clone() + c.clone() * x.clone();
        }
    }
}

/// Anything that multiplies basis vectors: a triple system or an algebra.
pub trait Structure<C: Scalar> {
    fn dim(&self) -> usize;
    fn arity(&self) -> usize;
    fn basis(&self) -> &[String];
    fn multiply(&self, args: &[&[C]]) -> Vec<C>;
}

/// `<e_i, e_j, e_k> = sum_l c[i][j][k][l] e_l`.
#[derive(Clone, Debug, PartialEq)]
pub struct TernarySystem<C = Rational> {
    basis: Vec<String>,
    consts: Vec<Vec<C>>,
}

impl<C: Scalar> TernarySystem<C> {
    pub fn zero(basis: Vec<String>) -> Self {
        let n = basis.len();
        assert!(n >= 1, "dimension at least one");
        TernarySystem { consts: vec![vec![C::zero(); n]; n * n * n], basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        let n = self.dim();
        (i * n + j) * n + k
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &[C] {
        &self.consts[self.idx(i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, value: Vec<C>) {
        assert_eq!(value.len(), self.dim());
        let x = self.idx(i, j, k);
        self.consts[x] = value;
    }

    pub fn set_entry(&mut self, i: usize, j: usize, k: usize, l: usize, c: C) {
        let x = self.idx(i, j, k);
        self.consts[x][l] = c;
    }

    pub fn triple(&self, u: &[C], v: &[C], w: &[C]) -> Vec<C> {
        let n = self.dim();
        let mut out = vec![C::zero(); n];
        for (i, ui) in u.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, vj) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                let uv = ui.clone() * vj.clone();
                for (k, wk) in w.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                    axpy(&mut out, &(uv.clone() * wk.clone()), self.get(i, j, k));
                }
            }
        }
        out
    }

    pub fn map<D: Scalar>(&self, mut f: impl FnMut(&C) -> D) -> TernarySystem<D> {
        TernarySystem { basis: self.basis.clone(), consts: self.consts.iter().map(|v| v.iter().map(&mut f).collect()).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.consts.iter().flatten().all(Zero::is_zero)
    }

    /// Nonzero products as `(i, j, k, value)`.
    pub fn nonzero(&self) -> Vec<(usize, usize, usize, &[C])> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let v = self.get(i, j, k);
                    if v.iter().any(|c| !c.is_zero()) {
                        out.push((i, j, k, v));
                    }
                }
            }
        }
        out
    }
}

impl<C: Scalar> Structure<C> for TernarySystem<C> {
    fn dim(&self) -> usize {
        TernarySystem::dim(self)
    }

    fn arity(&self) -> usize {
        3
    }

    fn basis(&self) -> &[String] {
        &self.basis
    }

    fn multiply(&self, args: &[&[C]]) -> Vec<C> {
        self.triple(args[0], args[1], args[2])
    }
}

/// Bilinear product on a finite basis.
#[derive(Clone, Debug, PartialEq)]
pub struct BinaryAlgebra<C = Rational> {
    basis: Vec<String>,
    table: Vec<Vec<C>>,
}

impl<C: Scalar> BinaryAlgebra<C> {
    pub fn zero(basis: Vec<String>) -> Self {
        let n = basis.len();
        BinaryAlgebra { table: vec![vec![C::zero(); n]; n * n], basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn get(&self, i: usize, j: usize) -> &[C] {
        &self.table[i * self.dim() + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Vec<C>) {
        assert_eq!(value.len(), self.dim());
        let n = self.dim();
        self.table[i * n + j] = value;
    }

    pub fn product(&self, u: &[C], v: &[C]) -> Vec<C> {
        let mut out = vec![C::zero(); self.dim()];
        for (i, ui) in u.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, vj) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                axpy(&mut out, &(ui.clone() * vj.clone()), self.get(i, j));
            }
        }
        out
    }

    pub fn map<D: Scalar>(&self, mut f: impl FnMut(&C) -> D) -> BinaryAlgebra<D> {
        BinaryAlgebra { basis: self.basis.clone(), table: self.table.iter().map(|v| v.iter().map(&mut f).collect()).collect() }
    }
}

impl<C: Scalar> Structure<C> for BinaryAlgebra<C> {
    fn dim(&self) -> usize {
        BinaryAlgebra::dim(self)
    }

    fn arity(&self) -> usize {
        2
    }

    fn basis(&self) -> &[String] {
        &self.basis
    }

    fn multiply(&self, args: &[&[C]]) -> Vec<C> {
        self.product(args[0], args[1])
    }
}

fn eval_monomial<C: Scalar, S: Structure<C>>(s: &S, m: &Monomial, values: &BTreeMap<Variable, Vec<C>>) -> Result<Vec<C>> {
    match m {
        Monomial::Leaf(v) => values.get(v).cloned().ok_or_else(|| Error::UnassignedVariable(v.to_string())),
        Monomial::Apply(op, ch) => {
            if ch.len() != s.arity() {
                return Err(Error::Arity { op: op.to_string(), expected: s.arity(), got: ch.len() });
            }
            let args = ch.iter().map(|c| eval_monomial(s, c, values)).collect::<Result<Vec<_>>>()?;
            let refs: Vec<&[C]> = args.iter().map(Vec::as_slice).collect();
            Ok(s.multiply(&refs))
        }
    }
}

/// Evaluates `p` with every operation read as the product of `s`.
pub fn evaluate<C: Scalar, S: Structure<C>>(s: &S, p: &Polynomial, values: &BTreeMap<Variable, Vec<C>>) -> Result<Vec<C>> {
    let mut out = vec![C::zero(); s.dim()];
    for (m, c) in p.terms() {
        let v = eval_monomial(s, m, values)?;
        axpy(&mut out, &C::from_rational(c), &v);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Violation<C> {
    pub identity: String,
    /// Basis indices assigned to the identity's variables, in order.
    pub tuple: Vec<usize>,
    pub value: Vec<C>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport<C> {
    /// Number of basis tuples evaluated, over all identities.
    pub checked: usize,
    pub violations: Vec<Violation<C>>,
}

impl<C> CheckReport<C> {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

// above this many tuples per identity the first coordinate is split across threads
const PARALLEL_TUPLES: usize = 4096;

fn check_block<C: Scalar, S: Structure<C>>(
    s: &S,
    id: &Identity,
    units: &[Vec<C>],
    first: Option<usize>,
) -> Result<(usize, Vec<Violation<C>>)> {
    let n = units.len();
    let vars = id.variables();
    let fixed = usize::from(first.is_some());
    let mut tuple = vec![0usize; vars.len()];
    if let (Some(f), Some(t)) = (first, tuple.first_mut()) {
        *t = f;
    }
    let mut checked = 0;
    let mut violations = Vec::new();
    loop {
        let values = vars.iter().cloned().zip(tuple.iter().map(|&i| units[i].clone())).collect();
        let value = evaluate(s, id.lhs(), &values)?;
        checked += 1;
        if value.iter().any(|c| !c.is_zero()) {
            violations.push(Violation { identity: id.name().to_string(), tuple: tuple.clone(), value });
        }
        let Some(pos) = (fixed..tuple.len()).rev().find(|&p| tuple[p] + 1 < n) else { break };
        tuple[pos] += 1;
        for t in tuple.iter_mut().skip(pos + 1) {
            *t = 0;
        }
    }
    Ok((checked, violations))
}

/// Evaluates each identity on every tuple of basis vectors. Large checks
/// run on several threads; violations stay in tuple order.
pub fn check_identities<C: Scalar, S: Structure<C> + Sync>(s: &S, ids: &[Identity]) -> Result<CheckReport<C>> {
    let n = s.dim();
    let units: Vec<Vec<C>> = (0..n).map(|i| unit(n, i)).collect();
    let mut checked = 0;
    let mut violations = Vec::new();
    for id in ids {
        let k = id.variables().len();
        let total = n.checked_pow(k as u32).unwrap_or(usize::MAX);
        let blocks = if k > 0 && n > 1 && total > PARALLEL_TUPLES {
            std::thread::scope(|scope| {
                let handles: Vec<_> = (0..n)
                    .map(|f| {
                        let units = &units;
                        scope.spawn(move || check_block(s, id, units, Some(f)))
                    })
                    .collect();
                handles.into_iter().map(|h| h.join().expect("check thread")).collect::<Result<Vec<_>>>()
            })?
        } else {
            vec![check_block(s, id, &units, None)?]
        };
        for (c, v) in blocks {
            checked += c;
            violations.extend(v);
        }
    }
    Ok(CheckReport { checked, violations })
}

/// LTS-A and LTS-B on all basis 5-tuples.
pub fn check_lts<C: Scalar>(t: &TernarySystem<C>) -> CheckReport<C> {
    check_identities(t, &fixtures::lts_pair()).expect("ternary identities")
}

/// L1, L2, L3 on all basis tuples.
pub fn lie_triple_check<C: Scalar>(t: &TernarySystem<C>) -> CheckReport<C> {
    check_identities(t, &fixtures::lie_triple_axioms()).expect("ternary identities")
}

/// The right Leibniz identity on all basis triples.
pub fn check_leibniz<C: Scalar>(a: &BinaryAlgebra<C>) -> CheckReport<C> {
    check_identities(a, &[fixtures::leibniz()]).expect("binary identity")
}

/// Name of the basis element `e_i e_j` of the envelope.
pub fn tensor_name(basis: &[String], i: usize, j: usize) -> String {
    if i == j {
        format!("{}^2", basis[i])
    } else {
        format!("{}{}", basis[i], basis[j])
    }
}

/// The universal Leibniz envelope on `e_1..e_n, e_1e_1, e_1e_2, ..., e_ne_n`.
pub fn build_envelope<C: Scalar>(t: &TernarySystem<C>) -> BinaryAlgebra<C> {
    let n = t.dim();
    let pair = |i: usize, j: usize| n + i * n + j;
    let mut basis = t.basis().to_vec();
    for i in 0..n {
        for j in 0..n {
            basis.push(tensor_name(t.basis(), i, j));
        }
    }
    let dim = basis.len();
    let mut u = BinaryAlgebra::zero(basis);
    let lift = |v: &[C]| {
        let mut out = vec![C::zero(); dim];
        out[..n].clone_from_slice(v);
        out
    };
    // v ⊗ e_d for v in T
    let tensor = |v: &[C], d: usize| {
        let mut out = vec![C::zero(); dim];
        for (l, c) in v.iter().enumerate() {
            out[pair(l, d)] = c.clone();
        }
        out
    };
    for a in 0..n {
        for b in 0..n {
            u.set(a, b, unit(dim, pair(a, b)));
            for c in 0..n {
                let abc = t.get(a, b, c);
                let acb = t.get(a, c, b);
                let diff: Vec<C> = abc.iter().zip(acb).map(|(x, y)| x.clone() - y.clone()).collect();
                u.set(a, pair(b, c), lift(&diff));
                u.set(pair(a, b), c, lift(abc));
                for d in 0..n {
                    let mut v = tensor(abc, d);
                    axpy(&mut v, &-C::one(), &tensor(t.get(a, b, d), c));
                    u.set(pair(a, b), pair(c, d), v);
                }
            }
        }
    }
    u
}

/// The triple product `(e_i e_j) e_k` on the first `n` basis vectors of
/// `a`, if it stays inside their span.
pub fn iterated_triple<C: Scalar>(a: &BinaryAlgebra<C>, n: usize) -> Option<TernarySystem<C>> {
    let mut t = TernarySystem::zero(a.basis()[..n].to_vec());
    let dim = a.dim();
    for i in 0..n {
        for j in 0..n {
            let ij = a.get(i, j).to_vec();
            for k in 0..n {
                let v = a.product(&ij, &unit(dim, k));
                if v[n..].iter().any(|c| !c.is_zero()) {
                    return None;
                }
                t.set(i, j, k, v[..n].to_vec());
            }
        }
    }
    Some(t)
}

/// Renders a vector like `-y`, `2(xy+yx)`, `x-y` or `.` for zero.
pub fn render_vector<C: Scalar>(v: &[C], basis: &[String]) -> String {
    let terms: Vec<(&C, &String)> = v.iter().zip(basis).filter(|(c, _)| !c.is_zero()).collect();
    match terms.as_slice() {
        [] => ".".into(),
        [(c, name)] => format!("{}{}", c.prefix(), name),
        [(c0, _), rest @ ..] if rest.iter().all(|(c, _)| c == c0) => {
            let names: Vec<&str> = terms.iter().map(|(_, n)| n.as_str()).collect();
            let p = c0.prefix();
            if p.is_empty() {
                names.join("+")
            } else {
                format!("{p}({})", names.join("+"))
            }
        }
        _ => {
            let mut s = String::new();
            for (i, (c, name)) in terms.iter().enumerate() {
                let p = c.prefix();
                if i > 0 && !p.starts_with('-') {
                    s.push('+');
                }
                s.push_str(&p);
                s.push_str(name);
            }
            s
        }
    }
}

/// Multiplication table, rows acting on columns (`row · column`). The
/// first column is left-aligned, the others right-aligned, two spaces apart.
pub fn render_table<C: Scalar>(a: &BinaryAlgebra<C>) -> String {
    let n = a.dim();
    let mut rows: Vec<Vec<String>> = Vec::with_capacity(n + 1);
    rows.push(std::iter::once(".".to_string()).chain(a.basis().iter().cloned()).collect());
    for i in 0..n {
        let mut row = vec![a.basis()[i].clone()];
        for j in 0..n {
            row.push(render_vector(a.get(i, j), a.basis()));
        }
        rows.push(row);
    }
    let widths: Vec<usize> = (0..=n).map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0)).collect();
    let line = |r: &Vec<String>| {
        let mut s = format!("{:<w$}", r[0], w = widths[0]);
        for c in 1..=n {
            s.push_str(&format!("  {:>w$}", r[c], w = widths[c]));
        }
        s
    };
    let mut out = line(&rows[0]);
    out.push('\n');
    out.push_str(&"-".repeat(widths.iter().sum::<usize>() + 2 * n));
    out.push('\n');
    for r in &rows[1..] {
        out.push_str(&line(r));
        out.push('\n');
    }
    out
}

fn vector_json<C: Scalar>(v: &[C], basis: &[String]) -> Value {
    let m: Map<String, Value> =
        v.iter().zip(basis).filter(|(c, _)| !c.is_zero()).map(|(c, b)| (b.clone(), Value::String(c.to_string()))).collect();
    Value::Object(m)
}

/// `{"dim", "basis", "product": {"x,xy": {"y": "-1"}}}`, zero entries omitted.
pub fn envelope_json<C: Scalar>(a: &BinaryAlgebra<C>) -> Value {
    let mut product = Map::new();
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let v = a.get(i, j);
            if v.iter().any(|c| !c.is_zero()) {
                product.insert(format!("{},{}", a.basis()[i], a.basis()[j]), vector_json(v, a.basis()));
            }
        }
    }
    json!({"dim": a.dim(), "basis": a.basis(), "product": product})
}

fn parse_vector(text: &str, basis: &[String]) -> Result<Vec<Rational>> {
    let bad = |why: String| Error::InvalidSystem(why);
    let p = parse_polynomial(text, &Signature::new()).map_err(|e| bad(format!("value {text:?}: {e}")))?;
    let mut v = vec![Rational::zero(); basis.len()];
    for (m, c) in p.terms() {
        let Monomial::Leaf(x) = m else {
            return Err(bad(format!("value {text:?} is not a linear combination of basis names")));
        };
        let i = basis.iter().position(|b| b == x.name()).ok_or_else(|| bad(format!("unknown basis name {x} in {text:?}")))?;
        v[i] = c.clone();
    }
    Ok(v)
}

impl TernarySystem<Rational> {
    /// Reads `{"dim": 2, "basis": ["x","y"], "triple": {"x,y,x": "y"}}`;
    /// omitted products are zero.
    pub fn from_json(text: &str) -> Result<Self> {
        let bad = |why: &str| Error::InvalidSystem(why.to_string());
        let v: Value = serde_json::from_str(text)?;
        let basis: Vec<String> = v
            .get("basis")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing \"basis\" array"))?
            .iter()
            .map(|b| b.as_str().map(str::to_string).ok_or_else(|| bad("basis names must be strings")))
            .collect::<Result<_>>()?;
        if basis.is_empty() {
            return Err(bad("dimension must be at least 1"));
        }
        if let Some(d) = v.get("dim") {
            if d.as_u64() != Some(basis.len() as u64) {
                return Err(bad("\"dim\" does not match the basis length"));
            }
        }
        if basis.iter().collect::<BTreeSet<_>>().len() != basis.len() {
            return Err(bad("repeated basis name"));
        }
        let mut t = TernarySystem::zero(basis.clone());
        let triple = match v.get("triple") {
            None => return Ok(t),
            Some(x) => x.as_object().ok_or_else(|| bad("\"triple\" must be an object"))?,
        };
        for (key, value) in triple {
            let idx: Vec<usize> = key
                .split(',')
                .map(|s| {
                    basis
                        .iter()
                        .position(|b| b == s.trim())
                        .ok_or_else(|| Error::InvalidSystem(format!("unknown basis name in key {key:?}")))
                })
                .collect::<Result<_>>()?;
            if idx.len() != 3 {
                return Err(Error::InvalidSystem(format!("key {key:?} must name three basis elements")));
            }
            let text = value.as_str().ok_or_else(|| bad("values must be strings"))?;
            t.set(idx[0], idx[1], idx[2], parse_vector(text, &basis)?);
        }
        Ok(t)
    }

    pub fn to_json(&self) -> Value {
        let mut triple = Map::new();
        for (i, j, k, v) in self.nonzero() {
            let mut s = String::new();
            for (c, b) in v.iter().zip(&self.basis).filter(|(c, _)| !c.is_zero()) {
                if !s.is_empty() {
                    s.push_str(if c.is_negative() { " - " } else { " + " });
                    s.push_str(&format!("{}*{b}", c.abs()));
                } else {
                    s.push_str(&format!("{c}*{b}"));
                }
            }
            triple.insert(format!("{},{},{}", self.basis[i], self.basis[j], self.basis[k]), Value::String(s));
        }
        json!({"dim": self.dim(), "basis": self.basis, "triple": triple})
    }
}

/// The fixture systems 1-4.
pub fn known_system(name: &str) -> Result<TernarySystem<Rational>> {
    fixtures::SYSTEM_JSON
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, j)| TernarySystem::from_json(j))
        .unwrap_or_else(|| Err(Error::InvalidSystem(format!("unknown system {name}"))))
}

/// The one-parameter family `<x,y,y> = ζx`, `<y,y,y> = (1-ζ)x`.
pub fn system5<C: Scalar>(zeta: C) -> TernarySystem<C> {
    let mut t = TernarySystem::zero(vec!["x".into(), "y".into()]);
    t.set_entry(0, 1, 1, 0, zeta.clone());
    t.set_entry(1, 1, 1, 0, C::one() - zeta);
    t
}

/// Systems 1-4 and system 5 at the given parameter values, named
/// `system5[ζ=2]` and so on.
pub fn two_dimensional_systems(zetas: &[i64]) -> Vec<(String, TernarySystem<Rational>)> {
    let mut out: Vec<(String, TernarySystem<Rational>)> =
        fixtures::SYSTEM_JSON.iter().map(|(n, _)| (n.to_string(), known_system(n).unwrap())).collect();
    for &z in zetas {
        out.push((format!("system5[ζ={z}]"), system5(Rational::from_integer(z.into()))));
    }
    out
}

/// Name of the unknown for coordinate `l` of `<e_i, e_j, e_k>`; for two
/// dimensions `alpha121`, `beta122`, otherwise `c1.2.1.1`.
pub fn unknown_name(n: usize, i: usize, j: usize, k: usize, l: usize) -> String {
    if n == 2 {
        format!("{}{}{}{}", ["alpha", "beta"][l], i + 1, j + 1, k + 1)
    } else {
        format!("c{}.{}.{}.{}", i + 1, j + 1, k + 1, l + 1)
    }
}

/// The system whose structure constants are all unknowns.
pub fn generic_system(n: usize) -> TernarySystem<MPoly> {
    let basis: Vec<String> = if n == 2 { vec!["x".into(), "y".into()] } else { (1..=n).map(|i| format!("e{i}")).collect() };
    let mut t = TernarySystem::zero(basis);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    t.set_entry(i, j, k, l, MPoly::var(&unknown_name(n, i, j, k, l)));
                }
            }
        }
    }
    t
}

/// Values of the unknowns for a concrete system.
pub fn unknown_values<C: Scalar>(t: &TernarySystem<C>) -> BTreeMap<String, C> {
    let n = t.dim();
    let mut out = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for (l, c) in t.get(i, j, k).iter().enumerate() {
                    out.insert(unknown_name(n, i, j, k, l), c.clone());
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticSystem {
    pub dim: usize,
    pub unknowns: Vec<String>,
    /// Primitive, deduplicated, each homogeneous of degree two.
    pub equations: Vec<MPoly>,
}

impl QuadraticSystem {
    /// Equations that do not vanish after substituting values.
    pub fn residuals(&self, values: &BTreeMap<String, MPoly>) -> Vec<MPoly> {
        self.equations.iter().map(|e| e.substitute(values)).filter(|r| !r.is_zero()).collect()
    }

    pub fn satisfied_by(&self, t: &TernarySystem<Rational>) -> bool {
        let values = unknown_values(t);
        self.equations.iter().all(|e| e.eval(&values).map(|x| x.is_zero()).unwrap_or(false))
    }

    pub fn satisfied_symbolically(&self, t: &TernarySystem<MPoly>) -> bool {
        self.residuals(&unknown_values(t)).is_empty()
    }
}

/// Imposes LTS-A and LTS-B on the generic `n`-dimensional system: one
/// equation per identity, basis 5-tuple and output coordinate.
pub fn lts_equations(n: usize) -> QuadraticSystem {
    let t = generic_system(n);
    let report = check_lts(&t);
    let mut eqs: BTreeSet<MPoly> = BTreeSet::new();
    for v in report.violations {
        for c in v.value {
            if !c.is_zero() {
                eqs.insert(c.primitive());
            }
        }
    }
    let mut unknowns = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    unknowns.push(unknown_name(n, i, j, k, l));
                }
            }
        }
    }
    let mut equations: Vec<MPoly> = eqs.into_iter().collect();
    equations.sort_by(|a, b| a.len().cmp(&b.len()).then(a.to_string().cmp(&b.to_string())));
    QuadraticSystem { dim: n, unknowns, equations }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpSolutions {
    pub p: u64,
    pub mask: Vec<String>,
    /// Values of the mask unknowns, in mask order; all others are zero.
    pub points: Vec<Vec<u64>>,
}

pub const SEARCH_LIMIT: u64 = 100_000_000;

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn mod_p(c: &Rational, p: u64) -> u64 {
    use num_bigint::BigInt;
    let pb = BigInt::from(p);
    let num = ((c.numer() % &pb) + &pb) % &pb;
    let den = ((c.denom() % &pb) + &pb) % &pb;
    let inv = den.modpow(&(&pb - 2u32), &pb);
    ((num * inv) % &pb).to_u64().unwrap()
}

/// Enumerates all points over F_p with the unknowns outside `mask` set to
/// zero. No isomorphism reduction.
pub fn search_fp(system: &QuadraticSystem, p: u64, mask: &[String]) -> Result<FpSolutions> {
    if mask.is_empty() {
        return Err(Error::EmptyMask);
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    for m in mask {
        if !system.unknowns.contains(m) {
            return Err(Error::UnknownUnknown(m.clone()));
        }
    }
    let total = (0..mask.len()).try_fold(1u64, |acc, _| acc.checked_mul(p).filter(|x| *x <= SEARCH_LIMIT));
    let Some(total) = total else {
        return Err(Error::MaskTooLarge(format!("{p}^{}", mask.len())));
    };
    let pos: BTreeMap<&str, usize> = mask.iter().enumerate().map(|(i, m)| (m.as_str(), i)).collect();
    // each equation: terms (coefficient mod p, mask positions with multiplicity)
    let mut compiled: Vec<Vec<(u64, Vec<usize>)>> = Vec::new();
    for e in &system.equations {
        let mut terms = Vec::new();
        'term: for (mono, c) in e.terms() {
            let mut idx = Vec::new();
            for (v, k) in mono {
                let Some(&i) = pos.get(v.as_ref()) else { continue 'term };
                idx.extend(std::iter::repeat_n(i, *k as usize));
            }
            let c = mod_p(c, p);
            if c != 0 {
                terms.push((c, idx));
            }
        }
        if !terms.is_empty() {
            compiled.push(terms);
        }
    }
    let mut points = Vec::new();
    let mut x = vec![0u64; mask.len()];
    for _ in 0..total {
        let ok = compiled
            .iter()
            .all(|terms| terms.iter().fold(0u64, |acc, (c, idx)| (acc + idx.iter().fold(*c, |t, &i| t * x[i] % p)) % p) == 0);
        if ok {
            points.push(x.clone());
        }
        for xi in x.iter_mut().rev() {
            *xi += 1;
            if *xi < p {
                break;
            }
            *xi = 0;
        }
    }
    Ok(FpSolutions { p, mask: mask.to_vec(), points })
}

/// Upper triangular `m×m` matrices on the units `E_ij`, `i <= j`.
pub fn upper_triangular(m: usize) -> BinaryAlgebra<Rational> {
    matrix_algebra(m, |i, j| i <= j)
}

/// All `m×m` matrices.
pub fn full_matrices(m: usize) -> BinaryAlgebra<Rational> {
    matrix_algebra(m, |_, _| true)
}

fn matrix_algebra(m: usize, keep: impl Fn(usize, usize) -> bool) -> BinaryAlgebra<Rational> {
    let units: Vec<(usize, usize)> = (0..m).flat_map(|i| (0..m).map(move |j| (i, j))).filter(|&(i, j)| keep(i, j)).collect();
    let basis = units.iter().map(|(i, j)| format!("E{}{}", i + 1, j + 1)).collect();
    let mut a = BinaryAlgebra::zero(basis);
    let n = units.len();
    for (x, &(i, j)) in units.iter().enumerate() {
        for (y, &(k, l)) in units.iter().enumerate() {
            if j == k {
                let z = units.iter().position(|&u| u == (i, l)).expect("closed under products");
                a.set(x, y, unit(n, z));
            }
        }
    }
    a
}

/// `<a,b,c> = abc - bac - cab + cba` in an associative algebra.
pub fn associator_system<C: Scalar>(a: &BinaryAlgebra<C>) -> TernarySystem<C> {
    let n = a.dim();
    let mut t = TernarySystem::zero(a.basis().to_vec());
    let e: Vec<Vec<C>> = (0..n).map(|i| unit(n, i)).collect();
    let m3 = |x: &[C], y: &[C], z: &[C]| a.product(&a.product(x, y), z);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut v = m3(&e[i], &e[j], &e[k]);
                axpy(&mut v, &-C::one(), &m3(&e[j], &e[i], &e[k]));
                axpy(&mut v, &-C::one(), &m3(&e[k], &e[i], &e[j]));
                axpy(&mut v, &C::one(), &m3(&e[k], &e[j], &e[i]));
                t.set(i, j, k, v);
            }
        }
    }
    t
}

/// Structure constants in the basis `f_i = sum_j p[i][j] e_j`.
pub fn change_basis(t: &TernarySystem<Rational>, p: &[Vec<Rational>]) -> Result<TernarySystem<Rational>> {
    let n = t.dim();
    let q = crate::linalg::invert(p).ok_or_else(|| Error::InvalidSystem("basis change is singular".into()))?;
    let mut out = TernarySystem::zero(t.basis().to_vec());
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let v = t.triple(&p[i], &p[j], &p[k]);
                let w: Vec<Rational> = (0..n).map(|c| (0..n).fold(Rational::zero(), |acc, r| acc + &v[r] * &q[r][c])).collect();
                out.set(i, j, k, w);
            }
        }
    }
    Ok(out)
}

impl fmt::Display for TernarySystem<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nz = self.nonzero();
        if nz.is_empty() {
            return writeln!(f, "zero product on {}", self.basis.join(", "));
        }
        for (i, j, k, v) in nz {
            writeln!(f, "<{}, {}, {}> = {}", self.basis[i], self.basis[j], self.basis[k], render_vector(v, &self.basis))?;
        }
        Ok(())
    }
}
