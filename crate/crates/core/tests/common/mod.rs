//! Oracles shared by the integration tests. None of them goes through the
//! elimination engine or the word recursion of the library.

#![allow(dead_code)]

use std::collections::BTreeMap;

use forge_core::algebra::{Monomial, OpSymbol, Polynomial};
use forge_core::Rational;
use num_traits::Zero;
use rand::Rng;

/// Rank of a list of sparse rows by dense exact elimination.
pub fn dense_rank<K: Ord + Clone>(rows: &[BTreeMap<K, Rational>]) -> usize {
    let mut cols: BTreeMap<K, usize> = BTreeMap::new();
    for r in rows {
        for k in r.keys() {
            let n = cols.len();
            cols.entry(k.clone()).or_insert(n);
        }
    }
    let width = cols.len();
    let mut m: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| {
            let mut v = vec![Rational::zero(); width];
            for (k, c) in r {
                v[cols[k]] = c.clone();
            }
            v
        })
        .collect();
    let mut rank = 0;
    for col in 0..width {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(rank, p);
        let pivot = m[rank].clone();
        for row in m.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let f = &row[col] / &pivot[col];
            for (x, y) in row.iter_mut().zip(&pivot).skip(col) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn coords(p: &Polynomial) -> BTreeMap<Monomial, Rational> {
    p.terms().map(|(m, c)| (m.clone(), c.clone())).collect()
}

/// Span equality of two polynomial lists: rank(A) = rank(B) = rank(A ∪ B).
pub fn same_span(a: &[Polynomial], b: &[Polynomial]) -> (bool, usize, usize, usize) {
    let ra: Vec<_> = a.iter().map(coords).collect();
    let rb: Vec<_> = b.iter().map(coords).collect();
    let both: Vec<_> = ra.iter().chain(&rb).cloned().collect();
    let (x, y, z) = (dense_rank(&ra), dense_rank(&rb), dense_rank(&both));
    (x == y && y == z, x, y, z)
}

/// Binary bracket trees over named letters.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Tree {
    Leaf(char),
    Mul(Box<Tree>, Box<Tree>),
}

impl Tree {
    pub fn mul(a: Tree, b: Tree) -> Tree {
        Tree::Mul(Box::new(a), Box::new(b))
    }

    pub fn degree(&self) -> usize {
        match self {
            Tree::Leaf(_) => 1,
            Tree::Mul(a, b) => a.degree() + b.degree(),
        }
    }

    pub fn to_monomial(&self, op: &OpSymbol) -> Monomial {
        match self {
            Tree::Leaf(c) => Monomial::leaf(c.to_string().as_str()),
            Tree::Mul(a, b) => Monomial::apply(op, vec![a.to_monomial(op), b.to_monomial(op)]),
        }
    }

    // left-normed trees read off as words
    fn word(&self) -> Option<String> {
        match self {
            Tree::Leaf(c) => Some(c.to_string()),
            Tree::Mul(a, b) => match **b {
                Tree::Leaf(c) => a.word().map(|w| w + &c.to_string()),
                _ => None,
            },
        }
    }

    // one step of x(yz) -> (xy)z - (xz)y at the leftmost-outermost redex
    fn rewrite(&self) -> Option<Vec<(i64, Tree)>> {
        match self {
            Tree::Leaf(_) => None,
            Tree::Mul(x, r) => {
                if let Tree::Mul(y, z) = &**r {
                    let xy = Tree::mul((**x).clone(), (**y).clone());
                    let xz = Tree::mul((**x).clone(), (**z).clone());
                    return Some(vec![(1, Tree::mul(xy, (**z).clone())), (-1, Tree::mul(xz, (**y).clone()))]);
                }
                x.rewrite().map(|v| v.into_iter().map(|(c, t)| (c, Tree::mul(t, (**r).clone()))).collect())
            }
        }
    }
}

/// Normal form in the free right Leibniz algebra by exhaustive rewriting.
pub fn leibniz_normal_form(t: &Tree) -> BTreeMap<String, i64> {
    let mut out: BTreeMap<String, i64> = BTreeMap::new();
    let mut work = vec![(1i64, t.clone())];
    while let Some((c, t)) = work.pop() {
        match t.rewrite() {
            Some(next) => work.extend(next.into_iter().map(|(k, s)| (c * k, s))),
            None => *out.entry(t.word().expect("irreducible trees are left-normed")).or_insert(0) += c,
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// A random bracketing of the given letters.
pub fn random_tree(rng: &mut impl Rng, letters: &[char]) -> Tree {
    if letters.len() == 1 {
        return Tree::Leaf(letters[0]);
    }
    let split = rng.gen_range(1..letters.len());
    Tree::mul(random_tree(rng, &letters[..split]), random_tree(rng, &letters[split..]))
}
