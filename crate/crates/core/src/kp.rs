//! The Kolesnikov-Pozhidaev algorithm: turns the multilinear identities of a
//! variety of n-ary algebras into identities for n new n-ary operations.
//!
//! Part 1 re-subscripts every operation occurrence relative to a central
//! indeterminate. Part 2 adds the bar-type identities saying that the new
//! operations are interchangeable in argument `i` of variant `j` when
//! `i != j`.

use std::collections::{BTreeMap, BTreeSet};

use crate::algebra::{Identity, Monomial, OpSymbol, Polynomial, Variable};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct VarietyPresentation {
    pub signature: BTreeSet<OpSymbol>,
    pub identities: Vec<Identity>,
}

impl VarietyPresentation {
    pub fn new(identities: Vec<Identity>) -> Self {
        let signature = identities.iter().flat_map(|id| id.signature().iter().map(OpSymbol::base)).collect();
        VarietyPresentation { signature, identities }
    }
}

#[derive(Clone, Debug)]
pub struct KpOutput {
    /// One group per source identity, one entry per central indeterminate.
    pub part1: Vec<Vec<Identity>>,
    pub part2: Vec<Identity>,
    /// Variant family produced for each source operation.
    pub families: BTreeMap<OpSymbol, Vec<OpSymbol>>,
}

impl KpOutput {
    pub fn part1_flat(&self) -> Vec<Identity> {
        self.part1.iter().flatten().cloned().collect()
    }

    pub fn all(&self) -> Vec<Identity> {
        let mut v = self.part1_flat();
        v.extend(self.part2.iter().cloned());
        v
    }
}

/// Part 1: one identity per central indeterminate, in variable order.
pub fn kp_part1(id: &Identity) -> Result<Vec<Identity>> {
    if !id.is_multilinear() {
        return Err(Error::NotMultilinear(id.name().to_string()));
    }
    Ok(id
        .variables()
        .iter()
        .enumerate()
        .map(|(i, central)| {
            let lhs = id.lhs().map_monomials(|m| {
                let leaves = m.leaves();
                let pos = leaves.iter().position(|v| v == central).expect("multilinear");
                resubscript(m, pos, 0)
            });
            Identity::with_variables(format!("{}.{}", id.name(), i + 1), lhs, id.variables().to_vec())
        })
        .collect())
}

/// Re-subscripts `m`, whose leaves start at `offset`, for a central
/// indeterminate at leaf position `central`.
fn resubscript(m: &Monomial, central: usize, offset: usize) -> Monomial {
    match m {
        Monomial::Leaf(_) => m.clone(),
        Monomial::Apply(op, children) => {
            let n = op.arity() as u32;
            let mut start = offset;
            let mut variant = None;
            let mut new_children = Vec::with_capacity(children.len());
            for (j, child) in children.iter().enumerate() {
                let end = start + child.degree();
                if (start..end).contains(&central) {
                    variant = Some(j as u32 + 1);
                }
                new_children.push(resubscript(child, central, start));
                start = end;
            }
            let variant = variant.unwrap_or(if central < offset { 1 } else { n });
            Monomial::Apply(op.base().with_variant(variant), new_children)
        }
    }
}

fn letters(count: usize) -> Vec<Variable> {
    (0..count)
        .map(|k| if count <= 26 { Variable::new(&((b'a' + k as u8) as char).to_string()) } else { Variable::new(&format!("x{}", k + 1)) })
        .collect()
}

// {a_1, .., {b_1..b_n}_k at position i, .., a_n}_j with leaves named in order
fn interchange_monomial(op: &OpSymbol, j: u32, i: usize, k: u32) -> Monomial {
    let n = op.arity();
    let names = letters(2 * n - 1);
    let inner = Monomial::apply(&op.base().with_variant(k), names[i..i + n].iter().cloned().map(Monomial::Leaf).collect());
    let mut outer_args: Vec<Monomial> = Vec::with_capacity(n);
    outer_args.extend(names[..i].iter().cloned().map(Monomial::Leaf));
    outer_args.push(inner);
    outer_args.extend(names[i + n..].iter().cloned().map(Monomial::Leaf));
    Monomial::apply(&op.base().with_variant(j), outer_args)
}

fn interchange(op: &OpSymbol, j: u32, i: usize, k: u32, l: u32, name: String) -> Identity {
    let lhs = Polynomial::monomial(interchange_monomial(op, j, i, k)) - Polynomial::monomial(interchange_monomial(op, j, i, l));
    let n = op.arity();
    Identity::with_variables(name, lhs, letters(2 * n - 1))
}

/// Part 2, non-redundant selection: variant 1 paired against each other
/// variant, ordered by (j, i, k, l). Names follow `j.i.a`, `j.i.b`, ...
pub fn kp_part2(op: &OpSymbol) -> Vec<Identity> {
    let n = op.arity() as u32;
    let mut out = Vec::new();
    for j in 1..=n {
        for i in (1..=n).filter(|&i| i != j) {
            for l in 2..=n {
                let tag = (b'a' + (l - 2) as u8) as char;
                out.push(interchange(op, j, i as usize - 1, 1, l, format!("{j}.{i}.{tag}")));
            }
        }
    }
    out
}

/// Part 2 over every pair of inner variants `k != l`.
pub fn kp_part2_full(op: &OpSymbol) -> Vec<Identity> {
    let n = op.arity() as u32;
    let mut out = Vec::new();
    for j in 1..=n {
        for i in (1..=n).filter(|&i| i != j) {
            for k in 1..=n {
                for l in (1..=n).filter(|&l| l != k) {
                    out.push(interchange(op, j, i as usize - 1, k, l, format!("{j}.{i}.{k}~{l}")));
                }
            }
        }
    }
    out
}

/// Both parts over a whole presentation.
pub fn kp_apply(v: &VarietyPresentation) -> Result<KpOutput> {
    let part1 = v.identities.iter().map(kp_part1).collect::<Result<Vec<_>>>()?;
    let mut part2 = Vec::new();
    let mut families = BTreeMap::new();
    for op in &v.signature {
        part2.extend(kp_part2(op));
        families.insert(op.clone(), (1..=op.arity() as u32).map(|k| op.with_variant(k)).collect());
    }
    Ok(KpOutput { part1, part2, families })
}
