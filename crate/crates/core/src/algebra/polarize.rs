use std::collections::BTreeMap;

use itertools::Itertools;

use super::identity::Identity;
use super::monomial::Monomial;
use super::polynomial::Polynomial;
use super::symbol::{fresh_variable, Variable};

/// Full linearization. A variable occurring up to `k > 1` times in a
/// monomial is replaced by `k` fresh variables (`a` becomes `a1..ak`), and
/// each monomial is summed over every way of distributing the fresh
/// variables over the occurrences. Monomials of lower multiplicity vanish in
/// the multilinear component. The result is scaled to a primitive integer
/// polynomial with positive leading coefficient.
pub fn polarize(id: &Identity) -> Identity {
    let lhs = id.lhs();
    let mut multiplicity: BTreeMap<Variable, usize> = BTreeMap::new();
    for (m, _) in lhs.terms() {
        for (v, n) in m.leaves().into_iter().counts() {
            let e = multiplicity.entry(v).or_insert(0);
            *e = (*e).max(n);
        }
    }

    let mut taken: Vec<Variable> = id.variables().to_vec();
    let mut copies: BTreeMap<Variable, Vec<Variable>> = BTreeMap::new();
    let mut new_vars = Vec::new();
    for v in id.variables() {
        let k = multiplicity.get(v).copied().unwrap_or(1);
        if k > 1 {
            let fresh: Vec<Variable> = (0..k)
                .map(|_| {
                    let f = fresh_variable(v.name(), &taken);
                    taken.push(f.clone());
                    f
                })
                .collect();
            new_vars.extend(fresh.iter().cloned());
            copies.insert(v.clone(), fresh);
        } else {
            new_vars.push(v.clone());
        }
    }

    let mut out = Polynomial::zero();
    for (m, c) in lhs.terms() {
        for lin in linearize_monomial(m, &copies) {
            out.add_term(lin, c.clone());
        }
    }
    Identity::with_variables(id.name(), out.primitive(), new_vars)
}

fn linearize_monomial(m: &Monomial, copies: &BTreeMap<Variable, Vec<Variable>>) -> Vec<Monomial> {
    let leaves = m.leaves();
    // positions of each repeated variable
    let mut slots: Vec<(Vec<usize>, &Vec<Variable>)> = Vec::new();
    for (v, fresh) in copies {
        let pos: Vec<usize> = leaves.iter().positions(|l| l == v).collect();
        if pos.is_empty() {
            continue;
        }
        if pos.len() != fresh.len() {
            return Vec::new();
        }
        slots.push((pos, fresh));
    }
    if slots.is_empty() {
        return vec![m.clone()];
    }
    let per_var: Vec<Vec<Vec<Variable>>> =
        slots.iter().map(|(_, fresh)| fresh.iter().cloned().permutations(fresh.len()).collect()).collect();
    per_var
        .into_iter()
        .multi_cartesian_product()
        .map(|choice| {
            let mut letters = leaves.clone();
            for ((pos, _), perm) in slots.iter().zip(choice) {
                for (p, v) in pos.iter().zip(perm) {
                    letters[*p] = v;
                }
            }
            m.with_leaves(&letters)
        })
        .collect()
}
