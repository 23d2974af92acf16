//! Sparse exact Gaussian elimination with combination tracking.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::Rational;

/// Sparse vector: column index to nonzero coefficient.
pub type SparseVec = BTreeMap<usize, Rational>;

/// `acc += factor * v`, dropping entries that cancel.
pub fn axpy(acc: &mut SparseVec, factor: &Rational, v: &SparseVec) {
    for (k, c) in v {
        let delta = factor * c;
        match acc.get_mut(k) {
            Some(e) => {
                *e += delta;
                if e.is_zero() {
                    acc.remove(k);
                }
            }
            None => {
                if !delta.is_zero() {
                    acc.insert(*k, delta);
                }
            }
        }
    }
}

/// Bijection between keys and column indices, in insertion order.
#[derive(Clone, Debug)]
pub struct Coordinates<K: Ord + Clone> {
    keys: Vec<K>,
    index: BTreeMap<K, usize>,
}

impl<K: Ord + Clone> Default for Coordinates<K> {
    fn default() -> Self {
        Coordinates { keys: Vec::new(), index: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> Coordinates<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_keys(keys: impl IntoIterator<Item = K>) -> Self {
        let mut c = Self::new();
        for k in keys {
            c.intern(k);
        }
        c
    }

    pub fn intern(&mut self, k: K) -> usize {
        if let Some(&i) = self.index.get(&k) {
            return i;
        }
        let i = self.keys.len();
        self.index.insert(k.clone(), i);
        self.keys.push(k);
        i
    }

    pub fn get(&self, k: &K) -> Option<usize> {
        self.index.get(k).copied()
    }

    pub fn key(&self, i: usize) -> &K {
        &self.keys[i]
    }

    pub fn keys(&self) -> &[K] {
        &self.keys
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }
}

#[derive(Clone, Debug)]
struct Row {
    vec: SparseVec,
    generator: usize,
    // row = scale * (generator - sum factor * earlier row)
    scale: Rational,
    steps: Vec<(usize, Rational)>,
}

/// Outcome of reducing a vector against an [`Echelon`].
#[derive(Clone, Debug)]
pub struct Reduction {
    /// What is left after elimination; empty iff the vector is in the span.
    pub residual: SparseVec,
    // multipliers of rows (by row id) that were subtracted
    steps: Vec<(usize, Rational)>,
}

impl Reduction {
    pub fn in_span(&self) -> bool {
        self.residual.is_empty()
    }
}

/// Row echelon form built one generator at a time. Pivots are leftmost
/// nonzero columns and are normalized to one. Each row remembers how it was
/// eliminated, so combinations of generators are recovered on demand.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<Row>,
    pivots: BTreeMap<usize, usize>,
    generators: usize,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Generators (by insertion index) that enlarged the span.
    pub fn independent(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.generator).collect()
    }

    pub fn reduce(&self, v: &SparseVec) -> Reduction {
        let mut residual = v.clone();
        let mut steps = Vec::new();
        let mut cursor = 0;
        loop {
            let next = residual.range(cursor..).find_map(|(k, c)| self.pivots.get(k).map(|&r| (*k, r, c.clone())));
            let Some((k, r, c)) = next else { break };
            axpy(&mut residual, &-c.clone(), &self.rows[r].vec);
            steps.push((r, c));
            cursor = k + 1;
        }
        Reduction { residual, steps }
    }

    /// Generator coefficients with `v = residual + sum combo[g] * gen[g]`.
    pub fn combination(&self, red: &Reduction) -> SparseVec {
        let mut by_row: BTreeMap<usize, Rational> = BTreeMap::new();
        for (r, c) in &red.steps {
            *by_row.entry(*r).or_insert_with(Rational::zero) += c;
        }
        let mut combo = SparseVec::new();
        while let Some((r, c)) = by_row.pop_last() {
            if c.is_zero() {
                continue;
            }
            let row = &self.rows[r];
            let c = c * &row.scale;
            for (s, f) in &row.steps {
                *by_row.entry(*s).or_insert_with(Rational::zero) -= &c * f;
            }
            let e = combo.entry(row.generator).or_insert_with(Rational::zero);
            *e += c;
            if e.is_zero() {
                combo.remove(&row.generator);
            }
        }
        combo
    }

    /// Adds the next generator. Returns its reduction: an empty residual
    /// means it was dependent on the earlier ones.
    pub fn insert(&mut self, v: &SparseVec) -> Reduction {
        let g = self.generators;
        self.generators += 1;
        let red = self.reduce(v);
        if let Some((&pivot, lead)) = red.residual.iter().next() {
            let scale = lead.recip();
            let vec = red.residual.iter().map(|(k, c)| (*k, c * &scale)).collect();
            self.pivots.insert(pivot, self.rows.len());
            self.rows.push(Row { vec, generator: g, scale, steps: red.steps.clone() });
        }
        red
    }

    /// Rows of the reduced row echelon form, ordered by pivot.
    pub fn reduced_rows(&self) -> Vec<SparseVec> {
        let mut rows: Vec<(usize, SparseVec)> = self.pivots.iter().map(|(p, r)| (*p, self.rows[*r].vec.clone())).collect();
        for i in (0..rows.len()).rev() {
            let (pivot, row) = rows[i].clone();
            for (_, other) in rows.iter_mut().take(i) {
                if let Some(c) = other.get(&pivot).cloned() {
                    axpy(other, &-c, &row);
                }
            }
        }
        rows.into_iter().map(|(_, r)| r).collect()
    }
}

/// Rank of a list of vectors.
pub fn rank(vectors: &[SparseVec]) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Basis of the null space of the map sending unit vector `i` to
/// `images[i]`, in reduced row echelon form.
pub fn kernel(images: &[SparseVec]) -> Vec<SparseVec> {
    let mut e = Echelon::new();
    let mut relations = Echelon::new();
    for (i, v) in images.iter().enumerate() {
        let red = e.insert(v);
        if red.in_span() {
            let mut rel: SparseVec = e.combination(&red).into_iter().map(|(k, c)| (k, -c)).collect();
            rel.insert(i, Rational::one());
            relations.insert(&rel);
        }
    }
    relations.reduced_rows()
}

/// Inverse of a dense square matrix, or `None` if it is singular.
pub fn invert(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n, "square matrix");
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        let pivot = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn v(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|&(k, c)| (k, rat(c, 1))).collect()
    }

    #[test]
    fn combination_reproduces_vector() {
        let gens = [v(&[(0, 1), (1, 2)]), v(&[(1, 1), (2, 1)]), v(&[(0, 2), (2, 3)])];
        let mut e = Echelon::new();
        for g in &gens {
            e.insert(g);
        }
        let target = v(&[(0, 3), (1, 2), (2, -4)]);
        let red = e.reduce(&target);
        let mut sum = red.residual.clone();
        for (g, c) in &e.combination(&red) {
            axpy(&mut sum, c, &gens[*g]);
        }
        assert_eq!(sum, target);
    }

    #[test]
    fn dependent_generator_is_detected() {
        let mut e = Echelon::new();
        e.insert(&v(&[(0, 1), (1, 1)]));
        e.insert(&v(&[(1, 1), (2, 1)]));
        let red = e.insert(&v(&[(0, 1), (2, -1)]));
        assert!(red.in_span());
        assert_eq!(e.combination(&red), v(&[(0, 1), (1, -1)]));
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn kernel_of_small_map() {
        // columns: e0 -> (1,0), e1 -> (0,1), e2 -> (1,1), e3 -> 0
        let images = [v(&[(0, 1)]), v(&[(1, 1)]), v(&[(0, 1), (1, 1)]), v(&[])];
        let k = kernel(&images);
        assert_eq!(k, vec![v(&[(0, 1), (1, 1), (2, -1)]), v(&[(3, 1)])]);
    }

    #[test]
    fn inverse_of_small_matrix() {
        let m = vec![vec![rat(2, 1), rat(1, 1)], vec![rat(1, 1), rat(1, 1)]];
        let inv = invert(&m).unwrap();
        assert_eq!(inv, vec![vec![rat(1, 1), rat(-1, 1)], vec![rat(-1, 1), rat(2, 1)]]);
        assert!(invert(&[vec![rat(1, 1), rat(2, 1)], vec![rat(2, 1), rat(4, 1)]]).is_none());
    }

    #[test]
    fn reduced_rows_are_reduced() {
        let mut e = Echelon::new();
        e.insert(&v(&[(0, 1), (1, 1), (2, 1)]));
        e.insert(&v(&[(1, 1), (2, 2)]));
        let rows = e.reduced_rows();
        assert_eq!(rows, vec![v(&[(0, 1), (2, -1)]), v(&[(1, 1), (2, 2)])]);
    }
}
