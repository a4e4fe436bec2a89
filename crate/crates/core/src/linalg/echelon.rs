use std::collections::BTreeMap;

use malachite_base::num::basic::traits::{One, Zero};

use super::{Rational, RationalMatrix, SubspaceBasis};

/// Sparse vector: strictly increasing column indices, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseRow {
    entries: Vec<(usize, Rational)>,
}

impl SparseRow {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_dense(v: &[Rational]) -> Self {
        Self {
            entries: v
                .iter()
                .enumerate()
                .filter(|(_, x)| **x != 0u32)
                .map(|(i, x)| (i, x.clone()))
                .collect(),
        }
    }

    /// Builds a row from unsorted `(column, value)` pairs, summing duplicates.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, Rational)>) -> Self {
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (c, v) in pairs {
            if v != 0u32 {
                *acc.entry(c).or_insert(Rational::ZERO) += v;
            }
        }
        Self {
            entries: acc.into_iter().filter(|(_, v)| *v != 0u32).collect(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn leading(&self) -> Option<(usize, &Rational)> {
        self.entries.first().map(|(c, v)| (*c, v))
    }

    pub fn get(&self, col: usize) -> Option<&Rational> {
        self.entries
            .binary_search_by_key(&col, |(c, _)| *c)
            .ok()
            .map(|i| &self.entries[i].1)
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, Rational)> {
        self.entries.iter()
    }

    pub fn scale(&mut self, c: &Rational) {
        for (_, v) in &mut self.entries {
            *v *= c;
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: &Rational, other: &SparseRow) {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let mut a = std::mem::take(&mut self.entries).into_iter().peekable();
        let mut b = other.entries.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some((ca, _)), Some((cb, _))) if ca < cb => out.push(a.next().unwrap()),
                (Some((ca, _)), Some((cb, _))) if ca > cb => {
                    let (cb, vb) = b.next().unwrap();
                    out.push((*cb, c * vb));
                }
                (Some(_), Some(_)) => {
                    let (ca, va) = a.next().unwrap();
                    let (_, vb) = b.next().unwrap();
                    let s = va + c * vb;
                    if s != 0u32 {
                        out.push((ca, s));
                    }
                }
                (Some(_), None) => out.push(a.next().unwrap()),
                (None, Some(_)) => {
                    let (cb, vb) = b.next().unwrap();
                    out.push((*cb, c * vb));
                }
                (None, None) => break,
            }
        }
        self.entries = out;
    }

    pub fn to_dense(&self, n: usize) -> Vec<Rational> {
        let mut v = vec![Rational::ZERO; n];
        for (c, x) in &self.entries {
            v[*c] = x.clone();
        }
        v
    }
}

/// Incrementally built row echelon form over the rationals.
///
/// Every stored pivot row has leading coefficient 1 at its key column.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    pivots: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Self {
            ncols,
            pivots: BTreeMap::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Reduces `row` against the pivots until its leading column is free.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        while let Some((c, v)) = row.leading() {
            match self.pivots.get(&c) {
                Some(p) => {
                    let coef = -v.clone();
                    row.add_scaled(&coef, p);
                }
                None => break,
            }
        }
        row
    }

    /// Inserts a row; returns `true` when it increased the rank.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let mut row = self.reduce(row);
        match row.leading() {
            None => false,
            Some((c, v)) => {
                let inv = Rational::ONE / v;
                row.scale(&inv);
                self.pivots.insert(c, row);
                true
            }
        }
    }

    pub fn insert_dense(&mut self, v: &[Rational]) -> bool {
        debug_assert_eq!(v.len(), self.ncols);
        self.insert(SparseRow::from_dense(v))
    }

    pub fn contains_dense(&self, v: &[Rational]) -> bool {
        self.reduce(SparseRow::from_dense(v)).is_empty()
    }

    /// Fully reduced rows keyed by pivot column.
    pub fn rref(&self) -> BTreeMap<usize, SparseRow> {
        let mut done: BTreeMap<usize, SparseRow> = BTreeMap::new();
        for (&p, row) in self.pivots.iter().rev() {
            let mut row = row.clone();
            // eliminate every later pivot column; `done` already holds the
            // fully reduced rows for those
            loop {
                let target = row
                    .iter()
                    .skip(1)
                    .find(|(c, _)| done.contains_key(c))
                    .map(|(c, v)| (*c, v.clone()));
                match target {
                    Some((c, v)) => row.add_scaled(&-v, &done[&c]),
                    None => break,
                }
            }
            done.insert(p, row);
        }
        done
    }

    /// Basis of the solution space of `row · x = 0` for all inserted rows.
    /// One vector per free column, with a 1 in that column.
    pub fn null_space(&self) -> Vec<Vec<Rational>> {
        let rref = self.rref();
        let free: Vec<usize> = (0..self.ncols).filter(|c| !rref.contains_key(c)).collect();
        let mut index_of_free = vec![usize::MAX; self.ncols];
        for (k, &f) in free.iter().enumerate() {
            index_of_free[f] = k;
        }
        let mut basis: Vec<Vec<Rational>> = free
            .iter()
            .map(|&f| {
                let mut v = vec![Rational::ZERO; self.ncols];
                v[f] = Rational::ONE;
                v
            })
            .collect();
        for (&p, row) in &rref {
            for (c, x) in row.iter().skip(1) {
                let k = index_of_free[*c];
                debug_assert!(k != usize::MAX);
                basis[k][p] = -x.clone();
            }
        }
        basis
    }
}

/// Exact null space of `m` as a subspace of `Q^cols`.
pub fn kernel(m: &RationalMatrix) -> SubspaceBasis {
    let mut e = Echelon::new(m.cols());
    for i in 0..m.rows() {
        e.insert_dense(m.row(i));
    }
    SubspaceBasis::from_independent_unchecked(m.cols(), e.null_space())
}

pub fn rank(m: &RationalMatrix) -> usize {
    let mut e = Echelon::new(m.cols());
    for i in 0..m.rows() {
        e.insert_dense(m.row(i));
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    #[test]
    fn identity_has_trivial_kernel() {
        assert_eq!(kernel(&RationalMatrix::identity(3)).dim(), 0);
    }

    #[test]
    fn zero_map_kernel_is_everything() {
        assert_eq!(kernel(&RationalMatrix::zeros(2, 3)).dim(), 3);
    }

    #[test]
    fn forced_row_reduction() {
        let m = RationalMatrix::from_i64(2, 3, &[1, 1, 0, 0, 0, 1]).unwrap();
        let k = kernel(&m);
        assert_eq!(k.dim(), 1);
        assert_eq!(k.vectors()[0], vec![int(-1), int(1), int(0)]);
    }

    #[test]
    fn sparse_add_cancels() {
        let mut a = SparseRow::from_dense(&[int(1), int(2), int(0)]);
        let b = SparseRow::from_dense(&[int(0), int(1), int(5)]);
        a.add_scaled(&int(-2), &b);
        assert_eq!(a.to_dense(3), vec![int(1), int(0), int(-10)]);
        assert_eq!(a.len(), 2);
    }

    #[test]
    fn rank_counts_dependent_rows_once() {
        let m = RationalMatrix::from_i64(3, 3, &[1, 2, 3, 2, 4, 6, 0, 1, 1]).unwrap();
        assert_eq!(rank(&m), 2);
    }
}
