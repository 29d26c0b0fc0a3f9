//! Exact linear algebra over the rationals.
//!
//! Two engines, chosen by shape: a dense fraction-free elimination for
//! ordinary matrices, and an incremental sparse echelon form keyed by an
//! arbitrary ordered index type for very wide, mostly-empty row systems
//! (operator coefficient vectors). Both are exact; there is no pivoting
//! heuristic to tune because there is no roundoff.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::scalar::Scalar;

/// A dense matrix of exact rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    nrows: usize,
    ncols: usize,
    data: Vec<Vec<Scalar>>,
}

impl Matrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Matrix {
            nrows,
            ncols,
            data: vec![vec![Scalar::zero(); ncols]; nrows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        Matrix {
            nrows,
            ncols,
            data: rows,
        }
    }

    pub fn from_fn(nrows: usize, ncols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let data = (0..nrows)
            .map(|i| (0..ncols).map(|j| f(i, j)).collect())
            .collect();
        Matrix { nrows, ncols, data }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Scalar]> {
        self.data.iter().map(|r| r.as_slice())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().flatten().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.ncols, self.nrows, |i, j| self.data[j][i].clone())
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.ncols, other.ncols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix::from_rows(data)
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix::from_fn(self.nrows, self.ncols, |i, j| &self.data[i][j] * c)
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        Matrix::from_fn(self.nrows, self.ncols, |i, j| {
            &self.data[i][j] + &other.data[i][j]
        })
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        Matrix::from_fn(self.nrows, self.ncols, |i, j| {
            &self.data[i][j] - &other.data[i][j]
        })
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.ncols, other.nrows);
        Matrix::from_fn(self.nrows, other.ncols, |i, j| {
            let mut acc = Scalar::zero();
            for k in 0..self.ncols {
                if !self.data[i][k].is_zero() && !other.data[k][j].is_zero() {
                    acc += &self.data[i][k] * &other.data[k][j];
                }
            }
            acc
        })
    }

    pub fn trace(&self) -> Scalar {
        assert_eq!(self.nrows, self.ncols);
        (0..self.nrows).map(|i| self.data[i][i].clone()).sum()
    }

    /// Rank by fraction-free (Bareiss) elimination.
    ///
    /// Rows are first scaled to integers; the two-step determinant identity
    /// then keeps every intermediate entry an integer, which bounds
    /// coefficient growth far better than naive rational elimination.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<Scalar>> = self
            .data
            .iter()
            .map(|row| {
                let mut lcm = BigInt::one();
                for x in row {
                    let d = x.denom();
                    lcm = lcm.lcm(&d);
                }
                let f = Scalar::from_bigint(lcm);
                row.iter().map(|x| x * &f).collect()
            })
            .collect();

        let mut rank = 0;
        let mut prev = Scalar::one();
        let mut r = 0;
        for c in 0..self.ncols {
            if r >= self.nrows {
                break;
            }
            let Some(p) = (r..self.nrows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            for i in r + 1..self.nrows {
                for j in c + 1..self.ncols {
                    let t = &(&m[r][c] * &m[i][j]) - &(&m[i][c] * &m[r][j]);
                    m[i][j] = &t / &prev;
                }
                m[i][c] = Scalar::zero();
            }
            prev = m[r][c].clone();
            r += 1;
            rank += 1;
        }
        rank
    }

    /// Whether `v` lies in the row span of `self`.
    pub fn in_span(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ncols);
        let mut ech = Echelon::new();
        for row in &self.data {
            ech.insert(dense_to_sparse(row));
        }
        ech.contains(&dense_to_sparse(v))
    }

    /// Plain rational Gaussian elimination; kept as an independent oracle
    /// for the Bareiss path.
    #[cfg(test)]
    pub(crate) fn rank_gauss(&self) -> usize {
        let mut m = self.data.clone();
        let mut rank = 0;
        let mut r = 0;
        for c in 0..self.ncols {
            if r >= self.nrows {
                break;
            }
            let Some(p) = (r..self.nrows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = m[r][c].recip();
            for j in c..self.ncols {
                m[r][j] = &m[r][j] * &inv;
            }
            for i in 0..self.nrows {
                if i != r && !m[i][c].is_zero() {
                    let f = m[i][c].clone();
                    for j in c..self.ncols {
                        let t = &m[i][j] - &(&f * &m[r][j]);
                        m[i][j] = t;
                    }
                }
            }
            r += 1;
            rank += 1;
        }
        rank
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.nrows, self.ncols)?;
        for row in &self.data {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// A sparse vector keyed by an ordered index type.
pub type SparseVec<K> = BTreeMap<K, Scalar>;

pub fn dense_to_sparse(v: &[Scalar]) -> SparseVec<usize> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

/// `dst += c * src`, dropping entries that cancel to zero.
pub fn add_scaled<K: Ord + Clone>(dst: &mut SparseVec<K>, src: &SparseVec<K>, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    for (k, v) in src {
        let entry = dst.entry(k.clone()).or_default();
        *entry += v * c;
        if entry.is_zero() {
            dst.remove(k);
        }
    }
}

/// Incremental sparse row echelon form.
///
/// Rows are reduced only at their leading key, which is enough for rank and
/// span membership and avoids fill-in from full back-substitution.
pub struct Echelon<K: Ord + Clone> {
    // pivot key -> row with unit coefficient at the pivot
    rows: BTreeMap<K, SparseVec<K>>,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Echelon {
            rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` in place against the current basis until its leading
    /// key is not a pivot (or the row is empty).
    pub fn reduce(&self, row: &mut SparseVec<K>) {
        while let Some((k, c)) = row.first_key_value() {
            let Some(pivot_row) = self.rows.get(k) else {
                break;
            };
            let c = -c;
            add_scaled(row, pivot_row, &c);
        }
    }

    /// Returns true if the row was independent of the basis so far.
    pub fn insert(&mut self, mut row: SparseVec<K>) -> bool {
        self.reduce(&mut row);
        let Some((k, c)) = row.first_key_value() else {
            return false;
        };
        let (k, inv) = (k.clone(), c.recip());
        for v in row.values_mut() {
            *v *= &inv;
        }
        self.rows.insert(k, row);
        true
    }

    pub fn contains(&self, row: &SparseVec<K>) -> bool {
        let mut r = row.clone();
        self.reduce(&mut r);
        r.is_empty()
    }
}

/// An echelon form that additionally remembers how each basis row was built
/// from the inserted generators, so any vector in the span can be expressed
/// as an explicit linear combination of them.
pub struct SpanSolver<K: Ord + Clone> {
    n_gens: usize,
    rows: BTreeMap<K, (SparseVec<K>, SparseVec<usize>)>,
}

impl<K: Ord + Clone> Default for SpanSolver<K> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Ord + Clone> SpanSolver<K> {
    pub fn new() -> Self {
        SpanSolver {
            n_gens: 0,
            rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn n_generators(&self) -> usize {
        self.n_gens
    }

    fn reduce(&self, row: &mut SparseVec<K>, combo: &mut SparseVec<usize>) {
        while let Some((k, c)) = row.first_key_value() {
            let Some((pivot_row, pivot_combo)) = self.rows.get(k) else {
                break;
            };
            let c = -c;
            add_scaled(row, pivot_row, &c);
            add_scaled(combo, pivot_combo, &c);
        }
    }

    /// Registers the next generator; returns true if it enlarged the span.
    pub fn insert(&mut self, mut row: SparseVec<K>) -> bool {
        let idx = self.n_gens;
        self.n_gens += 1;
        let mut combo = SparseVec::new();
        combo.insert(idx, Scalar::one());
        self.reduce(&mut row, &mut combo);
        let Some((k, c)) = row.first_key_value() else {
            return false;
        };
        let (k, inv) = (k.clone(), c.recip());
        for v in row.values_mut() {
            *v *= &inv;
        }
        for v in combo.values_mut() {
            *v *= &inv;
        }
        self.rows.insert(k, (row, combo));
        true
    }

    /// If `v` is in the span, returns coefficients `c` with
    /// `v = sum c[i] * generator[i]` (indices in insertion order).
    pub fn express(&self, v: &SparseVec<K>) -> Option<Vec<(usize, Scalar)>> {
        let mut row = v.clone();
        let mut combo = SparseVec::new();
        // invariant: v = row + sum(combo[i] * gen[i])
        while let Some((k, c)) = row.first_key_value() {
            let (pivot_row, pivot_combo) = self.rows.get(k)?;
            let c = c.clone();
            add_scaled(&mut row, pivot_row, &(-&c));
            add_scaled(&mut combo, pivot_combo, &c);
        }
        Some(combo.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn mat(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| s(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_basics() {
        assert_eq!(Matrix::identity(4).rank(), 4);
        assert_eq!(Matrix::zeros(3, 5).rank(), 0);
        assert_eq!(mat(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(mat(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]).rank(), 2);
        assert_eq!(mat(&[&[0, 1], &[1, 0], &[1, 1]]).rank(), 2);
    }

    #[test]
    fn rank_with_fractions() {
        let m = Matrix::from_rows(vec![
            vec![Scalar::ratio(1, 2), Scalar::ratio(1, 3)],
            vec![Scalar::ratio(3, 2), Scalar::ratio(1, 1)],
        ]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn in_span_basics() {
        let m = mat(&[&[1, 0, 1], &[0, 1, 1]]);
        assert!(m.in_span(&[s(2), s(3), s(5)]));
        assert!(m.in_span(&[s(0), s(0), s(0)]));
        assert!(!m.in_span(&[s(1), s(1), s(1)]));
    }

    #[test]
    fn span_solver_expresses_combinations() {
        let mut sv = SpanSolver::new();
        sv.insert(dense_to_sparse(&[s(1), s(0), s(1)]));
        sv.insert(dense_to_sparse(&[s(0), s(2), s(0)]));
        sv.insert(dense_to_sparse(&[s(1), s(2), s(1)])); // dependent
        assert_eq!(sv.rank(), 2);

        let v = [s(3), s(4), s(3)];
        let combo = sv.express(&dense_to_sparse(&v)).unwrap();
        // reconstruct
        let gens = [[s(1), s(0), s(1)], [s(0), s(2), s(0)], [s(1), s(2), s(1)]];
        let mut rec = [s(0), s(0), s(0)];
        for (i, c) in &combo {
            for j in 0..3 {
                rec[j] += &gens[*i][j] * c;
            }
        }
        assert_eq!(rec.as_slice(), v.as_slice());
        assert!(sv.express(&dense_to_sparse(&[s(0), s(0), s(1)])).is_none());
    }

    #[test]
    fn echelon_agrees_with_dense_rank() {
        let m = mat(&[&[2, 4, 6], &[1, 2, 3], &[0, 1, 1], &[1, 3, 4]]);
        let mut ech = Echelon::new();
        for row in m.rows() {
            ech.insert(dense_to_sparse(row));
        }
        assert_eq!(ech.rank(), m.rank());
    }

    proptest! {
        #[test]
        fn bareiss_matches_gauss(
            entries in proptest::collection::vec(-9i64..=9, 20),
            dens in proptest::collection::vec(1i64..=4, 20),
        ) {
            let m = Matrix::from_fn(4, 5, |i, j| {
                let k = i * 5 + j;
                Scalar::ratio(entries[k], dens[k])
            });
            prop_assert_eq!(m.rank(), m.rank_gauss());
        }

        #[test]
        fn rank_invariants(entries in proptest::collection::vec(-5i64..=5, 16)) {
            let m = Matrix::from_fn(4, 4, |i, j| s(entries[i * 4 + j]));
            let r = m.rank();
            prop_assert_eq!(r, m.transpose().rank());

            // permute rows
            let mut perm = m.clone();
            let rows: Vec<Vec<Scalar>> = (0..4).rev().map(|i| perm.row(i).to_vec()).collect();
            perm = Matrix::from_rows(rows);
            prop_assert_eq!(perm.rank(), r);

            // scale a row by a nonzero rational
            let mut scaled_rows: Vec<Vec<Scalar>> = m.rows().map(|r| r.to_vec()).collect();
            for x in &mut scaled_rows[1] {
                *x = &*x * &Scalar::ratio(-7, 3);
            }
            prop_assert_eq!(Matrix::from_rows(scaled_rows).rank(), r);

            // sparse engine agrees
            let mut ech = Echelon::new();
            for row in m.rows() {
                ech.insert(dense_to_sparse(row));
            }
            prop_assert_eq!(ech.rank(), r);
        }
    }
}
