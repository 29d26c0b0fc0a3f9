//! Graded sl(n) oracles.
//!
//! sl(n) with the grading induced by a subset of simple roots: the grade of
//! an elementary matrix E_ij counts the selected roots crossed between i
//! and j. These small matrix algebras are the independent ground truth for
//! the derived triple systems and for the isomorphism checks.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::linalg::{Echelon, Matrix, SpanSolver};
use crate::scalar::Scalar;

#[derive(Debug, Error)]
pub enum MatLieError {
    #[error("grading depth nu = {nu} exceeds the supported 5-grading (nu <= 2)")]
    GradingTooDeep { nu: i32 },
    #[error("invalid root subset for sl({n}): {msg}")]
    BadRoots { n: usize, msg: String },
    #[error("involution verification failed: {0}")]
    InvolutionCheck(String),
}

pub struct MatrixLieAlgebra {
    label: String,
    n: usize,
    basis: Vec<Matrix>,
    labels: Vec<String>,
    grades: Vec<i32>,
    char_elt: Matrix,
}

/// xy − yx.
pub fn commutator(x: &Matrix, y: &Matrix) -> Matrix {
    x.matmul(y).sub(&y.matmul(x))
}

fn unit_matrix(n: usize, i: usize, j: usize) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    m.set(i, j, Scalar::one());
    m
}

/// sl(n) graded by the simple roots in `roots` (1-based, ⊆ {1..n−1}).
pub fn build_sl(n: usize, roots: &[usize]) -> Result<MatrixLieAlgebra, MatLieError> {
    if n < 2 {
        return Err(MatLieError::BadRoots {
            n,
            msg: "n must be at least 2".into(),
        });
    }
    let mut rs: Vec<usize> = roots.to_vec();
    rs.sort_unstable();
    rs.dedup();
    if rs.iter().any(|&r| r == 0 || r >= n) {
        return Err(MatLieError::BadRoots {
            n,
            msg: format!("roots must lie in 1..{}", n - 1),
        });
    }
    // w[i] = number of selected roots strictly below row i (0-based rows)
    let w: Vec<i32> = (0..n)
        .map(|i| rs.iter().filter(|&&r| r <= i).count() as i32)
        .collect();

    let mut basis = Vec::new();
    let mut labels = Vec::new();
    let mut grades = Vec::new();
    let mut nu = 0i32;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let k = w[j] - w[i];
            nu = nu.max(k.abs());
            basis.push(unit_matrix(n, i, j));
            labels.push(format!("E{}{}", i + 1, j + 1));
            grades.push(k);
        }
    }
    if nu > 2 {
        return Err(MatLieError::GradingTooDeep { nu });
    }
    for k in 0..n - 1 {
        let mut h = Matrix::zeros(n, n);
        h.set(k, k, Scalar::one());
        h.set(k + 1, k + 1, -Scalar::one());
        basis.push(h);
        labels.push(format!("H{}", k + 1));
        grades.push(0);
    }

    // characteristic element: diagonal d_i = −w_i + avg(w), trace zero,
    // [Z, E_ij] = grade(E_ij) · E_ij
    let total: i32 = w.iter().sum();
    let avg = Scalar::ratio(total as i64, n as i64);
    let mut char_elt = Matrix::zeros(n, n);
    for i in 0..n {
        char_elt.set(i, i, &avg - &Scalar::from_int(w[i] as i64));
    }
    for (b, &k) in basis.iter().zip(&grades) {
        let lhs = commutator(&char_elt, b);
        assert_eq!(lhs, b.scale(&Scalar::from_int(k as i64)), "characteristic element broken");
    }

    let label = format!(
        "sl({}):roots={}",
        n,
        rs.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(",")
    );
    Ok(MatrixLieAlgebra {
        label,
        n,
        basis,
        labels,
        grades,
        char_elt,
    })
}

impl MatrixLieAlgebra {
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_matrix(&self, i: usize) -> &Matrix {
        &self.basis[i]
    }

    pub fn basis_label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn grade(&self, i: usize) -> i32 {
        self.grades[i]
    }

    pub fn char_elt(&self) -> &Matrix {
        &self.char_elt
    }

    pub fn nu(&self) -> i32 {
        self.grades.iter().map(|g| g.abs()).max().unwrap_or(0)
    }

    pub fn basis_indices_of_grade(&self, k: i32) -> Vec<usize> {
        (0..self.basis.len())
            .filter(|&i| self.grades[i] == k)
            .collect()
    }

    pub fn grade_basis_matrices(&self, k: i32) -> Vec<Matrix> {
        self.basis_indices_of_grade(k)
            .into_iter()
            .map(|i| self.basis[i].clone())
            .collect()
    }

    pub fn graded_dims(&self) -> BTreeMap<i32, usize> {
        let mut dims = BTreeMap::new();
        for &g in &self.grades {
            *dims.entry(g).or_insert(0) += 1;
        }
        dims
    }

    /// Rank of span{[g₋₁, g₁]} — equals dim g₀ for the simple graded cases
    /// built here.
    pub fn middle_commutator_rank(&self) -> usize {
        let lower = self.basis_indices_of_grade(-1);
        let upper = self.basis_indices_of_grade(1);
        let mut ech = Echelon::new();
        for &i in &lower {
            for &j in &upper {
                let c = commutator(&self.basis[i], &self.basis[j]);
                ech.insert(crate::triple::flatten_matrix(&c));
            }
        }
        ech.rank()
    }
}

/// A verified graded involution (or pseudoinvolution) of a matrix algebra.
pub struct GradedInvolution {
    kind: InvolutionKind,
}

enum InvolutionKind {
    /// x ↦ −xᵀ (the Chevalley involution of sl(n))
    NegTranspose,
}

impl GradedInvolution {
    pub fn apply(&self, m: &Matrix) -> Matrix {
        match self.kind {
            InvolutionKind::NegTranspose => m.transpose().scale(&-Scalar::one()),
        }
    }
}

/// The Chevalley involution x ↦ −xᵀ, verified to be a graded involution of
/// the given algebra: squares to the identity, respects brackets, and maps
/// grade k onto grade −k.
pub fn chevalley_involution(g: &MatrixLieAlgebra) -> Result<GradedInvolution, MatLieError> {
    let tau = GradedInvolution {
        kind: InvolutionKind::NegTranspose,
    };
    for i in 0..g.dim() {
        let b = g.basis_matrix(i);
        if tau.apply(&tau.apply(b)) != *b {
            return Err(MatLieError::InvolutionCheck(format!(
                "tau^2 != id on {}",
                g.basis_label(i)
            )));
        }
    }
    for i in 0..g.dim() {
        for j in 0..g.dim() {
            let lhs = tau.apply(&commutator(g.basis_matrix(i), g.basis_matrix(j)));
            let rhs = commutator(&tau.apply(g.basis_matrix(i)), &tau.apply(g.basis_matrix(j)));
            if lhs != rhs {
                return Err(MatLieError::InvolutionCheck(format!(
                    "tau not an automorphism on [{}, {}]",
                    g.basis_label(i),
                    g.basis_label(j)
                )));
            }
        }
    }
    // grade swap: τ(g_k) ⊆ g_{−k}
    for k in -g.nu()..=g.nu() {
        let mut ech = Echelon::new();
        for m in g.grade_basis_matrices(-k) {
            ech.insert(crate::triple::flatten_matrix(&m));
        }
        for m in g.grade_basis_matrices(k) {
            if !ech.contains(&crate::triple::flatten_matrix(&tau.apply(&m))) {
                return Err(MatLieError::InvolutionCheck(format!(
                    "tau does not map grade {} into grade {}",
                    k, -k
                )));
            }
        }
    }
    Ok(tau)
}

/// Span helper over matrices, tracking how elements decompose.
pub fn matrix_span_solver(mats: &[Matrix]) -> SpanSolver<usize> {
    let mut solver = SpanSolver::new();
    for m in mats {
        solver.insert(crate::triple::flatten_matrix(m));
    }
    solver
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl3_three_graded() {
        let g = build_sl(3, &[1]).unwrap();
        let dims = g.graded_dims();
        assert_eq!(dims.get(&-1), Some(&2));
        assert_eq!(dims.get(&0), Some(&4));
        assert_eq!(dims.get(&1), Some(&2));
        assert_eq!(g.dim(), 8);
        assert_eq!(g.nu(), 1);
    }

    #[test]
    fn sl3_five_graded() {
        let g = build_sl(3, &[1, 2]).unwrap();
        let dims = g.graded_dims();
        let expected: Vec<(i32, usize)> = vec![(-2, 1), (-1, 2), (0, 2), (1, 2), (2, 1)];
        assert_eq!(dims.into_iter().collect::<Vec<_>>(), expected);
    }

    #[test]
    fn sl4_five_graded() {
        let g = build_sl(4, &[1, 3]).unwrap();
        let dims = g.graded_dims();
        let expected: Vec<(i32, usize)> = vec![(-2, 1), (-1, 4), (0, 5), (1, 4), (2, 1)];
        assert_eq!(dims.into_iter().collect::<Vec<_>>(), expected);
        assert_eq!(g.dim(), 15);
    }

    #[test]
    fn too_deep_grading_is_an_error() {
        match build_sl(4, &[1, 2, 3]) {
            Err(MatLieError::GradingTooDeep { nu: 3 }) => {}
            other => panic!("expected GradingTooDeep, got {:?}", other.map(|g| g.label().to_string())),
        }
    }

    #[test]
    fn grade_additivity() {
        let g = build_sl(4, &[1, 3]).unwrap();
        for i in 0..g.dim() {
            for j in 0..g.dim() {
                let c = commutator(g.basis_matrix(i), g.basis_matrix(j));
                if c.is_zero() {
                    continue;
                }
                let k = g.grade(i) + g.grade(j);
                let mut ech = Echelon::new();
                for m in g.grade_basis_matrices(k) {
                    ech.insert(crate::triple::flatten_matrix(&m));
                }
                assert!(
                    ech.contains(&crate::triple::flatten_matrix(&c)),
                    "[{}, {}] escaped grade {}",
                    g.basis_label(i),
                    g.basis_label(j),
                    k
                );
            }
        }
    }

    #[test]
    fn middle_commutators_span_g0() {
        for g in [build_sl(3, &[1]).unwrap(), build_sl(4, &[1, 3]).unwrap()] {
            assert_eq!(g.middle_commutator_rank(), g.basis_indices_of_grade(0).len());
        }
    }

    #[test]
    fn chevalley_involution_verified() {
        let g = build_sl(3, &[1, 2]).unwrap();
        let tau = chevalley_involution(&g).unwrap();
        // τ(E12) = −E21
        let e12 = unit_matrix(3, 0, 1);
        assert_eq!(tau.apply(&e12), unit_matrix(3, 1, 0).scale(&-Scalar::one()));
        // τ(h) = −h on diagonal Cartan
        let mut h = Matrix::zeros(3, 3);
        h.set(0, 0, Scalar::one());
        h.set(1, 1, -Scalar::one());
        assert_eq!(tau.apply(&h), h.scale(&-Scalar::one()));
    }

    #[test]
    fn commutator_basics() {
        let e12 = unit_matrix(3, 0, 1);
        let e21 = unit_matrix(3, 1, 0);
        let c = commutator(&e12, &e21);
        let mut expected = Matrix::zeros(3, 3);
        expected.set(0, 0, Scalar::one());
        expected.set(1, 1, -Scalar::one());
        assert_eq!(c, expected);
        assert!(commutator(&e12, &e12).is_zero());
    }

    #[test]
    fn dimension_bookkeeping() {
        for (n, roots) in [(3usize, vec![1usize]), (3, vec![1, 2]), (4, vec![1, 3]), (5, vec![2])] {
            let g = build_sl(n, &roots).unwrap();
            let total: usize = g.graded_dims().values().sum();
            assert_eq!(total, n * n - 1);
        }
    }
}
