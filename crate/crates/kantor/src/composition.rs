//! Composition algebras built by Cayley–Dickson doubling, their split
//! forms, and tensor-product algebras K⊗O.
//!
//! Every algebra here has a distinguished basis whose pairwise products are
//! single signed basis elements, so the whole structure is a table of
//! (index, sign) pairs. Conjugation is diagonal on the basis.
//!
//! Doubling convention: on pairs, (a,b)(c,d) = (ac + γ d*b, da + bc*) and
//! (a,b)* = (a*, −b). With γ = −1 the doubled algebra is the division form
//! (the new unit squares to −1); with γ = +1 it is the split form.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("elements belong to different algebras ({0} vs {1})")]
    Mismatch(String, String),
    #[error("norm form is only defined on the doubling chain, not on {0}")]
    NormUndefined(String),
}

/// An algebra with unit basis element 0, a monomial multiplication table
/// and a diagonal conjugation.
pub struct CompositionAlgebra {
    label: String,
    dim: usize,
    doubling_chain: bool,
    gammas: Vec<i64>,
    /// e_i e_j = sign * e_k, stored as (k, sign) at index i*dim + j
    table: Vec<(usize, Scalar)>,
    /// e_i* = conj[i] * e_i
    conj: Vec<Scalar>,
    basis_labels: Vec<String>,
}

impl CompositionAlgebra {
    pub fn real() -> Self {
        CompositionAlgebra {
            label: "R".into(),
            dim: 1,
            doubling_chain: true,
            gammas: vec![],
            table: vec![(0, Scalar::one())],
            conj: vec![Scalar::one()],
            basis_labels: vec!["1".into()],
        }
    }

    /// Cayley–Dickson doubling with parameter `gamma` (+1 or −1).
    pub fn cayley_dickson_double(&self, gamma: i64) -> Self {
        assert!(gamma == 1 || gamma == -1, "gamma must be +1 or -1");
        let n = self.dim;
        let dim = 2 * n;
        let g = Scalar::from_int(gamma);
        let mut table = vec![(0usize, Scalar::zero()); dim * dim];
        for i in 0..n {
            for j in 0..n {
                let (k, s) = self.mul_basis(i, j);
                let (kr, sr) = self.mul_basis(j, i);
                let cj = &self.conj[j];
                // (x,0)(y,0) = (xy, 0)
                table[i * dim + j] = (k, s.clone());
                // (x,0)(0,y) = (0, yx)
                table[i * dim + (n + j)] = (n + kr, sr.clone());
                // (0,x)(y,0) = (0, x y*)
                table[(n + i) * dim + j] = (n + k, cj * &s);
                // (0,x)(0,y) = (gamma y* x, 0)
                table[(n + i) * dim + (n + j)] = (kr, &(cj * &sr) * &g);
            }
        }
        let mut conj = self.conj.clone();
        conj.extend(std::iter::repeat(-Scalar::one()).take(n));
        let label = match (self.label.as_str(), gamma) {
            ("R", -1) => "C".into(),
            ("C", -1) => "H".into(),
            ("H", -1) => "O".into(),
            ("R", 1) => "split-C".into(),
            ("C", 1) => "split-H".into(),
            ("H", 1) => "split-O".into(),
            (l, g) => format!("CD({},{:+})", l, g),
        };
        let basis_labels = (0..dim)
            .map(|i| if i == 0 { "1".into() } else { format!("e{}", i) })
            .collect();
        let mut gammas = self.gammas.clone();
        gammas.push(gamma);
        let alg = CompositionAlgebra {
            label,
            dim,
            doubling_chain: self.doubling_chain,
            gammas,
            table,
            conj,
            basis_labels,
        };
        alg.assert_well_formed();
        alg
    }

    pub fn complex() -> Self {
        Self::real().cayley_dickson_double(-1)
    }

    pub fn quaternion() -> Self {
        Self::complex().cayley_dickson_double(-1)
    }

    pub fn octonion() -> Self {
        Self::quaternion().cayley_dickson_double(-1)
    }

    pub fn split_complex() -> Self {
        Self::real().cayley_dickson_double(1)
    }

    pub fn split_quaternion() -> Self {
        Self::complex().cayley_dickson_double(1)
    }

    pub fn split_octonion() -> Self {
        Self::quaternion().cayley_dickson_double(1)
    }

    /// Product algebra on the basis e_i ⊗ f_j with factor-wise product and
    /// conjugation (a,b)* = (a*, b*).
    pub fn tensor_algebra(k: &CompositionAlgebra, o: &CompositionAlgebra) -> Self {
        let dim = k.dim * o.dim;
        let idx = |i: usize, j: usize| i * o.dim + j;
        let mut table = vec![(0usize, Scalar::zero()); dim * dim];
        for i1 in 0..k.dim {
            for j1 in 0..o.dim {
                for i2 in 0..k.dim {
                    for j2 in 0..o.dim {
                        let (ki, si) = k.mul_basis(i1, i2);
                        let (kj, sj) = o.mul_basis(j1, j2);
                        table[idx(i1, j1) * dim + idx(i2, j2)] = (idx(ki, kj), si * sj);
                    }
                }
            }
        }
        let mut conj = Vec::with_capacity(dim);
        let mut basis_labels = Vec::with_capacity(dim);
        for i in 0..k.dim {
            for j in 0..o.dim {
                conj.push(&k.conj[i] * &o.conj[j]);
                basis_labels.push(format!("{}*{}", k.basis_labels[i], o.basis_labels[j]));
            }
        }
        let alg = CompositionAlgebra {
            label: format!("{}x{}", k.label, o.label),
            dim,
            doubling_chain: false,
            gammas: vec![],
            table,
            conj,
            basis_labels,
        };
        alg.assert_well_formed();
        alg
    }

    fn assert_well_formed(&self) {
        // basis element 0 is the unit
        for j in 0..self.dim {
            assert_eq!(self.table[j], (j, Scalar::one()), "left unit broken");
            assert_eq!(self.table[j * self.dim], (j, Scalar::one()), "right unit broken");
        }
        assert!(self.conj[0].is_one(), "conjugation must fix the unit");
        // conjugation squared is the identity
        for s in &self.conj {
            assert!((s * s).is_one(), "conjugation signs must square to 1");
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_doubling_chain(&self) -> bool {
        self.doubling_chain
    }

    pub fn basis_label(&self, i: usize) -> &str {
        &self.basis_labels[i]
    }

    /// e_i e_j as (index, sign).
    pub fn mul_basis(&self, i: usize, j: usize) -> (usize, Scalar) {
        let (k, ref s) = self.table[i * self.dim + j];
        (k, s.clone())
    }

    /// Conjugation sign of e_i.
    pub fn conj_sign(&self, i: usize) -> &Scalar {
        &self.conj[i]
    }

    pub fn element(&self, coeffs: Vec<Scalar>) -> AlgebraElement<'_> {
        assert_eq!(coeffs.len(), self.dim, "coefficient length mismatch");
        AlgebraElement { alg: self, coeffs }
    }

    pub fn element_from_ints(&self, coeffs: &[i64]) -> AlgebraElement<'_> {
        self.element(coeffs.iter().map(|&c| Scalar::from_int(c)).collect())
    }

    pub fn basis_element(&self, i: usize) -> AlgebraElement<'_> {
        let mut coeffs = vec![Scalar::zero(); self.dim];
        coeffs[i] = Scalar::one();
        AlgebraElement { alg: self, coeffs }
    }

    pub fn unit(&self) -> AlgebraElement<'_> {
        self.basis_element(0)
    }

    pub fn zero(&self) -> AlgebraElement<'_> {
        AlgebraElement {
            alg: self,
            coeffs: vec![Scalar::zero(); self.dim],
        }
    }

    /// Serializable description of the multiplication table.
    pub fn table_json(&self) -> TableExport {
        TableExport {
            label: self.label.clone(),
            dim: self.dim,
            doubling_chain: self.doubling_chain,
            gammas: self.gammas.clone(),
            basis: self.basis_labels.clone(),
            products: (0..self.dim)
                .map(|i| {
                    (0..self.dim)
                        .map(|j| {
                            let (k, ref s) = self.table[i * self.dim + j];
                            ProductEntry {
                                index: k,
                                sign: s.to_string(),
                            }
                        })
                        .collect()
                })
                .collect(),
            conjugation: self.conj.iter().map(|s| s.to_string()).collect(),
        }
    }
}

impl fmt::Debug for CompositionAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CompositionAlgebra({}, dim {})", self.label, self.dim)
    }
}

#[derive(Serialize)]
pub struct TableExport {
    pub label: String,
    pub dim: usize,
    pub doubling_chain: bool,
    pub gammas: Vec<i64>,
    pub basis: Vec<String>,
    pub products: Vec<Vec<ProductEntry>>,
    pub conjugation: Vec<String>,
}

#[derive(Serialize)]
pub struct ProductEntry {
    pub index: usize,
    pub sign: String,
}

/// An element of a fixed `CompositionAlgebra`, as coefficients on its basis.
#[derive(Clone)]
pub struct AlgebraElement<'a> {
    alg: &'a CompositionAlgebra,
    coeffs: Vec<Scalar>,
}

impl<'a> AlgebraElement<'a> {
    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn algebra(&self) -> &'a CompositionAlgebra {
        self.alg
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn check_same(&self, other: &Self) -> Result<(), AlgebraError> {
        if std::ptr::eq(self.alg, other.alg) {
            Ok(())
        } else {
            Err(AlgebraError::Mismatch(
                self.alg.label.clone(),
                other.alg.label.clone(),
            ))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same(other)?;
        Ok(AlgebraElement {
            alg: self.alg,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same(other)?;
        Ok(AlgebraElement {
            alg: self.alg,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        AlgebraElement {
            alg: self.alg,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn multiply(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same(other)?;
        let dim = self.alg.dim;
        let mut out = vec![Scalar::zero(); dim];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let (k, ref s) = self.alg.table[i * dim + j];
                out[k] += &(a * b) * s;
            }
        }
        Ok(AlgebraElement {
            alg: self.alg,
            coeffs: out,
        })
    }

    pub fn conjugate(&self) -> Self {
        AlgebraElement {
            alg: self.alg,
            coeffs: self
                .coeffs
                .iter()
                .zip(&self.alg.conj)
                .map(|(a, s)| a * s)
                .collect(),
        }
    }

    /// N(x) = coefficient of the unit in x·x*. Only defined on the
    /// doubling chain, where it is the multiplicative quadratic form.
    pub fn norm_form(&self) -> Result<Scalar, AlgebraError> {
        if !self.alg.doubling_chain {
            return Err(AlgebraError::NormUndefined(self.alg.label.clone()));
        }
        let xc = self.conjugate();
        Ok(self.multiply(&xc)?.coeffs[0].clone())
    }

    pub fn eq_elem(&self, other: &Self) -> bool {
        std::ptr::eq(self.alg, other.alg) && self.coeffs == other.coeffs
    }
}

impl fmt::Debug for AlgebraElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "{}·{}", c, self.alg.basis_labels[i])?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
