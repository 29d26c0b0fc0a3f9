//! Triple systems: the trilinear product (xyz), the bracket operators
//! ⟨u,v⟩, the bracket space L, axiom suites for the Jordan / Kantor /
//! Freudenthal identities, and derivations of triple systems from graded
//! matrix algebras and from tensor algebras K⊗O.

use thiserror::Error;

use crate::composition::CompositionAlgebra;
use crate::linalg::{add_scaled, Matrix, SpanSolver, SparseVec};
use crate::matlie::{GradedInvolution, MatrixLieAlgebra};
use crate::report::{CounterExample, IdentityCheck};
use crate::sample::Sampler;
use crate::scalar::Scalar;

/// Sparse coefficient vector on the triple-system basis.
pub type Vector = SparseVec<usize>;

#[derive(Debug, Error)]
pub enum TripleError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("the system has no bilinear form; Freudenthal checks need one")]
    MissingForm,
    #[error("bracket operator of ({i},{j}) is not a scalar multiple of the identity; g2 is not acting one-dimensionally")]
    FormNotScalar { i: usize, j: usize },
    #[error("triple product left the grade -1 subspace; grading is inconsistent")]
    NotClosed,
}

/// Verification mode for identity suites.
#[derive(Clone, Copy, Debug)]
pub enum CheckMode {
    /// All basis index tuples. Exact and complete; use for dim ≤ 8.
    Exhaustive,
    /// `count` seeded tuples of sparse rational vectors.
    Sampled { seed: u64, count: u64 },
}

impl CheckMode {
    pub fn label(&self) -> &'static str {
        match self {
            CheckMode::Exhaustive => "exhaustive",
            CheckMode::Sampled { .. } => "sampled",
        }
    }
}

/// A triple system with tabulated structure constants.
///
/// The defining closure is evaluated once on all basis triples at
/// construction; every later product is a table lookup.
#[derive(Clone)]
pub struct TripleSystem {
    label: String,
    dim: usize,
    /// CSR layout: products of basis triples, (i*dim + j)*dim + k
    starts: Vec<u32>,
    entries: Vec<(u32, Scalar)>,
    /// antisymmetric bilinear form (Freudenthal systems only)
    form: Option<Matrix>,
}

impl TripleSystem {
    pub fn from_closure<F>(label: impl Into<String>, dim: usize, mut f: F) -> Self
    where
        F: FnMut(usize, usize, usize) -> Vector,
    {
        let mut starts = Vec::with_capacity(dim * dim * dim + 1);
        let mut entries = Vec::new();
        starts.push(0u32);
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let prod = f(i, j, k);
                    for (l, c) in prod {
                        if !c.is_zero() {
                            entries.push((l as u32, c));
                        }
                    }
                    starts.push(entries.len() as u32);
                }
            }
        }
        TripleSystem {
            label: label.into(),
            dim,
            starts,
            entries,
            form: None,
        }
    }

    pub fn with_form(mut self, form: Matrix) -> Self {
        assert_eq!(form.nrows(), self.dim);
        assert_eq!(form.ncols(), self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                assert_eq!(*form.get(i, j), -form.get(j, i), "form must be antisymmetric");
            }
        }
        self.form = Some(form);
        self
    }

    /// The triple system on K⊗O from the product
    /// (xyz) = x(y*z) + z(y*x) − y(x*z), with (a,b)* = (a*,b*).
    pub fn make_tensor_kts(k: &CompositionAlgebra, o: &CompositionAlgebra) -> Self {
        let alg = CompositionAlgebra::tensor_algebra(k, o);
        let dim = alg.dim();
        let label = format!("tensor:{}", alg.label());
        Self::from_closure(label, dim, |i, j, k| {
            let cj = alg.conj_sign(j).clone();
            let ci = alg.conj_sign(i).clone();
            let mut out = Vector::new();
            // x(y*z)
            let (m, s1) = alg.mul_basis(j, k);
            let (n, s2) = alg.mul_basis(i, m);
            accumulate(&mut out, n, &(&cj * &s1) * &s2);
            // z(y*x)
            let (m, s1) = alg.mul_basis(j, i);
            let (n, s2) = alg.mul_basis(k, m);
            accumulate(&mut out, n, &(&cj * &s1) * &s2);
            // -y(x*z)
            let (m, s1) = alg.mul_basis(i, k);
            let (n, s2) = alg.mul_basis(j, m);
            accumulate(&mut out, n, -&(&(&ci * &s1) * &s2));
            out
        })
    }

    /// Triple system on g₋₁ with (xyz) = [[x, τ(y)], z].
    pub fn derive_from_graded(
        g: &MatrixLieAlgebra,
        tau: &GradedInvolution,
    ) -> Result<Self, TripleError> {
        let minus_one = g.basis_indices_of_grade(-1);
        let dim = minus_one.len();
        let mats: Vec<Matrix> = minus_one.iter().map(|&i| g.basis_matrix(i).clone()).collect();
        let mut solver = SpanSolver::new();
        for m in &mats {
            solver.insert(flatten_matrix(m));
        }
        let taus: Vec<Matrix> = mats.iter().map(|y| tau.apply(y)).collect();
        let mut table: Vec<Vector> = Vec::with_capacity(dim * dim * dim);
        for x in &mats {
            for ty in &taus {
                let inner = crate::matlie::commutator(x, ty);
                for z in &mats {
                    let prod = crate::matlie::commutator(&inner, z);
                    let coords = solver
                        .express(&flatten_matrix(&prod))
                        .ok_or(TripleError::NotClosed)?;
                    table.push(coords.into_iter().collect());
                }
            }
        }
        let mut it = table.into_iter();
        Ok(Self::from_closure(
            format!("{}-derived", g.label()),
            dim,
            move |_, _, _| it.next().unwrap(),
        ))
    }

    /// Triple system on g₋₁ with (xyz) = [[x, [T,y]], z] and the scalar
    /// form read off from ⟨x,y⟩(z) = αz. Requires one-dimensional g₂.
    pub fn derive_fts(g: &MatrixLieAlgebra, t_elt: &Matrix) -> Result<Self, TripleError> {
        let minus_one = g.basis_indices_of_grade(-1);
        let dim = minus_one.len();
        let mats: Vec<Matrix> = minus_one.iter().map(|&i| g.basis_matrix(i).clone()).collect();
        let mut solver = SpanSolver::new();
        for m in &mats {
            solver.insert(flatten_matrix(m));
        }
        let mut table: Vec<Vector> = Vec::with_capacity(dim * dim * dim);
        for x in &mats {
            for y in &mats {
                let ty = crate::matlie::commutator(t_elt, y);
                let inner = crate::matlie::commutator(x, &ty);
                for z in &mats {
                    let prod = crate::matlie::commutator(&inner, z);
                    let coords = solver
                        .express(&flatten_matrix(&prod))
                        .ok_or(TripleError::NotClosed)?;
                    table.push(coords.into_iter().collect());
                }
            }
        }
        let mut it = table.into_iter();
        let ts = Self::from_closure(
            format!("{}-fts", g.label()),
            dim,
            move |_, _, _| it.next().unwrap(),
        );

        // extract the form: ⟨e_i, e_j⟩ must act as a scalar
        let mut form = Matrix::zeros(dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                let op = ts.bracket_op(&basis_vec(i), &basis_vec(j));
                let mut alpha = Scalar::zero();
                // find the scalar from any nonzero diagonal entry
                for d in 0..dim {
                    if !op.matrix.get(d, d).is_zero() {
                        alpha = op.matrix.get(d, d).clone();
                        break;
                    }
                }
                let expected = Matrix::identity(dim).scale(&alpha);
                if op.matrix != expected {
                    return Err(TripleError::FormNotScalar { i, j });
                }
                form.set(i, j, alpha);
            }
        }
        Ok(ts.with_form(form))
    }

    /// Copy with the structure constant t_{ijk}^l shifted by `delta`
    /// (negative-control mutations).
    pub fn mutated(&self, i: usize, j: usize, k: usize, l: usize, delta: Scalar) -> Self {
        let dim = self.dim;
        let mut ts = Self::from_closure(format!("{}-mutated", self.label), dim, |a, b, c| {
            let mut v: Vector = self
                .product_basis(a, b, c)
                .iter()
                .map(|(idx, s)| (*idx as usize, s.clone()))
                .collect();
            if (a, b, c) == (i, j, k) {
                accumulate(&mut v, l, delta.clone());
            }
            v
        });
        ts.form = self.form.clone();
        ts
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn form(&self) -> Option<&Matrix> {
        self.form.as_ref()
    }

    /// Structure constants of (e_i e_j e_k).
    pub fn product_basis(&self, i: usize, j: usize, k: usize) -> &[(u32, Scalar)] {
        let idx = (i * self.dim + j) * self.dim + k;
        let (a, b) = (self.starts[idx] as usize, self.starts[idx + 1] as usize);
        &self.entries[a..b]
    }

    /// Trilinear evaluation of (xyz).
    pub fn triple_product(&self, x: &Vector, y: &Vector, z: &Vector) -> Vector {
        let mut out = Vector::new();
        for (&i, a) in x {
            for (&j, b) in y {
                let ab = a * b;
                for (&k, c) in z {
                    let abc = &ab * c;
                    for (l, s) in self.product_basis(i, j, k) {
                        accumulate(&mut out, *l as usize, s * &abc);
                    }
                }
            }
        }
        out
    }

    /// ⟨u,v⟩(z) = (uzv) − (vzu).
    pub fn bracket_apply(&self, u: &Vector, v: &Vector, z: &Vector) -> Vector {
        let mut out = self.triple_product(u, z, v);
        let neg = self.triple_product(v, z, u);
        for (k, c) in neg {
            accumulate(&mut out, k, -&c);
        }
        out
    }

    /// The endomorphism ⟨u,v⟩ as a matrix.
    pub fn bracket_op(&self, u: &Vector, v: &Vector) -> BracketOperator {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for col in 0..self.dim {
            let image = self.bracket_apply(u, v, &basis_vec(col));
            for (row, c) in image {
                m.set(row, col, c);
            }
        }
        BracketOperator { matrix: m }
    }

    /// The scalar ⟨x,y⟩ of a Freudenthal system (bilinear in the form).
    pub fn form_value(&self, x: &Vector, y: &Vector) -> Result<Scalar, TripleError> {
        let form = self.form.as_ref().ok_or(TripleError::MissingForm)?;
        let mut acc = Scalar::zero();
        for (&i, a) in x {
            for (&j, b) in y {
                let f = form.get(i, j);
                if !f.is_zero() {
                    acc += &(a * b) * f;
                }
            }
        }
        Ok(acc)
    }

    /// The space L spanned by all ⟨e_i, e_j⟩.
    pub fn compute_bracket_space(&self) -> BracketSpace {
        let dim = self.dim;
        let mut basis = Vec::new();
        let mut basis_pairs = Vec::new();
        let mut solver = SpanSolver::new();
        for i in 0..dim {
            for j in (i + 1)..dim {
                let op = self.bracket_op(&basis_vec(i), &basis_vec(j));
                let flat = op.flatten();
                if flat.is_empty() {
                    continue;
                }
                if solver.insert(flat) {
                    basis.push(op);
                    basis_pairs.push((i, j));
                }
            }
        }
        // restrict the solver to the independent basis so coordinates are
        // expressed in it directly
        let mut coord_solver = SpanSolver::new();
        for op in &basis {
            coord_solver.insert(op.flatten());
        }
        let dim_l = basis.len();
        // coordinates of every ⟨e_i, e_j⟩ in the chosen basis
        let mut pair_coords = vec![vec![Scalar::zero(); dim_l]; dim * dim];
        for i in 0..dim {
            for j in (i + 1)..dim {
                let op = self.bracket_op(&basis_vec(i), &basis_vec(j));
                let combo = coord_solver
                    .express(&op.flatten())
                    .expect("bracket operator outside its own span");
                for (idx, c) in combo {
                    pair_coords[i * dim + j][idx] = c.clone();
                    pair_coords[j * dim + i][idx] = -&c;
                }
            }
        }
        BracketSpace {
            dim_v: dim,
            basis,
            basis_pairs,
            coord_solver,
            pair_coords,
        }
    }

    // ---- identity suites ----

    fn run_check<F>(&self, identity: &str, arity: usize, mode: CheckMode, eval: F) -> IdentityCheck
    where
        F: Fn(&[Vector]) -> Option<(Vector, Vector)>,
    {
        let mut tuples: u64 = 0;
        let mut counterexample = None;
        match mode {
            CheckMode::Exhaustive => {
                let mut idx = vec![0usize; arity];
                'outer: loop {
                    let args: Vec<Vector> = idx.iter().map(|&i| basis_vec(i)).collect();
                    tuples += 1;
                    if let Some((lhs, rhs)) = eval(&args) {
                        counterexample = Some(CounterExample::from_vectors(&args, &lhs, &rhs));
                        break 'outer;
                    }
                    // odometer increment
                    let mut p = arity;
                    loop {
                        if p == 0 {
                            break 'outer;
                        }
                        p -= 1;
                        idx[p] += 1;
                        if idx[p] < self.dim {
                            break;
                        }
                        idx[p] = 0;
                    }
                }
            }
            CheckMode::Sampled { seed, count } => {
                for n in 0..count {
                    let mut s = Sampler::for_index(seed, n);
                    let args: Vec<Vector> = (0..arity).map(|_| s.vector(self.dim)).collect();
                    tuples += 1;
                    if let Some((lhs, rhs)) = eval(&args) {
                        counterexample = Some(CounterExample::from_vectors(&args, &lhs, &rhs));
                        break;
                    }
                }
            }
        }
        IdentityCheck {
            identity: identity.into(),
            mode: mode.label().into(),
            tuples_checked: tuples,
            pass: counterexample.is_none(),
            counterexample,
        }
    }

    fn main_identity(&self, args: &[Vector], fts_sign: bool) -> Option<(Vector, Vector)> {
        let (u, v, x, y, z) = (&args[0], &args[1], &args[2], &args[3], &args[4]);
        let lhs = self.triple_product(u, v, &self.triple_product(x, y, z));
        let mut rhs = self.triple_product(&self.triple_product(u, v, x), y, z);
        let mid = self.triple_product(x, &self.triple_product(v, u, y), z);
        let sign = if fts_sign { Scalar::one() } else { -Scalar::one() };
        add_scaled(&mut rhs, &mid, &sign);
        add_scaled(
            &mut rhs,
            &self.triple_product(x, y, &self.triple_product(u, v, z)),
            &Scalar::one(),
        );
        if lhs == rhs {
            None
        } else {
            Some((lhs, rhs))
        }
    }

    /// Operator identity ⟨⟨u,v⟩(x), y⟩ = ⟨(yxu), v⟩ − ⟨(yxv), u⟩,
    /// compared column by column; flattened matrices on mismatch.
    fn bracket_identity(&self, args: &[Vector]) -> Option<(Vector, Vector)> {
        let (u, v, x, y) = (&args[0], &args[1], &args[2], &args[3]);
        let w = self.bracket_apply(u, v, x);
        let yxu = self.triple_product(y, x, u);
        let yxv = self.triple_product(y, x, v);
        let mut lhs_flat = Vector::new();
        let mut rhs_flat = Vector::new();
        let mut differ = false;
        for col in 0..self.dim {
            let e = basis_vec(col);
            let lhs = self.bracket_apply(&w, y, &e);
            let mut rhs = self.bracket_apply(&yxu, v, &e);
            let sub = self.bracket_apply(&yxv, u, &e);
            add_scaled(&mut rhs, &sub, &-Scalar::one());
            if lhs != rhs {
                differ = true;
            }
            for (row, c) in lhs {
                lhs_flat.insert(col * self.dim + row, c);
            }
            for (row, c) in rhs {
                rhs_flat.insert(col * self.dim + row, c);
            }
        }
        if differ {
            Some((lhs_flat, rhs_flat))
        } else {
            None
        }
    }

    /// Jordan suite: the 5-variable identity plus ⟨u,v⟩ = 0.
    pub fn check_jts(&self, mode: CheckMode) -> Vec<IdentityCheck> {
        let main = self.run_check("jtsdef1", 5, mode, |args| self.main_identity(args, false));
        let sym = self.run_check("jtsdef2", 2, mode, |args| {
            let (u, v) = (&args[0], &args[1]);
            let mut lhs = Vector::new();
            let mut differ = false;
            for col in 0..self.dim {
                let image = self.bracket_apply(u, v, &basis_vec(col));
                if !image.is_empty() {
                    differ = true;
                }
                for (row, c) in image {
                    lhs.insert(col * self.dim + row, c);
                }
            }
            if differ {
                Some((lhs, Vector::new()))
            } else {
                None
            }
        });
        vec![main, sym]
    }

    /// Kantor suite: the 5-variable identity plus the bracket identity.
    pub fn check_kts(&self, mode: CheckMode) -> Vec<IdentityCheck> {
        let main = self.run_check("ktsdef1", 5, mode, |args| self.main_identity(args, false));
        let brk = self.run_check("ktsdef2", 4, mode, |args| self.bracket_identity(args));
        vec![main, brk]
    }

    /// Freudenthal suite: sign-flipped 5-variable identity, the two-sided
    /// form identity, and the scalar bracket identity.
    pub fn check_fts(&self, mode: CheckMode) -> Result<Vec<IdentityCheck>, TripleError> {
        if self.form.is_none() {
            return Err(TripleError::MissingForm);
        }
        let main = self.run_check("fts1", 5, mode, |args| self.main_identity(args, true));
        let form_chain = self.run_check("fts2", 3, mode, |args| {
            let (x, y, z) = (&args[0], &args[1], &args[2]);
            let alpha = self.form_value(x, y).expect("form present");
            let mut scaled = Vector::new();
            if !alpha.is_zero() {
                for (k, c) in z {
                    scaled.insert(*k, c * &alpha);
                }
            }
            // first chain: ⟨x,y⟩z = (xzy) − (yzx)
            let mut chain1 = self.triple_product(x, z, y);
            add_scaled(&mut chain1, &self.triple_product(y, z, x), &-Scalar::one());
            if scaled != chain1 {
                return Some((scaled, chain1));
            }
            // second chain: ⟨x,y⟩z = (yxz) − (xyz)
            let mut chain2 = self.triple_product(y, x, z);
            add_scaled(&mut chain2, &self.triple_product(x, y, z), &-Scalar::one());
            if scaled != chain2 {
                return Some((scaled, chain2));
            }
            None
        });
        let scalar_bracket = self.run_check("fts3", 4, mode, |args| {
            let (u, v, x, y) = (&args[0], &args[1], &args[2], &args[3]);
            let lhs = self.form_value(u, v).unwrap() * self.form_value(x, y).unwrap();
            let rhs = self.form_value(&self.triple_product(y, x, u), v).unwrap()
                - self.form_value(&self.triple_product(y, x, v), u).unwrap();
            if lhs == rhs {
                None
            } else {
                Some((scalar_vec(&lhs), scalar_vec(&rhs)))
            }
        });
        Ok(vec![main, form_chain, scalar_bracket])
    }

    /// The two auxiliary antisymmetrized identities every Kantor system
    /// satisfies; used by the realization's quartic terms.
    pub fn check_alt_identities(&self, mode: CheckMode) -> Vec<IdentityCheck> {
        let alt1 = self.run_check("altid1", 3, mode, |args| {
            let (a, b, z) = (&args[0], &args[1], &args[2]);
            let f = |p: &Vector, q: &Vector| {
                let zqz = self.triple_product(z, q, z);
                let mut t = self.triple_product(&zqz, p, z);
                add_scaled(
                    &mut t,
                    &self.triple_product(z, p, &zqz),
                    &Scalar::from_int(2),
                );
                t
            };
            let mut lhs = f(a, b);
            add_scaled(&mut lhs, &f(b, a), &-Scalar::one());
            let rhs = self.triple_product(z, &self.bracket_apply(b, a, z), z);
            if lhs == rhs {
                None
            } else {
                Some((lhs, rhs))
            }
        });
        let alt2 = self.run_check("altid2", 5, mode, |args| {
            let (x, y, a, b, z) = (&args[0], &args[1], &args[2], &args[3], &args[4]);
            let f = |p: &Vector, q: &Vector| {
                self.triple_product(&self.bracket_apply(x, y, q), p, z)
            };
            let mut lhs = f(a, b);
            add_scaled(&mut lhs, &f(b, a), &-Scalar::one());
            let mut rhs = self.triple_product(x, &self.bracket_apply(a, b, y), z);
            add_scaled(
                &mut rhs,
                &self.triple_product(y, &self.bracket_apply(a, b, x), z),
                &-Scalar::one(),
            );
            if lhs == rhs {
                None
            } else {
                Some((lhs, rhs))
            }
        });
        vec![alt1, alt2]
    }
}

/// The endomorphism ⟨u,v⟩ of a triple system.
pub struct BracketOperator {
    pub matrix: Matrix,
}

impl BracketOperator {
    pub fn apply(&self, x: &Vector) -> Vector {
        let dim = self.matrix.nrows();
        let mut out = Vector::new();
        for (&j, c) in x {
            for i in 0..dim {
                let m = self.matrix.get(i, j);
                if !m.is_zero() {
                    accumulate(&mut out, i, m * c);
                }
            }
        }
        out
    }

    /// Canonical coefficient vector (column-major).
    pub fn flatten(&self) -> SparseVec<usize> {
        let dim = self.matrix.nrows();
        let mut flat = SparseVec::new();
        for col in 0..dim {
            for row in 0..dim {
                let c = self.matrix.get(row, col);
                if !c.is_zero() {
                    flat.insert(col * dim + row, c.clone());
                }
            }
        }
        flat
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }
}

/// The space L = span{⟨e_i, e_j⟩} with a fixed basis and coordinates for
/// every basis pair.
pub struct BracketSpace {
    dim_v: usize,
    pub basis: Vec<BracketOperator>,
    pub basis_pairs: Vec<(usize, usize)>,
    coord_solver: SpanSolver<usize>,
    /// coords of ⟨e_i, e_j⟩ in `basis`, at index i*dim_v + j
    pair_coords: Vec<Vec<Scalar>>,
}

impl BracketSpace {
    pub fn dim_l(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of ⟨e_i, e_j⟩ in the chosen basis of L.
    pub fn pair_coords(&self, i: usize, j: usize) -> &[Scalar] {
        &self.pair_coords[i * self.dim_v + j]
    }

    /// Coordinates of an arbitrary operator, if it lies in L.
    pub fn coords_of(&self, op: &BracketOperator) -> Option<Vec<Scalar>> {
        let combo = self.coord_solver.express(&op.flatten())?;
        let mut coords = vec![Scalar::zero(); self.dim_l()];
        for (i, c) in combo {
            coords[i] = c;
        }
        Some(coords)
    }

    /// Apply the m-th basis operator of L to a vector.
    pub fn apply_basis(&self, m: usize, x: &Vector) -> Vector {
        self.basis[m].apply(x)
    }
}

/// The i-th basis vector as a sparse vector.
pub fn basis_vec(i: usize) -> Vector {
    let mut v = Vector::new();
    v.insert(i, Scalar::one());
    v
}

fn scalar_vec(s: &Scalar) -> Vector {
    let mut v = Vector::new();
    if !s.is_zero() {
        v.insert(0, s.clone());
    }
    v
}

pub(crate) fn accumulate(v: &mut Vector, k: usize, c: Scalar) {
    if c.is_zero() {
        return;
    }
    let e = v.entry(k).or_default();
    *e += c;
    if e.is_zero() {
        v.remove(&k);
    }
}

pub(crate) fn flatten_matrix(m: &Matrix) -> SparseVec<usize> {
    let mut flat = SparseVec::new();
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let c = m.get(i, j);
            if !c.is_zero() {
                flat.insert(i * m.ncols() + j, c.clone());
            }
        }
    }
    flat
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::composition::CompositionAlgebra;
    use crate::matlie::build_sl;

    fn tensor_r_o() -> TripleSystem {
        TripleSystem::make_tensor_kts(
            &CompositionAlgebra::real(),
            &CompositionAlgebra::octonion(),
        )
    }

    #[test]
    fn unit_triple_product() {
        let ts = tensor_r_o();
        let one = basis_vec(0);
        // (1,1,1) = 1(1·1) + 1(1·1) − 1(1·1) = 1
        assert_eq!(ts.triple_product(&one, &one, &one), one);
    }

    #[test]
    fn bracket_antisymmetry() {
        let ts = tensor_r_o();
        for i in 0..8 {
            for j in 0..8 {
                let u = basis_vec(i);
                let v = basis_vec(j);
                let a = ts.bracket_op(&u, &v);
                let b = ts.bracket_op(&v, &u);
                assert_eq!(a.matrix, b.matrix.scale(&Scalar::from_int(-1)));
            }
        }
        let u = basis_vec(3);
        assert!(ts.bracket_op(&u, &u).is_zero());
    }

    #[test]
    fn tensor_r_o_is_a_kts_not_a_jts() {
        let ts = tensor_r_o();
        // ⟨e1, e2⟩ ≠ 0 witnesses "proper" Kantor
        assert!(!ts.bracket_op(&basis_vec(1), &basis_vec(2)).is_zero());
        let jts = ts.check_jts(CheckMode::Sampled { seed: 0, count: 64 });
        assert!(!jts.iter().all(|c| c.pass));
        let kts = ts.check_kts(CheckMode::Sampled { seed: 0, count: 64 });
        assert!(kts.iter().all(|c| c.pass), "{:?}", kts.iter().map(|c| (&c.identity, c.pass)).collect::<Vec<_>>());
    }

    #[test]
    fn mutation_breaks_kts() {
        let ts = tensor_r_o();
        let bad = ts.mutated(1, 2, 3, 4, Scalar::one());
        let kts = bad.check_kts(CheckMode::Sampled { seed: 0, count: 200 });
        assert!(!kts.iter().all(|c| c.pass));
        let failing = kts.iter().find(|c| !c.pass).unwrap();
        assert!(failing.counterexample.is_some());
    }

    #[test]
    fn bracket_space_of_tensor_system() {
        let ts = tensor_r_o();
        let bs = ts.compute_bracket_space();
        assert!(bs.dim_l() >= 1);
        // every pair expands correctly in the basis
        for i in 0..8 {
            for j in 0..8 {
                if i == j {
                    continue;
                }
                let coords = bs.pair_coords(i, j);
                let mut rec = Matrix::zeros(8, 8);
                for (m, c) in coords.iter().enumerate() {
                    rec = rec.add(&bs.basis[m].matrix.scale(c));
                }
                assert_eq!(rec, ts.bracket_op(&basis_vec(i), &basis_vec(j)).matrix);
            }
        }
    }

    #[test]
    fn sl3_derivation_is_a_jts() {
        let g = build_sl(3, &[1]).unwrap();
        let tau = crate::matlie::chevalley_involution(&g).unwrap();
        let ts = TripleSystem::derive_from_graded(&g, &tau).unwrap();
        assert_eq!(ts.dim(), 2);
        let checks = ts.check_jts(CheckMode::Exhaustive);
        assert!(checks.iter().all(|c| c.pass), "{:?}", checks);
        let bs = ts.compute_bracket_space();
        assert_eq!(bs.dim_l(), 0);
    }

    #[test]
    fn sl4_derivation_is_a_kts() {
        let g = build_sl(4, &[1, 3]).unwrap();
        let tau = crate::matlie::chevalley_involution(&g).unwrap();
        let ts = TripleSystem::derive_from_graded(&g, &tau).unwrap();
        assert_eq!(ts.dim(), 4);
        let checks = ts.check_kts(CheckMode::Exhaustive);
        assert!(checks.iter().all(|c| c.pass), "{:?}", checks);
        let bs = ts.compute_bracket_space();
        assert_eq!(bs.dim_l(), 1);
    }

    #[test]
    fn sl3_fts_derivation() {
        let g = build_sl(3, &[1, 2]).unwrap();
        let t = g.grade_basis_matrices(2);
        assert_eq!(t.len(), 1);
        let ts = TripleSystem::derive_fts(&g, &t[0]).unwrap();
        assert_eq!(ts.dim(), 2);
        let checks = ts.check_fts(CheckMode::Exhaustive).unwrap();
        assert!(checks.iter().all(|c| c.pass), "{:?}", checks);
        // the form is nonzero and antisymmetric
        let f = ts.form().unwrap();
        assert!(!f.is_zero());
    }

    #[test]
    fn alt_identities_hold_for_tensor_kts() {
        let ts = tensor_r_o();
        let checks = ts.check_alt_identities(CheckMode::Sampled { seed: 1, count: 100 });
        assert!(checks.iter().all(|c| c.pass), "{:?}", checks);
    }

    #[test]
    fn zero_product_with_zero_form_is_fts_and_jts() {
        let ts = TripleSystem::from_closure("zero", 3, |_, _, _| Vector::new())
            .with_form(Matrix::zeros(3, 3));
        assert!(ts
            .check_fts(CheckMode::Exhaustive)
            .unwrap()
            .iter()
            .all(|c| c.pass));
        assert!(ts.check_jts(CheckMode::Exhaustive).iter().all(|c| c.pass));
    }

    #[test]
    fn tensor_kts_with_zero_form_fails_fts() {
        // a proper KTS admits no zero-form Freudenthal structure
        let ts = tensor_r_o();
        let dim = ts.dim();
        let with_zero = ts.clone().with_form(Matrix::zeros(dim, dim));
        let checks = with_zero
            .check_fts(CheckMode::Sampled { seed: 2, count: 100 })
            .unwrap();
        assert!(!checks.iter().all(|c| c.pass));
    }
}
