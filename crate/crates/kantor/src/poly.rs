//! Polynomial operators on a two-block graded space V ⊕ W.
//!
//! An operator is a tuple of polynomials, one per output coordinate, in
//! the coordinates z_0..z_{nv-1} of V (weight 1) and Z_0..Z_{nw-1} of W
//! (weight 2). Every operator is weighted-homogeneous: a grade-k operator
//! sends the weight of each output coordinate to `weight(coord) + k`.
//! Under f ↦ −Σ f^i ∂_i these operators are polynomial vector fields, and
//! the bracket below is the pullback of the vector-field bracket; the
//! Euler field E(z + Z) = z + 2Z then satisfies [E, f] = −k·f.
//!
//! Terms are stored sparsely in a `BTreeMap` keyed by a packed `u64`:
//! output coordinate in the top bits, then six bytes holding the variable
//! ids (+1, zero = empty slot) of the monomial in decreasing order. The
//! packing is canonical, so equality of operators is map equality, and
//! the key order gives a fixed, deterministic term order. Six slots cap
//! monomial degree at 6 — constructed operators have degree ≤ 4, and a
//! bracket of two grade-≤2 operators stays within weight (hence degree) 6.

use std::collections::BTreeMap;
use std::fmt;

use crate::linalg::SparseVec;
use crate::scalar::Scalar;

const SLOTS: usize = 6;

/// The coordinate space: `nv` weight-1 coordinates followed by `nw`
/// weight-2 coordinates.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct GradedSpace {
    nv: usize,
    nw: usize,
}

impl GradedSpace {
    pub fn new(nv: usize, nw: usize) -> Self {
        assert!(nv + nw < 255, "coordinate ids must fit in a byte");
        GradedSpace { nv, nw }
    }

    pub fn nv(&self) -> usize {
        self.nv
    }

    pub fn nw(&self) -> usize {
        self.nw
    }

    pub fn ncoord(&self) -> usize {
        self.nv + self.nw
    }

    pub fn weight(&self, coord: usize) -> i32 {
        debug_assert!(coord < self.ncoord());
        if coord < self.nv {
            1
        } else {
            2
        }
    }
}

fn pack(coord: usize, mono: [u8; SLOTS]) -> u64 {
    let mut key = (coord as u64) << 48;
    for (i, b) in mono.iter().enumerate() {
        key |= (*b as u64) << (40 - 8 * i);
    }
    key
}

fn coord_of(key: u64) -> usize {
    (key >> 48) as usize
}

fn mono_of(key: u64) -> [u8; SLOTS] {
    let mut out = [0u8; SLOTS];
    for (i, slot) in out.iter_mut().enumerate() {
        *slot = ((key >> (40 - 8 * i)) & 0xff) as u8;
    }
    out
}

/// Sort variable bytes decreasing so zero padding collects at the end.
fn canonical(mono: &mut [u8; SLOTS]) {
    mono.sort_unstable_by(|a, b| b.cmp(a));
}

fn mono_degree(mono: &[u8; SLOTS]) -> usize {
    mono.iter().take_while(|b| **b != 0).count()
}

fn mul_monos(a: &[u8; SLOTS], b: &[u8; SLOTS]) -> [u8; SLOTS] {
    let da = mono_degree(a);
    let db = mono_degree(b);
    assert!(
        da + db <= SLOTS,
        "monomial degree {} exceeds the supported maximum {}",
        da + db,
        SLOTS
    );
    let mut out = [0u8; SLOTS];
    out[..da].copy_from_slice(&a[..da]);
    out[da..da + db].copy_from_slice(&b[..db]);
    canonical(&mut out);
    out
}

/// A weighted-homogeneous polynomial map on a graded space.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyOperator {
    space: GradedSpace,
    grade: i32,
    terms: BTreeMap<u64, Scalar>,
}

impl PolyOperator {
    pub fn zero(space: GradedSpace, grade: i32) -> Self {
        PolyOperator {
            space,
            grade,
            terms: BTreeMap::new(),
        }
    }

    pub fn space(&self) -> GradedSpace {
        self.space
    }

    pub fn grade(&self) -> i32 {
        self.grade
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Add `c · x_{vars[0]} ⋯ x_{vars[d-1]}` to output coordinate `coord`.
    /// Repeated ids give powers. Panics if the monomial weight does not
    /// match `weight(coord) + grade`.
    pub fn add_term(&mut self, coord: usize, vars: &[usize], c: Scalar) {
        if c.is_zero() {
            return;
        }
        assert!(coord < self.space.ncoord(), "output coordinate out of range");
        assert!(vars.len() <= SLOTS, "monomial degree exceeds {}", SLOTS);
        let mut mono = [0u8; SLOTS];
        let mut weight = 0i32;
        for (i, &v) in vars.iter().enumerate() {
            assert!(v < self.space.ncoord(), "variable out of range");
            mono[i] = (v + 1) as u8;
            weight += self.space.weight(v);
        }
        assert_eq!(
            weight,
            self.space.weight(coord) + self.grade,
            "term weight {} breaks homogeneity of a grade-{} operator on coordinate {}",
            weight,
            self.grade,
            coord
        );
        canonical(&mut mono);
        self.accumulate(pack(coord, mono), c);
    }

    fn accumulate(&mut self, key: u64, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(key).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.space, other.space);
        assert_eq!(self.grade, other.grade, "cannot add operators of different grades");
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.accumulate(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.space, self.grade);
        if c.is_zero() {
            return out;
        }
        for (k, t) in &self.terms {
            out.terms.insert(*k, t * c);
        }
        out
    }

    /// Composition as a directional derivative: (f∘g)^c = Σ_v ∂f^c/∂x_v · g^v.
    /// For homogeneous maps this is the polarized substitution of g into f,
    /// and f∘g − g∘f is the operator bracket.
    pub fn compose(&self, g: &Self) -> Self {
        assert_eq!(self.space, g.space);
        let ncoord = self.space.ncoord();
        let mut by_coord: Vec<Vec<(&u64, &Scalar)>> = vec![Vec::new(); ncoord];
        for (k, c) in &g.terms {
            by_coord[coord_of(*k)].push((k, c));
        }
        let mut out = Self::zero(self.space, self.grade + g.grade);
        for (kf, cf) in &self.terms {
            let coord = coord_of(*kf);
            let mono = mono_of(*kf);
            let degree = mono_degree(&mono);
            let mut i = 0;
            while i < degree {
                let v = mono[i];
                let mut mult = 0u32;
                while i < degree && mono[i] == v {
                    mult += 1;
                    i += 1;
                }
                // ∂/∂x_v : drop one factor of v, multiply by the power
                let mut derived = mono;
                derived[i - 1] = 0;
                canonical(&mut derived);
                let factor = cf * &Scalar::from_int(mult as i64);
                for (kg, cg) in &by_coord[(v - 1) as usize] {
                    let merged = mul_monos(&derived, &mono_of(**kg));
                    out.accumulate(pack(coord, merged), &factor * *cg);
                }
            }
        }
        out
    }

    /// The operator bracket [f, g] = f∘g − g∘f.
    pub fn bracket(&self, g: &Self) -> Self {
        self.compose(g).sub(&g.compose(self))
    }

    /// Evaluate at a point given by dense coordinates (length nv + nw).
    pub fn eval(&self, point: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(point.len(), self.space.ncoord());
        let mut out = vec![Scalar::zero(); self.space.ncoord()];
        for (k, c) in &self.terms {
            let mut val = c.clone();
            for b in mono_of(*k) {
                if b == 0 {
                    break;
                }
                val *= &point[(b - 1) as usize];
                if val.is_zero() {
                    break;
                }
            }
            if !val.is_zero() {
                out[coord_of(*k)] += val;
            }
        }
        out
    }

    /// Canonical coefficient vector for span and rank computations.
    pub fn flatten(&self) -> SparseVec<u64> {
        self.terms.clone()
    }

    /// Iterate terms as (output coordinate, variable ids, coefficient).
    pub fn terms(&self) -> impl Iterator<Item = (usize, Vec<usize>, &Scalar)> {
        self.terms.iter().map(|(k, c)| {
            let vars = mono_of(*k)
                .iter()
                .take_while(|b| **b != 0)
                .map(|b| (b - 1) as usize)
                .collect();
            (coord_of(*k), vars, c)
        })
    }
}

impl fmt::Display for PolyOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let name = |v: usize| {
            if v < self.space.nv {
                format!("z{}", v)
            } else {
                format!("Z{}", v - self.space.nv)
            }
        };
        let mut by_coord: BTreeMap<usize, Vec<String>> = BTreeMap::new();
        for (coord, vars, c) in self.terms() {
            let mut parts = Vec::new();
            if !c.is_one() || vars.is_empty() {
                parts.push(format!("{}", c));
            }
            let mut i = 0;
            while i < vars.len() {
                let v = vars[i];
                let mut p = 0;
                while i < vars.len() && vars[i] == v {
                    p += 1;
                    i += 1;
                }
                if p == 1 {
                    parts.push(name(v));
                } else {
                    parts.push(format!("{}^{}", name(v), p));
                }
            }
            by_coord.entry(coord).or_default().push(parts.join("·"));
        }
        let mut first = true;
        for (coord, monos) in by_coord {
            if !first {
                write!(f, ";  ")?;
            }
            first = false;
            let target = if coord < self.space.nv {
                format!("v{}", coord)
            } else {
                format!("W{}", coord - self.space.nv)
            };
            write!(f, "{} ← {}", target, monos.join(" + "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for PolyOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyOperator(grade {}: {})", self.grade, self)
    }
}

/// The Euler operator E(z + Z) = z + 2Z; grades each operator family by
/// [E, f] = −k·f.
pub fn euler(space: GradedSpace) -> PolyOperator {
    let mut e = PolyOperator::zero(space, 0);
    for c in 0..space.ncoord() {
        e.add_term(c, &[c], Scalar::from_int(space.weight(c) as i64));
    }
    e
}
