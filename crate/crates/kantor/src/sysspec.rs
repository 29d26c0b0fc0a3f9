//! System specification strings.
//!
//! The grammar is flat:
//!
//! ```text
//! tensor:<K>[:split]      K ∈ {R, C, H, O}; split picks the split form of K
//! sl:<n>:roots=<i,j,…>    sl(n) graded by a subset of simple roots (≤ 2)
//! fts:sl3                 the Freudenthal system of sl(3) graded by both roots
//! ```
//!
//! `tensor:<K>` is the triple system on K ⊗ O with product
//! (xyz) = x(y*z) + z(y*x) − y(x*z). `sl:<n>` derives the triple system
//! from the graded matrix algebra and its Chevalley involution, which
//! also provides the oracle for isomorphism checks.

use thiserror::Error;

use crate::composition::CompositionAlgebra;
use crate::linalg::Matrix;
use crate::matlie::{build_sl, chevalley_involution, GradedInvolution, MatLieError, MatrixLieAlgebra};
use crate::realize::SystemKind;
use crate::triple::{TripleError, TripleSystem};

#[derive(Error, Debug)]
pub enum SpecError {
    #[error("unknown system spec `{0}` (expected tensor:<K>[:split], sl:<n>:roots=<i,j,…>, or fts:sl3)")]
    Unknown(String),
    #[error("unknown algebra `{0}` (expected R, C, H or O)")]
    UnknownAlgebra(String),
    #[error("bad root list `{0}`")]
    BadRoots(String),
    #[error("sl({n}) grading: {source}")]
    Grading { n: usize, source: MatLieError },
    #[error("derivation failed: {0}")]
    Derivation(#[from] TripleError),
}

/// Matrix-side data for oracle isomorphism checks, available when the
/// system was derived from a graded matrix algebra.
pub enum Oracle {
    Involution { g: MatrixLieAlgebra, tau: GradedInvolution },
    TElement { g: MatrixLieAlgebra, t: Matrix },
}

pub struct ParsedSystem {
    pub spec: String,
    pub ts: TripleSystem,
    pub default_kind: SystemKind,
    pub oracle: Option<Oracle>,
    /// name of the expected algebra, when the total dimension is known
    pub algebra: Option<String>,
    pub expected_total: Option<usize>,
    pub expected_dims: Option<Vec<usize>>,
}

/// Expected outcome for K ⊗ O (same numbers for the split form of K —
/// the dimension of a real form equals that of its complexification).
fn tensor_expectation(letter: &str) -> (&'static str, usize, Vec<usize>) {
    match letter {
        "R" => ("f4", 52, vec![7, 8, 22, 8, 7]),
        "C" => ("e6", 78, vec![8, 16, 30, 16, 8]),
        "H" => ("e7", 133, vec![10, 32, 49, 32, 10]),
        "O" => ("e8", 248, vec![14, 64, 92, 64, 14]),
        _ => unreachable!(),
    }
}

pub fn parse_system(spec: &str) -> Result<ParsedSystem, SpecError> {
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        ["tensor", rest @ ..] => parse_tensor(spec, rest),
        ["sl", n, roots] => parse_sl(spec, n, roots),
        ["fts", "sl3"] => parse_fts_sl3(spec),
        _ => Err(SpecError::Unknown(spec.into())),
    }
}

fn parse_tensor(spec: &str, rest: &[&str]) -> Result<ParsedSystem, SpecError> {
    let (letter, split) = match rest {
        [k] => (*k, false),
        [k, "split"] => (*k, true),
        _ => return Err(SpecError::Unknown(spec.into())),
    };
    // also accept the prefixed spelling `tensor:split-C`
    let (letter, split) = match letter.strip_prefix("split-") {
        Some(l) => (l, true),
        None => (letter, split),
    };
    let k = match (letter, split) {
        ("R", false) => CompositionAlgebra::real(),
        ("C", false) => CompositionAlgebra::complex(),
        ("H", false) => CompositionAlgebra::quaternion(),
        ("O", false) => CompositionAlgebra::octonion(),
        ("C", true) => CompositionAlgebra::split_complex(),
        ("H", true) => CompositionAlgebra::split_quaternion(),
        ("O", true) => CompositionAlgebra::split_octonion(),
        ("R", true) => return Err(SpecError::UnknownAlgebra("split-R".into())),
        _ => return Err(SpecError::UnknownAlgebra(letter.into())),
    };
    let ts = TripleSystem::make_tensor_kts(&k, &CompositionAlgebra::octonion());
    let (algebra, total, dims) = tensor_expectation(letter);
    Ok(ParsedSystem {
        spec: spec.into(),
        ts,
        default_kind: SystemKind::Kantor,
        oracle: None,
        algebra: Some(algebra.into()),
        expected_total: Some(total),
        expected_dims: Some(dims),
    })
}

fn parse_sl(spec: &str, n: &str, roots: &str) -> Result<ParsedSystem, SpecError> {
    let n: usize = n.parse().map_err(|_| SpecError::Unknown(spec.into()))?;
    let list = roots
        .strip_prefix("roots=")
        .ok_or_else(|| SpecError::Unknown(spec.into()))?;
    let mut idx = Vec::new();
    for part in list.split(',') {
        let r: usize = part.parse().map_err(|_| SpecError::BadRoots(list.into()))?;
        if r == 0 || r >= n {
            return Err(SpecError::BadRoots(list.into()));
        }
        idx.push(r);
    }
    idx.sort_unstable();
    idx.dedup();
    let g = build_sl(n, &idx).map_err(|source| SpecError::Grading { n, source })?;
    let tau = chevalley_involution(&g).map_err(|source| SpecError::Grading { n, source })?;
    let ts = TripleSystem::derive_from_graded(&g, &tau)?;
    let default_kind = if g.nu() == 1 { SystemKind::Jordan } else { SystemKind::Kantor };
    let expected = g.dim();
    Ok(ParsedSystem {
        spec: spec.into(),
        ts,
        default_kind,
        algebra: Some(format!("sl{n}")),
        expected_total: Some(expected),
        expected_dims: None,
        oracle: Some(Oracle::Involution { g, tau }),
    })
}

fn parse_fts_sl3(spec: &str) -> Result<ParsedSystem, SpecError> {
    let g = build_sl(3, &[1, 2]).map_err(|source| SpecError::Grading { n: 3, source })?;
    let t = g.grade_basis_matrices(2).pop().expect("one-dimensional top grade");
    let ts = TripleSystem::derive_fts(&g, &t)?;
    let expected = g.dim();
    Ok(ParsedSystem {
        spec: spec.into(),
        ts,
        default_kind: SystemKind::Freudenthal,
        algebra: Some("sl3".into()),
        expected_total: Some(expected),
        expected_dims: None,
        oracle: Some(Oracle::TElement { g, t }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tensor_specs_parse() {
        let p = parse_system("tensor:R").unwrap();
        assert_eq!(p.ts.dim(), 8);
        assert_eq!(p.expected_total, Some(52));
        assert_eq!(p.algebra.as_deref(), Some("f4"));
        assert_eq!(parse_system("tensor:O").unwrap().ts.dim(), 64);
        assert_eq!(parse_system("tensor:C:split").unwrap().ts.dim(), 16);
        assert_eq!(parse_system("tensor:split-C").unwrap().ts.dim(), 16);
        assert!(parse_system("tensor:X").is_err());
        assert!(parse_system("tensor:R:split").is_err());
    }

    #[test]
    fn sl_specs_parse() {
        let p = parse_system("sl:4:roots=1,3").unwrap();
        assert_eq!(p.ts.dim(), 4);
        assert_eq!(p.default_kind, SystemKind::Kantor);
        assert_eq!(p.expected_total, Some(15));
        assert!(p.oracle.is_some());
        let j = parse_system("sl:3:roots=1").unwrap();
        assert_eq!(j.default_kind, SystemKind::Jordan);
        assert!(parse_system("sl:3:roots=0").is_err());
        assert!(parse_system("sl:3:roots=7").is_err());
        assert!(parse_system("sl:4:roots=1,2,3").is_err());
    }

    #[test]
    fn fts_spec_parses() {
        let p = parse_system("fts:sl3").unwrap();
        assert_eq!(p.ts.dim(), 2);
        assert_eq!(p.default_kind, SystemKind::Freudenthal);
        assert_eq!(p.expected_total, Some(8));
    }

    #[test]
    fn garbage_is_rejected() {
        assert!(parse_system("").is_err());
        assert!(parse_system("so:3").is_err());
        assert!(parse_system("sl:4").is_err());
    }
}
