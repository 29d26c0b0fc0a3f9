//! Exact-arithmetic construction of graded Lie algebras from triple systems.
//!
//! A triple system is a vector space with a trilinear product `(xyz)`.
//! Depending on which identities the product satisfies (Jordan, Kantor or
//! Freudenthal), it generates a 3- or 5-graded Lie algebra, realized here
//! concretely as an algebra of polynomial operators acting on a graded
//! coordinate space. Everything is computed over exact rationals: axiom
//! checks, commutation relations, gradings and dimension counts are
//! verified identically, with no floating point anywhere.
//!
//! The headline computation builds the triple systems `K ⊗ O` (a
//! composition algebra tensored with the octonions) and recovers the
//! exceptional Lie algebras from their dimension tables:
//!
//! | K | algebra | dimension |
//! |---|---------|-----------|
//! | R | f4 | 52 |
//! | C | e6 | 78 |
//! | H | e7 | 133 |
//! | O | e8 | 248 |
//!
//! Start with the runnable examples (`cargo run -p kantor --example
//! f4_realization`) or the `kantor` binary, which exposes the same
//! functionality as `axioms` / `build` / `table` subcommands.

pub mod composition;
pub mod linalg;
pub mod matlie;
pub mod poly;
pub mod realize;
pub mod report;
pub mod sample;
pub mod scalar;
pub mod sysspec;
pub mod triple;
