//! Matrix-algebra oracles: derive triple systems from graded sl(n) and
//! check that the operator realization is isomorphic to the original
//! algebra.
//!
//! sl(3) graded by one simple root is 3-graded and yields a Jordan
//! triple system; sl(4) graded by the first and last simple roots is
//! 5-graded and yields a Kantor triple system with graded dimensions
//! (1,4,5,4,1). In both cases the map
//!
//!     a ↦ U_a,  τ(a) ↦ Ut_a,  [a,τ(b)] ↦ S_ab,
//!     [a,b] ↦ K_ab,  [τ(a),τ(b)] ↦ Kt_ab
//!
//! is checked to be well defined, bijective, and a homomorphism on all
//! generator pairs.

use kantor::matlie::{build_sl, chevalley_involution};
use kantor::realize::{build_jts_algebra, build_kts_algebra, oracle_iso_via_involution};
use kantor::triple::{CheckMode, TripleSystem};

fn main() {
    // 3-graded sl(3): Jordan
    let g = build_sl(3, &[1]).unwrap();
    let tau = chevalley_involution(&g).unwrap();
    let ts = TripleSystem::derive_from_graded(&g, &tau).unwrap();
    assert!(ts.check_jts(CheckMode::Exhaustive).iter().all(|c| c.pass));
    let r = build_jts_algebra(&ts).unwrap();
    let iso = oracle_iso_via_involution(&g, &tau, &r).unwrap();
    println!(
        "sl(3), one root : L(J) total {} (expected {}), iso well-defined={} bijective={} hom={}",
        r.total_dim(),
        g.dim(),
        iso.well_defined,
        iso.bijective,
        iso.homomorphism
    );
    assert!(iso.pass);

    // 5-graded sl(4): Kantor
    let g = build_sl(4, &[1, 3]).unwrap();
    let tau = chevalley_involution(&g).unwrap();
    let ts = TripleSystem::derive_from_graded(&g, &tau).unwrap();
    assert!(ts.check_kts(CheckMode::Exhaustive).iter().all(|c| c.pass));
    let r = build_kts_algebra(&ts).unwrap();
    let dims: Vec<usize> = r.graded_dims().iter().map(|d| d.dim).collect();
    let iso = oracle_iso_via_involution(&g, &tau, &r).unwrap();
    println!(
        "sl(4), roots 1,3: L(K) dims {:?} total {}, iso pass={} ({} generator pairs)",
        dims,
        r.total_dim(),
        iso.pass,
        iso.generator_pairs_checked
    );
    assert_eq!(dims, vec![1, 4, 5, 4, 1]);
    assert!(iso.pass);

    // the grading element of the matrix side sits in grade 0 on the
    // operator side as well
    assert!(r.euler_in_grade_zero());
    println!("Euler operator lies in span{{S_ab}} for sl(4)");
}
