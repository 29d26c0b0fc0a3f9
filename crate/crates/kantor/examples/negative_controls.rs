//! What failure looks like. Verification that cannot fail is not
//! verification, so this example runs the checkers on systems that are
//! known *not* to satisfy the axioms and prints the counterexamples.

use kantor::realize::{build_kts_algebra, build_unchecked, RealizeError, SystemKind};
use kantor::scalar::Scalar;
use kantor::sysspec::parse_system;
use kantor::triple::CheckMode;

fn main() {
    // R ⊗ O is a Kantor triple system but not a Jordan one: the bracket
    // ⟨u,v⟩ does not vanish
    let ts = parse_system("tensor:R").unwrap().ts;
    let jts = ts.check_jts(CheckMode::Exhaustive);
    for c in &jts {
        print!("{:<10} {}", c.identity, if c.pass { "pass" } else { "fails" });
        if let Some(ce) = &c.counterexample {
            print!("  e.g. args {:?} give lhs {:?} ≠ rhs {:?}", ce.args, ce.lhs, ce.rhs);
        }
        println!();
    }
    assert!(jts.iter().any(|c| !c.pass), "a Kantor system must fail the Jordan axioms");

    // perturb one structure constant: (e0 e1 e2) += e3. The five-variable
    // identity collapses immediately.
    let bad = ts.mutated(0, 1, 2, 3, Scalar::one());
    let kts = bad.check_kts(CheckMode::Sampled { seed: 1, count: 500 });
    let broken: Vec<&str> = kts.iter().filter(|c| !c.pass).map(|c| c.identity.as_str()).collect();
    println!("\nmutated structure constants break: {:?}", broken);
    assert!(!broken.is_empty());

    // the checked builder refuses such a system…
    match build_kts_algebra(&bad) {
        Err(RealizeError::AxiomsFailed { identity, .. }) => {
            println!("checked builder refuses the mutated system ({identity} fails)");
        }
        other => panic!("expected an axiom failure, got {:?}", other.map(|_| ())),
    }

    // …and if the operators are constructed anyway, the commutation
    // table exposes the lie
    match build_unchecked(SystemKind::Kantor, &bad, false) {
        Ok(r) => {
            let checks =
                r.verify_commutators(CheckMode::Sampled { seed: 1, count: 200 }).unwrap();
            let failing: Vec<&str> =
                checks.iter().filter(|c| !c.pass).map(|c| c.relation.as_str()).collect();
            println!("relations failing on the mutated system: {:?}", failing);
            assert!(!failing.is_empty());
        }
        Err(e) => println!("unchecked construction already collapses: {e}"),
    }
}
