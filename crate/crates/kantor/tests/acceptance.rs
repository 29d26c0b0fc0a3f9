//! End-to-end acceptance suite. Each criterion prints one line,
//! `A<n> pass — …`, visible with `--nocapture` (and always on failure).
//!
//! A7 builds the 133- and 248-dimensional algebras (about three
//! minutes) and is therefore `#[ignore]`d; include it with
//!
//!     cargo test --test acceptance -- --ignored --nocapture

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use kantor::composition::CompositionAlgebra;
use kantor::matlie::{build_sl, chevalley_involution};
use kantor::poly::{GradedSpace, PolyOperator};
use kantor::realize::{
    build_fts_algebra, build_jts_algebra, build_kts_algebra, build_kts_algebra_with,
    oracle_iso_via_involution, oracle_iso_via_t, BuildOptions, OpKind, OpRef,
};
use kantor::sample::Sampler;
use kantor::scalar::Scalar;
use kantor::sysspec::{parse_system, Oracle};
use kantor::triple::{basis_vec, CheckMode, TripleSystem};

fn criterion(name: &str, pass: bool, detail: &str) {
    println!("{name} {} — {detail}", if pass { "pass" } else { "FAIL" });
    assert!(pass, "{name}: {detail}");
}

fn tensor(k: CompositionAlgebra) -> TripleSystem {
    TripleSystem::make_tensor_kts(&k, &CompositionAlgebra::octonion())
}

#[test]
fn a1_composition_algebra_suite() {
    let start = Instant::now();
    let h = CompositionAlgebra::quaternion();
    let mut assoc_ok = true;
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                let (a, b, c) = (h.basis_element(i), h.basis_element(j), h.basis_element(k));
                let lhs = a.multiply(&b).unwrap().multiply(&c).unwrap();
                let rhs = a.multiply(&b.multiply(&c).unwrap()).unwrap();
                assoc_ok &= lhs.sub(&rhs).unwrap().is_zero();
            }
        }
    }

    let o = CompositionAlgebra::octonion();
    let associator = |i: usize, j: usize, k: usize| {
        let (a, b, c) = (o.basis_element(i), o.basis_element(j), o.basis_element(k));
        a.multiply(&b)
            .unwrap()
            .multiply(&c)
            .unwrap()
            .sub(&a.multiply(&b.multiply(&c).unwrap()).unwrap())
            .unwrap()
    };
    let mut alt_ok = true;
    for i in 0..8 {
        for j in 0..8 {
            for k in 0..8 {
                let base = associator(i, j, k);
                alt_ok &= base.add(&associator(j, i, k)).unwrap().is_zero();
                alt_ok &= base.add(&associator(i, k, j)).unwrap().is_zero();
            }
        }
    }

    let algebras = [
        CompositionAlgebra::real(),
        CompositionAlgebra::complex(),
        CompositionAlgebra::quaternion(),
        CompositionAlgebra::octonion(),
        CompositionAlgebra::split_complex(),
        CompositionAlgebra::split_quaternion(),
        CompositionAlgebra::split_octonion(),
    ];
    let mut norm_ok = true;
    for alg in &algebras {
        let mut s = Sampler::new(101);
        for _ in 0..1000 {
            let x = alg.element((0..alg.dim()).map(|_| Scalar::from_int(s.coeff())).collect());
            let y = alg.element((0..alg.dim()).map(|_| Scalar::from_int(s.coeff())).collect());
            let n = x.multiply(&y).unwrap().norm_form().unwrap();
            norm_ok &= n == &x.norm_form().unwrap() * &y.norm_form().unwrap();
        }
    }

    let elapsed = start.elapsed();
    let pass = assoc_ok && alt_ok && norm_ok && elapsed < Duration::from_secs(10);
    criterion(
        "A1",
        pass,
        &format!(
            "H associative (4^3), O alternative (8^3), norms multiplicative on 1000 pairs × 7 algebras in {:.2?}",
            elapsed
        ),
    );
}

#[test]
fn a2_tensor_r_kts_exhaustive() {
    let start = Instant::now();
    let ts = tensor(CompositionAlgebra::real());
    let checks = ts.check_kts(CheckMode::Exhaustive);
    let elapsed = start.elapsed();
    let def1 = checks.iter().find(|c| c.identity == "ktsdef1").unwrap();
    let def2 = checks.iter().find(|c| c.identity == "ktsdef2").unwrap();
    let pass = def1.pass
        && def2.pass
        && def1.tuples_checked == 8u64.pow(5)
        && def2.tuples_checked == 8u64.pow(4)
        && elapsed < Duration::from_secs(120);
    criterion(
        "A2",
        pass,
        &format!(
            "R⊗O: ktsdef1 on {} 5-tuples, ktsdef2 on {} 4-tuples, exact, in {:.2?}",
            def1.tuples_checked, def2.tuples_checked, elapsed
        ),
    );
}

#[test]
fn a3_larger_tensor_systems_sampled() {
    let systems = [
        tensor(CompositionAlgebra::complex()),
        tensor(CompositionAlgebra::quaternion()),
        tensor(CompositionAlgebra::octonion()),
        tensor(CompositionAlgebra::split_complex()),
        tensor(CompositionAlgebra::split_quaternion()),
        tensor(CompositionAlgebra::split_octonion()),
    ];
    let mut pass = true;
    for ts in &systems {
        let checks = ts.check_kts(CheckMode::Sampled { seed: 3, count: 2000 });
        pass &= checks.iter().all(|c| c.pass && c.tuples_checked >= 2000);
    }
    criterion(
        "A3",
        pass,
        "KTS axioms on C⊗O, H⊗O, O⊗O and the three split forms, 2000 seeded tuples each",
    );
}

#[test]
fn a4_alternative_identities() {
    let systems = [
        tensor(CompositionAlgebra::real()),
        tensor(CompositionAlgebra::complex()),
        tensor(CompositionAlgebra::quaternion()),
        tensor(CompositionAlgebra::octonion()),
        tensor(CompositionAlgebra::split_complex()),
        tensor(CompositionAlgebra::split_quaternion()),
        tensor(CompositionAlgebra::split_octonion()),
    ];
    let mut pass = true;
    for ts in &systems {
        let checks = ts.check_alt_identities(CheckMode::Sampled { seed: 4, count: 500 });
        pass &= checks.iter().all(|c| c.pass && c.tuples_checked >= 500);
    }
    criterion("A4", pass, "altid1/altid2 on 500 seeded tuples for all seven tensor systems");
}

#[test]
fn a5_f4_exhaustive_realization() {
    let start = Instant::now();
    let ts = tensor(CompositionAlgebra::real());
    let r = build_kts_algebra(&ts).unwrap();
    let dims: Vec<usize> = r.graded_dims().iter().map(|d| d.dim).collect();
    let sym = r
        .graded_dims()
        .iter()
        .all(|g| r.graded_dims().iter().any(|h| h.grade == -g.grade && h.dim == g.dim));
    let checks = r.verify_commutators(CheckMode::Exhaustive).unwrap();
    let elapsed = start.elapsed();
    let pass = checks.len() >= 12
        && checks.iter().all(|c| c.pass)
        && r.total_dim() == 52
        && dims == vec![7, 8, 22, 8, 7]
        && sym
        && elapsed < Duration::from_secs(600);
    criterion(
        "A5",
        pass,
        &format!(
            "L(R⊗O): dims (7,8,22,8,7) total 52, {} relations exhaustive, in {:.2?}",
            checks.len(),
            elapsed
        ),
    );
}

#[test]
fn a6_e6_rank_and_sampled_relations() {
    let start = Instant::now();
    let ts = tensor(CompositionAlgebra::complex());
    let r = build_kts_algebra(&ts).unwrap();
    let checks = r.verify_commutators(CheckMode::Sampled { seed: 0, count: 500 }).unwrap();
    let elapsed = start.elapsed();
    let pass = r.total_dim() == 78
        && checks.iter().all(|c| c.pass && c.instances_checked >= 500)
        && elapsed < Duration::from_secs(2700);
    criterion(
        "A6",
        pass,
        &format!("L(C⊗O): total 78 (exact ranks), 500 sampled instances per relation, in {:.2?}", elapsed),
    );
}

// Builds the two largest algebras with staged rank certification and
// evaluation-based relation checks. Takes a few minutes, so it is not
// part of the default suite: run
//     cargo test --test acceptance -- --ignored --nocapture
#[test]
#[ignore = "long-running: builds the 133- and 248-dimensional algebras"]
fn a7_large_mode_e7_e8() {
    let mut pass = true;
    let mut detail = String::new();
    for (spec, expected) in [("tensor:H", 133usize), ("tensor:O", 248usize)] {
        let parsed = parse_system(spec).unwrap();
        let r = build_kts_algebra_with(
            &parsed.ts,
            BuildOptions {
                axiom_mode: Some(CheckMode::Sampled { seed: 7, count: 300 }),
                large: true,
            },
        )
        .unwrap();
        let checks = r.verify_commutators(CheckMode::Sampled { seed: 7, count: 300 }).unwrap();
        pass &= r.total_dim() == expected && checks.iter().all(|c| c.pass);
        detail.push_str(&format!("{spec} → {}; ", r.total_dim()));
    }
    criterion("A7", pass, &format!("{detail}exact ranks, sampled relations"));
}

#[test]
fn a8_jordan_path_sl3() {
    let g = build_sl(3, &[1]).unwrap();
    let tau = chevalley_involution(&g).unwrap();
    let ts = TripleSystem::derive_from_graded(&g, &tau).unwrap();
    let axioms = ts.check_jts(CheckMode::Exhaustive);
    // the builder re-verifies the whole commutation table on basis pairs
    let r = build_jts_algebra(&ts).unwrap();
    let iso = oracle_iso_via_involution(&g, &tau, &r).unwrap();
    let pass = axioms.iter().all(|c| c.pass) && r.total_dim() == 8 && iso.pass;
    criterion("A8", pass, "sl(3) Jordan system: axioms exhaustive, L(J) = 8, oracle isomorphism");
}

#[test]
fn a9_kantor_path_sl4() {
    let g = build_sl(4, &[1, 3]).unwrap();
    let tau = chevalley_involution(&g).unwrap();
    let ts = TripleSystem::derive_from_graded(&g, &tau).unwrap();
    let axioms = ts.check_kts(CheckMode::Exhaustive);
    let r = build_kts_algebra(&ts).unwrap();
    let dims: Vec<usize> = r.graded_dims().iter().map(|d| d.dim).collect();
    let iso = oracle_iso_via_involution(&g, &tau, &r).unwrap();
    let pass = axioms.iter().all(|c| c.pass)
        && dims == vec![1, 4, 5, 4, 1]
        && r.total_dim() == 15
        && iso.well_defined
        && iso.bijective
        && iso.homomorphism
        && iso.generator_pairs_checked == 3136;
    criterion(
        "A9",
        pass,
        &format!(
            "sl(4) Kantor system: dims {:?}, oracle homomorphism on {} generator pairs",
            dims, iso.generator_pairs_checked
        ),
    );
}

#[test]
fn a10_freudenthal_path_sl3() {
    let parsed = parse_system("fts:sl3").unwrap();
    let ts = &parsed.ts;
    let axioms = ts.check_fts(CheckMode::Exhaustive).unwrap();
    // the builder verifies the full sign-flipped commutation table
    let r = build_fts_algebra(ts).unwrap();
    // the characteristic sign difference, pinned on a concrete tuple:
    // [S_ab, S_cd] = S_(abc)d + S_c(bad)
    let (a, b, c, d) = (basis_vec(0), basis_vec(1), basis_vec(1), basis_vec(0));
    let s_ab = r.make_op(&OpRef::two(OpKind::S, a.clone(), b.clone()));
    let s_cd = r.make_op(&OpRef::two(OpKind::S, c.clone(), d.clone()));
    let abc = ts.triple_product(&a, &b, &c);
    let bad = ts.triple_product(&b, &a, &d);
    let plus = r
        .make_op(&OpRef::two(OpKind::S, abc, d.clone()))
        .add(&r.make_op(&OpRef::two(OpKind::S, c.clone(), bad)));
    let sign_ok = s_ab.bracket(&s_cd) == plus;
    let iso = match &parsed.oracle {
        Some(Oracle::TElement { g, t }) => oracle_iso_via_t(g, t, &r).unwrap(),
        _ => unreachable!(),
    };
    let pass = axioms.iter().all(|c| c.pass) && r.total_dim() == 8 && sign_ok && iso.pass;
    criterion(
        "A10",
        pass,
        "sl(3) Freudenthal system: fts1–fts3 exhaustive, L(F) = 8, [S,S] carries the plus sign",
    );
}

#[test]
fn a11_negative_controls() {
    let ts = tensor(CompositionAlgebra::real());
    let jts = ts.check_jts(CheckMode::Exhaustive);
    let jts_fails_with_witness = jts
        .iter()
        .any(|c| !c.pass && c.counterexample.as_ref().map_or(false, |ce| !ce.args.is_empty()));
    let bad = ts.mutated(0, 1, 2, 3, Scalar::one());
    let kts = bad.check_kts(CheckMode::Exhaustive);
    let mutation_detected = kts.iter().any(|c| !c.pass);
    let pass = jts_fails_with_witness && mutation_detected;
    criterion(
        "A11",
        pass,
        "R⊗O fails the Jordan check with an explicit counterexample; a one-constant mutation fails the KTS suite",
    );
}

// ---------------------------------------------------------------------
// A12: the polynomial-operator core, against an independent
// vector-field oracle implemented right here (naive multivariate
// polynomials, no shared code with the library).

type Mono = Vec<u32>;
type Poly = BTreeMap<Mono, Scalar>;

fn padd(dst: &mut Poly, mono: Mono, c: Scalar) {
    use std::collections::btree_map::Entry;
    if c.is_zero() {
        return;
    }
    match dst.entry(mono) {
        Entry::Occupied(mut e) => {
            *e.get_mut() += &c;
            if e.get().is_zero() {
                e.remove();
            }
        }
        Entry::Vacant(v) => {
            v.insert(c);
        }
    }
}

fn pmul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let mut m = ma.clone();
            m.extend_from_slice(mb);
            m.sort_unstable();
            padd(&mut out, m, ca * cb);
        }
    }
    out
}

fn pdiff(p: &Poly, var: u32) -> Poly {
    let mut out = Poly::new();
    for (m, c) in p {
        let mult = m.iter().filter(|&&v| v == var).count();
        if mult == 0 {
            continue;
        }
        let mut reduced = m.clone();
        let pos = reduced.iter().position(|&v| v == var).unwrap();
        reduced.remove(pos);
        padd(&mut out, reduced, c * &Scalar::from_int(mult as i64));
    }
    out
}

/// [X,Y]^i = Σ_j (X^j ∂_j Y^i − Y^j ∂_j X^i)
fn vf_bracket(x: &[Poly], y: &[Poly]) -> Vec<Poly> {
    let n = x.len();
    let mut out = vec![Poly::new(); n];
    for i in 0..n {
        for j in 0..n {
            for (m, c) in pmul(&x[j], &pdiff(&y[i], j as u32)) {
                padd(&mut out[i], m, c);
            }
            for (m, c) in pmul(&y[j], &pdiff(&x[i], j as u32)) {
                padd(&mut out[i], m, -c);
            }
        }
    }
    out
}

/// f ↦ −Σ f^i ∂_i as a component list.
fn to_field(op: &PolyOperator, ncoord: usize) -> Vec<Poly> {
    let mut out = vec![Poly::new(); ncoord];
    for (coord, vars, c) in op.terms() {
        let mono: Mono = {
            let mut m: Vec<u32> = vars.iter().map(|&v| v as u32).collect();
            m.sort_unstable();
            m
        };
        padd(&mut out[coord], mono, -c);
    }
    out
}

fn random_homogeneous(space: GradedSpace, grade: i32, s: &mut Sampler) -> PolyOperator {
    let mut op = PolyOperator::zero(space, grade);
    let ncoord = space.nv() + space.nw();
    for _ in 0..4 {
        let coord = s.index(ncoord);
        let target = space.weight(coord) + grade;
        if target < 0 {
            continue;
        }
        let mut vars = Vec::new();
        let mut rem = target;
        while rem > 0 {
            if rem >= 2 && space.nw() > 0 && s.index(2) == 1 {
                vars.push(space.nv() + s.index(space.nw()));
                rem -= 2;
            } else {
                vars.push(s.index(space.nv()));
                rem -= 1;
            }
        }
        let c = Scalar::from_int(s.coeff());
        if !c.is_zero() {
            op.add_term(coord, &vars, c);
        }
    }
    op
}

#[test]
fn a12_poly_operator_core() {
    let space = GradedSpace::new(3, 2);
    let ncoord = 5;
    let mut pass = true;

    // antisymmetry, grade additivity, Jacobi on 200 seeded triples
    // (total grade capped so double brackets stay inside the degree
    // bound of the term encoding)
    let mut s = Sampler::new(1212);
    let mut triples = 0;
    while triples < 200 {
        let g1 = s.index(5) as i32 - 2;
        let g2 = s.index(5) as i32 - 2;
        let g3 = s.index(5) as i32 - 2;
        if g1 + g2 + g3 > 4 {
            continue;
        }
        triples += 1;
        let f = random_homogeneous(space, g1, &mut s);
        let g = random_homogeneous(space, g2, &mut s);
        let h = random_homogeneous(space, g3, &mut s);
        let fg = f.bracket(&g);
        pass &= fg.grade() == g1 + g2;
        pass &= fg == g.bracket(&f).scale(&-Scalar::one());
        let jac = fg
            .bracket(&h)
            .add(&g.bracket(&h).bracket(&f))
            .add(&h.bracket(&f).bracket(&g));
        pass &= jac.is_zero();
    }

    // agreement with the independent vector-field oracle on 200 pairs
    let mut s = Sampler::new(3434);
    for _ in 0..200 {
        let g1 = s.index(5) as i32 - 2;
        let g2 = s.index(5) as i32 - 2;
        let f = random_homogeneous(space, g1, &mut s);
        let g = random_homogeneous(space, g2, &mut s);
        let lhs = to_field(&f.bracket(&g), ncoord);
        let rhs = vf_bracket(&to_field(&f, ncoord), &to_field(&g, ncoord));
        pass &= lhs == rhs;
    }

    criterion(
        "A12",
        pass,
        "bracket antisymmetry, grade additivity, Jacobi on 200 triples; vector-field oracle agreement on 200 pairs",
    );
}

#[test]
fn a13_ktilde_well_definedness() {
    let ts = tensor(CompositionAlgebra::real());
    let r = build_kts_algebra(&ts).unwrap();
    let exhaustive = r.well_definedness_check(CheckMode::Exhaustive);
    let sampled = r.well_definedness_check(CheckMode::Sampled { seed: 13, count: 128 });
    let pass = exhaustive.pass && sampled.pass && sampled.tuples_checked >= 100;
    criterion(
        "A13",
        pass,
        &format!(
            "Kt factors through the bracket space: {} basis pairs symbolically, {} sampled relations",
            exhaustive.tuples_checked, sampled.tuples_checked
        ),
    );
}

#[test]
fn a14_euler_grading_sign() {
    let mut pass = true;
    let mut signs = Vec::new();

    let f4 = build_kts_algebra(&tensor(CompositionAlgebra::real())).unwrap();
    let (c, s) = f4.euler_grading_check(CheckMode::Exhaustive);
    pass &= c.pass;
    signs.push(s);

    let g = build_sl(4, &[1, 3]).unwrap();
    let tau = chevalley_involution(&g).unwrap();
    let ts = TripleSystem::derive_from_graded(&g, &tau).unwrap();
    let sl4 = build_kts_algebra(&ts).unwrap();
    let (c, s) = sl4.euler_grading_check(CheckMode::Exhaustive);
    pass &= c.pass;
    signs.push(s);

    let g3 = build_sl(3, &[1]).unwrap();
    let tau3 = chevalley_involution(&g3).unwrap();
    let ts3 = TripleSystem::derive_from_graded(&g3, &tau3).unwrap();
    let jordan = build_jts_algebra(&ts3).unwrap();
    let (c, s) = jordan.euler_grading_check(CheckMode::Exhaustive);
    pass &= c.pass;
    signs.push(s);

    let fts = build_fts_algebra(&parse_system("fts:sl3").unwrap().ts).unwrap();
    let (c, s) = fts.euler_grading_check(CheckMode::Exhaustive);
    pass &= c.pass;
    signs.push(s);

    // one global sign across every built algebra
    pass &= signs.iter().all(|&s| s == Some(-1));
    // the grading element lives in grade 0 for the sl(4) case
    pass &= sl4.euler_in_grade_zero();

    criterion(
        "A14",
        pass,
        "[E,X] = −k·X for every generator of four built algebras; E ∈ span{S_ab} for sl(4)",
    );
}

#[test]
fn a15_deterministic_reports() {
    let bin = env!("CARGO_BIN_EXE_kantor");
    let dir = std::env::temp_dir();
    let run = |path: &std::path::Path| {
        let status = std::process::Command::new(bin)
            .args([
                "build",
                "--system",
                "sl:4:roots=1,3",
                "--samples",
                "60",
                "--seed",
                "9",
                "--out",
            ])
            .arg(path)
            .status()
            .unwrap();
        assert!(status.success());
        let mut v: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
        v.as_object_mut().unwrap().remove("timing_ms");
        serde_json::to_string(&v).unwrap()
    };
    let p1 = dir.join("kantor-determinism-1.json");
    let p2 = dir.join("kantor-determinism-2.json");
    let r1 = run(&p1);
    let r2 = run(&p2);
    let _ = std::fs::remove_file(&p1);
    let _ = std::fs::remove_file(&p2);
    criterion(
        "A15",
        r1 == r2,
        "two CLI runs with identical seeds give identical JSON (timing field excluded)",
    );
}
