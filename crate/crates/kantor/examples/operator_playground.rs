//! A small tour of the polynomial-operator layer: generators as
//! explicit polynomials, symbolic brackets, and the Euler operator that
//! reads off the grade.

use kantor::realize::{build_kts_algebra, OpKind, OpRef};
use kantor::sysspec::parse_system;
use kantor::triple::basis_vec;

fn main() {
    let ts = parse_system("sl:4:roots=1,3").unwrap().ts;
    let r = build_kts_algebra(&ts).unwrap();

    let a = basis_vec(0);
    let b = basis_vec(1);

    let u = r.make_op(&OpRef::one(OpKind::U, a.clone()));
    let ut = r.make_op(&OpRef::one(OpKind::Ut, b.clone()));
    let s = r.make_op(&OpRef::two(OpKind::S, a.clone(), b.clone()));

    println!("U_a   (grade {}):\n{}\n", u.grade(), u);
    println!("Ut_b  (grade {}):\n{}\n", ut.grade(), ut);

    // the middle of the table: [U_a, Ut_b] = S_ab
    let br = u.bracket(&ut);
    println!("[U_a, Ut_b] (grade {}):\n{}\n", br.grade(), br);
    assert_eq!(br, s);
    println!("equals S_ab, as it must\n");

    // the Euler operator measures the grade: [E, X] = -k X here
    let e = kantor::poly::euler(r.space());
    for (name, op) in [("U_a", &u), ("Ut_b", &ut), ("S_ab", &s)] {
        let k = op.grade();
        let expect = op.scale(&kantor::scalar::Scalar::from_int(-k as i64));
        assert_eq!(e.bracket(op), expect);
        println!("[E, {name}] = {}·{name}", -k);
    }
}
