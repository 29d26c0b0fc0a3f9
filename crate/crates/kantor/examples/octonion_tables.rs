//! Multiplication tables of the composition algebras built by repeated
//! Cayley–Dickson doubling, with exact checks of the laws that survive
//! each doubling step: associativity up to the quaternions, the
//! alternative law for the octonions, and norm multiplicativity for all
//! seven algebras.
//!
//!     cargo run -p kantor --example octonion_tables

use kantor::composition::CompositionAlgebra;
use kantor::sample::Sampler;
use kantor::scalar::Scalar;

fn main() {
    let o = CompositionAlgebra::octonion();
    println!("{} (dim {}):\n", o.label(), o.dim());

    // the classic 8×8 sign table
    print!("      ");
    for j in 0..8 {
        print!("{:>5}", o.basis_label(j));
    }
    println!();
    for i in 0..8 {
        print!("{:>5} ", o.basis_label(i));
        for j in 0..8 {
            let (k, s) = o.mul_basis(i, j);
            let lbl = o.basis_label(k);
            print!("{:>5}", if s.is_one() { lbl.to_string() } else { format!("-{lbl}") });
        }
        println!();
    }

    // H is associative
    let h = CompositionAlgebra::quaternion();
    let mut assoc_fail = 0;
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                let a = h.basis_element(i);
                let b = h.basis_element(j);
                let c = h.basis_element(k);
                let lhs = a.multiply(&b).unwrap().multiply(&c).unwrap();
                let rhs = a.multiply(&b.multiply(&c).unwrap()).unwrap();
                if lhs.sub(&rhs).unwrap().coeffs().iter().any(|x| !x.is_zero()) {
                    assoc_fail += 1;
                }
            }
        }
    }
    println!("\nquaternion associativity failures over 4^3 basis triples: {assoc_fail}");

    // O is alternative: the associator [a,b,c] = (ab)c - a(bc) is
    // alternating in its arguments
    let mut alt_fail = 0;
    let associator = |i: usize, j: usize, k: usize| {
        let a = o.basis_element(i);
        let b = o.basis_element(j);
        let c = o.basis_element(k);
        a.multiply(&b)
            .unwrap()
            .multiply(&c)
            .unwrap()
            .sub(&a.multiply(&b.multiply(&c).unwrap()).unwrap())
            .unwrap()
    };
    for i in 0..8 {
        for j in 0..8 {
            for k in 0..8 {
                let base = associator(i, j, k);
                let s1 = associator(j, i, k);
                let s2 = associator(i, k, j);
                let anti1 = base.add(&s1).unwrap();
                let anti2 = base.add(&s2).unwrap();
                if !anti1.is_zero() || !anti2.is_zero() {
                    alt_fail += 1;
                }
            }
        }
    }
    println!("octonion alternativity failures over 8^3 basis triples: {alt_fail}");

    // norm multiplicativity N(xy) = N(x)N(y), exact rational coefficients
    let algebras = [
        CompositionAlgebra::real(),
        CompositionAlgebra::complex(),
        CompositionAlgebra::quaternion(),
        CompositionAlgebra::octonion(),
        CompositionAlgebra::split_complex(),
        CompositionAlgebra::split_quaternion(),
        CompositionAlgebra::split_octonion(),
    ];
    for alg in &algebras {
        let mut s = Sampler::new(2024);
        let mut bad = 0;
        for _ in 0..300 {
            let x = alg.element((0..alg.dim()).map(|_| Scalar::from_int(s.coeff())).collect());
            let y = alg.element((0..alg.dim()).map(|_| Scalar::from_int(s.coeff())).collect());
            let xy = x.multiply(&y).unwrap();
            if xy.norm_form().unwrap() != x.norm_form().unwrap() * y.norm_form().unwrap() {
                bad += 1;
            }
        }
        println!("{:<10} norm multiplicativity failures over 300 pairs: {bad}", alg.label());
    }

    // machine-readable export of the octonion table
    let export = o.table_json();
    println!("\ntable as JSON (first 200 chars):");
    let json = serde_json::to_string(&export).unwrap();
    println!("{}…", &json[..200.min(json.len())]);
}
