//! The middle map of a symmetric four-generated resolution is alternating and
//! its pfaffians give back the binomials.
use semires::resolution::{duality_check, resolve, verify_pfaffian};
use semires::semigroup::NumericalSemigroup;

fn main() {
    let s = NumericalSemigroup::new(&[7, 9, 8, 13]).unwrap();
    let r = resolve(&s).unwrap();
    let p = verify_pfaffian(&r);
    println!("phi_2 alternating: {}", p.alternating);
    for c in &p.pfaffians {
        println!(
            "pf(D_{0}{0}) = {1}   expected {2}f_{0}: {3}",
            c.index,
            c.pfaffian,
            if c.expected_sign < 0 { "-" } else { "" },
            c.holds
        );
    }
    println!("det(D_11) = f1^2: {}", p.det_11_is_f1_squared);
    println!("phi_3 = phi_1^t: {}", p.phi3_is_phi1_transpose);
    let d = duality_check(&r);
    for pair in &d.pairs {
        println!(
            "level {} #{}: {} + {} = {}",
            pair.level, pair.j, pair.left, pair.right, pair.sum
        );
    }
}
