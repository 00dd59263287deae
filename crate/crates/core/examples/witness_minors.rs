//! Minors of the last map of a pseudosymmetric resolution that recover the
//! binomials, plus the sign correction applied to the printed matrix.
use semires::resolution::{resolve, verify_witness_minors};
use semires::semigroup::NumericalSemigroup;

fn main() {
    let s = NumericalSemigroup::new(&[13, 9, 11, 14]).unwrap();
    let r = resolve(&s).unwrap();
    for a in r.adjustments() {
        println!(
            "adjusted phi_{} ({},{}): {} -> {}",
            a.map,
            a.row + 1,
            a.col + 1,
            a.printed,
            a.used
        );
    }
    let w = verify_witness_minors(&r);
    for m in &w.two_minors {
        match m.rows {
            Some((i, j)) => println!(
                "{:>6} = 2-minor on rows {},{} (sign {})",
                m.label,
                i + 1,
                j + 1,
                m.sign
            ),
            None => println!("{:>6} not found", m.label),
        }
    }
    for (name, found) in &w.named_products {
        println!("4-minor divisible by {name}: {found}");
    }
}
