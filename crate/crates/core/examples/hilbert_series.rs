//! K-polynomial from the Betti degrees, and the Hilbert series it produces
//! compared against membership in `S`.
use semires::invariants::{hilbert_check, k_polynomial};
use semires::resolution::resolve;
use semires::semigroup::NumericalSemigroup;

fn main() {
    let s = NumericalSemigroup::new(&[7, 9, 8, 13]).unwrap();
    let r = resolve(&s).unwrap();
    println!("K(z) = {}", k_polynomial(&r));
    let h = hilbert_check(&r, &s, 40).unwrap();
    let support: Vec<String> = h
        .coefficients
        .iter()
        .enumerate()
        .filter(|(_, &c)| c == 1)
        .map(|(i, _)| i.to_string())
        .collect();
    println!("H(z) support up to 40: {}", support.join(" "));
    println!("matches S: {}", h.passed);
}
