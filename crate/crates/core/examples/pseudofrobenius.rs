//! Pseudo-Frobenius numbers three ways: by definition, from the last Betti
//! degrees, and from the family closed forms.
use semires::invariants::{closed_form_pf, pf_from_betti};
use semires::presentation::classify;
use semires::resolution::resolve;
use semires::semigroup::NumericalSemigroup;

fn main() {
    for gens in [
        &[7u64, 9, 10][..],
        &[7, 9, 8, 13],
        &[13, 9, 11, 14],
        &[5, 11, 8, 12],
    ] {
        let s = NumericalSemigroup::new(gens).unwrap();
        let c = classify(&s).unwrap();
        let r = resolve(&s).unwrap();
        println!(
            "{s}: definition {:?}, betti {:?}, closed form {:?}, g = {}",
            s.pseudofrobenius(),
            pf_from_betti(&r),
            closed_form_pf(&c, &s).unwrap(),
            s.frobenius()
        );
    }
}
