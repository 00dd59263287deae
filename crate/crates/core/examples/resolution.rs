//! Build the explicit resolution of `k[S]` and check it is a graded complex.
use semires::resolution::{resolve, verify_complex};
use semires::semigroup::NumericalSemigroup;

fn main() {
    for gens in [
        &[7u64, 9, 10][..],
        &[7, 9, 8, 13],
        &[13, 9, 11, 14],
        &[8, 12, 10, 9],
    ] {
        let s = NumericalSemigroup::new(gens).unwrap();
        let r = resolve(&s).unwrap();
        println!("== {s}");
        print!("{}", r.render_text());
        let report = verify_complex(&r);
        println!("complex: {}\n", if report.passed { "ok" } else { "FAILED" });
    }
}
