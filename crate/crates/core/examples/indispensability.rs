//! Strong indispensability decided by the family criterion and by Betti
//! degree differences.
use semires::indispensability::{cross_validate, strong_indisp};
use semires::semigroup::NumericalSemigroup;

fn main() {
    let cases: &[&[u64]] = &[
        &[4, 6, 5],
        &[4, 6, 9],
        &[8, 12, 10, 9],
        &[8, 12, 10, 17],
        &[75, 180, 119, 136],
        &[7, 9, 8, 13],
        &[13, 9, 11, 14],
        &[5, 12, 11, 14],
        &[5, 11, 8, 12],
    ];
    for gens in cases {
        let s = NumericalSemigroup::new(gens).unwrap();
        let report = strong_indisp(&s).unwrap();
        let agree = cross_validate(&s).is_ok();
        print!(
            "{:<20} {:<5} {:?}",
            s.to_string(),
            report.verdict,
            report.method
        );
        if let Some(w) = report.witnesses.first() {
            print!("  witness: level {} difference {}", w.level, w.diff);
        }
        println!("  routes agree: {agree}");
    }
}
