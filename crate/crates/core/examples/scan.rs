//! Sweep every complete intersection with small generators and count
//! verdicts.
use semires::cli::{scan, ScanSpec};
use semires::presentation::ClassTag;

fn main() {
    let max = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(24);
    let spec = ScanSpec::Exhaustive {
        max,
        dims: vec![3, 4],
    };
    for class in [ClassTag::ThreeGenSymmetricCI, ClassTag::FourGenCI] {
        let (mut yes, mut no, mut mismatch) = (0, 0, 0);
        scan(&spec, Some(class), |rec| {
            match (rec.mismatch, rec.verdict) {
                (true, _) => mismatch += 1,
                (false, Some(true)) => yes += 1,
                _ => no += 1,
            }
            true
        });
        println!(
            "{:<22} strongly indispensable {yes:>5}  not {no:>5}  mismatches {mismatch}",
            class.as_str()
        );
    }
}
