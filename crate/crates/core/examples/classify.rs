//! Classify a few semigroups and print their family parameters.
//!
//! cargo run --example classify -- 7,9,8,13
use semires::presentation::classify;
use semires::semigroup::NumericalSemigroup;

fn main() {
    let inputs: Vec<String> = match std::env::args().nth(1) {
        Some(arg) => vec![arg],
        None => [
            "7,9,10",
            "7,9,8,13",
            "13,9,11,14",
            "75,180,119,136",
            "6,7,9,10",
        ]
        .map(String::from)
        .to_vec(),
    };
    for arg in inputs {
        let gens: Vec<u64> = arg.split(',').map(|t| t.trim().parse().unwrap()).collect();
        let s = match NumericalSemigroup::new(&gens) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("{arg}: {e}");
                continue;
            }
        };
        let c = classify(&s).unwrap();
        println!(
            "{s}  g = {}  type = {}  {}",
            s.frobenius(),
            s.type_number(),
            c.tag().as_str()
        );
        println!("  {}", serde_json::to_string(&c).unwrap());
    }
}
