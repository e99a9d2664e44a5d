//! Composition factors of L(5,1) (x) L(5,1)* at p = 5 and how each one is
//! cleared.

use reductive_pairs::a2lat::A2Weight;
use reductive_pairs::charlat::Prime;
use reductive_pairs::sl3verdict::{sl3_verdict, steinberg_digits_a2};

fn main() -> reductive_pairs::Result<()> {
    let p = Prime::new(5)?;
    let lambda = A2Weight::new(5, 1);
    let digits = steinberg_digits_a2(p, lambda)?;
    let parts: Vec<String> = digits.digit_weights.iter().map(|d| d.to_string()).collect();
    println!("{lambda} has Steinberg digits {}", parts.join(", "));

    for strict in [false, true] {
        let report = sl3_verdict(p, lambda, None, strict)?;
        println!("strict={strict}: {}", report.kind());
        for f in &report.factors {
            println!("  L{} x{}  {:?}", f.weight, f.multiplicity, f.status);
        }
    }
    Ok(())
}
