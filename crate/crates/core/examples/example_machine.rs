//! Certified reductive pairs for SL3 at p = 7: each certified base lambda
//! twisted by 7^n mu with dim chi(mu) prime to 7.

use reductive_pairs::charlat::Prime;
use reductive_pairs::sl3verdict::{example_machine, P7_BASES, P7_TWISTS};

fn main() -> reductive_pairs::Result<()> {
    let p = Prime::new(7)?;
    for lambda in P7_BASES {
        let certs = P7_TWISTS
            .iter()
            .map(|&mu| example_machine(p, lambda, mu, 1, None, false))
            .collect::<reductive_pairs::Result<Vec<_>>>()?;
        let weights: Vec<String> = certs.iter().take(4).map(|c| c.weight.to_string()).collect();
        println!(
            "L{lambda}: {} certificates, e.g. {} ...",
            certs.len(),
            weights.join(" ")
        );
    }
    Ok(())
}
