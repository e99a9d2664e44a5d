//! Which simple SL2 modules L(lambda) admit a reductive pair, with the reasons.
//!
//!     cargo run --example sl2_simple -- 5 40

use reductive_pairs::charlat::Prime;
use reductive_pairs::sl2verdict::{simple_verdict, sufficiency_oracle_simple};

fn main() -> reductive_pairs::Result<()> {
    let mut args = std::env::args()
        .skip(1)
        .map(|a| a.parse::<u64>().expect("integer argument"));
    let p = Prime::new(args.next().unwrap_or(5))?;
    let max = args.next().unwrap_or(30);

    for lambda in 1..=max {
        let v = simple_verdict(p, lambda)?;
        let oracle = sufficiency_oracle_simple(p, lambda)?;
        println!(
            "L({lambda:>3})  {:<4} oracle {:<12} {}",
            v.kind,
            oracle.kind,
            v.codes()
        );
    }
    Ok(())
}
