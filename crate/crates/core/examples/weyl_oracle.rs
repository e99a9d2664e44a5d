//! The congruence rule for Weyl modules checked against a tilting peel of
//! chi(n) (x) chi(n)*.

use reductive_pairs::charlat::Prime;
use reductive_pairs::sl2verdict::{weyl_oracle, weyl_verdict};

fn main() -> reductive_pairs::Result<()> {
    for p in [3, 5, 7] {
        let p = Prime::new(p)?;
        let yes: Vec<u64> = (0..=40)
            .filter(|&n| weyl_verdict(p, n).kind.is_positive())
            .collect();
        let mut disagreements = 0;
        for n in 0..=200 {
            if weyl_verdict(p, n).kind != weyl_oracle(p, n)?.kind {
                disagreements += 1;
            }
        }
        println!("p={p}: Yes for n in {yes:?} ...; {disagreements} disagreements up to 200");
    }
    Ok(())
}
