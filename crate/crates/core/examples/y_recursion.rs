//! The three recursions for Y(r) = sum of chi(r - 2k), checked exactly.

use reductive_pairs::charlat::Prime;
use reductive_pairs::sl2chars::{y_identity_check, YIdentity};

fn main() -> reductive_pairs::Result<()> {
    let p = Prime::new(5)?;
    for identity in YIdentity::all(p) {
        let ok = (0..=30)
            .map(|m| y_identity_check(p, m, identity))
            .collect::<Result<Vec<_>, _>>()?;
        let held = ok.iter().filter(|&&b| b).count();
        println!(
            "{:<24} {held}/{} instances hold",
            format!("{identity:?}"),
            ok.len()
        );
    }
    Ok(())
}
