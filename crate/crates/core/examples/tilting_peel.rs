//! Decompose a product of tilting characters into indecomposable tilting
//! summands, and watch the negativity alarm catch a corrupted family.

use reductive_pairs::charlat::Prime;
use reductive_pairs::sl2chars::{
    mutated_tilting_char, peel_tilting, peel_tilting_with, tilting_char, y_char,
};

fn main() -> reductive_pairs::Result<()> {
    let p = Prime::new(3)?;
    let x = tilting_char(p, 4).multiply(&tilting_char(p, 5))?;
    let d = peel_tilting(p, &x)?;
    let summands: Vec<String> = d
        .summands
        .iter()
        .map(|(m, k)| format!("{k} T({m})"))
        .collect();
    println!("T(4) T(5) at p=3 = {}", summands.join(" + "));

    // Y(28) = chi(14)^2 peels cleanly against the real family ...
    println!(
        "Y(28) residual zero: {}",
        peel_tilting(p, &y_char(28))?.residual.is_zero()
    );
    // ... and fails loudly against a corrupted one.
    match peel_tilting_with(p, &y_char(28), mutated_tilting_char) {
        Err(e) => println!("corrupted family: {e}"),
        Ok(_) => println!("corrupted family went unnoticed"),
    }
    Ok(())
}
