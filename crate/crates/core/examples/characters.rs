//! Formal characters: products, twists and duals of SL2 and SL3 characters.

use reductive_pairs::a2lat::{dim_a2, weyl_char_a2, A2Weight};
use reductive_pairs::charlat::Prime;
use reductive_pairs::sl2chars::{nabla_char, simple_char};

fn main() -> reductive_pairs::Result<()> {
    let p = Prime::new(3)?;

    // chi(2) * chi(1) = chi(3) + chi(1)
    let product = nabla_char(2).multiply(&nabla_char(1))?;
    println!(
        "chi(2) chi(1) = {}",
        serde_json::to_string(&product).unwrap()
    );

    // L(4) at p = 3 is L(1) (x) L(1)^F, so it has dimension 4.
    let l4 = simple_char(p, 4);
    println!("dim L(4) at p=3: {}", l4.dimension());
    println!(
        "L(1)^F = {}",
        serde_json::to_string(&simple_char(p, 1).frobenius_twist(p, 1)).unwrap()
    );

    let adjoint = weyl_char_a2(A2Weight::new(1, 1))?;
    let square = adjoint.multiply(&adjoint.dual())?;
    println!(
        "chi(1,1) has {} weights; its square has dimension {} = {}^2",
        adjoint.len(),
        square.dimension(),
        dim_a2(A2Weight::new(1, 1))?
    );
    Ok(())
}
