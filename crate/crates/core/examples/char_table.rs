//! Supplying simple characters outside the closure-adapted region through a
//! JSON-lines table.

use reductive_pairs::a2lat::{weyl_char_a2, A2Weight};
use reductive_pairs::charlat::Prime;
use reductive_pairs::sl3verdict::{CharTable, SimpleCharsA2};
use reductive_pairs::Error;

fn main() -> reductive_pairs::Result<()> {
    let p = Prime::new(5)?;
    let steinberg = A2Weight::new(4, 4);

    match SimpleCharsA2::new(p, None).get(steinberg) {
        Err(Error::AdaptationFailure { digit, .. }) => println!("no character for {digit} yet"),
        other => println!("unexpected: {other:?}"),
    }

    // The Steinberg module is its own Weyl module.
    let line = format!(
        "{{\"p\": 5, \"weight\": [4, 4], \"character\": {}}}",
        serde_json::to_string(&weyl_char_a2(steinberg)?).unwrap()
    );
    let table = CharTable::from_jsonl(&line)?;
    let chars = SimpleCharsA2::new(p, Some(&table));
    println!(
        "dim L(4,4) from the table: {}",
        chars.get(steinberg)?.dimension()
    );
    println!(
        "dim L(9,4) = dim L(4,4) * dim L(1,0): {}",
        chars.get(A2Weight::new(9, 4))?.dimension()
    );

    // Entries are validated: a non-Weyl-invariant character is rejected.
    let bad =
        "{\"p\": 5, \"weight\": [1, 0], \"character\": {\"rank\": 2, \"terms\": [[[1, 0], 1]]}}";
    if let Err(e) = CharTable::from_jsonl(bad) {
        println!("rejected: {e}");
    }
    Ok(())
}
