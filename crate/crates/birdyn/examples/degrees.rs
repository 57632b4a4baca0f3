//! Degree sequences of a few catalog representatives, modular and exact.

use birdyn::classifier::catalog_entry;
use birdyn::maps::{degree_sequence, degree_sequence_exact, DEFAULT_TERM_CAP};

fn main() -> birdyn::Result<()> {
    for name in ["p0", "p2", "k2p3_rational", "k1p4_real", "b_generic"] {
        let f = catalog_entry(name).expect("catalog entry").representative()?;
        println!("{name:14} {:?}", degree_sequence(&f, 12)?);
    }
    // exact composition gets expensive quickly; six steps are cheap
    let f = catalog_entry("k1p4_real").unwrap().representative()?;
    println!("exact k1p4_real d1..d6 {:?}", degree_sequence_exact(&f, 6, DEFAULT_TERM_CAP)?);
    Ok(())
}
