//! Orbits of A0, A1, A2 through the blow-ups, printed as jets.

use birdyn::classifier::catalog_entry;
use birdyn::orbits::se_profile;

fn main() -> birdyn::Result<()> {
    for name in ["p1", "k1p3"] {
        let f = catalog_entry(name).unwrap().representative()?;
        println!("{name}");
        for o in &se_profile(&f, 32)?.orbits {
            println!("  A{} -> {:?} after {} points", o.start, o.end().map(|e| format!("O{e}")), o.len());
            for p in &o.points {
                println!("      {p}");
            }
        }
    }
    Ok(())
}
