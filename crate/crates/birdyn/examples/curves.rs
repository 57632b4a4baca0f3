//! Searches for invariant curves of low degree.

use birdyn::classifier::catalog_entry;
use birdyn::fibrations::search_invariant_curves;

fn main() -> birdyn::Result<()> {
    let f = catalog_entry("p0").unwrap().representative()?;
    for deg in 1..=2 {
        let s = search_invariant_curves(&f, deg)?;
        for (c, lambda) in s.curves() {
            println!("degree {deg}, lambda = {lambda}: {c}");
        }
        for u in &s.needs_extension {
            println!("degree {deg}: eigenvalues are roots of {}", u.minpoly);
        }
    }
    Ok(())
}
