//! Checks shipped fibration documents: the identity V∘f = ψ(V), the
//! recovered Möbius map, first integrals and transversality.

use birdyn::io::fixture::{check_fibration_dir, fixtures_dir};

fn main() -> birdyn::Result<()> {
    let checks = check_fibration_dir(&fixtures_dir().join("fibrations"), 7)?;
    for c in &checks {
        println!(
            "{:4} {:22} identity={:?} first_integral={:?} transverse={:?}",
            if c.passed() { "ok" } else { "FAIL" },
            c.name,
            c.identity,
            c.first_integral,
            c.transverse
        );
    }
    Ok(())
}
