//! Smallest periods of the periodic catalog representatives.

use birdyn::classifier::zero_entropy_catalog;
use birdyn::fibrations::check_periodicity;

fn main() -> birdyn::Result<()> {
    for e in zero_entropy_catalog() {
        if let Some(n) = e.period.filter(|&n| n <= 10) {
            let f = e.representative()?;
            println!("{:18} expected {n:2}, found {:?}", e.name, check_periodicity(&f, n)?);
        }
    }
    Ok(())
}
