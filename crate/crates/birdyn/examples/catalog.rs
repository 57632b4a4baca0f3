//! Checks every zero-entropy catalog entry against its representative map.

use std::time::Instant;

use birdyn::classifier::{verify_catalog, zero_entropy_catalog};

fn main() {
    let entries = zero_entropy_catalog();
    let t = Instant::now();
    let checks = verify_catalog(&entries);
    for (e, c) in entries.iter().zip(&checks) {
        let status = if c.passed() { "ok" } else { "FAIL" };
        match &c.label {
            Ok(l) => println!(
                "{status:4} {:18} k={:?} p={:?} {} case={:?} period={:?} exclusive={:?} {:?}",
                e.name,
                l.k,
                l.p,
                l.growth,
                l.case.map(|c| c.name()),
                c.period,
                c.matches,
                l.notes
            ),
            Err(err) => println!("{status:4} {:18} error: {err}", e.name),
        }
    }
    println!("{} entries in {:.1?}", entries.len(), t.elapsed());
}
