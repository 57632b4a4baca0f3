//! Classifies maps given as JSON documents.

use birdyn::classifier::{classify_map, K_MAX, P_MAX};
use birdyn::io::parse_map;

const MAPS: [&str; 4] = [
    r#"{"family": "A", "params": {"alpha0": "1", "alpha1": "2", "gamma0": "3"}}"#,
    r#"{"family": "B", "params": {"alpha0": "1", "alpha1": "1", "beta2": "1"}}"#,
    r#"{"family": "A", "params": {"alpha0": "1/4", "alpha1": "4", "gamma0": "1/4"}}"#,
    r#"{"family": "A", "field": {"modulus": [1, 0, 1]}, "params": {"alpha0": "2", "alpha1": "-1", "gamma0": "-1"}}"#,
];

fn main() -> birdyn::Result<()> {
    for text in MAPS {
        let l = classify_map(&parse_map(text)?, K_MAX, P_MAX)?;
        println!(
            "family {} k={:?} p={:?} {} case={:?}",
            l.family,
            l.k,
            l.p,
            l.growth,
            l.case.map(|c| c.name())
        );
    }
    Ok(())
}
