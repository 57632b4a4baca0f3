//! Prints one line per acceptance criterion. Failing criteria are reported
//! but do not fail the target: some are unattainable as stated.

use birdyn::acceptance::run_all;

fn main() {
    let results = run_all();
    assert_eq!(results.len(), 9);
    for c in &results {
        println!("{}", c.summary());
    }
    for c in &results {
        eprintln!("criterion {} took {:.1?}", c.number, c.elapsed);
    }
    let passed = results.iter().filter(|c| c.passed()).count();
    println!("{passed}/9 criteria pass");
}
