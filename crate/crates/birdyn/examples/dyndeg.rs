//! Dynamical degrees: the generic family A map and the condition-k maps,
//! whose degrees approach the golden ratio from below.

use birdyn::arith::{FieldElem, NumberField, Rat};
use birdyn::entropy::dynamical_degree;
use birdyn::maps::make_family_a;

fn main() -> birdyn::Result<()> {
    let q = NumberField::rationals();
    let e = |r: Rat| FieldElem::from_rat(&q, r);
    let generic = dynamical_degree(&make_family_a(&e(Rat::int(1)), &e(Rat::int(2)), &e(Rat::int(3)))?, 64)?;
    println!("generic: chi = {}, delta in [{}, {}]", generic.charpoly, generic.delta.lo, generic.delta.hi);
    for k in 1..=4i64 {
        let g0 = Rat::new(-1, 4 * ((1 << k) - 1));
        let d = dynamical_degree(&make_family_a(&e(Rat::int(1)), &e(Rat::int(2)), &e(g0))?, 64)?;
        println!("k = {k}: delta ~ {:.10}  chi = {}", d.delta.midpoint(), d.charpoly);
    }
    Ok(())
}
