//! Parses a map document, rebuilds it from the map, and prints both.

use birdyn::io::{parse_map_spec, to_json_string, MapSpec};

fn main() -> birdyn::Result<()> {
    let text = r#"{"family": "A", "field": {"modulus": [1, 0, 0, 1, 0, 0, 1]},
                  "params": {"alpha0": "a^2", "alpha1": "a", "gamma0": "1/(1 + a)"}}"#;
    let spec = parse_map_spec(text)?;
    let f = spec.build()?;
    println!("as written:\n{}", to_json_string(&spec.to_value()));
    let back = MapSpec::from_map(&f);
    println!("from the map:\n{}", to_json_string(&back.to_value()));
    assert_eq!(back.build()?.components(), f.components());
    Ok(())
}
