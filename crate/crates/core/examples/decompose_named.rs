//! Connected-sum decomposition of the three named examples.
//!
//!     cargo run --example decompose_named

use bunch_surface::generate::named_example;
use bunch_surface::{decompose, validate_spec};

fn main() {
    for name in ["f1", "f2", "pretzel"] {
        let spec = named_example(name).unwrap();
        assert!(validate_spec(&spec).valid);
        let d = decompose(&spec).unwrap();
        println!(
            "{name:>8}: genera {:?} + {} torus summand(s) = genus {}",
            d.genera(),
            d.torus_count,
            d.total_genus()
        );
    }
}
