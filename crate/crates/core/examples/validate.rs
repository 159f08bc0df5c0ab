//! Building a spec by hand and reading the validation report.
//!
//!     cargo run --example validate

use bunch_surface::{validate_spec, BasicSet, Bunch, ComplementComponent, DiffeoSpec, Kind};

fn main() {
    // one bunch of degree 1 on each side: genus 1 + 1/4 - 1/2 is not whole
    let broken = DiffeoSpec::new(
        vec![
            BasicSet::new("A", Kind::Attractor, vec![Bunch::new("a", 1)]),
            BasicSet::new("R", Kind::Repeller, vec![Bunch::new("r", 1)]),
        ],
        vec![ComplementComponent::new("V", "a", "r")],
    );
    print!("{}", validate_spec(&broken).to_json());

    let fixed = DiffeoSpec::new(
        vec![
            BasicSet::new("A", Kind::Attractor, vec![Bunch::new("a", 2)]),
            BasicSet::new("R", Kind::Repeller, vec![Bunch::new("r", 2)]),
        ],
        vec![ComplementComponent::new("V", "a", "r")],
    );
    println!("with degree 2: valid = {}", validate_spec(&fixed).valid);
}
