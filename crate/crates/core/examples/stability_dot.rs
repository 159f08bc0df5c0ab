//! Stability verdict and the precedence digraph in DOT.
//!
//!     cargo run --example stability_dot | dot -Tsvg > prec.svg

use bunch_surface::stability::build_prec_graph;
use bunch_surface::{example_f1, stability_verdict};

fn main() {
    let spec = example_f1();
    let verdict = stability_verdict(&spec).unwrap();
    eprint!("{}", verdict.to_json());
    print!("{}", build_prec_graph(&spec).unwrap().to_dot());
}
