//! Cutting complement components one at a time: bridges split the surface,
//! the other cuts each remove a torus summand. The counts do not depend on
//! the order.
//!
//!     cargo run --example surgery_trace

use bunch_surface::example_f2;
use bunch_surface::topology::{surgery_trace, StepKind};

fn show(order: &[String], steps: &[bunch_surface::topology::SurgeryStep]) {
    let line: Vec<String> = steps
        .iter()
        .map(|s| {
            format!(
                "{}:{}",
                s.component,
                if s.step == StepKind::Split { "split" } else { "torus" }
            )
        })
        .collect();
    println!("order {order:?} -> {}", line.join(", "));
}

fn main() {
    let spec = example_f2();
    for order in [["V1", "V2"], ["V2", "V1"]] {
        let order: Vec<String> = order.iter().map(|s| s.to_string()).collect();
        show(&order, &surgery_trace(&spec, Some(&order)).unwrap());
    }
}
