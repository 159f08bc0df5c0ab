//! A spec for every genus G >= 2: an alternating path of G basic sets.
//!
//!     cargo run --example genus_family -- 6

use bunch_surface::{decompose, generate_for_genus, serialize_spec};

fn main() {
    let max: i64 = std::env::args().nth(1).map_or(5, |a| a.parse().expect("genus"));
    for g in 1..=max {
        match generate_for_genus(g) {
            Ok(spec) => {
                let d = decompose(&spec).unwrap();
                println!(
                    "G={g}: {} sets, {} components, genus {}",
                    spec.basic_sets.len(),
                    spec.complement_components.len(),
                    d.total_genus()
                );
            }
            Err(e) => println!("G={g}: {e}"),
        }
    }
    print!(
        "{}",
        String::from_utf8(serialize_spec(&generate_for_genus(2).unwrap())).unwrap()
    );
}
