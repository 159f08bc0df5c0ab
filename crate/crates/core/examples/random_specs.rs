//! Seeded random specs: how often the pairing graph has cycles and how the
//! genus is distributed.
//!
//!     cargo run --release --example random_specs -- 2000

use std::collections::BTreeMap;

use bunch_surface::{decompose, random_valid_spec, GeneratorConfig};

fn main() {
    let n: u64 = std::env::args().nth(1).map_or(1000, |a| a.parse().expect("count"));
    let mut genus = BTreeMap::new();
    let mut with_tori = 0;
    for seed in 0..n {
        let d = decompose(&random_valid_spec(&GeneratorConfig::with_seed(seed)).unwrap()).unwrap();
        *genus.entry(d.total_genus()).or_insert(0u64) += 1;
        with_tori += u64::from(d.torus_count > 0);
    }
    println!("{n} specs, {with_tori} with torus summands");
    for (g, count) in genus {
        println!("genus {g:>3}: {count}");
    }
}
