//! Fixed points of the DA map: the origin becomes a source and two saddles
//! appear on its stable line. Pass a push strength to explore.
//!
//!     cargo run --release --example da_census -- 0.3

use bunch_surface::da::{census_counts, census_json, find_fixed_points, DAParams, DaMap, DEFAULT_NEWTON_TOL};

fn main() {
    let params = match std::env::args().nth(1) {
        Some(k) => DAParams::with_push_strength(k.parse().expect("push strength")),
        None => DAParams::default(),
    };
    let map = DaMap::new(params).unwrap();
    let fps = find_fixed_points(&map, 128, DEFAULT_NEWTON_TOL).unwrap();
    let [src, sink, saddle, _] = census_counts(&fps);
    eprintln!(
        "k = {:.4}: {src} source(s), {sink} sink(s), {saddle} saddle(s)",
        map.params().push_strength
    );
    print!("{}", census_json(&fps));
}
