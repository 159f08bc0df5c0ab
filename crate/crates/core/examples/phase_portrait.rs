//! Attractor cloud, fixed points and saddle unstable manifolds as SVG, plus
//! how close the manifolds come to filling the cloud.
//!
//!     cargo run --release --example phase_portrait -- portrait.svg

use bunch_surface::da::{
    approximate_attractor, find_fixed_points, hausdorff_distance, min_distance_to, render_phase_portrait,
    unstable_segment, DaMap, FixedPointKind, PhasePortrait, TorusPoint,
};

fn main() {
    let out = std::env::args().nth(1).unwrap_or_else(|| "portrait.svg".into());
    let map = DaMap::new(Default::default()).unwrap();
    let fps = find_fixed_points(&map, 128, 1e-12).unwrap();
    let saddles: Vec<_> = fps.iter().filter(|f| f.kind == FixedPointKind::Saddle).collect();
    let manifolds = |arc_steps, iterates| -> Vec<Vec<TorusPoint>> {
        saddles
            .iter()
            .map(|f| unstable_segment(&map, f, arc_steps, iterates).unwrap())
            .collect()
    };

    // long manifolds against a dense cloud for the measurement...
    let cloud = approximate_attractor(&map, 100_000, 500, 1).unwrap();
    let curve = manifolds(400, 15).concat();
    println!("gap to source: {:.4}", min_distance_to(&cloud, TorusPoint::origin()));
    println!("Hausdorff(manifolds, cloud): {:.4}", hausdorff_distance(&curve, &cloud));

    // ...and a lighter picture
    let segments = manifolds(300, 12);
    let portrait = PhasePortrait {
        cloud: &cloud[..20_000],
        fixed_points: &fps,
        segments: &segments,
    };
    render_phase_portrait(&portrait, out.as_ref()).unwrap();
    println!("wrote {out}");
}
