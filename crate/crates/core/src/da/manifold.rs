//! Growing the unstable manifold of a saddle as a polyline.

use super::fixed::{FixedPointKind, FixedPointRecord};
use super::map::{eigenvector, DaMap, TorusPoint};
use super::DaError;

/// Length of the initial segment along the unstable eigenvector.
pub const SEED_LENGTH: f64 = 1e-4;
const MAX_BISECTIONS: u32 = 60;

/// Unstable eigenvector of the Jacobian at a saddle.
pub fn unstable_direction(map: &DaMap, fp: &FixedPointRecord) -> Result<[f64; 2], DaError> {
    if fp.kind != FixedPointKind::Saddle {
        return Err(DaError::Argument(format!(
            "unstable segments need a saddle, got {:?}",
            fp.kind
        )));
    }
    let j = map.jacobian(fp.location);
    let lambda = match fp.eigenvalues {
        super::fixed::Eigenvalues::Real(a, _) => a,
        _ => unreachable!("saddles have real eigenvalues"),
    };
    Ok(eigenvector(j, lambda))
}

/// Both branches of the local unstable manifold, pushed forward
/// `n_iterates` times, in the plane (unwrapped).
///
/// Each vertex is the exact image of a point of the seed segment; vertices
/// are inserted by bisecting the seed parameter until consecutive images
/// are closer than `1 / arc_steps`.
pub fn unstable_segment_lifted(
    map: &DaMap,
    fp: &FixedPointRecord,
    arc_steps: usize,
    n_iterates: usize,
) -> Result<Vec<[f64; 2]>, DaError> {
    if arc_steps == 0 {
        return Err(DaError::Argument("arc_steps must be positive".into()));
    }
    let dir = unstable_direction(map, fp)?;
    let base = fp.location.lift();
    let spacing = 1.0 / arc_steps as f64;
    let image = |t: f64| {
        let mut x = [base[0] + t * dir[0], base[1] + t * dir[1]];
        for _ in 0..n_iterates {
            x = map.apply_lifted(x);
        }
        x
    };

    let half = SEED_LENGTH / 2.0;
    let knots = [-half, 0.0, half];
    let mut out = vec![image(knots[0])];
    for w in knots.windows(2) {
        let end = image(w[1]);
        refine(&image, w[0], *out.last().unwrap(), w[1], end, spacing, 0, &mut out);
        out.push(end);
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn refine(
    image: &impl Fn(f64) -> [f64; 2],
    t0: f64,
    p0: [f64; 2],
    t1: f64,
    p1: [f64; 2],
    spacing: f64,
    depth: u32,
    out: &mut Vec<[f64; 2]>,
) {
    let gap = (p1[0] - p0[0]).hypot(p1[1] - p0[1]);
    if gap < spacing || depth >= MAX_BISECTIONS {
        return;
    }
    let tm = 0.5 * (t0 + t1);
    let pm = image(tm);
    refine(image, t0, p0, tm, pm, spacing, depth + 1, out);
    out.push(pm);
    refine(image, tm, pm, t1, p1, spacing, depth + 1, out);
}

/// [`unstable_segment_lifted`] reduced to the torus.
pub fn unstable_segment(
    map: &DaMap,
    fp: &FixedPointRecord,
    arc_steps: usize,
    n_iterates: usize,
) -> Result<Vec<TorusPoint>, DaError> {
    Ok(unstable_segment_lifted(map, fp, arc_steps, n_iterates)?
        .into_iter()
        .map(TorusPoint::from_lift)
        .collect())
}
