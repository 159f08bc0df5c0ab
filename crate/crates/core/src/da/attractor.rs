//! Sampling the one-dimensional attractor and measuring point clouds.

use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use super::map::{DaMap, TorusPoint};
use super::DaError;

/// Initial points closer than this to the origin are redrawn, so no sample
/// starts on the repelling fixed point.
pub const ORIGIN_EXCLUSION: f64 = 1e-6;

/// Iterates `n_samples` random points `n_transient` times. Initial points
/// are drawn from one `Xoshiro256PlusPlus` stream in sample order, so the
/// result depends only on `seed`.
pub fn approximate_attractor(
    map: &DaMap,
    n_samples: usize,
    n_transient: usize,
    seed: u64,
) -> Result<Vec<TorusPoint>, DaError> {
    if n_transient < 100 {
        return Err(DaError::Argument(format!(
            "n_transient must be >= 100, got {n_transient}"
        )));
    }
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    let origin = TorusPoint::origin();
    let starts: Vec<TorusPoint> = (0..n_samples)
        .map(|_| loop {
            let p = TorusPoint::new(rng.random::<f64>(), rng.random::<f64>());
            if p.distance(&origin) >= ORIGIN_EXCLUSION {
                break p;
            }
        })
        .collect();
    Ok(starts
        .into_iter()
        .map(|mut p| {
            for _ in 0..n_transient {
                p = map.apply(p);
            }
            p
        })
        .collect())
}

/// Smallest torus distance from `target` to any point of the cloud
/// (`+inf` for an empty cloud).
pub fn min_distance_to(cloud: &[TorusPoint], target: TorusPoint) -> f64 {
    cloud.iter().map(|p| p.distance(&target)).fold(f64::INFINITY, f64::min)
}

/// Bucket grid over the torus for nearest-neighbour queries.
#[derive(Debug, Clone)]
pub struct NearestGrid {
    cells: usize,
    buckets: Vec<Vec<TorusPoint>>,
    len: usize,
}

impl NearestGrid {
    pub fn new(points: &[TorusPoint]) -> Self {
        let cells = ((points.len() as f64).sqrt() as usize).clamp(1, 512);
        let mut buckets = vec![Vec::new(); cells * cells];
        for p in points {
            buckets[Self::index(cells, p)].push(*p);
        }
        Self {
            cells,
            buckets,
            len: points.len(),
        }
    }

    fn cell_of(cells: usize, v: f64) -> usize {
        ((v * cells as f64) as usize).min(cells - 1)
    }

    fn index(cells: usize, p: &TorusPoint) -> usize {
        Self::cell_of(cells, p.x) * cells + Self::cell_of(cells, p.y)
    }

    /// Torus distance to the nearest stored point.
    pub fn nearest_distance(&self, q: &TorusPoint) -> f64 {
        if self.len == 0 {
            return f64::INFINITY;
        }
        let n = self.cells as isize;
        let (cx, cy) = (
            Self::cell_of(self.cells, q.x) as isize,
            Self::cell_of(self.cells, q.y) as isize,
        );
        let width = 1.0 / self.cells as f64;
        let mut best = f64::INFINITY;
        for ring in 0..=n / 2 + 1 {
            // every point in ring `ring` is at least (ring - 1) cells away
            if (ring - 1).max(0) as f64 * width > best {
                break;
            }
            for dx in -ring..=ring {
                for dy in -ring..=ring {
                    if dx.abs() != ring && dy.abs() != ring {
                        continue;
                    }
                    let i = (cx + dx).rem_euclid(n) as usize;
                    let j = (cy + dy).rem_euclid(n) as usize;
                    for p in &self.buckets[i * self.cells + j] {
                        best = best.min(p.distance(q));
                    }
                }
            }
        }
        best
    }

    /// Largest distance from a query point to the stored set.
    pub fn directed_distance(&self, from: &[TorusPoint]) -> f64 {
        from.iter().map(|p| self.nearest_distance(p)).fold(0.0, f64::max)
    }
}

/// Symmetric Hausdorff distance between two finite sets on the torus.
pub fn hausdorff_distance(a: &[TorusPoint], b: &[TorusPoint]) -> f64 {
    let ga = NearestGrid::new(a);
    let gb = NearestGrid::new(b);
    gb.directed_distance(a).max(ga.directed_distance(b))
}
