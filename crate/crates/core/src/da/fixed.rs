//! Fixed points of the DA map by Newton iteration from a seed grid.

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use super::map::{det, DaMap, Mat2, TorusPoint};
use super::DaError;

/// Roots closer than this (torus distance) are the same fixed point.
pub const DEDUP_RADIUS: f64 = 1e-4;
const MAX_NEWTON_STEPS: usize = 60;
const MAX_NEWTON_STEP: f64 = 0.25;
const HYPERBOLICITY_MARGIN: f64 = 1e-9;
const SINGULAR_DET: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FixedPointKind {
    Source,
    Sink,
    Saddle,
    /// Non-hyperbolic, or the Newton system was singular at the root.
    Unresolved,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Eigenvalues {
    /// Sorted by decreasing modulus.
    Real(f64, f64),
    ComplexPair {
        re: f64,
        im: f64,
    },
}

impl Eigenvalues {
    pub fn of(m: Mat2) -> Self {
        let tr = m[0][0] + m[1][1];
        let d = det(m);
        let disc = tr * tr - 4.0 * d;
        if disc >= 0.0 {
            let root = disc.sqrt();
            let (a, b) = ((tr + root) / 2.0, (tr - root) / 2.0);
            if a.abs() >= b.abs() {
                Eigenvalues::Real(a, b)
            } else {
                Eigenvalues::Real(b, a)
            }
        } else {
            Eigenvalues::ComplexPair {
                re: tr / 2.0,
                im: (-disc).sqrt() / 2.0,
            }
        }
    }

    pub fn moduli(&self) -> [f64; 2] {
        match *self {
            Eigenvalues::Real(a, b) => [a.abs(), b.abs()],
            Eigenvalues::ComplexPair { re, im } => [re.hypot(im); 2],
        }
    }

    pub fn classify(&self) -> FixedPointKind {
        let [a, b] = self.moduli();
        let above = |x: f64| x > 1.0 + HYPERBOLICITY_MARGIN;
        let below = |x: f64| x < 1.0 - HYPERBOLICITY_MARGIN;
        match (above(a), above(b), below(a), below(b)) {
            (true, true, _, _) => FixedPointKind::Source,
            (_, _, true, true) => FixedPointKind::Sink,
            (true, _, _, true) | (_, true, true, _) => FixedPointKind::Saddle,
            _ => FixedPointKind::Unresolved,
        }
    }
}

impl Serialize for Eigenvalues {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(2))?;
        match *self {
            Eigenvalues::Real(a, b) => {
                seq.serialize_element(&a)?;
                seq.serialize_element(&b)?;
            }
            Eigenvalues::ComplexPair { re, im } => {
                seq.serialize_element(&[re, im])?;
                seq.serialize_element(&[re, -im])?;
            }
        }
        seq.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedPointRecord {
    pub location: TorusPoint,
    pub kind: FixedPointKind,
    pub eigenvalues: Eigenvalues,
    /// Norm of `f(p) - p` (nearest-lift difference).
    pub residual: f64,
}

fn residual_vector(map: &DaMap, p: TorusPoint) -> [f64; 2] {
    p.displacement_to(&map.apply(p))
}

fn norm(v: [f64; 2]) -> f64 {
    v[0].hypot(v[1])
}

/// Newton on `f(p) - p`. Returns the root and whether `Df - I` was singular there.
fn newton(map: &DaMap, seed: TorusPoint, tol: f64) -> Option<(TorusPoint, f64, bool)> {
    let mut p = seed;
    let mut res = residual_vector(map, p);
    for _ in 0..MAX_NEWTON_STEPS {
        if norm(res) < tol * 1e-3 {
            break;
        }
        let j = map.jacobian(p);
        let m = [[j[0][0] - 1.0, j[0][1]], [j[1][0], j[1][1] - 1.0]];
        let d = det(m);
        if d.abs() < SINGULAR_DET {
            break;
        }
        let mut step = [
            -(m[1][1] * res[0] - m[0][1] * res[1]) / d,
            -(-m[1][0] * res[0] + m[0][0] * res[1]) / d,
        ];
        let len = norm(step);
        if len > MAX_NEWTON_STEP {
            step = [step[0] * MAX_NEWTON_STEP / len, step[1] * MAX_NEWTON_STEP / len];
        }
        if len == 0.0 {
            break;
        }
        p = TorusPoint::new(p.x + step[0], p.y + step[1]);
        res = residual_vector(map, p);
    }
    let r = norm(res);
    if r.is_nan() || r >= tol {
        return None;
    }
    let j = map.jacobian(p);
    let singular = det([[j[0][0] - 1.0, j[0][1]], [j[1][0], j[1][1] - 1.0]]).abs() < SINGULAR_DET;
    Some((p, r, singular))
}

/// Seeds Newton from a `grid_n × grid_n` grid, keeps roots with residual
/// below `newton_tol`, merges roots within [`DEDUP_RADIUS`] and classifies
/// each by the eigenvalues of the Jacobian. Sorted by `(x, y)`.
pub fn find_fixed_points(map: &DaMap, grid_n: usize, newton_tol: f64) -> Result<Vec<FixedPointRecord>, DaError> {
    if grid_n < 64 {
        return Err(DaError::Argument(format!("grid_n must be >= 64, got {grid_n}")));
    }
    if !(newton_tol > 0.0 && newton_tol <= 1e-6) {
        return Err(DaError::Argument(format!(
            "newton_tol must lie in (0, 1e-6], got {newton_tol}"
        )));
    }
    let mut found: Vec<FixedPointRecord> = Vec::new();
    for i in 0..grid_n {
        for j in 0..grid_n {
            let seed = TorusPoint::new((i as f64 + 0.5) / grid_n as f64, (j as f64 + 0.5) / grid_n as f64);
            let Some((p, residual, singular)) = newton(map, seed, newton_tol) else {
                continue;
            };
            if found.iter().any(|f| f.location.distance(&p) < DEDUP_RADIUS) {
                continue;
            }
            let eigenvalues = Eigenvalues::of(map.jacobian(p));
            let kind = if singular {
                FixedPointKind::Unresolved
            } else {
                eigenvalues.classify()
            };
            found.push(FixedPointRecord {
                location: p,
                kind,
                eigenvalues,
                residual,
            });
        }
    }
    found.sort_by(|a, b| {
        a.location
            .x
            .total_cmp(&b.location.x)
            .then(a.location.y.total_cmp(&b.location.y))
    });
    Ok(found)
}

/// Counts of (sources, sinks, saddles, unresolved).
pub fn census_counts(records: &[FixedPointRecord]) -> [usize; 4] {
    let mut counts = [0; 4];
    for r in records {
        counts[match r.kind {
            FixedPointKind::Source => 0,
            FixedPointKind::Sink => 1,
            FixedPointKind::Saddle => 2,
            FixedPointKind::Unresolved => 3,
        }] += 1;
    }
    counts
}

/// `{"fixed_points":[{"x":..,"y":..,"kind":..,"eigenvalues":[..]},..]}`
pub fn census_json(records: &[FixedPointRecord]) -> String {
    #[derive(Serialize)]
    struct Entry {
        x: f64,
        y: f64,
        kind: FixedPointKind,
        eigenvalues: Eigenvalues,
    }
    #[derive(Serialize)]
    struct Census {
        fixed_points: Vec<Entry>,
    }
    let census = Census {
        fixed_points: records
            .iter()
            .map(|r| Entry {
                x: r.location.x,
                y: r.location.y,
                kind: r.kind,
                eigenvalues: r.eigenvalues,
            })
            .collect(),
    };
    serde_json::to_string_pretty(&census).expect("census serializes") + "\n"
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigenvalue_classification() {
        assert_eq!(
            Eigenvalues::of([[2.0, 0.0], [0.0, 3.0]]).classify(),
            FixedPointKind::Source
        );
        assert_eq!(
            Eigenvalues::of([[0.5, 0.0], [0.0, 0.2]]).classify(),
            FixedPointKind::Sink
        );
        assert_eq!(
            Eigenvalues::of([[2.0, 1.0], [1.0, 1.0]]).classify(),
            FixedPointKind::Saddle
        );
        assert_eq!(
            Eigenvalues::of([[1.0, 0.0], [0.0, 3.0]]).classify(),
            FixedPointKind::Unresolved
        );
        let rot = Eigenvalues::of([[0.0, -2.0], [2.0, 0.0]]);
        assert!(matches!(rot, Eigenvalues::ComplexPair { .. }));
        assert_eq!(rot.classify(), FixedPointKind::Source);
        assert_eq!(Eigenvalues::of([[-3.0, 0.0], [0.0, 0.5]]), Eigenvalues::Real(-3.0, 0.5));
    }

    #[test]
    fn complex_eigenvalues_serialize_as_pairs() {
        let json = serde_json::to_string(&Eigenvalues::ComplexPair { re: 0.5, im: 2.0 }).unwrap();
        assert_eq!(json, "[[0.5,2.0],[0.5,-2.0]]");
    }

    #[test]
    fn argument_checks() {
        let map = DaMap::new(Default::default()).unwrap();
        assert!(find_fixed_points(&map, 32, 1e-12).is_err());
        assert!(find_fixed_points(&map, 64, 1e-3).is_err());
        assert!(find_fixed_points(&map, 64, 0.0).is_err());
    }
}
