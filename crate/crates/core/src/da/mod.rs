//! Numerical harness around a DA diffeomorphism of the 2-torus.
//!
//! The default map has exactly three fixed points: a source at the origin
//! and two saddles on its stable line. The source's basin is a disk whose
//! boundary is made of unstable separatrices of the two saddles, i.e. a
//! single bunch of degree 2, and everything else accumulates on a
//! one-dimensional expanding attractor.

mod attractor;
mod fixed;
mod manifold;
mod map;
mod svg;

pub use attractor::{approximate_attractor, hausdorff_distance, min_distance_to, NearestGrid, ORIGIN_EXCLUSION};
pub use fixed::{
    census_counts, census_json, find_fixed_points, Eigenvalues, FixedPointKind, FixedPointRecord, DEDUP_RADIUS,
};
pub use manifold::{unstable_direction, unstable_segment, unstable_segment_lifted, SEED_LENGTH};
pub use map::{
    bump, bump_slope_over_s, da_jacobian, da_map, push_for_source_gain, DAParams, DaMap, Mat2, Splitting, TorusPoint,
    BUMP_KNEE, DEFAULT_SOURCE_GAIN,
};
pub use svg::{portrait_svg, render_phase_portrait, PhasePortrait};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DaError {
    #[error("invalid DA parameters: {0}")]
    InvalidParams(String),
    #[error("invalid argument: {0}")]
    Argument(String),
}

/// Default Newton tolerance for fixed-point searches.
pub const DEFAULT_NEWTON_TOL: f64 = 1e-12;
