//! A DA (derived-from-Anosov) diffeomorphism of the 2-torus.
//!
//! The hyperbolic automorphism `A` is perturbed inside a ball of radius
//! `r0` around the origin by pushing along the stable eigendirection:
//!
//! ```text
//! f(p) = A p + k · β(|p| / r0) · ξ_s(p) · v_s   (mod 1)
//! ```
//!
//! where `p` is the lift nearest the origin, `ξ_s` the stable coordinate and
//! `β` a smooth radial bump with `β(0) = 1` and support in `[0, 1)`. The
//! origin turns into a source once `λ_s + k > 1`, and two saddles appear on
//! the stable line where `λ_s + k β = 1`. Outside the ball `f` is exactly the
//! linear map.

use serde::Serialize;

use super::DaError;

/// Knee of the bump: below it `β` stays close to 1, above it `β` decays
/// like `knee / s` until the exponential cutoff. With this tail
/// `d(s β)/ds >= -0.217`, so the stable line is never folded while
/// `k < λ_s / 0.217`; the default `λ_s + k = 1.6` is well inside that.
pub const BUMP_KNEE: f64 = 0.1;

/// Source strength `λ_s + k` used by [`DAParams::default`].
pub const DEFAULT_SOURCE_GAIN: f64 = 1.6;

pub type Mat2 = [[f64; 2]; 2];

/// A point of the torus `R² / Z²`, both coordinates in `[0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TorusPoint {
    pub x: f64,
    pub y: f64,
}

fn wrap_unit(v: f64) -> f64 {
    let w = v.rem_euclid(1.0);
    // rem_euclid of a tiny negative number rounds up to exactly 1.0
    if w >= 1.0 {
        0.0
    } else {
        w
    }
}

/// Representative of `v` mod 1 in `[-0.5, 0.5]`.
pub(crate) fn wrap_signed(v: f64) -> f64 {
    v - v.round()
}

impl TorusPoint {
    pub fn new(x: f64, y: f64) -> Self {
        Self {
            x: wrap_unit(x),
            y: wrap_unit(y),
        }
    }

    pub fn origin() -> Self {
        Self { x: 0.0, y: 0.0 }
    }

    pub fn from_lift(v: [f64; 2]) -> Self {
        Self::new(v[0], v[1])
    }

    /// Lift nearest the origin.
    pub fn lift(&self) -> [f64; 2] {
        [wrap_signed(self.x), wrap_signed(self.y)]
    }

    /// Shortest displacement `other - self` over the integer translates.
    pub fn displacement_to(&self, other: &TorusPoint) -> [f64; 2] {
        [wrap_signed(other.x - self.x), wrap_signed(other.y - self.y)]
    }

    /// Flat torus distance: minimum over all integer translates.
    pub fn distance(&self, other: &TorusPoint) -> f64 {
        let [dx, dy] = self.displacement_to(other);
        dx.hypot(dy)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DAParams {
    pub linear_part: [[i64; 2]; 2],
    pub bump_radius: f64,
    pub push_strength: f64,
}

impl Default for DAParams {
    fn default() -> Self {
        let linear_part = [[2, 1], [1, 1]];
        let push_strength = push_for_source_gain(linear_part, DEFAULT_SOURCE_GAIN).expect("cat map is hyperbolic");
        Self {
            linear_part,
            bump_radius: 0.15,
            push_strength,
        }
    }
}

impl DAParams {
    pub fn with_push_strength(push_strength: f64) -> Self {
        Self {
            push_strength,
            ..Self::default()
        }
    }
}

/// `k` such that the origin has stable-direction multiplier `λ_s + k = gain`.
pub fn push_for_source_gain(linear_part: [[i64; 2]; 2], gain: f64) -> Result<f64, DaError> {
    let split = Splitting::of(linear_part)?;
    Ok(gain - split.lambda_s)
}

/// Eigen-splitting of the linear part.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Splitting {
    pub lambda_u: f64,
    pub lambda_s: f64,
    pub unstable: [f64; 2],
    pub stable: [f64; 2],
    /// Covector returning the stable coordinate: `⟨w, v_s⟩ = 1`, `⟨w, v_u⟩ = 0`.
    pub stable_coordinate: [f64; 2],
}

impl Splitting {
    pub fn of(a: [[i64; 2]; 2]) -> Result<Self, DaError> {
        let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
        if det.abs() != 1 {
            return Err(DaError::InvalidParams(format!(
                "linear part must be unimodular, det = {det}"
            )));
        }
        let tr = (a[0][0] + a[1][1]) as f64;
        let disc = tr * tr - 4.0 * det as f64;
        if disc <= 0.0 {
            return Err(DaError::InvalidParams(
                "linear part has eigenvalues on the unit circle".into(),
            ));
        }
        let root = disc.sqrt();
        let (l1, l2) = ((tr + root) / 2.0, (tr - root) / 2.0);
        let (lambda_u, lambda_s) = if l1.abs() >= l2.abs() { (l1, l2) } else { (l2, l1) };
        if (lambda_u.abs() - 1.0).abs() < 1e-12 || (lambda_s.abs() - 1.0).abs() < 1e-12 {
            return Err(DaError::InvalidParams("linear part is not hyperbolic".into()));
        }
        let m = to_f64(a);
        let unstable = eigenvector(m, lambda_u);
        let stable = eigenvector(m, lambda_s);
        let perp = [-unstable[1], unstable[0]];
        let scale = perp[0] * stable[0] + perp[1] * stable[1];
        Ok(Self {
            lambda_u,
            lambda_s,
            unstable,
            stable,
            stable_coordinate: [perp[0] / scale, perp[1] / scale],
        })
    }
}

pub(crate) fn to_f64(a: [[i64; 2]; 2]) -> Mat2 {
    [[a[0][0] as f64, a[0][1] as f64], [a[1][0] as f64, a[1][1] as f64]]
}

/// Unit eigenvector of a real 2×2 matrix for a real eigenvalue.
pub(crate) fn eigenvector(m: Mat2, lambda: f64) -> [f64; 2] {
    let r0 = [m[0][1], lambda - m[0][0]];
    let r1 = [lambda - m[1][1], m[1][0]];
    let v = if r0[0].hypot(r0[1]) >= r1[0].hypot(r1[1]) {
        r0
    } else {
        r1
    };
    let n = v[0].hypot(v[1]);
    [v[0] / n, v[1] / n]
}

/// Radial bump `β(s)`: smooth, `β(0) = 1`, zero for `s >= 1`.
pub fn bump(s: f64) -> f64 {
    if s >= 1.0 {
        return 0.0;
    }
    let cutoff = (1.0 - 1.0 / (1.0 - s * s)).exp();
    cutoff * knee_factor(s)
}

fn knee_factor(s: f64) -> f64 {
    let q = s / BUMP_KNEE;
    (1.0 + q.powi(4)).powf(-0.25)
}

/// `β'(s) / s`, finite at `s = 0`.
pub fn bump_slope_over_s(s: f64) -> f64 {
    if s >= 1.0 {
        return 0.0;
    }
    let one_minus = 1.0 - s * s;
    let cutoff = (1.0 - 1.0 / one_minus).exp();
    if cutoff == 0.0 {
        return 0.0;
    }
    let q4 = (s / BUMP_KNEE).powi(4);
    let knee = (1.0 + q4).powf(-0.25);
    let d_cutoff = -2.0 / (one_minus * one_minus);
    let d_knee = -(s * s) / BUMP_KNEE.powi(4) * (1.0 + q4).powf(-1.25);
    cutoff * (d_cutoff * knee + d_knee)
}

/// The DA map with its splitting precomputed.
#[derive(Debug, Clone)]
pub struct DaMap {
    params: DAParams,
    linear: Mat2,
    split: Splitting,
}

impl DaMap {
    /// Checks the parameters, including that the perturbed map has a
    /// Jacobian of constant sign (no folds) on a polar grid over the ball.
    pub fn new(params: DAParams) -> Result<Self, DaError> {
        let split = Splitting::of(params.linear_part)?;
        let r0 = params.bump_radius;
        if !(r0 > 0.0 && r0 < 0.5) {
            return Err(DaError::InvalidParams(format!(
                "bump radius must lie in (0, 0.5), got {r0}"
            )));
        }
        let k = params.push_strength;
        if !(k >= 0.0 && k.is_finite()) {
            return Err(DaError::InvalidParams(format!(
                "push strength must be finite and >= 0, got {k}"
            )));
        }
        let map = Self {
            linear: to_f64(params.linear_part),
            params,
            split,
        };
        map.check_no_folds()?;
        Ok(map)
    }

    fn check_no_folds(&self) -> Result<(), DaError> {
        let sign = det(self.linear).signum();
        let r0 = self.params.bump_radius;
        for i in 0..256 {
            let r = r0 * (i as f64 + 0.5) / 256.0;
            for j in 0..64 {
                let angle = std::f64::consts::TAU * j as f64 / 64.0;
                let p = TorusPoint::new(r * angle.cos(), r * angle.sin());
                let d = det(self.jacobian(p));
                if d * sign <= 1e-9 {
                    return Err(DaError::InvalidParams(format!(
                        "push strength {} folds the map (det Df = {d:.3e} at radius {r:.4})",
                        self.params.push_strength
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn params(&self) -> &DAParams {
        &self.params
    }

    pub fn splitting(&self) -> &Splitting {
        &self.split
    }

    /// Stable coordinate of a planar vector.
    fn stable_coord(&self, v: [f64; 2]) -> f64 {
        let w = self.split.stable_coordinate;
        w[0] * v[0] + w[1] * v[1]
    }

    fn linear_apply(&self, v: [f64; 2]) -> [f64; 2] {
        let a = self.linear;
        [a[0][0] * v[0] + a[0][1] * v[1], a[1][0] * v[0] + a[1][1] * v[1]]
    }

    /// The unperturbed automorphism `A p mod 1`.
    pub fn linear_image(&self, p: TorusPoint) -> TorusPoint {
        TorusPoint::from_lift(self.linear_apply([p.x, p.y]))
    }

    /// Stable-direction push at a lift near the origin; `None` outside the ball.
    fn push(&self, lift: [f64; 2]) -> Option<[f64; 2]> {
        let r = lift[0].hypot(lift[1]);
        if r >= self.params.bump_radius {
            return None;
        }
        let amount = self.params.push_strength * bump(r / self.params.bump_radius) * self.stable_coord(lift);
        let v = self.split.stable;
        Some([amount * v[0], amount * v[1]])
    }

    pub fn apply(&self, p: TorusPoint) -> TorusPoint {
        let lift = p.lift();
        match self.push(lift) {
            None => self.linear_image(p),
            Some(d) => {
                let image = self.linear_apply(lift);
                TorusPoint::from_lift([image[0] + d[0], image[1] + d[1]])
            }
        }
    }

    /// The lift of the map to the plane: `A x` plus the push evaluated at
    /// the nearest lattice translate. Used to follow curves without wrapping.
    pub fn apply_lifted(&self, x: [f64; 2]) -> [f64; 2] {
        let near = [wrap_signed(x[0]), wrap_signed(x[1])];
        let image = self.linear_apply(x);
        match self.push(near) {
            None => image,
            Some(d) => [image[0] + d[0], image[1] + d[1]],
        }
    }

    /// Analytic derivative.
    pub fn jacobian(&self, p: TorusPoint) -> Mat2 {
        let lift = p.lift();
        let r0 = self.params.bump_radius;
        let r = lift[0].hypot(lift[1]);
        let mut jac = self.linear;
        if r >= r0 {
            return jac;
        }
        let s = r / r0;
        let k = self.params.push_strength;
        let xi = self.stable_coord(lift);
        let w = self.split.stable_coordinate;
        let v = self.split.stable;
        // d/dp [β(|p|/r0) ξ(p)] = β w + ξ (β'(s)/s) p / r0²
        let b = bump(s);
        let g = xi * bump_slope_over_s(s) / (r0 * r0);
        let grad = [b * w[0] + g * lift[0], b * w[1] + g * lift[1]];
        for (i, row) in jac.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry += k * v[i] * grad[j];
            }
        }
        jac
    }
}

pub(crate) fn det(m: Mat2) -> f64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

pub fn da_map(p: TorusPoint, params: &DAParams) -> Result<TorusPoint, DaError> {
    Ok(DaMap::new(params.clone())?.apply(p))
}

pub fn da_jacobian(p: TorusPoint, params: &DAParams) -> Result<Mat2, DaError> {
    Ok(DaMap::new(params.clone())?.jacobian(p))
}
