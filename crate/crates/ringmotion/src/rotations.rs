//! Rotation paths in SO(3) with lifts to unit quaternions, ring geometry,
//! sampled ring motions, and rotation numbers.
//!
//! A [`RotationPath`] is a chain of single-axis sweeps; its endpoint lifts to
//! the unit quaternions by multiplying the per-segment lifts in order, which
//! decides the class of a rotation loop in the two-element fundamental group
//! of SO(3). [`RingMotion`] carries sampled trajectories of disjoint rings
//! with machine-checked disjointness, continuity, and closure.

use std::fmt;

use thiserror::Error;

pub type Vec3 = [f64; 3];

const UNIT_TOL: f64 = 1e-9;
const LOOP_TOL: f64 = 1e-6;
/// Continuity bound on the center step between consecutive samples.
const MAX_CENTER_STEP: f64 = 0.5;
/// Continuity bound on the normal angle step between consecutive samples.
const MAX_NORMAL_STEP: f64 = std::f64::consts::FRAC_PI_4;
/// Two rings closer than this count as colliding.
const COLLISION_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RotationError {
    #[error("discontinuous path: {0}")]
    DiscontinuousPath(String),
    #[error("path endpoint is not the identity rotation")]
    NotALoop,
    #[error("winding {0} is not within tolerance of an integer")]
    NonIntegralWinding(f64),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RingError {
    #[error("ring radius must be positive, got {0}")]
    NonPositiveRadius(f64),
    #[error("ring normal must be a unit vector, got length {0}")]
    NonUnitNormal(f64),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MotionError {
    #[error("a ring motion needs at least one component")]
    NoComponents,
    #[error("component {0} has {1} samples, expected {2}")]
    RaggedSamples(usize, usize, usize),
    #[error("a ring motion needs at least 9 samples (8 steps), got {0}")]
    TooFewSamples(usize),
    #[error("closure permutation {0:?} is not a permutation of the components")]
    BadClosurePermutation(Vec<usize>),
}

pub fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn norm(a: Vec3) -> f64 {
    dot(a, a).sqrt()
}

pub fn sub(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn add(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn scale(a: Vec3, s: f64) -> Vec3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

fn normalize(a: Vec3) -> Option<Vec3> {
    let n = norm(a);
    if n == 0.0 {
        None
    } else {
        Some(scale(a, 1.0 / n))
    }
}

/// A unit quaternion `w + x i + y j + z k`, representing a rotation of 3-space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitQuaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

pub const QUAT_ONE: UnitQuaternion = UnitQuaternion {
    w: 1.0,
    x: 0.0,
    y: 0.0,
    z: 0.0,
};

impl UnitQuaternion {
    pub fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        UnitQuaternion { w, x, y, z }
    }

    /// `cos(angle/2) + sin(angle/2) axis`, the lift of the rotation by
    /// `angle` about `axis`.
    pub fn from_axis_angle(axis: Vec3, angle: f64) -> Self {
        debug_assert!((norm(axis) - 1.0).abs() <= 1e-6, "axis must be unit");
        let half = angle / 2.0;
        let s = half.sin();
        UnitQuaternion {
            w: half.cos(),
            x: s * axis[0],
            y: s * axis[1],
            z: s * axis[2],
        }
    }

    pub fn norm(&self) -> f64 {
        (self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn is_unit(&self) -> bool {
        (self.norm() - 1.0).abs() <= UNIT_TOL
    }

    pub fn mul(&self, o: &UnitQuaternion) -> UnitQuaternion {
        UnitQuaternion {
            w: self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            x: self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            y: self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            z: self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        }
    }

    pub fn conjugate(&self) -> UnitQuaternion {
        UnitQuaternion {
            w: self.w,
            x: -self.x,
            y: -self.y,
            z: -self.z,
        }
    }

    pub fn negate(&self) -> UnitQuaternion {
        UnitQuaternion {
            w: -self.w,
            x: -self.x,
            y: -self.y,
            z: -self.z,
        }
    }

    /// Applies the rotation to a vector.
    pub fn rotate(&self, v: Vec3) -> Vec3 {
        // q v q^-1 via the expanded formula.
        let u = [self.x, self.y, self.z];
        let uv = cross(u, v);
        let uuv = cross(u, uv);
        add(v, add(scale(uv, 2.0 * self.w), scale(uuv, 2.0)))
    }

    pub fn approx_eq(&self, o: &UnitQuaternion, tol: f64) -> bool {
        (self.w - o.w).abs() <= tol
            && (self.x - o.x).abs() <= tol
            && (self.y - o.y).abs() <= tol
            && (self.z - o.z).abs() <= tol
    }

    /// Equal as rotations: the same quaternion up to global sign.
    pub fn same_rotation(&self, o: &UnitQuaternion, tol: f64) -> bool {
        self.approx_eq(o, tol) || self.approx_eq(&o.negate(), tol)
    }
}

impl fmt::Display for UnitQuaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:+.6} {:+.6}i {:+.6}j {:+.6}k",
            self.w, self.x, self.y, self.z
        )
    }
}

/// One single-axis sweep. The path value during the segment is
/// `pre . R_axis(angle)` with `angle` running from `start_angle` to
/// `end_angle`; `pre` is the rotation already performed by the earlier
/// segments.
#[derive(Debug, Clone)]
pub struct PathSegment {
    pub axis: Vec3,
    pub start_angle: f64,
    pub end_angle: f64,
    pub pre: UnitQuaternion,
}

impl PathSegment {
    fn value(&self, local: f64) -> UnitQuaternion {
        let angle = self.start_angle + (self.end_angle - self.start_angle) * local;
        self.pre.mul(&UnitQuaternion::from_axis_angle(self.axis, angle))
    }

    /// The per-segment lift factor `cos(d/2) + sin(d/2) axis` for the swept
    /// angle `d`.
    fn lift_factor(&self) -> UnitQuaternion {
        UnitQuaternion::from_axis_angle(self.axis, self.end_angle - self.start_angle)
    }
}

/// A piecewise single-axis rotation path starting at the identity.
#[derive(Debug, Clone, Default)]
pub struct RotationPath {
    segments: Vec<PathSegment>,
}

impl RotationPath {
    pub fn identity() -> Self {
        RotationPath::default()
    }

    pub fn segments(&self) -> &[PathSegment] {
        &self.segments
    }

    /// The rotation at the end of the path.
    pub fn end_rotation(&self) -> UnitQuaternion {
        match self.segments.last() {
            Some(seg) => seg.value(1.0),
            None => QUAT_ONE,
        }
    }

    /// The rotation at parameter `t`, with segments spanning equal
    /// parameter intervals.
    pub fn rotation_at(&self, t: f64) -> UnitQuaternion {
        if self.segments.is_empty() {
            return QUAT_ONE;
        }
        let m = self.segments.len() as f64;
        let clamped = t.clamp(0.0, 1.0);
        let idx = ((clamped * m) as usize).min(self.segments.len() - 1);
        let local = clamped * m - idx as f64;
        self.segments[idx].value(local)
    }

    /// Appends a sweep by `angle` about the world-frame `axis`, continuing
    /// from the current end rotation.
    pub fn then_world(mut self, axis: Vec3, angle: f64) -> Self {
        let axis = normalize(axis).expect("rotation axis must be nonzero");
        let end = self.end_rotation();
        // World-frame sweep R_w(theta) . end = end . R_{end^-1(w)}(theta).
        let body_axis = end.conjugate().rotate(axis);
        self.segments.push(PathSegment {
            axis: body_axis,
            start_angle: 0.0,
            end_angle: angle,
            pre: end,
        });
        self
    }

    /// A single sweep from the identity about a world axis.
    pub fn world_rotation(axis: Vec3, angle: f64) -> Self {
        RotationPath::identity().then_world(axis, angle)
    }

    /// Path concatenation: this path, then `other` applied to its result.
    pub fn concat(&self, other: &RotationPath) -> RotationPath {
        let f1 = self.end_rotation();
        let f1_inv = f1.conjugate();
        let mut segments = self.segments.clone();
        for seg in &other.segments {
            segments.push(PathSegment {
                axis: f1_inv.rotate(seg.axis),
                start_angle: seg.start_angle,
                end_angle: seg.end_angle,
                pre: seg.pre.mul(&f1),
            });
        }
        RotationPath { segments }
    }

    /// The reverse path `t -> p(1 - t) p(1)^-1`, again starting at the
    /// identity.
    pub fn inverse(&self) -> RotationPath {
        let p1 = self.end_rotation();
        let p1_inv = p1.conjugate();
        let segments = self
            .segments
            .iter()
            .rev()
            .map(|seg| PathSegment {
                axis: p1.rotate(seg.axis),
                start_angle: seg.end_angle,
                end_angle: seg.start_angle,
                pre: seg.pre.mul(&p1_inv),
            })
            .collect();
        RotationPath { segments }
    }

    /// Splits every segment at its midpoint; the path (and its lift) is
    /// unchanged.
    pub fn subdivided(&self) -> RotationPath {
        let mut segments = Vec::with_capacity(2 * self.segments.len());
        for seg in &self.segments {
            let mid = (seg.start_angle + seg.end_angle) / 2.0;
            segments.push(PathSegment {
                axis: seg.axis,
                start_angle: seg.start_angle,
                end_angle: mid,
                pre: seg.pre,
            });
            segments.push(PathSegment {
                axis: seg.axis,
                start_angle: mid,
                end_angle: seg.end_angle,
                pre: seg.pre,
            });
        }
        RotationPath { segments }
    }

    fn check_continuity(&self) -> Result<(), RotationError> {
        let mut prev = QUAT_ONE;
        for (i, seg) in self.segments.iter().enumerate() {
            if (norm(seg.axis) - 1.0).abs() > UNIT_TOL {
                return Err(RotationError::DiscontinuousPath(format!(
                    "segment {i} axis is not unit length"
                )));
            }
            let start = seg.value(0.0);
            if !start.same_rotation(&prev, UNIT_TOL) {
                return Err(RotationError::DiscontinuousPath(format!(
                    "segment {i} starts at {start}, expected {prev}"
                )));
            }
            prev = seg.value(1.0);
        }
        Ok(())
    }

    /// The endpoint of the unique continuous lift starting at `+1`: the
    /// ordered product of the per-segment lift factors.
    pub fn lift_endpoint(&self) -> Result<UnitQuaternion, RotationError> {
        self.check_continuity()?;
        let mut q = QUAT_ONE;
        for seg in &self.segments {
            q = q.mul(&seg.lift_factor());
        }
        Ok(q)
    }

    /// For rotation loops: `+1` or `-1`, the class in the fundamental group
    /// of SO(3).
    pub fn pi1_class(&self) -> Result<i8, RotationError> {
        let q = self.lift_endpoint()?;
        if q.x.abs() > LOOP_TOL || q.y.abs() > LOOP_TOL || q.z.abs() > LOOP_TOL {
            return Err(RotationError::NotALoop);
        }
        if (q.w.abs() - 1.0).abs() > LOOP_TOL {
            return Err(RotationError::NotALoop);
        }
        Ok(if q.w > 0.0 { 1 } else { -1 })
    }
}

/// The full positive turn of 3-space about the z-axis (the rotation part of
/// the standard rotation of one Hopf component along the other).
pub fn full_turn_z() -> RotationPath {
    RotationPath::world_rotation([0.0, 0.0, 1.0], 2.0 * std::f64::consts::PI)
}

/// The half turn about the y-axis (the rotation part of the flip of a ring
/// or of the whole Hopf link).
pub fn half_turn_y() -> RotationPath {
    RotationPath::world_rotation([0.0, 1.0, 0.0], std::f64::consts::PI)
}

/// The rotation part of the motion swapping the two Hopf components: a
/// quarter-turn tilt about y by 45 degrees, a half turn about x, and the
/// tilt undone.
pub fn swap_rotation_path() -> RotationPath {
    use std::f64::consts::PI;
    RotationPath::identity()
        .then_world([0.0, 1.0, 0.0], PI / 4.0)
        .then_world([1.0, 0.0, 0.0], PI)
        .then_world([0.0, 1.0, 0.0], -PI / 4.0)
}

/// A round circle in 3-space: center, radius, and unit normal of its plane.
/// For unoriented comparisons the normal is identified with its negation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ring {
    pub center: Vec3,
    pub radius: f64,
    pub normal: Vec3,
}

impl Ring {
    pub fn new(center: Vec3, radius: f64, normal: Vec3) -> Result<Self, RingError> {
        if !(radius > 0.0) {
            return Err(RingError::NonPositiveRadius(radius));
        }
        let len = norm(normal);
        if (len - 1.0).abs() > 1e-6 {
            return Err(RingError::NonUnitNormal(len));
        }
        // Keep already-unit normals bit-exact so files round-trip.
        let normal = if (len - 1.0).abs() <= UNIT_TOL {
            normal
        } else {
            normalize(normal).expect("checked nonzero")
        };
        Ok(Ring {
            center,
            radius,
            normal,
        })
    }

    /// An orthonormal basis of the ring's plane.
    fn plane_basis(&self) -> (Vec3, Vec3) {
        let n = self.normal;
        let seed = if n[0].abs() <= n[1].abs() && n[0].abs() <= n[2].abs() {
            [1.0, 0.0, 0.0]
        } else if n[1].abs() <= n[2].abs() {
            [0.0, 1.0, 0.0]
        } else {
            [0.0, 0.0, 1.0]
        };
        let u = normalize(cross(n, seed)).expect("seed is not parallel to the normal");
        let v = cross(n, u);
        (u, v)
    }

    pub fn point_at(&self, theta: f64) -> Vec3 {
        let (u, v) = self.plane_basis();
        add(
            self.center,
            add(
                scale(u, self.radius * theta.cos()),
                scale(v, self.radius * theta.sin()),
            ),
        )
    }

    /// Exact Euclidean distance from a point to this circle.
    pub fn distance_to_point(&self, p: Vec3) -> f64 {
        let d = sub(p, self.center);
        let h = dot(d, self.normal);
        let in_plane = sub(d, scale(self.normal, h));
        let rho = norm(in_plane);
        ((rho - self.radius).powi(2) + h * h).sqrt()
    }

    /// Image under a rotation followed by a translation.
    pub fn transformed(&self, rotation: &UnitQuaternion, translation: Vec3) -> Ring {
        Ring {
            center: add(rotation.rotate(self.center), translation),
            radius: self.radius,
            normal: rotation.rotate(self.normal),
        }
    }

    /// Same circle up to tolerance, normals compared up to sign.
    pub fn approx_eq_unoriented(&self, o: &Ring, tol: f64) -> bool {
        norm(sub(self.center, o.center)) <= tol
            && (self.radius - o.radius).abs() <= tol
            && (norm(sub(self.normal, o.normal)) <= tol
                || norm(add(self.normal, o.normal)) <= tol)
    }

    /// Same circle with the same plane orientation.
    pub fn approx_eq_oriented(&self, o: &Ring, tol: f64) -> bool {
        norm(sub(self.center, o.center)) <= tol
            && (self.radius - o.radius).abs() <= tol
            && norm(sub(self.normal, o.normal)) <= tol
    }
}

/// Minimum Euclidean distance between two circles: dense sampling of one
/// circle against the exact point-to-circle distance of the other, followed
/// by local refinement of every sampled local minimum.
pub fn ring_distance(r1: &Ring, r2: &Ring) -> f64 {
    const SAMPLES: usize = 1024;
    let eval = |theta: f64| r2.distance_to_point(r1.point_at(theta));
    let values: Vec<f64> = (0..SAMPLES)
        .map(|i| eval(i as f64 * std::f64::consts::TAU / SAMPLES as f64))
        .collect();
    let coarse = values.iter().cloned().fold(f64::INFINITY, f64::min);
    // The sampled point nearest the true minimum is within one Lipschitz
    // step of it; only minima that close to the coarse minimum need
    // refinement.
    let slack = 4.0 * r1.radius * std::f64::consts::PI / SAMPLES as f64;
    let mut candidates: Vec<usize> = (0..SAMPLES)
        .filter(|&i| {
            let prev = values[(i + SAMPLES - 1) % SAMPLES];
            let next = values[(i + 1) % SAMPLES];
            values[i] < prev && values[i] <= next && values[i] <= coarse + slack
        })
        .collect();
    candidates.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    candidates.truncate(32);
    let mut best = coarse;
    for i in candidates {
        // Local refinement by interval shrinking.
        let mut center = i as f64 * std::f64::consts::TAU / SAMPLES as f64;
        let mut width = std::f64::consts::TAU / SAMPLES as f64;
        let mut local = values[i];
        while width > 1e-10 {
            for k in -4i32..=4 {
                let theta = center + width * k as f64 / 4.0;
                let d = eval(theta);
                if d < local {
                    local = d;
                    center = theta;
                }
            }
            width /= 4.0;
        }
        best = best.min(local);
    }
    best
}

/// A sampled motion of a ring link: one trajectory per component at uniform
/// times, plus the permutation matched by the final configuration.
#[derive(Debug, Clone)]
pub struct RingMotion {
    /// `components[i][t]` is component `i` at sample `t`.
    components: Vec<Vec<Ring>>,
    /// Component `i` ends at the initial position of component
    /// `closure_permutation[i]`.
    closure_permutation: Vec<usize>,
}

/// Outcome of validating a ring motion. `min_pair_distance` can be a
/// conservative lower bound for sample pairs that a cheap center-distance
/// bound already clears by a wide margin.
#[derive(Debug, Clone)]
pub struct MotionReport {
    pub min_pair_distance: f64,
    pub first_collision: Option<(usize, usize, usize)>,
    pub continuity_failure: Option<String>,
    pub closure_failure: Option<String>,
}

impl MotionReport {
    pub fn is_valid(&self) -> bool {
        self.first_collision.is_none()
            && self.continuity_failure.is_none()
            && self.closure_failure.is_none()
    }
}

impl fmt::Display for MotionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "min pairwise distance: {:.6}", self.min_pair_distance)?;
        match &self.first_collision {
            Some((t, i, j)) => {
                writeln!(f, "collision: components {i} and {j} at sample {t}")?
            }
            None => writeln!(f, "disjointness: pass")?,
        }
        match &self.continuity_failure {
            Some(msg) => writeln!(f, "continuity: FAIL ({msg})")?,
            None => writeln!(f, "continuity: pass")?,
        }
        match &self.closure_failure {
            Some(msg) => writeln!(f, "closure: FAIL ({msg})")?,
            None => writeln!(f, "closure: pass")?,
        }
        Ok(())
    }
}

impl RingMotion {
    pub fn new(
        components: Vec<Vec<Ring>>,
        closure_permutation: Vec<usize>,
    ) -> Result<Self, MotionError> {
        if components.is_empty() {
            return Err(MotionError::NoComponents);
        }
        let len = components[0].len();
        for (i, c) in components.iter().enumerate() {
            if c.len() != len {
                return Err(MotionError::RaggedSamples(i, c.len(), len));
            }
        }
        if len < 9 {
            return Err(MotionError::TooFewSamples(len));
        }
        let k = components.len();
        let mut seen = vec![false; k];
        if closure_permutation.len() != k
            || closure_permutation.iter().any(|&p| {
                if p >= k || seen[p] {
                    true
                } else {
                    seen[p] = false == std::mem::replace(&mut seen[p], true) && false;
                    seen[p] = true;
                    false
                }
            })
        {
            return Err(MotionError::BadClosurePermutation(closure_permutation));
        }
        Ok(RingMotion {
            components,
            closure_permutation,
        })
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    /// Number of time points (the motion has `num_samples() - 1` steps).
    pub fn num_samples(&self) -> usize {
        self.components[0].len()
    }

    pub fn components(&self) -> &[Vec<Ring>] {
        &self.components
    }

    pub fn closure_permutation(&self) -> &[usize] {
        &self.closure_permutation
    }

    /// Checks pairwise disjointness at every sample, the continuity bounds,
    /// and closure up to the stated permutation (normals up to sign).
    pub fn validate(&self) -> MotionReport {
        let k = self.num_components();
        let n = self.num_samples();
        let mut min_dist = f64::INFINITY;
        let mut first_collision = None;
        for t in 0..n {
            for i in 0..k {
                for j in (i + 1)..k {
                    let a = &self.components[i][t];
                    let b = &self.components[j][t];
                    let bound = norm(sub(a.center, b.center)) - a.radius - b.radius;
                    let d = if bound >= 0.5 { bound } else { ring_distance(a, b) };
                    if d < min_dist {
                        min_dist = d;
                    }
                    if d < COLLISION_TOL && first_collision.is_none() {
                        first_collision = Some((t, i, j));
                    }
                }
            }
        }

        let mut continuity_failure = None;
        'outer: for i in 0..k {
            for t in 1..n {
                let a = &self.components[i][t - 1];
                let b = &self.components[i][t];
                let step = norm(sub(a.center, b.center));
                if step > MAX_CENTER_STEP {
                    continuity_failure = Some(format!(
                        "component {i}, sample {t}: center step {step:.3} exceeds {MAX_CENTER_STEP}"
                    ));
                    break 'outer;
                }
                let ratio = b.radius / a.radius;
                if !(0.5..=2.0).contains(&ratio) {
                    continuity_failure = Some(format!(
                        "component {i}, sample {t}: radius ratio {ratio:.3} outside [1/2, 2]"
                    ));
                    break 'outer;
                }
                let cosine = dot(a.normal, b.normal).abs().min(1.0);
                let angle = cosine.acos();
                if angle > MAX_NORMAL_STEP {
                    continuity_failure = Some(format!(
                        "component {i}, sample {t}: normal step {angle:.3} exceeds pi/4"
                    ));
                    break 'outer;
                }
            }
        }

        let mut closure_failure = None;
        for i in 0..k {
            let target = self.closure_permutation[i];
            let last = &self.components[i][n - 1];
            let first = &self.components[target][0];
            if !last.approx_eq_unoriented(first, LOOP_TOL) {
                closure_failure = Some(format!(
                    "component {i} does not end at the initial position of component {target}"
                ));
                break;
            }
        }

        MotionReport {
            min_pair_distance: min_dist,
            first_collision,
            continuity_failure,
            closure_failure,
        }
    }

    /// Serializes to the `.mot` format.
    pub fn serialize(&self, name: &str) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "motion {name} components {} samples {}\n",
            self.num_components(),
            self.num_samples() - 1
        ));
        for t in 0..self.num_samples() {
            for comp in &self.components {
                let r = &comp[t];
                out.push_str(&format!(
                    "ring {} {} {} {} {} {} {}\n",
                    r.center[0], r.center[1], r.center[2], r.radius, r.normal[0], r.normal[1],
                    r.normal[2]
                ));
            }
        }
        out.push_str("closes");
        for &p in &self.closure_permutation {
            out.push_str(&format!(" {}", p + 1));
        }
        out.push('\n');
        out
    }

    /// Parses the `.mot` format: a `motion <name> components <k> samples <N>`
    /// header, `(N+1) * k` ring lines in sample-major order, and a 1-based
    /// `closes` permutation line.
    pub fn parse(text: &str) -> Result<(String, RingMotion), String> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (_, header) = lines.next().ok_or("empty motion file")?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        let [_, name, comp_kw, k, samp_kw, n] = toks.as_slice() else {
            return Err("header must be `motion <name> components <k> samples <N>`".into());
        };
        if toks[0] != "motion" || *comp_kw != "components" || *samp_kw != "samples" {
            return Err("header must be `motion <name> components <k> samples <N>`".into());
        }
        let k: usize = k.parse().map_err(|_| format!("bad component count `{k}`"))?;
        let n: usize = n.parse().map_err(|_| format!("bad sample count `{n}`"))?;
        let mut components = vec![Vec::with_capacity(n + 1); k];
        for t in 0..=n {
            for comp in components.iter_mut().take(k) {
                let (lineno, line) = lines
                    .next()
                    .ok_or_else(|| format!("missing ring line at sample {t}"))?;
                let toks: Vec<&str> = line.split_whitespace().collect();
                if toks.len() != 8 || toks[0] != "ring" {
                    return Err(format!(
                        "line {lineno}: expected `ring cx cy cz r nx ny nz`"
                    ));
                }
                let nums: Vec<f64> = toks[1..]
                    .iter()
                    .map(|s| s.parse::<f64>().map_err(|_| format!("line {lineno}: bad number `{s}`")))
                    .collect::<Result<_, _>>()?;
                let ring = Ring::new(
                    [nums[0], nums[1], nums[2]],
                    nums[3],
                    [nums[4], nums[5], nums[6]],
                )
                .map_err(|e| format!("line {lineno}: {e}"))?;
                comp.push(ring);
            }
        }
        let (lineno, closes) = lines.next().ok_or("missing `closes` line")?;
        let toks: Vec<&str> = closes.split_whitespace().collect();
        if toks.first() != Some(&"closes") || toks.len() != k + 1 {
            return Err(format!("line {lineno}: expected `closes` with {k} entries"));
        }
        let perm: Vec<usize> = toks[1..]
            .iter()
            .map(|s| {
                s.parse::<usize>()
                    .ok()
                    .and_then(|p| p.checked_sub(1))
                    .ok_or_else(|| format!("line {lineno}: bad permutation entry `{s}`"))
            })
            .collect::<Result<_, _>>()?;
        let motion = RingMotion::new(components, perm).map_err(|e| e.to_string())?;
        Ok((name.to_string(), motion))
    }
}

/// The base configuration: the two Hopf components and a split circle.
///
/// The first component is the unit circle in the xy-plane, the second the
/// unit circle in the yz-plane centered at `(0, 1, 0)` (so they link once),
/// the third a unit circle in the xy-plane centered at `(0, 5, 0)`.
pub fn base_rings() -> [Ring; 3] {
    [
        Ring::new([0.0, 0.0, 0.0], 1.0, [0.0, 0.0, 1.0]).unwrap(),
        Ring::new([0.0, 1.0, 0.0], 1.0, [1.0, 0.0, 0.0]).unwrap(),
        Ring::new([0.0, 5.0, 0.0], 1.0, [0.0, 0.0, 1.0]).unwrap(),
    ]
}

/// The built-in ring motions over [`base_rings`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinMotion {
    /// The circle flips by a half turn about the y-axis.
    TauC,
    /// The whole Hopf link flips by a half turn about the y-axis.
    TauH,
    /// The second Hopf component makes the positive standard rotation along
    /// the first.
    Ell,
    /// The Hopf components swap by a rigid motion.
    S,
    /// The circle shrinks, threads the disk of the first Hopf component, and
    /// returns around the outside.
    GA,
    /// The circle shrinks, threads the disk of the second Hopf component,
    /// and returns around the outside.
    GB,
    /// The circle grows, descends around the whole Hopf link, and returns.
    EpsC,
}

impl BuiltinMotion {
    pub const ALL: [BuiltinMotion; 7] = [
        BuiltinMotion::TauC,
        BuiltinMotion::TauH,
        BuiltinMotion::Ell,
        BuiltinMotion::S,
        BuiltinMotion::GA,
        BuiltinMotion::GB,
        BuiltinMotion::EpsC,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BuiltinMotion::TauC => "tau_C",
            BuiltinMotion::TauH => "tau_H",
            BuiltinMotion::Ell => "ell",
            BuiltinMotion::S => "s",
            BuiltinMotion::GA => "g_a",
            BuiltinMotion::GB => "g_b",
            BuiltinMotion::EpsC => "eps_C",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        BuiltinMotion::ALL.into_iter().find(|m| m.name() == name)
    }
}

/// Samples a built-in motion at 128 steps.
pub fn builtin_motion(which: BuiltinMotion) -> RingMotion {
    builtin_motion_with_samples(which, 128)
}

/// A rigid isometry `p -> q(p) + v`.
#[derive(Clone, Copy)]
struct Isometry {
    q: UnitQuaternion,
    v: Vec3,
}

const ISO_ID: Isometry = Isometry {
    q: QUAT_ONE,
    v: [0.0, 0.0, 0.0],
};

impl Isometry {
    fn rotation(axis: Vec3, angle: f64) -> Isometry {
        Isometry {
            q: UnitQuaternion::from_axis_angle(axis, angle),
            v: [0.0, 0.0, 0.0],
        }
    }

    fn translation(v: Vec3) -> Isometry {
        Isometry { q: QUAT_ONE, v }
    }

    /// `self` applied after `other`.
    fn after(&self, other: &Isometry) -> Isometry {
        Isometry {
            q: self.q.mul(&other.q),
            v: add(self.q.rotate(other.v), self.v),
        }
    }

    fn apply_ring(&self, r: &Ring) -> Ring {
        r.transformed(&self.q, self.v)
    }
}

/// A keyframe trajectory: piecewise interpolation of center (linear),
/// radius (geometric), and normal (rotation in the plane spanned).
struct Keyframes {
    frames: Vec<Ring>,
    cumulative: Vec<f64>,
}

impl Keyframes {
    fn new(frames: Vec<Ring>, weights: Vec<f64>) -> Self {
        assert_eq!(weights.len() + 1, frames.len());
        let total: f64 = weights.iter().sum();
        let mut cumulative = vec![0.0];
        let mut acc = 0.0;
        for w in &weights {
            acc += w / total;
            cumulative.push(acc);
        }
        *cumulative.last_mut().unwrap() = 1.0;
        Keyframes { frames, cumulative }
    }

    fn at(&self, t: f64) -> Ring {
        let t = t.clamp(0.0, 1.0);
        let seg = match self
            .cumulative
            .windows(2)
            .position(|w| t >= w[0] && t <= w[1])
        {
            Some(i) => i,
            None => self.frames.len() - 2,
        };
        let span = self.cumulative[seg + 1] - self.cumulative[seg];
        let local = if span > 0.0 {
            (t - self.cumulative[seg]) / span
        } else {
            0.0
        };
        let a = &self.frames[seg];
        let b = &self.frames[seg + 1];
        let center = add(scale(a.center, 1.0 - local), scale(b.center, local));
        let radius = a.radius * (b.radius / a.radius).powf(local);
        let normal = slerp_normal(a.normal, b.normal, local);
        Ring {
            center,
            radius,
            normal,
        }
    }
}

fn slerp_normal(a: Vec3, b: Vec3, t: f64) -> Vec3 {
    let cos = dot(a, b).clamp(-1.0, 1.0);
    let angle = cos.acos();
    if angle < 1e-12 {
        return a;
    }
    let axis = match normalize(cross(a, b)) {
        Some(axis) => axis,
        // Antipodal normals never occur in the built-in keyframes.
        None => return a,
    };
    UnitQuaternion::from_axis_angle(axis, angle * t).rotate(a)
}

pub fn builtin_motion_with_samples(which: BuiltinMotion, steps: usize) -> RingMotion {
    use std::f64::consts::PI;
    assert!(steps >= 8, "built-in motions need at least 8 steps");
    let [h1, h2, c] = base_rings();
    let y = [0.0, 1.0, 0.0];
    let z = [0.0, 0.0, 1.0];
    let x = [1.0, 0.0, 0.0];

    let sample =
        |f: &dyn Fn(f64) -> [Ring; 3]| -> Vec<Vec<Ring>> {
            let mut comps = vec![Vec::with_capacity(steps + 1); 3];
            for i in 0..=steps {
                let rings = f(i as f64 / steps as f64);
                for (comp, ring) in comps.iter_mut().zip(rings) {
                    comp.push(ring);
                }
            }
            comps
        };

    let (components, closure) = match which {
        BuiltinMotion::TauC => {
            let f = move |t: f64| {
                let rot = UnitQuaternion::from_axis_angle(y, PI * t);
                [h1, h2, c.transformed(&rot, [0.0, 0.0, 0.0])]
            };
            (sample(&f), vec![0, 1, 2])
        }
        BuiltinMotion::TauH => {
            let f = move |t: f64| {
                let rot = UnitQuaternion::from_axis_angle(y, PI * t);
                [
                    h1.transformed(&rot, [0.0, 0.0, 0.0]),
                    h2.transformed(&rot, [0.0, 0.0, 0.0]),
                    c,
                ]
            };
            (sample(&f), vec![0, 1, 2])
        }
        BuiltinMotion::Ell => {
            let f = move |t: f64| {
                let rot = UnitQuaternion::from_axis_angle(z, 2.0 * PI * t);
                [h1, h2.transformed(&rot, [0.0, 0.0, 0.0]), c]
            };
            (sample(&f), vec![0, 1, 2])
        }
        BuiltinMotion::S => {
            // Slide down half a unit, tilt 45 degrees about y, half turn
            // about x, tilt back, slide up: swaps the Hopf components.
            let stages: Vec<Box<dyn Fn(f64) -> Isometry>> = vec![
                Box::new(|u| Isometry::translation([0.0, -0.5 * u, 0.0])),
                Box::new(move |u| Isometry::rotation(y, PI / 4.0 * u)),
                Box::new(move |u| Isometry::rotation(x, PI * u)),
                Box::new(move |u| Isometry::rotation(y, -PI / 4.0 * u)),
                Box::new(|u| Isometry::translation([0.0, 0.5 * u, 0.0])),
            ];
            let f = move |t: f64| {
                let pos = t * stages.len() as f64;
                let done = (pos as usize).min(stages.len() - 1);
                let local = pos - done as f64;
                let mut iso = ISO_ID;
                for stage in stages.iter().take(done) {
                    iso = stage(1.0).after(&iso);
                }
                iso = stages[done](local).after(&iso);
                [iso.apply_ring(&h1), iso.apply_ring(&h2), c]
            };
            (sample(&f), vec![1, 0, 2])
        }
        BuiltinMotion::GA => {
            // Shrink, pass above the Hopf link, thread the first component's
            // disk at a sideways offset, and return underneath.
            let ring = |cx: f64, cy: f64, cz: f64, r: f64| Ring {
                center: [cx, cy, cz],
                radius: r,
                normal: z,
            };
            let frames = Keyframes::new(
                vec![
                    ring(0.0, 5.0, 0.0, 1.0),
                    ring(0.0, 5.0, 0.0, 0.25),
                    ring(0.0, 5.0, 2.0, 0.25),
                    ring(0.5, 0.0, 2.0, 0.25),
                    ring(0.5, 0.0, -2.0, 0.25),
                    ring(0.0, 5.0, -2.0, 0.25),
                    ring(0.0, 5.0, 0.0, 0.25),
                    ring(0.0, 5.0, 0.0, 1.0),
                ],
                vec![1.0, 2.0, 5.0, 4.0, 5.0, 2.0, 1.0],
            );
            let f = move |t: f64| [h1, h2, frames.at(t)];
            (sample(&f), vec![0, 1, 2])
        }
        BuiltinMotion::GB => {
            // Shrink, travel to the positive-x side, tilt to face the second
            // component's plane, thread its disk, tilt back, and return.
            let ring = |cx: f64, cy: f64, cz: f64, r: f64, n: Vec3| Ring {
                center: [cx, cy, cz],
                radius: r,
                normal: n,
            };
            let frames = Keyframes::new(
                vec![
                    ring(0.0, 5.0, 0.0, 1.0, z),
                    ring(0.0, 5.0, 0.0, 0.25, z),
                    ring(2.0, 1.0, 0.5, 0.25, z),
                    ring(2.0, 1.0, 0.5, 0.25, x),
                    ring(-2.0, 1.0, 0.5, 0.25, x),
                    ring(-2.0, 1.0, 0.5, 0.25, z),
                    ring(0.0, 5.0, 0.0, 0.25, z),
                    ring(0.0, 5.0, 0.0, 1.0, z),
                ],
                vec![1.0, 4.5, 2.0, 4.0, 2.0, 4.5, 1.0],
            );
            let f = move |t: f64| [h1, h2, frames.at(t)];
            (sample(&f), vec![0, 1, 2])
        }
        BuiltinMotion::EpsC => {
            // Rise, grow to radius 4, descend around the whole Hopf link,
            // slide away underneath, and return.
            let ring = |cx: f64, cy: f64, cz: f64, r: f64| Ring {
                center: [cx, cy, cz],
                radius: r,
                normal: z,
            };
            let frames = Keyframes::new(
                vec![
                    ring(0.0, 5.0, 0.0, 1.0),
                    ring(0.0, 5.0, 3.0, 1.0),
                    ring(0.0, 5.0, 3.0, 4.0),
                    ring(0.0, 1.0, 3.0, 4.0),
                    ring(0.0, 1.0, -3.0, 4.0),
                    ring(0.0, 5.0, -3.0, 4.0),
                    ring(0.0, 5.0, -3.0, 1.0),
                    ring(0.0, 5.0, 0.0, 1.0),
                ],
                vec![3.0, 2.0, 4.0, 6.0, 4.0, 2.0, 3.0],
            );
            let f = move |t: f64| [h1, h2, frames.at(t)];
            (sample(&f), vec![0, 1, 2])
        }
    };
    RingMotion::new(components, closure).expect("built-in motions are well formed")
}

/// A motion of the second Hopf component of the form
/// `t -> R_z(2 pi phi(t))`, recorded by its sampled angle function.
#[derive(Debug, Clone)]
pub struct NormalRingMotion {
    phi: Vec<f64>,
}

impl NormalRingMotion {
    pub fn new(phi: Vec<f64>) -> Self {
        assert!(phi.len() >= 2, "need at least two samples");
        NormalRingMotion { phi }
    }

    /// `phi(t) = winding * t`, sampled.
    pub fn standard(winding: i64, samples: usize) -> Self {
        let phi = (0..=samples)
            .map(|i| winding as f64 * i as f64 / samples as f64)
            .collect();
        NormalRingMotion::new(phi)
    }

    pub fn phi(&self) -> &[f64] {
        &self.phi
    }

    /// `round(phi(1) - phi(0))`; errors when the winding is not within
    /// 1e-6 of an integer.
    pub fn rotation_number(&self) -> Result<i64, RotationError> {
        let winding = self.phi.last().unwrap() - self.phi.first().unwrap();
        let rounded = winding.round();
        if (winding - rounded).abs() > LOOP_TOL {
            return Err(RotationError::NonIntegralWinding(winding));
        }
        Ok(rounded as i64)
    }

    /// Concatenation: the second motion's angles continue from the first's
    /// endpoint.
    pub fn concat(&self, other: &NormalRingMotion) -> NormalRingMotion {
        let offset = self.phi.last().unwrap() - other.phi.first().unwrap();
        let mut phi = self.phi.clone();
        phi.extend(other.phi.iter().skip(1).map(|p| p + offset));
        NormalRingMotion::new(phi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    const MINUS_ONE: UnitQuaternion = UnitQuaternion {
        w: -1.0,
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    #[test]
    fn full_turn_lifts_to_minus_one() {
        let q = full_turn_z().lift_endpoint().unwrap();
        assert!(q.approx_eq(&MINUS_ONE, 1e-9));
        assert_eq!(full_turn_z().pi1_class().unwrap(), -1);
    }

    #[test]
    fn constant_path_lifts_to_plus_one() {
        let q = RotationPath::identity().lift_endpoint().unwrap();
        assert!(q.approx_eq(&QUAT_ONE, 1e-12));
        assert_eq!(RotationPath::identity().pi1_class().unwrap(), 1);
    }

    #[test]
    fn two_half_turns_lift_to_minus_one() {
        let path = half_turn_y().concat(&half_turn_y());
        let q = path.lift_endpoint().unwrap();
        assert!(q.approx_eq(&MINUS_ONE, 1e-9));
        assert_eq!(path.pi1_class().unwrap(), -1);
    }

    #[test]
    fn half_turn_alone_is_not_a_loop() {
        assert_eq!(half_turn_y().pi1_class(), Err(RotationError::NotALoop));
    }

    #[test]
    fn swap_path_endpoint_is_the_expected_pure_quaternion() {
        // Tilt, half turn, untilt: the lift ends at (i + k) / sqrt(2).
        let q = swap_rotation_path().lift_endpoint().unwrap();
        let expected = UnitQuaternion::new(0.0, FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2);
        assert!(q.approx_eq(&expected, 1e-9), "got {q}");
        let squared = swap_rotation_path().concat(&swap_rotation_path());
        assert_eq!(squared.pi1_class().unwrap(), -1);
    }

    #[test]
    fn conjugated_loop_keeps_its_class() {
        let conjugated = half_turn_y()
            .inverse()
            .concat(&full_turn_z())
            .concat(&half_turn_y());
        assert_eq!(conjugated.pi1_class().unwrap(), -1);
        assert_eq!(full_turn_z().inverse().pi1_class().unwrap(), -1);
    }

    #[test]
    fn concatenation_multiplies_lifts() {
        let p = swap_rotation_path();
        let q = half_turn_y().concat(&full_turn_z());
        let lhs = p.concat(&q).lift_endpoint().unwrap();
        let rhs = q.lift_endpoint().unwrap().mul(&p.lift_endpoint().unwrap());
        assert!(lhs.approx_eq(&rhs, 1e-9));
    }

    #[test]
    fn inverse_path_lifts_to_the_inverse() {
        let p = swap_rotation_path().concat(&half_turn_y());
        let forward = p.lift_endpoint().unwrap();
        let backward = p.inverse().lift_endpoint().unwrap();
        assert!(forward.mul(&backward).same_rotation(&QUAT_ONE, 1e-9));
        assert!(p.concat(&p.inverse()).lift_endpoint().unwrap().approx_eq(&QUAT_ONE, 1e-9));
    }

    #[test]
    fn subdividing_never_changes_the_lift() {
        for path in [full_turn_z(), swap_rotation_path(), half_turn_y().concat(&full_turn_z())] {
            let base = path.lift_endpoint().unwrap();
            let fine = path.subdivided().lift_endpoint().unwrap();
            let finer = path.subdivided().subdivided().lift_endpoint().unwrap();
            assert!(base.approx_eq(&fine, 1e-12));
            assert!(base.approx_eq(&finer, 1e-12));
        }
    }

    #[test]
    fn discontinuous_paths_are_rejected() {
        let mut path = full_turn_z();
        path.segments.push(PathSegment {
            axis: [1.0, 0.0, 0.0],
            start_angle: 1.0,
            end_angle: 2.0,
            pre: QUAT_ONE,
        });
        match path.lift_endpoint() {
            Err(RotationError::DiscontinuousPath(_)) => {}
            other => panic!("expected discontinuity, got {other:?}"),
        }
    }

    #[test]
    fn rotation_at_interpolates() {
        let p = half_turn_y();
        let q = p.rotation_at(0.5);
        let expected = UnitQuaternion::from_axis_angle([0.0, 1.0, 0.0], PI / 2.0);
        assert!(q.same_rotation(&expected, 1e-12));
    }

    #[test]
    fn coplanar_ring_distances_are_analytic() {
        let a = Ring::new([0.0, 0.0, 0.0], 1.0, [0.0, 0.0, 1.0]).unwrap();
        let b = Ring::new([0.0, 0.0, 0.0], 3.0, [0.0, 0.0, 1.0]).unwrap();
        assert!((ring_distance(&a, &b) - 2.0).abs() < 1e-8);
        assert!(ring_distance(&a, &a) < 1e-9);
        let shifted = Ring::new([4.0, 0.0, 0.0], 1.0, [0.0, 0.0, 1.0]).unwrap();
        assert!((ring_distance(&a, &shifted) - 2.0).abs() < 1e-8);
        let stacked = Ring::new([0.0, 0.0, 5.0], 1.0, [0.0, 0.0, 1.0]).unwrap();
        assert!((ring_distance(&a, &stacked) - 5.0).abs() < 1e-8);
    }

    #[test]
    fn hopf_components_are_at_distance_one() {
        let [h1, h2, _] = base_rings();
        let d = ring_distance(&h1, &h2);
        assert!((d - 1.0).abs() < 1e-6, "got {d}");
        assert!(d >= 0.5);
        let sym = ring_distance(&h2, &h1);
        assert!((d - sym).abs() < 1e-8);
    }

    #[test]
    fn builtin_motions_validate() {
        for which in BuiltinMotion::ALL {
            let motion = builtin_motion(which);
            assert!(motion.num_samples() >= 65);
            let report = motion.validate();
            assert!(
                report.is_valid(),
                "{} failed validation:\n{report}",
                which.name()
            );
            assert!(
                report.min_pair_distance >= 0.05,
                "{}: min distance {}",
                which.name(),
                report.min_pair_distance
            );
        }
    }

    #[test]
    fn closure_permutations_match_the_motions() {
        assert_eq!(builtin_motion(BuiltinMotion::TauH).closure_permutation(), &[0, 1, 2]);
        assert_eq!(builtin_motion(BuiltinMotion::S).closure_permutation(), &[1, 0, 2]);
        assert_eq!(builtin_motion(BuiltinMotion::GA).closure_permutation(), &[0, 1, 2]);
    }

    #[test]
    fn colliding_motion_reports_the_first_offending_sample() {
        // Translate the circle straight through the first Hopf component.
        let [h1, h2, c] = base_rings();
        let steps = 16;
        let mut comps = vec![Vec::new(), Vec::new(), Vec::new()];
        for i in 0..=steps {
            let t = i as f64 / steps as f64;
            // Out and back so the motion closes.
            let offset = if t <= 0.5 { -10.0 * t } else { -10.0 * (1.0 - t) };
            comps[0].push(h1);
            comps[1].push(h2);
            comps[2].push(Ring {
                center: add(c.center, [0.0, offset, 0.0]),
                ..c
            });
        }
        let motion = RingMotion::new(comps, vec![0, 1, 2]).unwrap();
        let report = motion.validate();
        assert!(!report.is_valid());
        let (t, i, j) = report.first_collision.expect("must collide");
        assert_eq!((i, j), (0, 2));
        assert!(t > 0 && t < steps);
    }

    #[test]
    fn continuity_violations_are_reported() {
        let [h1, h2, c] = base_rings();
        let mut comps = vec![Vec::new(), Vec::new(), Vec::new()];
        for i in 0..=16 {
            comps[0].push(h1);
            comps[1].push(h2);
            let jump = if i == 8 { 3.0 } else { 0.0 };
            comps[2].push(Ring {
                center: add(c.center, [jump, 0.0, 0.0]),
                ..c
            });
        }
        let motion = RingMotion::new(comps, vec![0, 1, 2]).unwrap();
        let report = motion.validate();
        assert!(report.continuity_failure.is_some());
    }

    #[test]
    fn motion_files_round_trip() {
        let motion = builtin_motion_with_samples(BuiltinMotion::TauC, 16);
        let text = motion.serialize("tau_C");
        let (name, parsed) = RingMotion::parse(&text).unwrap();
        assert_eq!(name, "tau_C");
        assert_eq!(parsed.num_samples(), motion.num_samples());
        assert_eq!(parsed.closure_permutation(), motion.closure_permutation());
        for (a, b) in motion.components().iter().flatten().zip(parsed.components().iter().flatten())
        {
            assert!(a.approx_eq_oriented(b, 0.0), "exact round trip");
        }
        assert_eq!(text, parsed.serialize("tau_C"));
    }

    #[test]
    fn rotation_numbers_of_standard_motions() {
        for k in -3..=3 {
            let m = NormalRingMotion::standard(k, 64);
            assert_eq!(m.rotation_number().unwrap(), k);
        }
        let stationary = NormalRingMotion::new(vec![0.25; 10]);
        assert_eq!(stationary.rotation_number().unwrap(), 0);
    }

    #[test]
    fn rotation_number_is_additive() {
        let a = NormalRingMotion::standard(2, 32);
        let b = NormalRingMotion::standard(-3, 48);
        let c = a.concat(&b);
        assert_eq!(c.rotation_number().unwrap(), -1);
    }

    #[test]
    fn non_integral_winding_is_rejected() {
        let m = NormalRingMotion::new(vec![0.0, 0.2, 0.4]);
        match m.rotation_number() {
            Err(RotationError::NonIntegralWinding(_)) => {}
            other => panic!("expected non-integral winding, got {other:?}"),
        }
    }
}
