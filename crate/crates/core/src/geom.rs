//! Planar primitives: points, orientation, segment intersection, angles and
//! polygon areas.

use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;
use std::ops::{Add, Mul, Sub};

/// Default absolute tolerance used by geometric predicates.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// A point (or vector) in the plane with finite coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl From<[f64; 2]> for Point2 {
    fn from(a: [f64; 2]) -> Self {
        Point2 { x: a[0], y: a[1] }
    }
}

impl From<Point2> for [f64; 2] {
    fn from(p: Point2) -> Self {
        [p.x, p.y]
    }
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dot(self, o: Point2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3d cross product.
    pub fn cross(self, o: Point2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Point2) -> f64 {
        (self - o).norm()
    }

    pub fn lerp(self, o: Point2, t: f64) -> Point2 {
        self + (o - self) * t
    }

    /// Counter-clockwise perpendicular.
    pub fn perp(self) -> Point2 {
        Point2::new(-self.y, self.x)
    }

    pub fn normalized(self) -> Point2 {
        let n = self.norm();
        Point2::new(self.x / n, self.y / n)
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, s: f64) -> Point2 {
        Point2::new(self.x * s, self.y * s)
    }
}

/// Twice the signed area of triangle `abc`; positive when counter-clockwise.
pub fn orient(a: Point2, b: Point2, c: Point2) -> f64 {
    (b - a).cross(c - a)
}

/// Signed area of a triangle.
pub fn triangle_area(a: Point2, b: Point2, c: Point2) -> f64 {
    0.5 * orient(a, b, c)
}

/// Shoelace signed area of a closed polygon (last vertex joins the first).
pub fn signed_area(pts: &[Point2]) -> f64 {
    let n = pts.len();
    if n < 3 {
        return 0.0;
    }
    let mut s = 0.0;
    for i in 0..n {
        s += pts[i].cross(pts[(i + 1) % n]);
    }
    0.5 * s
}

/// Distance from `p` to the closed segment `ab`.
pub fn point_segment_distance(p: Point2, a: Point2, b: Point2) -> f64 {
    let d = b - a;
    let len2 = d.dot(d);
    if len2 == 0.0 {
        return p.dist(a);
    }
    let t = ((p - a).dot(d) / len2).clamp(0.0, 1.0);
    p.dist(a + d * t)
}

/// Counter-clockwise angle in `[0, 2π)` that rotates direction `from` onto
/// direction `to`.
pub fn ccw_angle(from: Point2, to: Point2) -> f64 {
    let a = from.cross(to).atan2(from.dot(to));
    if a < 0.0 {
        a + TAU
    } else {
        a
    }
}

/// Signed turning angle in `(-π, π]` between consecutive directions.
pub fn turn_angle(d_in: Point2, d_out: Point2) -> f64 {
    d_in.cross(d_out).atan2(d_in.dot(d_out))
}

/// Outcome of intersecting two closed segments under a tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SegmentContact {
    /// No common point, all endpoints clear of the other segment by more
    /// than the tolerance.
    Disjoint,
    /// A transverse crossing of the two open segments at fractions `s`, `t`.
    Proper { s: f64, t: f64, at: Point2 },
    /// Anything else: touching, endpoint on the other segment, collinear
    /// overlap, or a crossing too shallow to be resolved.
    Degenerate,
}

/// Classify the contact between segments `p0p1` and `q0q1`.
///
/// Distances (not raw cross products) are compared against `tol`, so the
/// predicate is scale-aware in the obvious way.
pub fn segment_contact(p0: Point2, p1: Point2, q0: Point2, q1: Point2, tol: f64) -> SegmentContact {
    let dp = p1 - p0;
    let dq = q1 - q0;
    let lp = dp.norm();
    let lq = dq.norm();
    // Signed distances of each endpoint from the other segment's line.
    let dq0 = dp.cross(q0 - p0) / lp;
    let dq1 = dp.cross(q1 - p0) / lp;
    let dp0 = dq.cross(p0 - q0) / lq;
    let dp1 = dq.cross(p1 - q0) / lq;

    let near = |a: f64| a.abs() <= tol;
    let endpoint_touch = || {
        point_segment_distance(q0, p0, p1) <= tol
            || point_segment_distance(q1, p0, p1) <= tol
            || point_segment_distance(p0, q0, q1) <= tol
            || point_segment_distance(p1, q0, q1) <= tol
    };

    if (dq0 > tol && dq1 > tol) || (dq0 < -tol && dq1 < -tol) {
        return SegmentContact::Disjoint;
    }
    if (dp0 > tol && dp1 > tol) || (dp0 < -tol && dp1 < -tol) {
        return SegmentContact::Disjoint;
    }
    if near(dq0) || near(dq1) || near(dp0) || near(dp1) {
        // Some endpoint sits within tolerance of the other supporting line.
        if endpoint_touch() {
            return SegmentContact::Degenerate;
        }
        // Close to a line but outside the other segment's extent.
        if near(dq0) && near(dq1) {
            return SegmentContact::Disjoint;
        }
        if near(dp0) && near(dp1) {
            return SegmentContact::Disjoint;
        }
        // Near-parallel yet crossing, or an endpoint hovering close to the
        // line of the other segment beyond its ends: resolve below.
    }
    let denom = dp.cross(dq);
    if denom == 0.0 {
        return SegmentContact::Disjoint;
    }
    let s = (q0 - p0).cross(dq) / denom;
    let t = (q0 - p0).cross(dp) / denom;
    if !(0.0..=1.0).contains(&s) || !(0.0..=1.0).contains(&t) {
        return if endpoint_touch() {
            SegmentContact::Degenerate
        } else {
            SegmentContact::Disjoint
        };
    }
    if endpoint_touch() {
        return SegmentContact::Degenerate;
    }
    let at = p0 + dp * s;
    SegmentContact::Proper { s, t, at }
}

/// Axis-aligned bounding box of a point set as `(min, max)`.
pub fn bounding_box(pts: &[Point2]) -> (Point2, Point2) {
    let mut lo = Point2::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in pts {
        lo.x = lo.x.min(p.x);
        lo.y = lo.y.min(p.y);
        hi.x = hi.x.max(p.x);
        hi.y = hi.y.max(p.y);
    }
    (lo, hi)
}
