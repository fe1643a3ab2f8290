//! Planar geometry for coverage planning.
//!
//! All coordinates live in a local metric frame (meters, x east, y north).
//! The sweep used by the decomposition runs along +x with vertical sweep
//! lines, so every [`Cell`] is monotone with respect to vertical lines.

mod bcd;
mod connector;
mod region;
mod rotation;
mod split;
mod sweep_edges;

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

pub use bcd::bcd_decompose;
pub use connector::{connector_path, Anchor, ConnectorRouter};
pub use region::{rotate_region, Region};
pub use rotation::{rotation_cost, select_best_rotations, RotationCandidate};
pub use split::split_to_count;
pub use sweep_edges::{feasible_sweep_edges, is_monotone_along, Edge};

/// Tolerance used when comparing coordinates of decomposition events.
pub const EPS: f64 = 1e-9;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),
    #[error("degenerate region (zero area)")]
    DegenerateRegion,
    #[error("no collision-free path from ({:.3}, {:.3}) to ({:.3}, {:.3})", from.x, from.y, to.x, to.y)]
    NoPath { from: Point2D, to: Point2D },
}

/// A point (or vector) in the local metric frame.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2D {
    pub x: f64,
    pub y: f64,
}

impl Point2D {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dot(self, o: Self) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Self) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Self) -> f64 {
        (self - o).norm()
    }

    /// Rotation about the origin by `angle` radians (counterclockwise).
    pub fn rotated(self, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn lerp(self, o: Self, t: f64) -> Self {
        self + (o - self) * t
    }
}

impl Add for Point2D {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point2D {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point2D {
    type Output = Self;
    fn mul(self, k: f64) -> Self {
        Self::new(self.x * k, self.y * k)
    }
}

impl Neg for Point2D {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y)
    }
}

/// A cell produced by the boustrophedon decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    /// Counterclockwise boundary ring (closing vertex not repeated).
    pub boundary: Vec<Point2D>,
    /// Rotation of the area under which this cell was produced.
    pub source_rotation: f64,
}

impl Cell {
    pub fn area(&self) -> f64 {
        signed_area(&self.boundary).abs()
    }

    pub fn y_extent(&self) -> (f64, f64) {
        extent(&self.boundary, |p| p.y)
    }

    pub fn x_extent(&self) -> (f64, f64) {
        extent(&self.boundary, |p| p.x)
    }

    pub fn centroid(&self) -> Point2D {
        centroid(&self.boundary)
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point2D, Point2D)> + '_ {
        ring_edges(&self.boundary)
    }
}

pub(crate) fn extent(ring: &[Point2D], f: impl Fn(&Point2D) -> f64) -> (f64, f64) {
    ring.iter().map(f).fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

/// Iterates the closed ring's edges `(v[i], v[i+1])`, wrapping around.
pub fn ring_edges(ring: &[Point2D]) -> impl Iterator<Item = (Point2D, Point2D)> + '_ {
    let n = ring.len();
    (0..n).map(move |i| (ring[i], ring[(i + 1) % n]))
}

/// Shoelace area; positive for counterclockwise rings.
pub fn signed_area(ring: &[Point2D]) -> f64 {
    ring_edges(ring).map(|(a, b)| a.cross(b)).sum::<f64>() * 0.5
}

pub fn centroid(ring: &[Point2D]) -> Point2D {
    let a = signed_area(ring);
    if a.abs() < 1e-12 {
        let n = ring.len().max(1) as f64;
        let s = ring.iter().fold(Point2D::default(), |acc, &p| acc + p);
        return s * (1.0 / n);
    }
    let (mut cx, mut cy) = (0.0, 0.0);
    for (p, q) in ring_edges(ring) {
        let c = p.cross(q);
        cx += (p.x + q.x) * c;
        cy += (p.y + q.y) * c;
    }
    Point2D::new(cx / (6.0 * a), cy / (6.0 * a))
}

pub fn polyline_length(pts: &[Point2D]) -> f64 {
    pts.windows(2).map(|w| w[0].dist(w[1])).sum()
}

/// Distance from `p` to the segment `ab`.
pub fn point_segment_distance(p: Point2D, a: Point2D, b: Point2D) -> f64 {
    let ab = b - a;
    let len2 = ab.dot(ab);
    if len2 == 0.0 {
        return p.dist(a);
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    p.dist(a + ab * t)
}

/// Location of a point relative to a polygon ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Containment {
    Inside,
    Boundary,
    Outside,
}

/// Even-odd point location with an explicit boundary band of width `tol`.
pub fn locate_point(p: Point2D, ring: &[Point2D], tol: f64) -> Containment {
    let mut inside = false;
    for (a, b) in ring_edges(ring) {
        if point_segment_distance(p, a, b) <= tol {
            return Containment::Boundary;
        }
        if (a.y > p.y) != (b.y > p.y) {
            let x = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if p.x < x {
                inside = !inside;
            }
        }
    }
    if inside {
        Containment::Inside
    } else {
        Containment::Outside
    }
}

/// True when the segments `ab` and `cd` cross at a single interior point of both.
pub fn segments_cross_properly(a: Point2D, b: Point2D, c: Point2D, d: Point2D) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    o1 * o2 < 0.0 && o3 * o4 < 0.0
}

/// True when the closed segments `ab` and `cd` share at least one point.
pub fn segments_intersect(a: Point2D, b: Point2D, c: Point2D, d: Point2D) -> bool {
    if segments_cross_properly(a, b, c, d) {
        return true;
    }
    let tol = 1e-12 * (1.0 + a.norm() + b.norm() + c.norm() + d.norm());
    point_segment_distance(c, a, b) <= tol
        || point_segment_distance(d, a, b) <= tol
        || point_segment_distance(a, c, d) <= tol
        || point_segment_distance(b, c, d) <= tol
}

/// Twice the signed area of triangle `abc`.
pub fn orient(a: Point2D, b: Point2D, c: Point2D) -> f64 {
    (b - a).cross(c - a)
}

/// Removes consecutive duplicates and collinear interior vertices of a closed ring.
pub(crate) fn clean_ring(ring: &[Point2D], tol: f64) -> Vec<Point2D> {
    let mut pts: Vec<Point2D> = Vec::with_capacity(ring.len());
    for &p in ring {
        if pts.last().is_none_or(|q: &Point2D| q.dist(p) > tol) {
            pts.push(p);
        }
    }
    while pts.len() > 1 && pts[0].dist(*pts.last().unwrap()) <= tol {
        pts.pop();
    }
    loop {
        let n = pts.len();
        if n < 3 {
            return pts;
        }
        let mut removed = false;
        let mut i = 0;
        while i < pts.len() && pts.len() >= 3 {
            let n = pts.len();
            let a = pts[(i + n - 1) % n];
            let b = pts[i];
            let c = pts[(i + 1) % n];
            let base = a.dist(c).max(tol);
            // distance of b from line ac, plus a check that b lies between a and c
            let off = orient(a, b, c).abs() / base;
            if off <= tol && (b - a).dot(c - b) >= -tol * tol {
                pts.remove(i);
                removed = true;
            } else {
                i += 1;
            }
        }
        if !removed {
            return pts;
        }
    }
}

/// Intersection of the closed polygon with the horizontal line `y = y0`,
/// returned as sorted, merged x-intervals.
pub fn horizontal_intervals(ring: &[Point2D], y0: f64) -> Vec<(f64, f64)> {
    let mut xs = Vec::new();
    for (a, b) in ring_edges(ring) {
        if (a.y > y0) != (b.y > y0) {
            xs.push(a.x + (y0 - a.y) / (b.y - a.y) * (b.x - a.x));
        }
    }
    xs.sort_by(f64::total_cmp);
    let mut out: Vec<(f64, f64)> = xs.chunks_exact(2).map(|c| (c[0], c[1])).collect();
    // include horizontal boundary edges lying exactly on the line
    for (a, b) in ring_edges(ring) {
        if a.y == y0 && b.y == y0 {
            out.push((a.x.min(b.x), a.x.max(b.x)));
        }
    }
    out.sort_by(|p, q| p.0.total_cmp(&q.0));
    let mut merged: Vec<(f64, f64)> = Vec::with_capacity(out.len());
    for iv in out {
        match merged.last_mut() {
            Some(last) if iv.0 <= last.1 + EPS => last.1 = last.1.max(iv.1),
            _ => merged.push(iv),
        }
    }
    merged
}

/// Clips a polygon against the half-plane `x <= c` (or `x >= c` when `keep_right`).
/// Valid for rings that every vertical line meets in a single interval.
pub(crate) fn clip_vertical(ring: &[Point2D], c: f64, keep_right: bool) -> Vec<Point2D> {
    let inside = |p: Point2D| if keep_right { p.x >= c } else { p.x <= c };
    let mut out = Vec::with_capacity(ring.len() + 2);
    for (a, b) in ring_edges(ring) {
        let (ia, ib) = (inside(a), inside(b));
        if ia {
            out.push(a);
        }
        if ia != ib {
            let t = (c - a.x) / (b.x - a.x);
            out.push(Point2D::new(c, a.y + t * (b.y - a.y)));
        }
    }
    out
}

pub(crate) fn rotate_points(pts: &[Point2D], angle: f64) -> Vec<Point2D> {
    pts.iter().map(|p| p.rotated(angle)).collect()
}
