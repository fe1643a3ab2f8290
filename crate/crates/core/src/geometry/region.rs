use super::{
    clean_ring, locate_point, ring_edges, rotate_points, segments_intersect, signed_area,
    Containment, GeometryError, Point2D, EPS,
};

/// Area of interest: an outer ring with no-fly-zone holes.
///
/// The outer ring is stored counterclockwise and holes clockwise, whatever
/// orientation the caller supplied.
#[derive(Debug, Clone, PartialEq)]
pub struct Region {
    outer: Vec<Point2D>,
    holes: Vec<Vec<Point2D>>,
}

impl Region {
    /// Validates and normalizes the rings. Duplicate and collinear vertices are merged.
    pub fn new(outer: Vec<Point2D>, holes: Vec<Vec<Point2D>>) -> Result<Self, GeometryError> {
        let outer = normalize_ring(&outer, true, "outer ring")?;
        let mut hs = Vec::with_capacity(holes.len());
        for (i, h) in holes.iter().enumerate() {
            hs.push(normalize_ring(h, false, &format!("hole {i}"))?);
        }
        for (i, h) in hs.iter().enumerate() {
            if rings_touch(&outer, h) {
                return Err(GeometryError::InvalidPolygon(format!("hole {i} touches the outer ring")));
            }
            if h.iter().any(|&p| locate_point(p, &outer, 0.0) != Containment::Inside) {
                return Err(GeometryError::InvalidPolygon(format!("hole {i} is not inside the outer ring")));
            }
            for (j, g) in hs.iter().enumerate().skip(i + 1) {
                if rings_touch(h, g)
                    || locate_point(g[0], h, 0.0) != Containment::Outside
                    || locate_point(h[0], g, 0.0) != Containment::Outside
                {
                    return Err(GeometryError::InvalidPolygon(format!("holes {i} and {j} overlap")));
                }
            }
        }
        Ok(Self { outer, holes: hs })
    }

    pub fn outer(&self) -> &[Point2D] {
        &self.outer
    }

    pub fn holes(&self) -> &[Vec<Point2D>] {
        &self.holes
    }

    /// Every ring, outer first.
    pub fn rings(&self) -> impl Iterator<Item = &[Point2D]> {
        std::iter::once(self.outer.as_slice()).chain(self.holes.iter().map(Vec::as_slice))
    }

    /// Outer area minus hole areas.
    pub fn area(&self) -> f64 {
        signed_area(&self.outer) - self.holes.iter().map(|h| -signed_area(h)).sum::<f64>()
    }

    /// Rotates every vertex about the origin.
    pub fn rotated(&self, angle: f64) -> Self {
        Self {
            outer: rotate_points(&self.outer, angle),
            holes: self.holes.iter().map(|h| rotate_points(h, angle)).collect(),
        }
    }

    pub fn translated(&self, d: Point2D) -> Self {
        let mv = |r: &Vec<Point2D>| r.iter().map(|&p| p + d).collect::<Vec<_>>();
        Self { outer: mv(&self.outer), holes: self.holes.iter().map(mv).collect() }
    }

    /// Free space test: inside the outer ring (boundary included) and not
    /// strictly inside any hole.
    pub fn contains(&self, p: Point2D, tol: f64) -> bool {
        if locate_point(p, &self.outer, tol) == Containment::Outside {
            return false;
        }
        self.holes.iter().all(|h| locate_point(p, h, tol) != Containment::Inside)
    }

    /// True when `p` is strictly inside some hole (farther than `tol` from its boundary).
    pub fn in_hole_interior(&self, p: Point2D, tol: f64) -> bool {
        self.holes.iter().any(|h| locate_point(p, h, tol) == Containment::Inside)
    }

    /// Axis-aligned bounding box `(min, max)` of the outer ring.
    pub fn bbox(&self) -> (Point2D, Point2D) {
        let (x0, x1) = super::extent(&self.outer, |p| p.x);
        let (y0, y1) = super::extent(&self.outer, |p| p.y);
        (Point2D::new(x0, y0), Point2D::new(x1, y1))
    }
}

/// Rotates a region about the origin.
pub fn rotate_region(region: &Region, angle: f64) -> Region {
    region.rotated(angle)
}

fn normalize_ring(ring: &[Point2D], ccw: bool, what: &str) -> Result<Vec<Point2D>, GeometryError> {
    if ring.iter().any(|p| !p.is_finite()) {
        return Err(GeometryError::InvalidPolygon(format!("{what} has non-finite coordinates")));
    }
    let scale = ring.iter().map(|p| p.x.abs().max(p.y.abs())).fold(1.0, f64::max);
    let mut r = clean_ring(ring, EPS * scale);
    if r.len() < 3 {
        return Err(GeometryError::InvalidPolygon(format!("{what} has fewer than 3 distinct vertices")));
    }
    if !is_simple(&r) {
        return Err(GeometryError::InvalidPolygon(format!("{what} self-intersects")));
    }
    let a = signed_area(&r);
    if a.abs() <= EPS * scale * scale {
        return Err(GeometryError::DegenerateRegion);
    }
    if (a > 0.0) != ccw {
        r.reverse();
    }
    Ok(r)
}

/// Non-adjacent edges must not share any point.
pub(crate) fn is_simple(ring: &[Point2D]) -> bool {
    let n = ring.len();
    for i in 0..n {
        let (a, b) = (ring[i], ring[(i + 1) % n]);
        for j in i + 1..n {
            if j == i + 1 || (i == 0 && j == n - 1) {
                continue;
            }
            let (c, d) = (ring[j], ring[(j + 1) % n]);
            if segments_intersect(a, b, c, d) {
                return false;
            }
        }
    }
    true
}

fn rings_touch(r1: &[Point2D], r2: &[Point2D]) -> bool {
    ring_edges(r1).any(|(a, b)| ring_edges(r2).any(|(c, d)| segments_intersect(a, b, c, d)))
}
