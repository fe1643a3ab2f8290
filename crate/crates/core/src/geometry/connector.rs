//! Obstacle-avoiding transfer legs between coverage patterns.
//!
//! Shortest paths are searched on a visibility graph whose nodes are the
//! convex corners of the no-fly zones and the reflex corners of the outer
//! ring (both optionally pushed outward by a clearance). All-pairs distances
//! between graph nodes are precomputed once per region so that the many
//! queries issued while building a solver instance stay cheap.

use super::{orient, ring_edges, segments_cross_properly, GeometryError, Point2D, Region};

/// Shortest collision-free polyline from `p` to `q` with zero clearance.
pub fn connector_path(p: Point2D, q: Point2D, region: &Region) -> Result<Vec<Point2D>, GeometryError> {
    ConnectorRouter::new(region, 0.0).route(p, q)
}

/// Precomputed visibility graph of a region.
#[derive(Debug, Clone)]
pub struct ConnectorRouter {
    region: Region,
    nodes: Vec<Point2D>,
    dist: Vec<f64>,
    next: Vec<usize>,
    tol: f64,
}

/// A query endpoint with its visibility to graph nodes resolved.
#[derive(Debug, Clone)]
pub struct Anchor {
    pub point: Point2D,
    visible: Vec<(usize, f64)>,
    /// Shortest distance from `point` to every graph node, and the first
    /// node entered on that route.
    reach: Vec<(f64, usize)>,
}

const NONE: usize = usize::MAX;

impl ConnectorRouter {
    pub fn new(region: &Region, clearance: f64) -> Self {
        let scale = region
            .rings()
            .flat_map(|r| r.iter())
            .map(|p| p.x.abs().max(p.y.abs()))
            .fold(1.0, f64::max);
        let tol = 1e-9 * scale;
        let mut nodes = Vec::new();
        for ring in region.rings() {
            let n = ring.len();
            for i in 0..n {
                let (a, v, b) = (ring[(i + n - 1) % n], ring[i], ring[(i + 1) % n]);
                // Convex hole corners (holes are clockwise) and reflex outer
                // corners (outer is counterclockwise) both turn right.
                if orient(a, v, b) >= 0.0 {
                    continue;
                }
                nodes.push(inflate(a, v, b, clearance));
            }
        }
        let mut router = Self { region: region.clone(), nodes, dist: Vec::new(), next: Vec::new(), tol };
        // an inflated corner may land outside the free space; drop it
        let nodes: Vec<Point2D> = router
            .nodes
            .iter()
            .copied()
            .filter(|&p| router.region.contains(p, tol))
            .collect();
        router.nodes = nodes;
        router.build_graph();
        router
    }

    fn build_graph(&mut self) {
        let n = self.nodes.len();
        let mut dist = vec![f64::INFINITY; n * n];
        let mut next = vec![NONE; n * n];
        for i in 0..n {
            dist[i * n + i] = 0.0;
            next[i * n + i] = i;
            for j in i + 1..n {
                if self.segment_free(self.nodes[i], self.nodes[j]) {
                    let d = self.nodes[i].dist(self.nodes[j]);
                    dist[i * n + j] = d;
                    dist[j * n + i] = d;
                    next[i * n + j] = j;
                    next[j * n + i] = i;
                }
            }
        }
        for k in 0..n {
            for i in 0..n {
                let dik = dist[i * n + k];
                if !dik.is_finite() {
                    continue;
                }
                for j in 0..n {
                    let cand = dik + dist[k * n + j];
                    if cand < dist[i * n + j] {
                        dist[i * n + j] = cand;
                        next[i * n + j] = next[i * n + k];
                    }
                }
            }
        }
        self.dist = dist;
        self.next = next;
    }

    pub fn region(&self) -> &Region {
        &self.region
    }

    /// True when the closed segment `ab` never enters a hole interior nor
    /// leaves the outer ring.
    pub fn segment_free(&self, a: Point2D, b: Point2D) -> bool {
        let ab = b - a;
        let len2 = ab.dot(ab);
        if len2 == 0.0 {
            return self.region.contains(a, self.tol);
        }
        let mut cuts = vec![0.0, 1.0];
        for ring in self.region.rings() {
            for (c, d) in ring_edges(ring) {
                // endpoints lying on an edge up to rounding do not cross it
                if segments_cross_properly(a, b, c, d)
                    && super::point_segment_distance(a, c, d) > self.tol
                    && super::point_segment_distance(b, c, d) > self.tol
                {
                    return false;
                }
                for v in [c, d] {
                    let t = (v - a).dot(ab) / len2;
                    if t > 0.0 && t < 1.0 && super::point_segment_distance(v, a, b) <= self.tol {
                        cuts.push(t);
                    }
                }
            }
        }
        cuts.sort_by(f64::total_cmp);
        cuts.windows(2)
            .filter(|w| w[1] - w[0] > 1e-12)
            .all(|w| self.region.contains(a + ab * (0.5 * (w[0] + w[1])), self.tol))
    }

    pub fn anchor(&self, p: Point2D) -> Anchor {
        let n = self.nodes.len();
        let visible: Vec<(usize, f64)> = (0..n)
            .filter(|&i| self.segment_free(p, self.nodes[i]))
            .map(|i| (i, p.dist(self.nodes[i])))
            .collect();
        let mut reach = vec![(f64::INFINITY, NONE); n];
        for &(u, du) in &visible {
            for (w, r) in reach.iter_mut().enumerate() {
                let c = du + self.dist[u * n + w];
                if c < r.0 {
                    *r = (c, u);
                }
            }
        }
        Anchor { point: p, visible, reach }
    }

    /// Shortest route between two prepared anchors.
    pub fn route_between(&self, from: &Anchor, to: &Anchor) -> Result<Vec<Point2D>, GeometryError> {
        let (p, q) = (from.point, to.point);
        if p == q {
            return Ok(vec![p]);
        }
        if self.segment_free(p, q) {
            return Ok(vec![p, q]);
        }
        let n = self.nodes.len();
        let mut best = (f64::INFINITY, NONE);
        for &(w, dq) in &to.visible {
            let c = from.reach[w].0 + dq;
            if c < best.0 {
                best = (c, w);
            }
        }
        if best.1 == NONE {
            return Err(GeometryError::NoPath { from: p, to: q });
        }
        let last = best.1;
        let mut u = from.reach[last].1;
        let mut path = vec![p, self.nodes[u]];
        while u != last {
            u = self.next[u * n + last];
            path.push(self.nodes[u]);
        }
        path.push(q);
        path.dedup();
        Ok(path)
    }

    pub fn route(&self, p: Point2D, q: Point2D) -> Result<Vec<Point2D>, GeometryError> {
        if p == q {
            return Ok(vec![p]);
        }
        if self.segment_free(p, q) {
            return Ok(vec![p, q]);
        }
        self.route_between(&self.anchor(p), &self.anchor(q))
    }
}

/// Pushes corner `v` away from the obstacle along the angle bisector so
/// that both incident edges are offset by `clearance`.
fn inflate(a: Point2D, v: Point2D, b: Point2D, clearance: f64) -> Point2D {
    if clearance <= 0.0 {
        return v;
    }
    let u1 = (v - a) * (1.0 / (v - a).norm());
    let u2 = (b - v) * (1.0 / (b - v).norm());
    // left normals point away from the obstacle for right-turning corners
    let n1 = Point2D::new(-u1.y, u1.x);
    let n2 = Point2D::new(-u2.y, u2.x);
    let bis = n1 + n2;
    let len = bis.norm();
    if len < 1e-12 {
        return v + n1 * clearance;
    }
    let dir = bis * (1.0 / len);
    let cos_half = dir.dot(n1).max(0.1);
    v + dir * (clearance / cos_half)
}
