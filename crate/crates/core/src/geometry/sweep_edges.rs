use super::{Cell, Point2D, EPS};

/// A boundary edge of a cell, referenced by the index of its first vertex.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub index: usize,
    pub a: Point2D,
    pub b: Point2D,
}

impl Edge {
    pub fn length(&self) -> f64 {
        self.a.dist(self.b)
    }

    /// Direction angle of `a -> b`.
    pub fn angle(&self) -> f64 {
        let d = self.b - self.a;
        d.y.atan2(d.x)
    }
}

/// True when every line parallel to `angle` meets the ring in at most one
/// segment, i.e. the ring has a single local minimum and maximum across it.
pub fn is_monotone_along(ring: &[Point2D], angle: f64) -> bool {
    let n = ring.len();
    if n < 3 {
        return true;
    }
    let heights: Vec<f64> = ring.iter().map(|p| p.rotated(-angle).y).collect();
    let scale = heights.iter().fold(1.0_f64, |m, h| m.max(h.abs()));
    let tol = EPS * scale;
    let mut signs: Vec<i8> = Vec::with_capacity(n);
    for i in 0..n {
        let d = heights[(i + 1) % n] - heights[i];
        if d > tol {
            signs.push(1);
        } else if d < -tol {
            signs.push(-1);
        }
    }
    if signs.is_empty() {
        return true;
    }
    let changes = (0..signs.len()).filter(|&i| signs[i] != signs[(i + 1) % signs.len()]).count();
    changes <= 2
}

/// Boundary edges whose parallel sweep lines cut the cell in single
/// segments, longest first, at most `n_e` of them.
pub fn feasible_sweep_edges(cell: &Cell, n_e: usize) -> Vec<Edge> {
    let ring = &cell.boundary;
    let n = ring.len();
    let mut edges: Vec<Edge> = (0..n)
        .map(|i| Edge { index: i, a: ring[i], b: ring[(i + 1) % n] })
        .filter(|e| e.length() > EPS)
        .filter(|e| is_monotone_along(ring, e.angle()))
        .collect();
    edges.sort_by(|p, q| q.length().total_cmp(&p.length()).then(p.index.cmp(&q.index)));
    edges.truncate(n_e);
    edges
}
