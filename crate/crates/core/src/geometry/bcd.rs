//! Boustrophedon cellular decomposition with vertical sweep lines.
//!
//! The free space is first cut into trapezoids between consecutive distinct
//! vertex abscissae. Trapezoids of neighbouring slabs are then glued when
//! the right side of one coincides with the left side of the other. A
//! critical event (a split or merge of the free interval, or a vertical
//! boundary step) shows up as mismatching sides and starts a new cell.

use super::{clean_ring, Cell, GeometryError, Point2D, Region, EPS};

#[derive(Debug, Clone, Copy)]
struct Seg {
    a: Point2D,
    b: Point2D,
}

impl Seg {
    fn y_at(&self, x: f64) -> f64 {
        if x == self.a.x {
            self.a.y
        } else if x == self.b.x {
            self.b.y
        } else {
            self.a.y + (x - self.a.x) / (self.b.x - self.a.x) * (self.b.y - self.a.y)
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Trapezoid {
    x0: f64,
    x1: f64,
    bot0: f64,
    top0: f64,
    bot1: f64,
    top1: f64,
}

/// Decomposes the free space of `region` into cells that every vertical
/// line meets in at most one segment.
pub fn bcd_decompose(region: &Region) -> Result<Vec<Cell>, GeometryError> {
    if !(region.area() > 0.0) {
        return Err(GeometryError::DegenerateRegion);
    }
    let scale = region
        .rings()
        .flat_map(|r| r.iter())
        .map(|p| p.x.abs().max(p.y.abs()))
        .fold(1.0, f64::max);
    let tol = EPS * scale;

    // Snap abscissae that agree within tolerance onto one value.
    let mut xs: Vec<f64> = region.rings().flat_map(|r| r.iter().map(|p| p.x)).collect();
    xs.sort_by(f64::total_cmp);
    let mut events: Vec<f64> = Vec::new();
    for x in xs {
        if events.last().is_none_or(|&e| x - e > tol) {
            events.push(x);
        }
    }
    let snap = |x: f64| -> f64 {
        let i = events.partition_point(|&e| e < x - tol);
        events[i.min(events.len() - 1)]
    };

    let mut segs: Vec<Seg> = Vec::new();
    for ring in region.rings() {
        let n = ring.len();
        for i in 0..n {
            let (p, q) = (ring[i], ring[(i + 1) % n]);
            let a = Point2D::new(snap(p.x), p.y);
            let b = Point2D::new(snap(q.x), q.y);
            if a.x == b.x {
                continue;
            }
            segs.push(if a.x < b.x { Seg { a, b } } else { Seg { a: b, b: a } });
        }
    }

    let mut cells: Vec<Vec<Trapezoid>> = Vec::new();
    // indices into `cells` of the cells that end at the previous slab boundary
    let mut open: Vec<usize> = Vec::new();
    for w in events.windows(2) {
        let (x0, x1) = (w[0], w[1]);
        let xm = 0.5 * (x0 + x1);
        let mut active: Vec<(f64, Seg)> = segs
            .iter()
            .filter(|s| s.a.x <= x0 && s.b.x >= x1)
            .map(|s| (s.y_at(xm), *s))
            .collect();
        active.sort_by(|p, q| p.0.total_cmp(&q.0));
        let mut next_open = Vec::with_capacity(active.len() / 2);
        for pair in active.chunks_exact(2) {
            let (lo, hi) = (pair[0].1, pair[1].1);
            let t = Trapezoid {
                x0,
                x1,
                bot0: lo.y_at(x0),
                top0: hi.y_at(x0),
                bot1: lo.y_at(x1),
                top1: hi.y_at(x1),
            };
            let continues = open.iter().copied().find(|&ci| {
                let prev = cells[ci].last().unwrap();
                prev.x1 == x0
                    && (prev.bot1 - t.bot0).abs() <= tol
                    && (prev.top1 - t.top0).abs() <= tol
                    && t.top0 - t.bot0 > tol
            });
            let ci = match continues {
                Some(ci) => {
                    cells[ci].push(t);
                    ci
                }
                None => {
                    cells.push(vec![t]);
                    cells.len() - 1
                }
            };
            next_open.push(ci);
        }
        open = next_open;
    }

    let out: Vec<Cell> = cells
        .into_iter()
        .map(|traps| Cell { boundary: trapezoids_to_ring(&traps, tol), source_rotation: 0.0 })
        .filter(|c| c.boundary.len() >= 3 && c.area() > 0.0)
        .collect();
    if out.is_empty() {
        return Err(GeometryError::DegenerateRegion);
    }
    Ok(out)
}

fn trapezoids_to_ring(traps: &[Trapezoid], tol: f64) -> Vec<Point2D> {
    let mut ring = Vec::with_capacity(4 * traps.len());
    for t in traps {
        ring.push(Point2D::new(t.x0, t.bot0));
        ring.push(Point2D::new(t.x1, t.bot1));
    }
    for t in traps.iter().rev() {
        ring.push(Point2D::new(t.x1, t.top1));
        ring.push(Point2D::new(t.x0, t.top0));
    }
    clean_ring(&ring, tol)
}
