//! Back-and-forth coverage patterns for decomposed cells.
//!
//! For a chosen anchor edge the cell is cut by chords parallel to that edge,
//! spaced by the sweep step `s` and starting `s/2` above the lowest point of
//! the cell measured across the edge. The chords
//! are chained into a boustrophedon polyline; consecutive chords are joined
//! along the nearer side of the cell, wrapped tightly around any boundary
//! vertex that pokes into the cell so the connection never leaves it.

use serde::{Deserialize, Serialize};

use crate::energy::{path_energy_fast, UavModel};
use crate::geometry::{
    feasible_sweep_edges, horizontal_intervals, orient, point_segment_distance, Cell, Edge, Point2D, EPS,
};

/// Which corner a pattern starts from and whether it is flown backwards.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DirectionVariant {
    /// Start on the first chord at the end next to the edge's first vertex.
    FromA,
    /// Start on the first chord at the end next to the edge's second vertex.
    FromB,
    /// [`Self::FromA`] flown in reverse.
    FromAReversed,
    /// [`Self::FromB`] flown in reverse.
    FromBReversed,
}

impl DirectionVariant {
    pub const ALL: [Self; 4] = [Self::FromA, Self::FromB, Self::FromAReversed, Self::FromBReversed];

    fn starts_at_a(self) -> bool {
        matches!(self, Self::FromA | Self::FromAReversed)
    }

    fn reversed(self) -> bool {
        matches!(self, Self::FromAReversed | Self::FromBReversed)
    }
}

/// One candidate coverage polyline for a cell.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPattern {
    pub cell_id: usize,
    pub waypoints: Vec<Point2D>,
    pub start: Point2D,
    pub end: Point2D,
    /// Rest-to-rest estimate from the fast estimator, J.
    pub energy: f64,
    pub sweep_edge: Edge,
    pub variant: DirectionVariant,
    /// The chords this pattern flies, in the cell frame.
    pub chords: Vec<(Point2D, Point2D)>,
}

impl SweepPattern {
    fn new(
        cell_id: usize,
        waypoints: Vec<Point2D>,
        model: &UavModel,
        sweep_edge: Edge,
        variant: DirectionVariant,
        chords: Vec<(Point2D, Point2D)>,
    ) -> Self {
        let energy = path_energy_fast(&waypoints, model).energy;
        Self { cell_id, start: waypoints[0], end: *waypoints.last().unwrap(), waypoints, energy, sweep_edge, variant, chords }
    }
}

/// Frame in which the anchor edge runs along +x with the cell's interior
/// above it. Offsets are measured from the lowest point of the cell, which is
/// the edge itself unless the cell reaches below the edge's line.
struct EdgeFrame {
    angle: f64,
    base_y: f64,
    ring: Vec<Point2D>,
}

impl EdgeFrame {
    fn new(cell: &Cell, edge: &Edge) -> Self {
        let angle = edge.angle();
        let ring: Vec<Point2D> = cell.boundary.iter().map(|p| p.rotated(-angle)).collect();
        let base_y = ring.iter().map(|p| p.y).fold(f64::INFINITY, f64::min);
        Self { angle, base_y, ring }
    }

    fn to_cell(&self, p: Point2D) -> Point2D {
        p.rotated(self.angle)
    }

    fn extent(&self) -> f64 {
        self.ring.iter().map(|p| p.y).fold(f64::NEG_INFINITY, f64::max) - self.base_y
    }

    fn offsets(&self, s: f64) -> Vec<f64> {
        let extent = self.extent();
        let tol = EPS * (1.0 + extent);
        if !(extent > tol) {
            return Vec::new();
        }
        if 0.5 * s >= extent {
            return vec![0.5 * extent];
        }
        let mut out = Vec::new();
        let mut o = 0.5 * s;
        while o < extent - tol {
            out.push(o);
            o += s;
        }
        let last = *out.last().unwrap();
        if extent - last > 0.5 * s + tol {
            out.push(extent - 0.5 * s);
        }
        out
    }

    /// Chord at height `o` above the edge, in this frame, ordered along +x.
    fn chord(&self, o: f64) -> Option<(Point2D, Point2D)> {
        let y = self.base_y + o;
        let iv = horizontal_intervals(&self.ring, y);
        let (x0, x1) = iv.into_iter().max_by(|p, q| (p.1 - p.0).total_cmp(&(q.1 - q.0)))?;
        Some((Point2D::new(x0, y), Point2D::new(x1, y)))
    }

    /// Whether the segment `a -> b` stays within the cell.
    fn segment_inside(&self, a: Point2D, b: Point2D) -> bool {
        let tol = 1e-9 * (1.0 + a.norm().max(b.norm()));
        (0..=16).all(|k| {
            let q = a.lerp(b, k as f64 / 16.0);
            horizontal_intervals(&self.ring, q.y).iter().any(|&(x0, x1)| q.x >= x0 - tol && q.x <= x1 + tol)
        })
    }

    /// Left and right boundary chains, each sorted by ascending y.
    fn chains(&self) -> (Vec<Point2D>, Vec<Point2D>) {
        let n = self.ring.len();
        let bottom = (0..n).min_by(|&i, &j| self.ring[i].y.total_cmp(&self.ring[j].y)).unwrap();
        let top = (0..n).max_by(|&i, &j| self.ring[i].y.total_cmp(&self.ring[j].y)).unwrap();
        let mut right = Vec::new();
        let mut i = bottom;
        while i != top {
            right.push(self.ring[i]);
            i = (i + 1) % n;
        }
        right.push(self.ring[top]);
        let mut left = Vec::new();
        let mut i = top;
        while i != bottom {
            left.push(self.ring[i]);
            i = (i + 1) % n;
        }
        left.push(self.ring[bottom]);
        left.reverse();
        (left, right)
    }
}

/// Chords parallel to `edge` at offsets `s/2, 3s/2, ...`, clipped to the cell,
/// each ordered from the edge's first vertex side to its second.
pub fn sweep_lines(cell: &Cell, edge: &Edge, s: f64) -> Vec<(Point2D, Point2D)> {
    let frame = EdgeFrame::new(cell, edge);
    frame
        .offsets(s)
        .into_iter()
        .filter_map(|o| frame.chord(o))
        .map(|(a, b)| (frame.to_cell(a), frame.to_cell(b)))
        .collect()
}

/// Shortest path from `from` up to `to` that stays on the interior side of a
/// boundary chain (`interior_right` for the left chain).
fn taut_connection(from: Point2D, to: Point2D, chain: &[Point2D], interior_right: bool) -> Vec<Point2D> {
    let (lo, hi) = (from.y.min(to.y), from.y.max(to.y));
    let mut pts = vec![from];
    pts.extend(chain.iter().copied().filter(|p| p.y > lo && p.y < hi));
    pts.push(to);
    let mut hull: Vec<Point2D> = Vec::with_capacity(pts.len());
    for r in pts {
        while hull.len() >= 2 {
            let (p, q) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let o = orient(p, r, q);
            let bulges = if interior_right { o < 0.0 } else { o > 0.0 };
            if bulges {
                break;
            }
            hull.pop();
        }
        hull.push(r);
    }
    hull
}

/// Outermost boundary x at height `y` on the left or right side.
fn side_x(ring: &[Point2D], y: f64, right: bool) -> Option<f64> {
    let iv = horizontal_intervals(ring, y);
    if right {
        iv.iter().map(|v| v.1).reduce(f64::max)
    } else {
        iv.iter().map(|v| v.0).reduce(f64::min)
    }
}

/// Boundary walk from the chord end `e` to the farthest point within half a
/// step above (`up`) or below it that lies beyond `e` and out of reach of the
/// `near` chords. `None` when the chords already reach everything there.
/// The walk excludes `e` and ends at that point.
fn flare(
    frame: &EdgeFrame,
    chain: &[Point2D],
    e: Point2D,
    right: bool,
    up: bool,
    near: &[(Point2D, Point2D)],
    s: f64,
) -> Option<Vec<Point2D>> {
    let lo = frame.base_y;
    let hi = lo + frame.extent();
    let tol = 1e-7 * (1.0 + hi.abs().max(lo.abs()));
    let reach = 0.5 * s + 1e-7;
    let limit = if up { (e.y + 0.5 * s).min(hi - tol) } else { (e.y - 0.5 * s).max(lo + tol) };
    if (limit - e.y).abs() <= tol {
        return None;
    }
    let between = |y: f64| if up { y > e.y + tol && y < limit } else { y < e.y - tol && y > limit };
    let mut heights: Vec<f64> = (1..=32).map(|k| e.y + (limit - e.y) * k as f64 / 32.0).collect();
    heights.extend(chain.iter().map(|p| p.y).filter(|&y| between(y)));
    // just past a neighbour's reach is where a miss is widest
    heights.extend(near.iter().flat_map(|c| [c.0.y - reach - tol, c.0.y + reach + tol]).filter(|&y| between(y)));
    let outward = |x: f64| if right { x - e.x } else { e.x - x };
    let missed = |q: Point2D| outward(q.x) > tol && near.iter().all(|&(a, b)| point_segment_distance(q, a, b) > reach);
    let target = heights
        .into_iter()
        .filter_map(|y| side_x(&frame.ring, y, right).map(|x| Point2D::new(x, y)))
        .filter(|&q| missed(q))
        .max_by(|p, q| (p.y - e.y).abs().total_cmp(&(q.y - e.y).abs()))?;
    let mut walk: Vec<Point2D> =
        chain.iter().copied().filter(|p| between(p.y) && (p.y - e.y).abs() < (target.y - e.y).abs()).collect();
    if !up {
        walk.reverse();
    }
    walk.push(target);
    Some(walk)
}

fn segments(pts: &[Point2D]) -> impl Iterator<Item = (Point2D, Point2D)> + '_ {
    pts.windows(2).map(|w| (w[0], w[1]))
}

/// Whether every cell point within half a step of the chord stretch `e..p`
/// is still reached by one of `flown`. Samples must be reached with a full
/// grid diagonal to spare: where the cell pinches, the row below may be the
/// nearest one holding a sample.
fn stretch_covered(frame: &EdgeFrame, e: Point2D, p: Point2D, flown: &[(Point2D, Point2D)], s: f64) -> bool {
    let reach = 0.5 * s + 1e-7;
    let lo = frame.base_y;
    let hi = lo + frame.extent();
    let tol = 1e-7 * (1.0 + hi.abs().max(lo.abs()));
    let (y0, y1) = ((e.y - 0.5 * s).max(lo + tol), (e.y + 0.5 * s).min(hi - tol));
    let (x0, x1) = (e.x.min(p.x), e.x.max(p.x));
    let n = 32;
    let hy = (y1 - y0) / n as f64;
    let mut ys: Vec<f64> = (0..=n).map(|j| y0 + hy * j as f64).collect();
    for v in &frame.ring {
        ys.extend([v.y - tol, v.y + tol].into_iter().filter(|&y| y >= y0 && y <= y1));
    }
    ys.iter().all(|&y| {
        horizontal_intervals(&frame.ring, y).iter().all(|&(a, b)| {
            let (a, b) = (a.max(x0), b.min(x1));
            let hx = (b - a) / n as f64;
            let slack = hx.hypot(hy);
            a > b
                || (0..=n).all(|i| {
                    let q = Point2D::new(a + hx * i as f64, y);
                    flown.iter().any(|&(u, v)| point_segment_distance(q, u, v) <= reach - slack)
                })
        })
    })
}

/// Rejoin point on the chord `e -> other` after a boundary walk ending at
/// `tip`: the farthest of a few candidates whose skipped stretch stays
/// covered, or `None` when only flying back to `e` works.
fn rejoin(
    frame: &EdgeFrame,
    e: Point2D,
    other: Point2D,
    tip: Point2D,
    mut flown: Vec<(Point2D, Point2D)>,
    s: f64,
) -> Option<Point2D> {
    let len = e.dist(other);
    let dir = (other - e) * (1.0 / len);
    let base = flown.len();
    [0.5 * s, 0.25 * s, 0.125 * s].into_iter().filter(|&w| w < 0.5 * len).find_map(|w| {
        let p = e + dir * w;
        if !frame.segment_inside(tip, p) {
            return None;
        }
        flown.truncate(base);
        flown.push((tip, p));
        flown.push((p, other));
        stretch_covered(frame, e, p, &flown, s).then_some(p)
    })
}

fn boustrophedon(frame: &EdgeFrame, chords: &[(Point2D, Point2D)], start_at_a: bool, s: f64) -> Vec<Point2D> {
    let (left, right) = frame.chains();
    // strict alternation: in a narrow wedge the nearer end can be across the cell
    let ends: Vec<(Point2D, Point2D)> = chords
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| if (i % 2 == 0) == start_at_a { (a, b) } else { (b, a) })
        .collect();
    let m = chords.len();
    let chain_of = |e: Point2D, other: Point2D| if e.x > other.x { (&right, true) } else { (&left, false) };
    // the taut link, unless cutting a corner loses a boundary vertex
    let link = |i: usize, from: Point2D, to: Point2D, other: Point2D| {
        let (chain, on_right) = chain_of(to, other);
        let taut = taut_connection(from, to, chain, !on_right);
        let (lo, hi) = (from.y.min(to.y), from.y.max(to.y));
        let skipped: Vec<Point2D> = chain.iter().copied().filter(|p| p.y > lo && p.y < hi).collect();
        let reach = 0.5 * s + 1e-7;
        let lost = skipped.iter().any(|&v| {
            segments(&taut).chain(chords[i..i + 2].iter().copied()).all(|(a, b)| point_segment_distance(v, a, b) > reach)
        });
        if lost {
            let mut walk = vec![from];
            walk.extend(skipped);
            walk.push(to);
            walk
        } else {
            taut
        }
    };
    let flare_at = |i: usize, e: Point2D, other: Point2D, up: bool| {
        let (chain, on_right) = chain_of(e, other);
        flare(frame, chain, e, on_right, up, &chords[i.saturating_sub(1)..(i + 2).min(m)], s)
    };
    let mut wps: Vec<Point2D> = Vec::with_capacity(m * 2);
    for (i, &(entry, exit)) in ends.iter().enumerate() {
        let near: Vec<(Point2D, Point2D)> = chords[i.saturating_sub(1)..(i + 2).min(m)].to_vec();
        if i == 0 {
            // start further out instead of detouring
            if let Some(walk) = flare_at(i, entry, exit, false) {
                wps.extend(walk.iter().rev());
            }
            wps.push(entry);
        } else {
            wps.extend_from_slice(&link(i - 1, ends[i - 1].1, entry, exit)[1..]);
        }
        // links run upward out of an exit and into an entry, so the entry is
        // open above and the exit below
        let mut from = entry;
        if let Some(walk) = flare_at(i, entry, exit, true) {
            let tip = *walk.last().unwrap();
            let mut flown: Vec<_> = segments(&wps[wps.len().saturating_sub(6)..]).collect();
            flown.extend(segments(&[&[entry][..], &walk[..]].concat()));
            flown.extend(near.iter().copied().filter(|c| c.0.y != entry.y));
            wps.extend_from_slice(&walk);
            match rejoin(frame, entry, exit, tip, flown, s) {
                Some(p) => {
                    wps.push(p);
                    from = p;
                }
                None => wps.extend(walk.iter().rev().skip(1).copied().chain([entry])),
            }
        }
        let after: Vec<Point2D> = if i + 1 < m { link(i, exit, ends[i + 1].0, ends[i + 1].1) } else { vec![exit] };
        match flare_at(i, exit, entry, false) {
            Some(walk) => {
                let tip = *walk.last().unwrap();
                let mut flown: Vec<_> = segments(&[&walk[..], &[exit][..]].concat()).collect();
                flown.extend(segments(&after));
                flown.extend(near.iter().copied().filter(|c| c.0.y != exit.y));
                let back = walk.iter().rev().skip(1).copied().chain([exit]);
                match rejoin(frame, exit, from, tip, flown, s) {
                    Some(p) => {
                        wps.push(p);
                        wps.push(tip);
                        wps.extend(back);
                    }
                    None => {
                        wps.push(exit);
                        wps.extend_from_slice(&walk);
                        wps.extend(back);
                    }
                }
            }
            None => wps.push(exit),
        }
        if i + 1 == m {
            if let Some(walk) = flare_at(i, exit, entry, true) {
                wps.extend(walk);
            }
        }
    }
    wps.dedup_by(|p, q| p.dist(*q) <= EPS);
    wps
}

/// Edge whose parallel lines are the decomposition's own (vertical) sweep lines.
fn vertical_edge(cell: &Cell) -> Edge {
    let (x0, _) = cell.x_extent();
    let (y0, y1) = cell.y_extent();
    Edge { index: usize::MAX, a: Point2D::new(x0, y1), b: Point2D::new(x0, y0) }
}

/// `4 * min(N_feas, n_e)` patterns: two start corners times two directions
/// for each of the longest feasible edges.
pub fn generate_patterns(cell: &Cell, cell_id: usize, model: &UavModel, s: f64, n_e: usize) -> Vec<SweepPattern> {
    let mut edges = feasible_sweep_edges(cell, n_e.max(1));
    if edges.is_empty() {
        edges.push(vertical_edge(cell));
    }
    let mut out = Vec::with_capacity(4 * edges.len());
    for edge in &edges {
        let frame = EdgeFrame::new(cell, edge);
        let chords: Vec<(Point2D, Point2D)> =
            frame.offsets(s).into_iter().filter_map(|o| frame.chord(o)).filter(|(a, b)| b.x - a.x > EPS).collect();
        if chords.is_empty() {
            continue;
        }
        let world_chords: Vec<_> = chords.iter().map(|&(a, b)| (frame.to_cell(a), frame.to_cell(b))).collect();
        for variant in DirectionVariant::ALL {
            let mut wps: Vec<Point2D> =
                boustrophedon(&frame, &chords, variant.starts_at_a(), s).into_iter().map(|p| frame.to_cell(p)).collect();
            if variant.reversed() {
                wps.reverse();
            }
            out.push(SweepPattern::new(cell_id, wps, model, *edge, variant, world_chords.clone()));
        }
    }
    if out.is_empty() {
        out.push(centroid_pass(cell, cell_id, model, edges[0]));
    }
    out
}

/// Fallback for cells too small to hold a chord.
fn centroid_pass(cell: &Cell, cell_id: usize, model: &UavModel, edge: Edge) -> SweepPattern {
    let c = cell.centroid();
    let frame = EdgeFrame::new(cell, &edge);
    let cy = c.rotated(-frame.angle).y;
    let wps = match frame.chord(cy - frame.base_y) {
        Some((a, b)) if b.x - a.x > EPS => vec![frame.to_cell(a), frame.to_cell(b)],
        _ => vec![c],
    };
    let chords = if wps.len() == 2 { vec![(wps[0], wps[1])] } else { Vec::new() };
    SweepPattern::new(cell_id, wps, model, edge, DirectionVariant::FromA, chords)
}
