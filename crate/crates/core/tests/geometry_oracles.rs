//! Geometry checked against independent oracles: a fine grid shortest path
//! for connectors, exact areas for decompositions, sampled line
//! intersections for monotonicity and a calipers width for rotation costs.

mod common;

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use coverage_planner::geometry::{
    bcd_decompose, connector_path, feasible_sweep_edges, horizontal_intervals, polyline_length, rotate_region,
    rotation_cost, select_best_rotations, signed_area, Cell, Point2D, Region,
};
use coverage_planner::io::Scenario;

fn pts(v: &[(f64, f64)]) -> Vec<Point2D> {
    v.iter().map(|&(x, y)| Point2D::new(x, y)).collect()
}

/// Dijkstra over grid nodes with every neighbour offset up to 4 cells away,
/// so headings are resolved to within a fraction of a degree.
fn grid_shortest(region: &Region, p: Point2D, q: Point2D, h: f64) -> f64 {
    let (lo, hi) = region.bbox();
    let nx = ((hi.x - lo.x) / h).round() as i64 + 1;
    let ny = ((hi.y - lo.y) / h).round() as i64 + 1;
    let at = |i: i64, j: i64| Point2D::new(lo.x + i as f64 * h, lo.y + j as f64 * h);
    let free: Vec<bool> = (0..nx * ny)
        .map(|k| {
            let c = at(k % nx, k / nx);
            region.contains(c, 1e-9) && !region.in_hole_interior(c, 1e-9)
        })
        .collect();
    let seg_free = |a: Point2D, b: Point2D| {
        let n = (a.dist(b) / (0.25 * h)).ceil() as usize;
        (0..=n).all(|k| {
            let c = a.lerp(b, k as f64 / n as f64);
            !region.in_hole_interior(c, 1e-9) && region.contains(c, 1e-9)
        })
    };
    let mut offs = Vec::new();
    for dx in -4i64..=4 {
        for dy in -4i64..=4 {
            let g = gcd(dx.abs(), dy.abs());
            if g == 1 {
                offs.push((dx, dy));
            }
        }
    }
    let node = |c: Point2D| (((c.x - lo.x) / h).round() as i64, ((c.y - lo.y) / h).round() as i64);
    let (si, sj) = node(p);
    let (ti, tj) = node(q);
    let mut dist = vec![f64::INFINITY; (nx * ny) as usize];
    let mut heap = BinaryHeap::new();
    dist[(sj * nx + si) as usize] = 0.0;
    heap.push((Reverse(0u64), si, sj));
    while let Some((Reverse(dk), i, j)) = heap.pop() {
        let d = f64::from_bits(dk);
        if d > dist[(j * nx + i) as usize] {
            continue;
        }
        if (i, j) == (ti, tj) {
            return d;
        }
        for &(dx, dy) in &offs {
            let (a, b) = (i + dx, j + dy);
            if a < 0 || b < 0 || a >= nx || b >= ny || !free[(b * nx + a) as usize] {
                continue;
            }
            if !seg_free(at(i, j), at(a, b)) {
                continue;
            }
            let nd = d + h * ((dx * dx + dy * dy) as f64).sqrt();
            if nd < dist[(b * nx + a) as usize] {
                dist[(b * nx + a) as usize] = nd;
                heap.push((Reverse(nd.to_bits()), a, b));
            }
        }
    }
    f64::INFINITY
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn connector_matches_grid_oracle() {
    let outer = pts(&[(-3.0, -3.0), (4.0, -3.0), (4.0, 4.0), (-3.0, 4.0)]);
    let cases = [
        (vec![pts(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])], (-1.0, 0.5), (2.0, 0.5)),
        (vec![pts(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])], (-1.0, -0.4), (2.2, 1.7)),
        (
            vec![pts(&[(-1.0, 0.0), (0.5, 0.2), (0.0, 1.0)]), pts(&[(1.5, 1.0), (2.5, 1.0), (2.5, 3.0), (1.5, 3.0)])],
            (-2.0, 0.6),
            (3.5, 2.0),
        ),
    ];
    for (holes, p, q) in cases {
        let region = Region::new(outer.clone(), holes).unwrap();
        let (p, q) = (Point2D::new(p.0, p.1), Point2D::new(q.0, q.1));
        let route = connector_path(p, q, &region).unwrap();
        let len = polyline_length(&route);
        let oracle = grid_shortest(&region, p, q, 0.05);
        assert!(len >= p.dist(q) - 1e-12);
        assert!((len - oracle).abs() / oracle <= 0.02, "route {len:.4} vs grid {oracle:.4}");
        assert!(common::first_violation(&region, &route, 0.1).is_none());
    }
}

#[test]
fn unit_hole_forces_a_corner() {
    let outer = pts(&[(-3.0, -3.0), (4.0, -3.0), (4.0, 4.0), (-3.0, 4.0)]);
    let hole = pts(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]);
    let region = Region::new(outer, vec![hole]).unwrap();
    let route = connector_path(Point2D::new(-1.0, 0.5), Point2D::new(2.0, 0.5), &region).unwrap();
    assert!(route.len() >= 3);
    // two diagonals of (1, 0.5) around the hole plus its top or bottom side
    let want = 2.0 * 1.25f64.sqrt() + 1.0;
    assert!((polyline_length(&route) - want).abs() < 1e-9);
}

fn scenario_regions() -> Vec<(String, Region)> {
    common::bundled()
        .iter()
        .map(|f| {
            let sc = Scenario::load(f).unwrap();
            let r = sc.region().unwrap();
            (sc.name, r)
        })
        .collect()
}

fn cells_at_best_rotation(region: &Region) -> Vec<Cell> {
    let best = select_best_rotations(region, 1)[0];
    bcd_decompose(&rotate_region(region, -best.angle)).unwrap()
}

#[test]
fn decomposition_preserves_area() {
    for (name, region) in scenario_regions() {
        let cells = cells_at_best_rotation(&region);
        let sum: f64 = cells.iter().map(|c| c.area()).sum();
        let outer = signed_area(region.outer()).abs();
        let holes: f64 = region.holes().iter().map(|h| signed_area(h).abs()).sum();
        let want = outer - holes;
        assert!((sum - want).abs() <= 1e-6 * want, "{name}: {sum} vs {want}");
    }
}

/// Number of separate pieces a line at `angle` through offset `c` cuts out of `ring`.
fn pieces(ring: &[Point2D], angle: f64, c: f64) -> usize {
    let r: Vec<Point2D> = ring.iter().map(|p| p.rotated(-angle)).collect();
    horizontal_intervals(&r, c).len()
}

fn extent_across(ring: &[Point2D], angle: f64) -> (f64, f64) {
    let ys = ring.iter().map(|p| p.rotated(-angle).y);
    ys.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), y| (a.min(y), b.max(y)))
}

#[test]
fn cells_are_monotone_along_the_sweep() {
    for (name, region) in scenario_regions() {
        for (k, cell) in cells_at_best_rotation(&region).iter().enumerate() {
            // vertical lines become horizontal after a quarter turn
            let angle = std::f64::consts::FRAC_PI_2;
            let (lo, hi) = extent_across(&cell.boundary, angle);
            for i in 1..1000 {
                let c = lo + (hi - lo) * i as f64 / 1000.0;
                assert!(pieces(&cell.boundary, angle, c) <= 1, "{name} cell {k} at {c}");
            }
        }
    }
}

#[test]
fn feasible_edges_pass_line_sampling() {
    let notched = Cell {
        boundary: pts(&[(0.0, 0.0), (40.0, 0.0), (40.0, 30.0), (20.0, 12.0), (0.0, 30.0)]),
        source_rotation: 0.0,
    };
    let mut checked = 0;
    let mut cells = vec![notched];
    for (_, region) in scenario_regions() {
        cells.extend(cells_at_best_rotation(&region));
    }
    for cell in &cells {
        let feasible = feasible_sweep_edges(cell, usize::MAX);
        for e in &feasible {
            let (lo, hi) = extent_across(&cell.boundary, e.angle());
            for i in 1..100 {
                let c = lo + (hi - lo) * i as f64 / 100.0;
                assert!(pieces(&cell.boundary, e.angle(), c) <= 1);
            }
            checked += 1;
        }
    }
    assert!(checked > 20);
    // the notch splits horizontal lines above y = 12, so the base is excluded
    let base = feasible_sweep_edges(&cells[0], usize::MAX).iter().any(|e| e.a.y == 0.0 && e.b.y == 0.0);
    assert!(!base);
    assert_eq!(pieces(&cells[0].boundary, 0.0, 20.0), 2);
}

#[test]
fn rotation_costs_respect_width() {
    let hexagon = pts(&[(0.0, 0.0), (50.0, -10.0), (90.0, 20.0), (80.0, 60.0), (30.0, 70.0), (-5.0, 35.0)]);
    let region = Region::new(hexagon.clone(), vec![]).unwrap();
    let n = hexagon.len();
    // calipers: the width of a convex polygon is attained flush with an edge
    let width = (0..n)
        .map(|i| {
            let (a, b) = (hexagon[i], hexagon[(i + 1) % n]);
            let d = b - a;
            hexagon.iter().map(|p| d.cross(*p - a).abs() / d.norm()).fold(0.0, f64::max)
        })
        .fold(f64::INFINITY, f64::min);
    let cands = select_best_rotations(&region, n);
    assert_eq!(cands.len(), n);
    for w in cands.windows(2) {
        assert!(w[0].cost <= w[1].cost);
    }
    for c in &cands {
        assert!(c.cost >= width - 1e-9);
        let cells = bcd_decompose(&rotate_region(&region, -c.angle)).unwrap();
        assert!((rotation_cost(&cells) - c.cost).abs() < 1e-9);
    }
    assert!((cands[0].cost - width).abs() < 1e-9);
}
