//! Rotation scoring and boustrophedon decomposition of an area with two
//! no-fly zones.
//!
//!     cargo run --example decompose

use coverage_planner::geometry::{bcd_decompose, rotate_region, select_best_rotations, split_to_count, Point2D, Region};

fn ring(pts: &[(f64, f64)]) -> Vec<Point2D> {
    pts.iter().map(|&(x, y)| Point2D::new(x, y)).collect()
}

fn main() {
    let outer = ring(&[(0.0, 0.0), (420.0, 30.0), (460.0, 260.0), (220.0, 330.0), (-20.0, 220.0)]);
    let holes = vec![
        ring(&[(90.0, 90.0), (150.0, 90.0), (150.0, 150.0), (90.0, 150.0)]),
        ring(&[(260.0, 120.0), (330.0, 140.0), (300.0, 210.0)]),
    ];
    let region = Region::new(outer, holes).expect("valid region");
    println!("free area {:.0} m^2", region.area());

    let cands = select_best_rotations(&region, 4);
    for c in &cands {
        println!("rotation {:7.2} deg  cost {:8.1} m", c.angle.to_degrees(), c.cost);
    }

    let best = cands[0];
    let cells = bcd_decompose(&rotate_region(&region, -best.angle)).expect("decomposes");
    println!("\n{} cells at the best rotation:", cells.len());
    for (i, c) in cells.iter().enumerate() {
        let (lo, hi) = c.y_extent();
        println!("  cell {i}: {} vertices, area {:8.1}, height {:6.1}", c.boundary.len(), c.area(), hi - lo);
    }

    // more cells than UAVs gives the solver room to balance the load
    let split = split_to_count(cells, 8);
    let total: f64 = split.iter().map(|c| c.area()).sum();
    println!("\nsplit into {} cells, area preserved: {:.3} m^2", split.len(), total);
}
