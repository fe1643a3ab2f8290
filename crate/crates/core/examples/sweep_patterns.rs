//! Candidate coverage patterns for a single cell.
//!
//!     cargo run --example sweep_patterns

use coverage_planner::energy::UavModel;
use coverage_planner::geometry::{feasible_sweep_edges, Cell, Point2D};
use coverage_planner::sweep::generate_patterns;

fn main() {
    let m = UavModel { mass: 3.0, a_max: 2.0, v_r: 8.39, p_hover: 426.03, p_range: 465.23, d_max: 0.5 };
    let boundary = [(0.0, 0.0), (160.0, 0.0), (190.0, 70.0), (40.0, 90.0)]
        .iter()
        .map(|&(x, y)| Point2D::new(x, y))
        .collect();
    let cell = Cell { boundary, source_rotation: 0.0 };

    let edges = feasible_sweep_edges(&cell, 4);
    println!("{} feasible sweep edges", edges.len());
    for e in &edges {
        println!("  {:6.1} m at {:6.1} deg", e.length(), e.angle().to_degrees());
    }

    let pats = generate_patterns(&cell, 0, &m, 12.0, 4);
    println!("\n{} patterns:", pats.len());
    for p in &pats {
        println!(
            "  edge {:6.1} deg  {:?}  {:2} chords  {:3} waypoints  {:6.2} Wh",
            p.sweep_edge.angle().to_degrees(),
            p.variant,
            p.chords.len(),
            p.waypoints.len(),
            p.energy / 3600.0
        );
    }
    let best = pats.iter().min_by(|a, b| a.energy.total_cmp(&b.energy)).unwrap();
    println!("\ncheapest pattern waypoints:");
    for w in &best.waypoints {
        println!("  {:8.2} {:8.2}", w.x, w.y);
    }
}
