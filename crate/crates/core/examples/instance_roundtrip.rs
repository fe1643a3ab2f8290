//! Builds the solver instance of a small area, saves it in the text format
//! and solves the reloaded copy exhaustively.
//!
//!     cargo run --example instance_roundtrip

use coverage_planner::energy::UavModel;
use coverage_planner::geometry::{bcd_decompose, Point2D, Region};
use coverage_planner::mstsp::{brute_force_solve, build_instance, dump_instance, load_instance, solution_space_size, Depot};
use coverage_planner::sweep::generate_patterns;

fn main() {
    let m = UavModel { mass: 3.0, a_max: 2.0, v_r: 8.39, p_hover: 426.03, p_range: 465.23, d_max: 0.5 };
    let outer = [(0.0, 0.0), (120.0, 0.0), (120.0, 80.0), (0.0, 80.0)].map(|(x, y)| Point2D::new(x, y)).to_vec();
    let hole = [(50.0, 30.0), (70.0, 30.0), (70.0, 50.0), (50.0, 50.0)].map(|(x, y)| Point2D::new(x, y)).to_vec();
    let region = Region::new(outer, vec![hole]).unwrap();

    let cells = bcd_decompose(&region).unwrap();
    let patterns: Vec<_> = cells.iter().enumerate().flat_map(|(i, c)| generate_patterns(c, i, &m, 10.0, 1)).collect();
    let inst = build_instance(&patterns, &region, &m, &[Depot::home(Point2D::new(0.0, 0.0))]).unwrap();
    println!("{} cells, {} patterns", cells.len(), patterns.len());

    let text = dump_instance(&inst);
    println!("instance text: {} lines, {} bytes", text.lines().count(), text.len());
    let back = load_instance(&text).unwrap();

    for n_paths in 1..=2 {
        println!("\n{n_paths} path(s), {:.0} candidate solutions", solution_space_size(&back, n_paths));
        match brute_force_solve(&back, n_paths) {
            Ok((sol, c)) => println!("  optimum {:?}: max {:.1} Wh, mean {:.1} Wh", sol.paths, c.max_path_cost / 3600.0, c.average_path_cost / 3600.0),
            Err(e) => println!("  {e}"),
        }
    }
}
