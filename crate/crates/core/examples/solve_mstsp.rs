//! GRASP construction plus tabu search on a hand-made instance, checked
//! against exhaustive search.
//!
//!     cargo run --example solve_mstsp

use coverage_planner::geometry::Point2D;
use coverage_planner::mstsp::{
    brute_force_solve, grp_initial, solution_cost, tabu_search, Depot, MstspInstance, TabuParams,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    // five sets on a ring around the depot, two alternatives each
    let mut pts = Vec::new();
    let mut sets = Vec::new();
    for k in 0..5 {
        let a = k as f64 * std::f64::consts::TAU / 5.0;
        let c = Point2D::new(100.0 * a.cos(), 100.0 * a.sin());
        sets.push(vec![pts.len(), pts.len() + 1]);
        pts.push(c + Point2D::new(8.0, 0.0));
        pts.push(c - Point2D::new(0.0, 8.0));
    }
    let n = pts.len();
    let weights = (0..n).map(|i| 40.0 + (i % 3) as f64 * 5.0).collect();
    let mut edge = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            edge[i * n + j] = pts[i].dist(pts[j]);
        }
    }
    let home = Point2D::new(0.0, 0.0);
    let legs: Vec<f64> = pts.iter().map(|p| home.dist(*p)).collect();
    let inst = MstspInstance::new(sets, weights, edge, vec![Depot::home(home)], vec![legs.clone()], vec![legs]).unwrap();

    for n_paths in 1..=3 {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let init = grp_initial(&inst, n_paths, 3, &mut rng).unwrap();
        let sol = tabu_search(&inst, &init, &TabuParams::default(), &mut rng);
        let c0 = solution_cost(&init, &inst).unwrap();
        let c = solution_cost(&sol, &inst).unwrap();
        let (_, opt) = brute_force_solve(&inst, n_paths).unwrap();
        println!("{n_paths} path(s)");
        println!("  construction  max {:7.2}  mean {:7.2}", c0.max_path_cost, c0.average_path_cost);
        println!("  tabu search   max {:7.2}  mean {:7.2}  {:?}", c.max_path_cost, c.average_path_cost, sol.paths);
        println!("  optimum       max {:7.2}  mean {:7.2}", opt.max_path_cost, opt.average_path_cost);
    }
}
