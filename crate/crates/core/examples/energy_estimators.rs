//! The fast energy estimator against the sampled trajectory oracle.
//!
//!     cargo run --example energy_estimators

use coverage_planner::energy::{
    path_energy_fast, path_energy_oracle, segment_energy, turn_properties, UavModel, DEFAULT_SAMPLE_DT,
};
use coverage_planner::geometry::Point2D;

fn main() {
    let m = UavModel { mass: 3.0, a_max: 2.0, v_r: 8.39, p_hover: 426.03, p_range: 465.23, d_max: 0.5 };

    println!("turn angle  v_in [m/s]");
    for deg in [15.0, 45.0, 90.0, 135.0, 180.0_f64] {
        let t = turn_properties(deg.to_radians(), &m).unwrap();
        println!("{deg:10.0}  {:10.3}", t.v_in);
    }

    let cruise = segment_energy(839.0, m.v_r, m.v_r, &m).unwrap();
    let rest = segment_energy(839.0, 0.0, 0.0, &m).unwrap();
    println!("\n839 m at cruise: {:.3} Wh in {:.1} s", cruise.wh(), cruise.duration);
    println!("839 m from rest: {:.3} Wh in {:.1} s", rest.wh(), rest.duration);

    // a short lawnmower, where turns dominate
    let mut wps = Vec::new();
    for i in 0..6 {
        let y = 10.0 * i as f64;
        let (a, b) = if i % 2 == 0 { (0.0, 120.0) } else { (120.0, 0.0) };
        wps.push(Point2D::new(a, y));
        wps.push(Point2D::new(b, y));
    }
    let fast = path_energy_fast(&wps, &m);
    println!("\nlawnmower, {} waypoints, {:.0} m", wps.len(), fast.distance);
    println!("{:>8}  {:>10}  {:>8}", "dt [s]", "E [Wh]", "dev");
    println!("{:>8}  {:10.4}", "fast", fast.wh());
    for dt in [0.2, 0.1, DEFAULT_SAMPLE_DT, 0.01] {
        let o = path_energy_oracle(&wps, &m, dt);
        println!("{dt:8.2}  {:10.4}  {:7.2}%", o.wh(), 100.0 * (fast.energy - o.energy) / o.energy);
    }
}
