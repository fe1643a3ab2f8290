//! Plans a bundled scenario end to end and writes every output file.
//!
//!     cargo run --release --example plan_scenario -- scenarios/island.json /tmp/island

use std::path::PathBuf;

use coverage_planner::cli::{cmd_plan, estimator_deviations};
use coverage_planner::energy::DEFAULT_SAMPLE_DT;

fn main() {
    let mut args = std::env::args().skip(1);
    let scenario = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios/simple.json"));
    let out = args.next().map(PathBuf::from).unwrap_or_else(|| std::env::temp_dir().join("covplan-example"));

    let run = cmd_plan(&scenario, &out, None, None).unwrap_or_else(|e| {
        eprintln!("{e}");
        std::process::exit(2)
    });
    let s = &run.summary;
    println!("{}: {} cells, {} paths, rotation {:.1} deg", s.scenario, s.cells, s.n_paths, s.rotation_deg);
    for it in &s.iterations {
        println!("  iteration with {} paths: E_max {:.2} Wh, E_tot {:.2} Wh", it.n_paths, it.e_max_wh, it.e_tot_wh);
    }
    let devs = estimator_deviations(&run, DEFAULT_SAMPLE_DT);
    for (p, (fast, oracle, dev)) in s.paths.iter().filter(|p| p.waypoints >= 2).zip(devs) {
        println!(
            "  path {} (uav {}): {:7.0} m  {:6.2} Wh fast  {:6.2} Wh oracle  {:5.2}%",
            p.path,
            p.uav,
            p.length_m,
            fast / 3600.0,
            oracle / 3600.0,
            100.0 * dev
        );
    }
    println!("planned in {:.2} s, outputs in {}", run.elapsed.as_secs_f64(), out.display());
}
