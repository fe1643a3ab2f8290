use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use coverage_planner::cli::run_scenario;
use coverage_planner::io::{parse_paths, parse_region, Scenario};
use serde_json::Value;

fn scenario(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios").join(format!("{name}.json"))
}

fn covplan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_covplan")).args(args).output().expect("covplan runs")
}

/// Copy of a bundled scenario with `edit` applied to its JSON.
fn edited(name: &str, dir: &Path, edit: impl FnOnce(&mut Value)) -> PathBuf {
    let mut v: Value = serde_json::from_str(&fs::read_to_string(scenario(name)).unwrap()).unwrap();
    edit(&mut v);
    let p = dir.join(format!("{name}_edited.json"));
    fs::write(&p, serde_json::to_string(&v).unwrap()).unwrap();
    p
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn single_uav_rectangle_gives_one_linestring() {
    let tmp = tempfile::tempdir().unwrap();
    let sc = edited("rectangle", tmp.path(), |v| v["config"]["n_uav"] = 1.into());
    let out = tmp.path().join("out");
    let o = covplan(&["plan", sc.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let gj = read_json(&out.join("paths.geojson"));
    let feats = gj["features"].as_array().unwrap();
    assert_eq!(feats.len(), 1);
    assert_eq!(feats[0]["geometry"]["type"], "LineString");
    for f in ["waypoints.csv", "summary.json", "timing.json", "plan.svg"] {
        assert!(out.join(f).is_file(), "{f} missing");
    }
}

#[test]
fn geojson_round_trips_through_the_origin() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("out");
    let sc = scenario("island");
    let o = covplan(&["plan", sc.to_str().unwrap(), "--out", out.to_str().unwrap(), "--seed", "5"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));

    let s = Scenario::load(&sc).unwrap();
    let origin = s.origin.as_ref();
    assert!(origin.is_some(), "island is given in lon/lat");
    let back = parse_paths(&read_json(&out.join("paths.geojson")), origin).unwrap();
    let run = run_scenario(&sc, Some(5), None).unwrap();
    let flown: Vec<_> = run.plan.paths.iter().filter(|p| p.waypoints.len() >= 2).collect();
    assert_eq!(back.len(), flown.len());
    for (b, p) in back.iter().zip(&flown) {
        assert_eq!(b.len(), p.waypoints.len());
        for (q, w) in b.iter().zip(&p.waypoints) {
            assert!(q.dist(*w) < 1e-3, "{q:?} vs {w:?}");
        }
    }
    let region = parse_region(&s.region, origin).unwrap();
    assert_eq!(region.holes().len(), s.region().unwrap().holes().len());
    assert!((region.area() - s.region().unwrap().area()).abs() < 1e-9 * region.area());
}

#[test]
fn svg_draws_paths_and_no_fly_zones() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("out");
    let sc = scenario("island");
    let o = covplan(&["plan", sc.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let svg = fs::read_to_string(out.join("plan.svg")).unwrap();
    let summary = read_json(&out.join("summary.json"));
    let holes = Scenario::load(&sc).unwrap().region().unwrap().holes().len();
    let n_paths = summary["paths"].as_array().unwrap().iter().filter(|p| p["waypoints"].as_u64().unwrap() >= 2).count();
    assert!(holes > 0);
    assert_eq!(svg.matches(r#"class="nfz""#).count(), holes);
    assert_eq!(svg.matches("<polyline").count(), n_paths);
}

#[test]
fn unreachable_budget_fails_at_the_cap() {
    let tmp = tempfile::tempdir().unwrap();
    let sc = edited("rectangle", tmp.path(), |v| {
        v["config"]["e_bound_wh"] = 0.5.into();
        v["config"]["max_paths"] = 3.into();
    });
    let o = covplan(&["plan", sc.to_str().unwrap(), "--out", tmp.path().join("out").to_str().unwrap()]);
    assert!(!o.status.success());
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("max_paths cap"), "{err}");
}

#[test]
fn validate_and_bench_run() {
    let o = covplan(&["validate", scenario("rectangle").to_str().unwrap(), "--oracle-dt", "0.05"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stdout));
    assert!(String::from_utf8_lossy(&o.stdout).contains("all within 10%"));

    let tmp = tempfile::tempdir().unwrap();
    for name in ["rectangle", "simple"] {
        fs::copy(scenario(name), tmp.path().join(format!("{name}.json"))).unwrap();
    }
    let csv_path = tmp.path().join("bench.csv");
    let o = covplan(&["bench", tmp.path().to_str().unwrap(), "--out", csv_path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let mut r = csv::Reader::from_path(&csv_path).unwrap();
    let head: Vec<String> = r.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(&head[..6], ["scenario", "n_uav", "E_o[Wh]", "E_t[Wh]", "length[km]", "t_c[s]"]);
    let rows: Vec<csv::StringRecord> = r.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 2);
    for row in &rows {
        assert_eq!(&row[6], "ok");
        assert!(row[5].parse::<f64>().unwrap() >= 0.0);
    }
}

#[test]
fn same_seed_same_summary() {
    let tmp = tempfile::tempdir().unwrap();
    let sc = scenario("simple");
    let runs: Vec<String> = ["a", "b"]
        .iter()
        .map(|d| {
            let out = tmp.path().join(d);
            let o = covplan(&["plan", sc.to_str().unwrap(), "--out", out.to_str().unwrap(), "--seed", "11"]);
            assert!(o.status.success());
            fs::read_to_string(out.join("summary.json")).unwrap()
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
}
