//! Plan outputs: GeoJSON paths, a waypoint CSV, a JSON summary and an SVG
//! overview.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::time::Duration;

use serde::Serialize;
use serde_json::json;

use super::geojson::{paths_to_geojson, Origin};
use super::IoError;
use crate::energy::{fast_profile, path_energy_oracle, UavModel, J_PER_WH};
use crate::geometry::{Point2D, Region};
use crate::planner::Plan;

/// Non-empty paths as LineString features.
pub fn plan_geojson(plan: &Plan, origin: Option<&Origin>) -> serde_json::Value {
    let paths: Vec<_> = plan
        .paths
        .iter()
        .enumerate()
        .filter(|(_, p)| p.waypoints.len() >= 2)
        .map(|(i, p)| {
            let props = json!({
                "path": i,
                "uav": p.uav,
                "energy_wh": p.energy.wh(),
                "length_m": p.energy.distance,
            });
            (p.waypoints.clone(), props)
        })
        .collect();
    paths_to_geojson(&paths, origin)
}

/// Waypoint table with columns `uav_id, seq, x, y, v_hint`. `seq` counts
/// through all paths of one UAV in flight order; `v_hint` is the speed the
/// fast estimator assumes when leaving the waypoint.
pub fn write_waypoint_csv<W: std::io::Write>(plan: &Plan, model: &UavModel, out: W) -> Result<(), IoError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["uav_id", "seq", "x", "y", "v_hint"])?;
    let n_uav = plan.paths.iter().map(|p| p.uav + 1).max().unwrap_or(0);
    for uav in 0..n_uav {
        let mut seq = 0usize;
        for path in plan.paths.iter().filter(|p| p.uav == uav) {
            let prof = fast_profile(&path.waypoints, model, 0.0, 0.0);
            for (p, v) in prof.waypoints.iter().zip(&prof.waypoint_speeds) {
                w.write_record([uav.to_string(), seq.to_string(), p.x.to_string(), p.y.to_string(), v.to_string()])?;
                seq += 1;
            }
        }
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct PathSummary {
    pub path: usize,
    pub uav: usize,
    pub energy_wh: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_energy_wh: Option<f64>,
    pub length_m: f64,
    pub duration_s: f64,
    pub waypoints: usize,
    pub cells: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct IterationSummary {
    pub n_paths: usize,
    pub rotation_deg: f64,
    pub e_max_wh: f64,
    pub e_tot_wh: f64,
}

/// Deterministic plan summary. Wall-clock time is kept out of it so that
/// repeated runs compare equal byte for byte; see [`Timing`].
#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub scenario: String,
    pub seed: u64,
    pub n_uav: usize,
    pub n_paths: usize,
    pub e_bound_wh: Option<f64>,
    pub e_max_wh: f64,
    pub e_tot_wh: f64,
    pub total_length_m: f64,
    pub rotation_deg: f64,
    pub cells: usize,
    pub paths: Vec<PathSummary>,
    pub iterations: Vec<IterationSummary>,
}

impl Summary {
    pub fn new(
        scenario: &str,
        seed: u64,
        n_uav: usize,
        e_bound: f64,
        plan: &Plan,
        model: &UavModel,
        oracle_dt: Option<f64>,
    ) -> Self {
        let paths = plan
            .paths
            .iter()
            .enumerate()
            .map(|(i, p)| PathSummary {
                path: i,
                uav: p.uav,
                energy_wh: p.energy.wh(),
                oracle_energy_wh: oracle_dt.map(|dt| path_energy_oracle(&p.waypoints, model, dt).wh()),
                length_m: p.energy.distance,
                duration_s: p.energy.duration,
                waypoints: p.waypoints.len(),
                cells: p.patterns.len(),
            })
            .collect();
        let iterations = plan
            .trace
            .iter()
            .map(|t| IterationSummary {
                n_paths: t.n_paths,
                rotation_deg: t.angle.to_degrees(),
                e_max_wh: t.e_max / J_PER_WH,
                e_tot_wh: t.e_tot / J_PER_WH,
            })
            .collect();
        Self {
            scenario: scenario.to_string(),
            seed,
            n_uav,
            n_paths: plan.n_paths,
            e_bound_wh: e_bound.is_finite().then(|| e_bound / J_PER_WH),
            e_max_wh: plan.e_max / J_PER_WH,
            e_tot_wh: plan.e_tot / J_PER_WH,
            total_length_m: plan.total_length(),
            rotation_deg: plan.angle.to_degrees(),
            cells: plan.cells.len(),
            paths,
            iterations,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("summary serializes");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Timing {
    pub computation_time_s: f64,
}

impl Timing {
    pub fn new(elapsed: Duration) -> Self {
        Self { computation_time_s: elapsed.as_secs_f64() }
    }
}

const PALETTE: [&str; 10] =
    ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f"];

fn svg_points(ring: &[Point2D]) -> String {
    let pts: Vec<String> = ring.iter().map(|p| format!("{:.2},{:.2}", p.x, p.y)).collect();
    pts.join(" ")
}

/// Overview plot: the area as a filled `path`, each no-fly zone as a
/// `polygon` and each non-empty flight path as a `polyline`.
pub fn plan_svg(region: &Region, plan: &Plan) -> String {
    let (lo, hi) = region.bbox();
    let pad = 0.03 * (hi.x - lo.x).max(hi.y - lo.y);
    let (w, h) = (hi.x - lo.x + 2.0 * pad, hi.y - lo.y + 2.0 * pad);
    let stroke = 0.002 * w.max(h);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{:.2} {:.2} {:.2} {:.2}" width="900" height="{:.0}">"#,
        lo.x - pad,
        -hi.y - pad,
        w,
        h,
        900.0 * h / w
    );
    let _ = writeln!(s, r#"<g transform="scale(1,-1)">"#);
    let outer: Vec<String> = region.outer().iter().map(|p| format!("{:.2},{:.2}", p.x, p.y)).collect();
    let _ = writeln!(
        s,
        r##"<path d="M{}Z" fill="#f2f2e6" stroke="#333" stroke-width="{stroke:.3}"/>"##,
        outer.join(" L")
    );
    for hole in region.holes() {
        let _ = writeln!(
            s,
            r##"<polygon class="nfz" points="{}" fill="#e8a0a0" stroke="#a33" stroke-width="{stroke:.3}"/>"##,
            svg_points(hole)
        );
    }
    for (i, path) in plan.paths.iter().enumerate().filter(|(_, p)| p.waypoints.len() >= 2) {
        let _ = writeln!(
            s,
            r#"<polyline class="path" data-uav="{}" points="{}" fill="none" stroke="{}" stroke-width="{:.3}"/>"#,
            path.uav,
            svg_points(&path.waypoints),
            PALETTE[i % PALETTE.len()],
            stroke
        );
    }
    s.push_str("</g>\n</svg>\n");
    s
}

fn wrap(path: &Path) -> impl FnOnce(std::io::Error) -> IoError + '_ {
    move |e| IoError::Write { path: path.to_path_buf(), source: e }
}

/// Writes `paths.geojson`, `waypoints.csv`, `summary.json`, `timing.json`
/// and, if requested, `plan.svg` into `dir`.
#[allow(clippy::too_many_arguments)]
pub fn write_outputs(
    dir: &Path,
    region: &Region,
    plan: &Plan,
    summary: &Summary,
    model: &UavModel,
    origin: Option<&Origin>,
    svg: bool,
    elapsed: Duration,
) -> Result<(), IoError> {
    fs::create_dir_all(dir).map_err(wrap(dir))?;
    let p = dir.join("paths.geojson");
    fs::write(&p, serde_json::to_string_pretty(&plan_geojson(plan, origin))? + "\n").map_err(wrap(&p))?;
    let p = dir.join("waypoints.csv");
    write_waypoint_csv(plan, model, fs::File::create(&p).map_err(wrap(&p))?)?;
    let p = dir.join("summary.json");
    fs::write(&p, summary.to_json()).map_err(wrap(&p))?;
    let p = dir.join("timing.json");
    fs::write(&p, serde_json::to_string_pretty(&Timing::new(elapsed))? + "\n").map_err(wrap(&p))?;
    if svg {
        let p = dir.join("plan.svg");
        fs::write(&p, plan_svg(region, plan)).map_err(wrap(&p))?;
    }
    Ok(())
}
