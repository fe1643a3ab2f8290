//! Scenario files: a region, a vehicle model and planner settings in one
//! JSON document.
//!
//! ```json
//! {
//!   "name": "rectangle",
//!   "region": { "type": "Polygon", "coordinates": [[[0, 0], [400, 0], [400, 250], [0, 250], [0, 0]]] },
//!   "uav": { "mass": 3.0, "a_max": 2.0, "v_r": 8.39, "p_hover": 426.03, "p_range": 465.23 },
//!   "config": { "n_uav": 2, "e_bound_wh": 130.0, "sweep_step": 10.0 }
//! }
//! ```
//!
//! Optional keys: `description`, `origin` (`{"lon", "lat"}`; the region and
//! `uav_starts` are then WGS84), `uav.d_max`, every `config` field of
//! [`ScenarioConfig`] and `output`. Unknown keys are rejected.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::geojson::{parse_region, Origin};
use super::IoError;
use crate::energy::{UavModel, J_PER_WH};
use crate::geometry::{Point2D, Region};
use crate::mstsp::TabuParams;
use crate::planner::PlanConfig;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    #[serde(default)]
    pub description: String,
    pub region: Value,
    #[serde(default)]
    pub origin: Option<Origin>,
    pub uav: UavModel,
    #[serde(default)]
    pub config: ScenarioConfig,
    #[serde(default)]
    pub output: OutputOptions,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    pub n_uav: usize,
    /// Per-path budget in Wh; absent or null means unbounded.
    pub e_bound_wh: Option<f64>,
    pub n_min: usize,
    pub n_angles: usize,
    pub n_e: usize,
    /// Footprint width, m.
    pub sweep_step: f64,
    pub tabu: TabuParams,
    pub rcl_k: usize,
    pub seed: u64,
    pub max_paths: usize,
    pub clearance: f64,
    /// `[x, y]` (or `[lon, lat]` with an origin) per UAV.
    pub uav_starts: Vec<[f64; 2]>,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        let d = PlanConfig::default();
        Self {
            n_uav: d.n_uav,
            e_bound_wh: None,
            n_min: d.n_min,
            n_angles: d.n_angles,
            n_e: d.n_e,
            sweep_step: d.sweep_step,
            tabu: d.tabu,
            rcl_k: d.rcl_k,
            seed: d.seed,
            max_paths: d.max_paths,
            clearance: d.clearance,
            uav_starts: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputOptions {
    pub svg: bool,
    /// Also report oracle energies with this sample step, s.
    pub oracle_dt: Option<f64>,
}

impl Default for OutputOptions {
    fn default() -> Self {
        Self { svg: true, oracle_dt: None }
    }
}

impl Scenario {
    pub fn load(path: &Path) -> Result<Self, IoError> {
        let text = std::fs::read_to_string(path).map_err(|e| IoError::Read { path: path.to_path_buf(), source: e })?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self, IoError> {
        let s: Self = serde_json::from_str(text).map_err(|e| IoError::Scenario(e.to_string()))?;
        s.uav.validate().map_err(|e| IoError::Scenario(e.to_string()))?;
        if let Some(b) = s.config.e_bound_wh {
            if !(b > 0.0) {
                return Err(IoError::Scenario(format!("e_bound_wh must be > 0, got {b}")));
            }
        }
        Ok(s)
    }

    pub fn region(&self) -> Result<Region, IoError> {
        parse_region(&self.region, self.origin.as_ref())
    }

    /// Planner settings; `seed` overrides the file's seed when given.
    pub fn plan_config(&self, seed: Option<u64>) -> PlanConfig {
        let c = &self.config;
        let start = |p: &[f64; 2]| match &self.origin {
            Some(o) => o.to_local(p[0], p[1]),
            None => Point2D::new(p[0], p[1]),
        };
        PlanConfig {
            n_uav: c.n_uav,
            e_bound: c.e_bound_wh.map_or(f64::INFINITY, |wh| wh * J_PER_WH),
            n_min: c.n_min,
            n_angles: c.n_angles,
            n_e: c.n_e,
            sweep_step: c.sweep_step,
            tabu: c.tabu,
            rcl_k: c.rcl_k,
            seed: seed.unwrap_or(c.seed),
            max_paths: c.max_paths,
            clearance: c.clearance,
            uav_starts: c.uav_starts.iter().map(start).collect(),
        }
    }
}
