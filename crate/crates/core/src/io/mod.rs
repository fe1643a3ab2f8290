//! Scenario input and plan output.

mod export;
mod geojson;
mod scenario;

use std::path::PathBuf;

pub use export::{plan_geojson, plan_svg, write_outputs, write_waypoint_csv, IterationSummary, PathSummary, Summary, Timing};
pub use geojson::{parse_paths, parse_region, paths_to_geojson, region_to_geojson, Origin};
pub use scenario::{OutputOptions, Scenario, ScenarioConfig};

use crate::geometry::GeometryError;

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("scenario: {0}")]
    Scenario(String),
    #[error("GeoJSON: {0}")]
    GeoJson(String),
    #[error("region: {0}")]
    Region(#[from] GeometryError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
