//! Energy-aware coverage path planning for a fleet of multirotor UAVs.
//!
//! A polygonal area with no-fly zones is decomposed into monotone cells
//! ([`geometry`]), each cell gets a handful of back-and-forth candidate
//! patterns ([`sweep`]), and picking one pattern per cell and ordering them
//! over several flights becomes a multiple set TSP ([`mstsp`]) whose edge and
//! node weights are flight energies ([`energy`]). [`planner::plan`] ties it
//! together and adds flights until each stays within the battery budget.
//!
//! ```no_run
//! use coverage_planner::energy::UavModel;
//! use coverage_planner::geometry::{Point2D, Region};
//! use coverage_planner::planner::{plan, PlanConfig};
//!
//! let square = vec![
//!     Point2D::new(0.0, 0.0),
//!     Point2D::new(200.0, 0.0),
//!     Point2D::new(200.0, 120.0),
//!     Point2D::new(0.0, 120.0),
//! ];
//! let region = Region::new(square, vec![]).unwrap();
//! let model = UavModel { mass: 3.0, a_max: 2.0, v_r: 8.39, p_hover: 426.03, p_range: 465.23, d_max: 0.5 };
//! let cfg = PlanConfig { n_uav: 2, ..PlanConfig::default() };
//! let p = plan(&region, &model, &cfg).unwrap();
//! println!("{} paths, worst {:.1} Wh", p.paths.len(), p.e_max / 3600.0);
//! ```

pub mod energy;
pub mod geometry;
pub mod sweep;
pub mod mstsp;
pub mod planner;
pub mod io;
pub mod cli;
