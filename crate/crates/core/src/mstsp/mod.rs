//! Multiple Set TSP: choose one node from every set and order the chosen
//! nodes into one depot-to-depot path per vehicle.
//!
//! Each coverage pattern becomes a node, all patterns of one cell form a
//! set, node weights are pattern energies and directed edge weights are the
//! transfer energies between the end of one pattern and the start of the
//! next. Solutions are compared by the tuple `(max path cost, mean path cost)`
//! in lexicographic order.

mod brute;
mod build;
mod cost;
mod grp;
mod instance;
mod io;
mod state;
mod tabu;

pub use brute::{brute_force_solve, solution_space_size, BRUTE_FORCE_LIMIT};
pub use build::{build_instance, build_instance_with_router};
pub use cost::{solution_cost, CostTuple};
pub use grp::{grp_initial, DEFAULT_RCL_SIZE};
pub use instance::{Depot, MstspInstance};
pub use io::{dump_instance, load_instance};
pub use tabu::{tabu_search, TabuParams};

use crate::geometry::Point2D;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum MstspError {
    #[error("no transfer path from ({:.3}, {:.3}) to ({:.3}, {:.3}) ({what})", from.x, from.y, to.x, to.y)]
    Disconnected { what: String, from: Point2D, to: Point2D },
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("invalid solution: {0}")]
    InvalidSolution(String),
    #[error("solution space of {size} exceeds the brute-force limit {limit}")]
    SpaceTooLarge { size: f64, limit: f64 },
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// One path per vehicle, each a sequence of node ids. Depot legs are implicit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Solution {
    pub paths: Vec<Vec<usize>>,
}

impl Solution {
    pub fn empty(n_paths: usize) -> Self {
        Self { paths: vec![Vec::new(); n_paths] }
    }

    pub fn node_count(&self) -> usize {
        self.paths.iter().map(Vec::len).sum()
    }

    /// Checks that every set is visited exactly once and node ids are valid.
    pub fn validate(&self, inst: &MstspInstance) -> Result<(), MstspError> {
        if self.paths.is_empty() {
            return Err(MstspError::InvalidSolution("no paths".into()));
        }
        let mut seen = vec![false; inst.sets().len()];
        for &v in self.paths.iter().flatten() {
            if v >= inst.n_nodes() {
                return Err(MstspError::InvalidSolution(format!("node {v} out of range")));
            }
            let s = inst.set_of(v);
            if std::mem::replace(&mut seen[s], true) {
                return Err(MstspError::InvalidSolution(format!("set {s} visited twice")));
            }
        }
        if let Some(s) = seen.iter().position(|&b| !b) {
            return Err(MstspError::InvalidSolution(format!("set {s} not visited")));
        }
        Ok(())
    }
}
