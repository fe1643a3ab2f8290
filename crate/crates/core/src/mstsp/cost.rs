use std::cmp::Ordering;

use serde::Serialize;

use super::{MstspError, MstspInstance, Solution};

/// Lexicographic objective: the largest path cost first, the mean second.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CostTuple {
    pub max_path_cost: f64,
    pub average_path_cost: f64,
}

impl CostTuple {
    pub fn from_path_costs(costs: &[f64]) -> Self {
        if costs.is_empty() {
            return Self { max_path_cost: 0.0, average_path_cost: 0.0 };
        }
        let max = costs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let sum: f64 = costs.iter().sum();
        Self { max_path_cost: max, average_path_cost: sum / costs.len() as f64 }
    }
}

impl PartialEq for CostTuple {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for CostTuple {}

impl PartialOrd for CostTuple {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CostTuple {
    fn cmp(&self, other: &Self) -> Ordering {
        self.max_path_cost
            .total_cmp(&other.max_path_cost)
            .then(self.average_path_cost.total_cmp(&other.average_path_cost))
    }
}

/// Cost tuple of a valid solution.
pub fn solution_cost(sol: &Solution, inst: &MstspInstance) -> Result<CostTuple, MstspError> {
    sol.validate(inst)?;
    let costs: Vec<f64> = sol.paths.iter().enumerate().map(|(k, p)| inst.path_cost(k, p)).collect();
    Ok(CostTuple::from_path_costs(&costs))
}
