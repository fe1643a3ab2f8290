//! Solution with cached per-path costs, shared by the constructive and
//! improvement heuristics.

use super::{CostTuple, MstspInstance, Solution};

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct State {
    pub paths: Vec<Vec<usize>>,
    pub costs: Vec<f64>,
}

impl State {
    pub fn new(inst: &MstspInstance, sol: &Solution) -> Self {
        let costs = sol.paths.iter().enumerate().map(|(k, p)| inst.path_cost(k, p)).collect();
        Self { paths: sol.paths.clone(), costs }
    }

    pub fn solution(&self) -> Solution {
        Solution { paths: self.paths.clone() }
    }

    pub fn tuple(&self) -> CostTuple {
        CostTuple::from_path_costs(&self.costs)
    }

    /// Tuple obtained when the listed paths take new costs.
    pub fn tuple_with(&self, overrides: &[(usize, f64)]) -> CostTuple {
        let mut max = f64::NEG_INFINITY;
        let mut sum = 0.0;
        for (k, &c) in self.costs.iter().enumerate() {
            let c = overrides.iter().rev().find(|o| o.0 == k).map_or(c, |o| o.1);
            max = max.max(c);
            sum += c;
        }
        CostTuple { max_path_cost: max, average_path_cost: sum / self.costs.len() as f64 }
    }

    pub fn recost(&mut self, inst: &MstspInstance, path: usize) {
        self.costs[path] = inst.path_cost(path, &self.paths[path]);
    }

    fn slot(&self, path: usize, i: isize) -> Option<usize> {
        if i < 0 {
            None
        } else {
            self.paths[path].get(i as usize).copied()
        }
    }

    /// Cost change from inserting `v` before position `pos` of `path`.
    pub fn insertion_delta(&self, inst: &MstspInstance, path: usize, pos: usize, v: usize) -> f64 {
        let prev = self.slot(path, pos as isize - 1);
        let next = self.slot(path, pos as isize);
        inst.link(path, prev, Some(v)) + inst.node_weight(v) + inst.link(path, Some(v), next)
            - inst.link(path, prev, next)
    }

    /// Cost change from removing the node at `pos` of `path`.
    pub fn removal_delta(&self, inst: &MstspInstance, path: usize, pos: usize) -> f64 {
        let v = self.paths[path][pos];
        let prev = self.slot(path, pos as isize - 1);
        let next = self.slot(path, pos as isize + 1);
        inst.link(path, prev, next) - inst.link(path, prev, Some(v)) - inst.node_weight(v) - inst.link(path, Some(v), next)
    }

    /// Cost change from putting `v` in place of the node at `pos` of `path`.
    pub fn replacement_delta(&self, inst: &MstspInstance, path: usize, pos: usize, v: usize) -> f64 {
        let u = self.paths[path][pos];
        let prev = self.slot(path, pos as isize - 1);
        let next = self.slot(path, pos as isize + 1);
        inst.link(path, prev, Some(v)) + inst.node_weight(v) + inst.link(path, Some(v), next)
            - inst.link(path, prev, Some(u))
            - inst.node_weight(u)
            - inst.link(path, Some(u), next)
    }

    pub fn insert(&mut self, inst: &MstspInstance, path: usize, pos: usize, v: usize) {
        self.costs[path] += self.insertion_delta(inst, path, pos, v);
        self.paths[path].insert(pos, v);
    }

    pub fn remove(&mut self, inst: &MstspInstance, path: usize, pos: usize) -> usize {
        self.costs[path] += self.removal_delta(inst, path, pos);
        let v = self.paths[path].remove(pos);
        if self.paths[path].is_empty() {
            self.costs[path] = 0.0;
        }
        v
    }

    /// Replaces the node at `(path, pos)` with the member of its set that
    /// yields the lowest cost tuple.
    pub fn best_of_set(&mut self, inst: &MstspInstance, path: usize, pos: usize) {
        let u = self.paths[path][pos];
        let mut best = (self.tuple(), u, 0.0);
        for &v in &inst.sets()[inst.set_of(u)] {
            if v == u {
                continue;
            }
            let d = self.replacement_delta(inst, path, pos, v);
            let t = self.tuple_with(&[(path, self.costs[path] + d)]);
            if t < best.0 {
                best = (t, v, d);
            }
        }
        if best.1 != u {
            self.paths[path][pos] = best.1;
            self.costs[path] += best.2;
        }
    }

    pub fn node_count(&self) -> usize {
        self.paths.iter().map(Vec::len).sum()
    }

    /// Position of the `k`-th placed node, counting path by path.
    pub fn locate(&self, mut k: usize) -> (usize, usize) {
        for (p, path) in self.paths.iter().enumerate() {
            if k < path.len() {
                return (p, k);
            }
            k -= path.len();
        }
        panic!("node index out of range");
    }
}
