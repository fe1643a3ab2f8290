use super::MstspError;
use crate::geometry::Point2D;

/// Start and end position of one vehicle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Depot {
    pub init: Point2D,
    pub end: Point2D,
}

impl Depot {
    /// Return-to-home depot.
    pub fn home(p: Point2D) -> Self {
        Self { init: p, end: p }
    }
}

/// A solver instance. Node ids are dense `0..n_nodes`.
///
/// Path `k` of a solution uses depot `k % depots.len()`, so plans with more
/// paths than vehicles reuse the vehicles' home positions.
#[derive(Debug, Clone, PartialEq)]
pub struct MstspInstance {
    sets: Vec<Vec<usize>>,
    set_of: Vec<usize>,
    node_weight: Vec<f64>,
    /// Row-major `n x n`; entries inside one set are never read.
    edge: Vec<f64>,
    depots: Vec<Depot>,
    /// `depot_out[d][v]`: init depot of `d` to node `v`.
    depot_out: Vec<Vec<f64>>,
    /// `depot_in[d][v]`: node `v` to end depot of `d`.
    depot_in: Vec<Vec<f64>>,
}

impl MstspInstance {
    pub fn new(
        sets: Vec<Vec<usize>>,
        node_weight: Vec<f64>,
        edge: Vec<f64>,
        depots: Vec<Depot>,
        depot_out: Vec<Vec<f64>>,
        depot_in: Vec<Vec<f64>>,
    ) -> Result<Self, MstspError> {
        let n = node_weight.len();
        let bad = |m: String| Err(MstspError::InvalidInstance(m));
        let mut set_of = vec![usize::MAX; n];
        for (s, nodes) in sets.iter().enumerate() {
            if nodes.is_empty() {
                return bad(format!("set {s} is empty"));
            }
            for &v in nodes {
                if v >= n {
                    return bad(format!("node {v} of set {s} out of range"));
                }
                if set_of[v] != usize::MAX {
                    return bad(format!("node {v} belongs to more than one set"));
                }
                set_of[v] = s;
            }
        }
        if let Some(v) = set_of.iter().position(|&s| s == usize::MAX) {
            return bad(format!("node {v} belongs to no set"));
        }
        if edge.len() != n * n {
            return bad(format!("edge matrix has {} entries, expected {}", edge.len(), n * n));
        }
        if depots.is_empty() || depot_out.len() != depots.len() || depot_in.len() != depots.len() {
            return bad("depot tables do not match depot count".into());
        }
        if depot_out.iter().chain(&depot_in).any(|row| row.len() != n) {
            return bad("depot leg rows must have one entry per node".into());
        }
        let finite_nonneg = |w: f64| w.is_finite() && w >= 0.0;
        if !node_weight.iter().copied().all(finite_nonneg) {
            return bad("node weights must be finite and >= 0".into());
        }
        for i in 0..n {
            for j in 0..n {
                if set_of[i] != set_of[j] && !finite_nonneg(edge[i * n + j]) {
                    return bad(format!("edge {i}->{j} weight {} is not finite and >= 0", edge[i * n + j]));
                }
            }
        }
        if !depot_out.iter().chain(&depot_in).flatten().copied().all(finite_nonneg) {
            return bad("depot legs must be finite and >= 0".into());
        }
        Ok(Self { sets, set_of, node_weight, edge, depots, depot_out, depot_in })
    }

    pub fn n_nodes(&self) -> usize {
        self.node_weight.len()
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn set_of(&self, v: usize) -> usize {
        self.set_of[v]
    }

    pub fn node_weight(&self, v: usize) -> f64 {
        self.node_weight[v]
    }

    pub fn depots(&self) -> &[Depot] {
        &self.depots
    }

    /// Weight of the directed edge `u -> v` (infinite inside one set).
    pub fn edge(&self, u: usize, v: usize) -> f64 {
        if self.set_of[u] == self.set_of[v] {
            f64::INFINITY
        } else {
            self.edge[u * self.n_nodes() + v]
        }
    }

    pub fn depot_of_path(&self, path: usize) -> usize {
        path % self.depots.len()
    }

    pub fn leg_out(&self, path: usize, v: usize) -> f64 {
        self.depot_out[self.depot_of_path(path)][v]
    }

    pub fn leg_in(&self, path: usize, v: usize) -> f64 {
        self.depot_in[self.depot_of_path(path)][v]
    }

    /// Transition cost between two consecutive slots of path `path`;
    /// `None` stands for the depot.
    pub(crate) fn link(&self, path: usize, a: Option<usize>, b: Option<usize>) -> f64 {
        match (a, b) {
            (None, None) => 0.0,
            (None, Some(v)) => self.leg_out(path, v),
            (Some(u), None) => self.leg_in(path, u),
            (Some(u), Some(v)) => self.edge(u, v),
        }
    }

    /// Total cost of path number `path` visiting `nodes`. Empty paths cost 0.
    pub fn path_cost(&self, path: usize, nodes: &[usize]) -> f64 {
        let Some((&first, _)) = nodes.split_first() else { return 0.0 };
        let mut c = self.leg_out(path, first) + self.leg_in(path, *nodes.last().unwrap());
        for w in nodes.windows(2) {
            c += self.edge(w[0], w[1]);
        }
        c + nodes.iter().map(|&v| self.node_weight[v]).sum::<f64>()
    }

    /// Multiplies every weight by `k`.
    pub fn scaled(&self, k: f64) -> Self {
        let mut out = self.clone();
        out.node_weight.iter_mut().for_each(|w| *w *= k);
        out.edge.iter_mut().for_each(|w| *w *= k);
        out.depot_out.iter_mut().flatten().for_each(|w| *w *= k);
        out.depot_in.iter_mut().flatten().for_each(|w| *w *= k);
        out
    }

    pub(crate) fn depot_tables(&self) -> (&[Vec<f64>], &[Vec<f64>]) {
        (&self.depot_out, &self.depot_in)
    }
}
