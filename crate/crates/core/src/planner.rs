//! Energy-bounded multi-UAV coverage planning.
//!
//! For each of the most promising sweep rotations the region is decomposed,
//! split into enough cells to share between the paths, turned into a set-TSP
//! instance and solved. The rotation with the smallest maximum path energy
//! wins. While that energy exceeds the budget the number of paths grows and
//! everything is planned again.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::energy::{path_energy_fast, EnergyReport, UavModel};
use crate::geometry::{
    bcd_decompose, select_best_rotations, split_to_count, Cell, ConnectorRouter, Edge, GeometryError, Point2D,
    Region, EPS,
};
use crate::mstsp::{build_instance_with_router, grp_initial, tabu_search, Depot, MstspError, Solution, TabuParams};
use crate::sweep::{generate_patterns, SweepPattern};

#[derive(Debug, thiserror::Error)]
pub enum PlanError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Solver(#[from] MstspError),
    #[error(
        "energy budget {:.1} Wh not met with up to {cap} paths (max_paths cap); best plan uses {} paths with E_max {:.1} Wh",
        .e_bound / 3600.0, .best.n_paths, .best.e_max / 3600.0
    )]
    BudgetExceeded { cap: usize, e_bound: f64, best: Box<Plan> },
}

#[derive(Debug, Clone)]
pub struct PlanConfig {
    pub n_uav: usize,
    /// Per-path energy budget in J; `f64::INFINITY` disables it.
    pub e_bound: f64,
    /// Minimum number of cells per path.
    pub n_min: usize,
    /// Rotation candidates tried per iteration.
    pub n_angles: usize,
    /// Sweep edges tried per cell.
    pub n_e: usize,
    /// Distance between sweep lines, m.
    pub sweep_step: f64,
    pub tabu: TabuParams,
    pub rcl_k: usize,
    pub seed: u64,
    /// Upper bound on the number of paths before giving up.
    pub max_paths: usize,
    /// Distance kept from no-fly-zone corners on transfers, m.
    pub clearance: f64,
    /// Home position of each UAV. Empty means all start at the first vertex
    /// of the outer ring.
    pub uav_starts: Vec<Point2D>,
}

impl Default for PlanConfig {
    fn default() -> Self {
        Self {
            n_uav: 1,
            e_bound: f64::INFINITY,
            n_min: 4,
            n_angles: 7,
            n_e: 4,
            sweep_step: 10.0,
            tabu: TabuParams::default(),
            rcl_k: crate::mstsp::DEFAULT_RCL_SIZE,
            seed: 0,
            max_paths: 64,
            clearance: 0.0,
            uav_starts: Vec::new(),
        }
    }
}

impl PlanConfig {
    pub fn validate(&self) -> Result<(), PlanError> {
        let bad = |m: &str| Err(PlanError::InvalidConfig(m.into()));
        if self.n_uav == 0 || self.n_min == 0 || self.n_angles == 0 || self.n_e == 0 {
            return bad("n_uav, n_min, n_angles and n_e must be at least 1");
        }
        if !(self.sweep_step.is_finite() && self.sweep_step > 0.0) {
            return bad("sweep_step must be finite and > 0");
        }
        if self.e_bound.is_nan() || self.e_bound <= 0.0 {
            return bad("e_bound must be > 0 or infinite");
        }
        if self.max_paths < self.n_uav {
            return bad("max_paths must be at least n_uav");
        }
        if !(self.clearance.is_finite() && self.clearance >= 0.0) {
            return bad("clearance must be finite and >= 0");
        }
        if !self.uav_starts.is_empty() && self.uav_starts.len() != self.n_uav {
            return bad("uav_starts must list one position per UAV");
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct PlannedPath {
    /// UAV flying this path. Paths beyond the fleet size reuse UAVs.
    pub uav: usize,
    pub waypoints: Vec<Point2D>,
    pub energy: EnergyReport,
    /// Indices into [`Plan::patterns`], in flight order.
    pub patterns: Vec<usize>,
}

/// One outer iteration: the path count tried and the best result for it.
#[derive(Debug, Clone)]
pub struct IterationRecord {
    pub n_paths: usize,
    pub angle: f64,
    pub e_max: f64,
    pub e_tot: f64,
    /// `(angle, e_max)` of every rotation evaluated in this iteration.
    pub candidates: Vec<(f64, f64)>,
}

#[derive(Debug, Clone)]
pub struct Plan {
    pub paths: Vec<PlannedPath>,
    pub e_max: f64,
    pub e_tot: f64,
    pub n_paths: usize,
    /// Rotation of the sweep frame, rad.
    pub angle: f64,
    /// Cells of the chosen decomposition, world frame.
    pub cells: Vec<Cell>,
    /// The pattern chosen for each cell, world frame, in cell order.
    pub patterns: Vec<SweepPattern>,
    pub trace: Vec<IterationRecord>,
}

impl Plan {
    pub fn total_length(&self) -> f64 {
        self.paths.iter().map(|p| p.energy.distance).sum()
    }

    /// All coverage chords of the plan.
    pub fn chords(&self) -> impl Iterator<Item = (Point2D, Point2D)> + '_ {
        self.patterns.iter().flat_map(|p| p.chords.iter().copied())
    }
}

fn depots(region: &Region, cfg: &PlanConfig) -> Result<Vec<Depot>, PlanError> {
    if cfg.uav_starts.is_empty() {
        return Ok(vec![Depot::home(region.outer()[0]); cfg.n_uav]);
    }
    let (lo, hi) = region.bbox();
    let scale = [lo.x, lo.y, hi.x, hi.y].iter().fold(1.0_f64, |m, v| m.max(v.abs()));
    for (i, &p) in cfg.uav_starts.iter().enumerate() {
        if !region.contains(p, 1e-9 * scale) {
            return Err(PlanError::InvalidConfig(format!("start of UAV {i} lies outside the free space")));
        }
    }
    Ok(cfg.uav_starts.iter().map(|&p| Depot::home(p)).collect())
}

/// Plans coverage of `region` for the fleet described by `cfg`.
pub fn plan(region: &Region, model: &UavModel, cfg: &PlanConfig) -> Result<Plan, PlanError> {
    cfg.validate()?;
    model.validate().map_err(|e| PlanError::InvalidConfig(e.to_string()))?;
    let depots = depots(region, cfg)?;
    let router = ConnectorRouter::new(region, cfg.clearance);
    let rotations = select_best_rotations(region, cfg.n_angles);
    if rotations.is_empty() {
        return Err(PlanError::Geometry(GeometryError::DegenerateRegion));
    }

    let mut n_paths = cfg.n_uav;
    let mut trace = Vec::new();
    loop {
        let results: Vec<Result<Plan, PlanError>> = rotations
            .par_iter()
            .enumerate()
            .map(|(i, rot)| {
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
                rng.set_stream(((n_paths as u64) << 32) | i as u64);
                evaluate_rotation(region, &router, model, cfg, &depots, rot.angle, n_paths, &mut rng)
            })
            .collect();
        let mut best: Option<Plan> = None;
        let mut candidates = Vec::with_capacity(results.len());
        let mut first_err = None;
        for r in results {
            match r {
                Ok(p) => {
                    candidates.push((p.angle, p.e_max));
                    if best.as_ref().is_none_or(|b| p.e_max < b.e_max) {
                        best = Some(p);
                    }
                }
                Err(e) => {
                    first_err.get_or_insert(e);
                }
            }
        }
        let Some(mut best) = best else {
            return Err(first_err.expect("at least one rotation"));
        };
        trace.push(IterationRecord { n_paths, angle: best.angle, e_max: best.e_max, e_tot: best.e_tot, candidates });
        best.trace = trace.clone();
        if best.e_max <= cfg.e_bound {
            return Ok(best);
        }
        let next = next_path_count(best.e_tot, cfg.e_bound, n_paths);
        if next > cfg.max_paths {
            return Err(PlanError::BudgetExceeded { cap: cfg.max_paths, e_bound: cfg.e_bound, best: Box::new(best) });
        }
        n_paths = next;
    }
}

/// Path count for the next attempt after a plan over budget.
pub fn next_path_count(e_tot: f64, e_bound: f64, n_paths: usize) -> usize {
    let by_energy = (e_tot / e_bound).ceil();
    let by_energy = if by_energy.is_finite() && by_energy > 0.0 { by_energy as usize } else { 0 };
    by_energy.max(n_paths + 1)
}

fn rotate_pattern(p: &mut SweepPattern, angle: f64) {
    let r = |q: Point2D| q.rotated(angle);
    p.waypoints.iter_mut().for_each(|q| *q = r(*q));
    p.start = r(p.start);
    p.end = r(p.end);
    p.chords.iter_mut().for_each(|c| *c = (r(c.0), r(c.1)));
    p.sweep_edge = Edge { a: r(p.sweep_edge.a), b: r(p.sweep_edge.b), ..p.sweep_edge };
}

#[allow(clippy::too_many_arguments)]
fn evaluate_rotation(
    region: &Region,
    router: &ConnectorRouter,
    model: &UavModel,
    cfg: &PlanConfig,
    depots: &[Depot],
    angle: f64,
    n_paths: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Plan, PlanError> {
    let cells = bcd_decompose(&region.rotated(-angle))?;
    let cells = split_to_count(cells, cfg.n_min * n_paths);
    let mut patterns: Vec<SweepPattern> = cells
        .iter()
        .enumerate()
        .flat_map(|(i, c)| generate_patterns(c, i, model, cfg.sweep_step, cfg.n_e))
        .collect();
    patterns.iter_mut().for_each(|p| rotate_pattern(p, angle));
    let inst = build_instance_with_router(&patterns, router, model, depots)?;
    let init = grp_initial(&inst, n_paths, cfg.rcl_k, rng)?;
    let sol = tabu_search(&inst, &init, &cfg.tabu, rng);
    sol.validate(&inst)?;

    let routes = recover_paths_with_router(&sol, &patterns, router, depots)?;
    let mut chosen = Vec::with_capacity(cells.len());
    let mut paths = Vec::with_capacity(n_paths);
    for (k, (nodes, wps)) in sol.paths.iter().zip(routes).enumerate() {
        let ids = nodes
            .iter()
            .map(|&v| {
                chosen.push(patterns[v].clone());
                chosen.len() - 1
            })
            .collect();
        let energy = path_energy_fast(&wps, model);
        paths.push(PlannedPath { uav: inst.depot_of_path(k), waypoints: wps, energy, patterns: ids });
    }
    // report patterns in cell order; remap path references accordingly
    let mut order: Vec<usize> = (0..chosen.len()).collect();
    order.sort_by_key(|&i| chosen[i].cell_id);
    let mut rank = vec![0; chosen.len()];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = r;
    }
    paths.iter_mut().for_each(|p| p.patterns.iter_mut().for_each(|i| *i = rank[*i]));
    let patterns: Vec<SweepPattern> = order.into_iter().map(|i| chosen[i].clone()).collect();

    let e_max = paths.iter().map(|p| p.energy.energy).fold(0.0, f64::max);
    let e_tot = paths.iter().map(|p| p.energy.energy).sum();
    let cells = cells
        .into_iter()
        .map(|c| Cell { boundary: c.boundary.iter().map(|p| p.rotated(angle)).collect(), source_rotation: angle })
        .collect();
    Ok(Plan { paths, e_max, e_tot, n_paths, angle, cells, patterns, trace: Vec::new() })
}

/// Turns a solution into flyable polylines: depot leg, patterns joined by
/// obstacle-free transfers, return leg. Empty paths stay empty.
pub fn recover_paths(
    sol: &Solution,
    patterns: &[SweepPattern],
    region: &Region,
    depots: &[Depot],
) -> Result<Vec<Vec<Point2D>>, GeometryError> {
    recover_paths_with_router(sol, patterns, &ConnectorRouter::new(region, 0.0), depots)
}

pub fn recover_paths_with_router(
    sol: &Solution,
    patterns: &[SweepPattern],
    router: &ConnectorRouter,
    depots: &[Depot],
) -> Result<Vec<Vec<Point2D>>, GeometryError> {
    sol.paths
        .iter()
        .enumerate()
        .map(|(k, nodes)| {
            if nodes.is_empty() {
                return Ok(Vec::new());
            }
            let depot = depots[k % depots.len()];
            let mut wps = vec![depot.init];
            for &v in nodes {
                let p = &patterns[v];
                let leg = router.route(*wps.last().unwrap(), p.start)?;
                wps.extend_from_slice(&leg[1..]);
                wps.extend_from_slice(&p.waypoints);
            }
            let leg = router.route(*wps.last().unwrap(), depot.end)?;
            wps.extend_from_slice(&leg[1..]);
            wps.dedup_by(|p, q| p.dist(*q) <= EPS);
            Ok(wps)
        })
        .collect()
}
