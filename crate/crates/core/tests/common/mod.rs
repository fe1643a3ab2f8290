#![allow(dead_code)]

use std::path::{Path, PathBuf};

use coverage_planner::energy::UavModel;
use coverage_planner::geometry::{point_segment_distance, Point2D, Region};
use coverage_planner::io::Scenario;
use coverage_planner::planner::{plan, Plan, PlanConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn scenario_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios")
}

/// The six shipped scenarios, by name.
pub fn bundled() -> Vec<PathBuf> {
    coverage_planner::cli::suite_files(&scenario_dir()).unwrap()
}

pub fn budget_scenario() -> PathBuf {
    scenario_dir().join("budget").join("complex10_budget.json")
}

pub struct Planned {
    pub name: String,
    pub region: Region,
    pub model: UavModel,
    pub cfg: PlanConfig,
    pub plan: Plan,
}

pub fn plan_file(path: &Path) -> Planned {
    let sc = Scenario::load(path).unwrap();
    let region = sc.region().unwrap();
    let cfg = sc.plan_config(None);
    let plan = plan(&region, &sc.uav, &cfg).unwrap_or_else(|e| panic!("{}: {e}", sc.name));
    Planned { name: sc.name, region, model: sc.uav, cfg, plan }
}

pub fn reference_model() -> UavModel {
    UavModel { mass: 3.0, a_max: 2.0, v_r: 8.39, p_hover: 426.03, p_range: 465.23, d_max: 0.5 }
}

/// Buckets segments on a square grid so that "is any segment within `r`"
/// queries only look at nearby ones.
pub struct SegmentGrid {
    origin: Point2D,
    cell: f64,
    nx: usize,
    ny: usize,
    buckets: Vec<Vec<usize>>,
    segs: Vec<(Point2D, Point2D)>,
}

impl SegmentGrid {
    pub fn new(segs: Vec<(Point2D, Point2D)>, lo: Point2D, hi: Point2D, cell: f64) -> Self {
        let origin = Point2D::new(lo.x - cell, lo.y - cell);
        let nx = ((hi.x - origin.x) / cell).ceil() as usize + 2;
        let ny = ((hi.y - origin.y) / cell).ceil() as usize + 2;
        let mut buckets = vec![Vec::new(); nx * ny];
        for (i, &(a, b)) in segs.iter().enumerate() {
            let len = a.dist(b);
            let steps = (len / (0.5 * cell)).ceil().max(1.0) as usize;
            let mut last = usize::MAX;
            for k in 0..=steps {
                let p = a.lerp(b, k as f64 / steps as f64);
                let (cx, cy) = (((p.x - origin.x) / cell) as usize, ((p.y - origin.y) / cell) as usize);
                let id = cy * nx + cx;
                if id != last {
                    buckets[id].push(i);
                    last = id;
                }
            }
        }
        for b in &mut buckets {
            b.sort_unstable();
            b.dedup();
        }
        Self { origin, cell, nx, ny, buckets, segs }
    }

    /// Requires `r <= cell`.
    pub fn any_within(&self, p: Point2D, r: f64) -> bool {
        let cx = ((p.x - self.origin.x) / self.cell) as isize;
        let cy = ((p.y - self.origin.y) / self.cell) as isize;
        for dy in -1..=1 {
            for dx in -1..=1 {
                let (x, y) = (cx + dx, cy + dy);
                if x < 0 || y < 0 || x as usize >= self.nx || y as usize >= self.ny {
                    continue;
                }
                for &i in &self.buckets[y as usize * self.nx + x as usize] {
                    let (a, b) = self.segs[i];
                    if point_segment_distance(p, a, b) <= r {
                        return true;
                    }
                }
            }
        }
        false
    }
}

/// Fraction of free-space samples lying within `s/2` of one of `segs`.
pub fn coverage_fraction(region: &Region, segs: Vec<(Point2D, Point2D)>, s: f64, samples: usize, seed: u64) -> f64 {
    let (lo, hi) = region.bbox();
    let grid = SegmentGrid::new(segs, lo, hi, s);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut inside, mut covered) = (0usize, 0usize);
    while inside < samples {
        let p = Point2D::new(rng.gen_range(lo.x..hi.x), rng.gen_range(lo.y..hi.y));
        if !region.contains(p, 0.0) {
            continue;
        }
        inside += 1;
        if grid.any_within(p, 0.5 * s * (1.0 + 1e-9)) {
            covered += 1;
        }
    }
    covered as f64 / samples as f64
}

/// First sample point (every `step` m along the path) that is inside a
/// no-fly zone or outside the area.
pub fn first_violation(region: &Region, wps: &[Point2D], step: f64) -> Option<Point2D> {
    let tol = 1e-6;
    for w in wps.windows(2) {
        let n = (w[0].dist(w[1]) / step).ceil().max(1.0) as usize;
        for k in 0..=n {
            let p = w[0].lerp(w[1], k as f64 / n as f64);
            if region.in_hole_interior(p, tol) || !region.contains(p, tol) {
                return Some(p);
            }
        }
    }
    None
}
