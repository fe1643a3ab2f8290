//! Reference estimator built on an explicit timed trajectory.
//!
//! A natural cubic spline (chord-length parameterized) is fitted through the
//! waypoints. A speed profile along its arc length is then obtained with a
//! forward and a backward pass that respect the cruise speed, the
//! tangential acceleration limit and the centripetal limit
//! `v <= sqrt(a_max / curvature)`. The trajectory is finally resampled at a
//! fixed time step and the energy accumulated sample by sample.

use super::fast::dedup_points;
use super::{EnergyReport, UavModel};
use crate::geometry::Point2D;

pub const DEFAULT_SAMPLE_DT: f64 = 0.05;

/// Spatial resolution of the arc-length grid, meters.
const GRID_DS: f64 = 0.05;

/// One sample of the timed trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectorySample {
    pub t: f64,
    pub pos: Point2D,
    pub speed: f64,
}

struct Spline1d {
    t: Vec<f64>,
    y: Vec<f64>,
    m: Vec<f64>,
}

impl Spline1d {
    fn natural(t: &[f64], y: &[f64]) -> Self {
        let n = t.len();
        let mut m = vec![0.0; n];
        if n > 2 {
            // Thomas algorithm on the interior second derivatives.
            let k = n - 2;
            let mut diag = vec![0.0; k];
            let mut upper = vec![0.0; k];
            let mut rhs = vec![0.0; k];
            for j in 0..k {
                let i = j + 1;
                let h0 = t[i] - t[i - 1];
                let h1 = t[i + 1] - t[i];
                diag[j] = 2.0 * (h0 + h1);
                upper[j] = h1;
                rhs[j] = 6.0 * ((y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0);
            }
            for j in 1..k {
                let lower = t[j + 1] - t[j];
                let w = lower / diag[j - 1];
                diag[j] -= w * upper[j - 1];
                rhs[j] -= w * rhs[j - 1];
            }
            m[k] = rhs[k - 1] / diag[k - 1];
            for j in (0..k - 1).rev() {
                m[j + 1] = (rhs[j] - upper[j] * m[j + 2]) / diag[j];
            }
        }
        Self { t: t.to_vec(), y: y.to_vec(), m }
    }

    /// Value, first and second derivative on interval `i` at local offset `u`.
    fn eval(&self, i: usize, u: f64) -> (f64, f64, f64) {
        let h = self.t[i + 1] - self.t[i];
        let (m0, m1) = (self.m[i], self.m[i + 1]);
        let b = (self.y[i + 1] - self.y[i]) / h - h * (2.0 * m0 + m1) / 6.0;
        let c = 0.5 * m0;
        let d = (m1 - m0) / (6.0 * h);
        (self.y[i] + u * (b + u * (c + u * d)), b + u * (2.0 * c + 3.0 * u * d), 2.0 * c + 6.0 * u * d)
    }
}

struct ArcGrid {
    pos: Vec<Point2D>,
    ds: Vec<f64>,
    v_lim: Vec<f64>,
}

fn arc_grid(pts: &[Point2D], model: &UavModel) -> ArcGrid {
    let mut t = vec![0.0];
    for w in pts.windows(2) {
        t.push(t.last().unwrap() + w[0].dist(w[1]));
    }
    let xs: Vec<f64> = pts.iter().map(|p| p.x).collect();
    let ys: Vec<f64> = pts.iter().map(|p| p.y).collect();
    let sx = Spline1d::natural(&t, &xs);
    let sy = Spline1d::natural(&t, &ys);

    let mut pos = Vec::new();
    let mut v_lim = Vec::new();
    let mut push = |i: usize, u: f64| {
        let (x, dx, ddx) = sx.eval(i, u);
        let (y, dy, ddy) = sy.eval(i, u);
        let speed2 = dx * dx + dy * dy;
        let kappa = if speed2 > 0.0 { (dx * ddy - dy * ddx).abs() / speed2.powf(1.5) } else { f64::INFINITY };
        pos.push(Point2D::new(x, y));
        v_lim.push(if kappa > 0.0 { (model.a_max / kappa).sqrt().min(model.v_r) } else { model.v_r });
    };
    for i in 0..pts.len() - 1 {
        let h = t[i + 1] - t[i];
        let steps = (h / GRID_DS).ceil().max(1.0) as usize;
        for k in 0..steps {
            push(i, h * k as f64 / steps as f64);
        }
    }
    push(pts.len() - 2, t[pts.len() - 1] - t[pts.len() - 2]);
    let ds = pos.windows(2).map(|w| w[0].dist(w[1])).collect();
    ArcGrid { pos, ds, v_lim }
}

/// Timed rest-to-rest trajectory through `waypoints`, sampled every `sample_dt` seconds.
/// The last sample lands exactly on the end of the trajectory.
pub fn trajectory_profile(waypoints: &[Point2D], model: &UavModel, sample_dt: f64) -> Vec<TrajectorySample> {
    let pts = dedup_points(waypoints);
    if pts.len() < 2 {
        return pts.into_iter().map(|pos| TrajectorySample { t: 0.0, pos, speed: 0.0 }).collect();
    }
    let grid = arc_grid(&pts, model);
    let n = grid.pos.len();
    let a2 = 2.0 * model.a_max;

    let mut v = grid.v_lim.clone();
    v[0] = 0.0;
    v[n - 1] = 0.0;
    for i in 0..n - 1 {
        v[i + 1] = v[i + 1].min((v[i] * v[i] + a2 * grid.ds[i]).sqrt());
    }
    for i in (0..n - 1).rev() {
        v[i] = v[i].min((v[i + 1] * v[i + 1] + a2 * grid.ds[i]).sqrt());
    }

    // cumulative time along the grid (constant acceleration per cell)
    let mut times = vec![0.0; n];
    for i in 0..n - 1 {
        let vs = v[i] + v[i + 1];
        let dt = if vs > 0.0 { 2.0 * grid.ds[i] / vs } else { 0.0 };
        times[i + 1] = times[i] + dt;
    }
    let total = times[n - 1];
    let dt = sample_dt.max(1e-6);
    let mut out = Vec::with_capacity((total / dt) as usize + 2);
    let mut cell = 0;
    let mut k = 0usize;
    loop {
        let t = (k as f64 * dt).min(total);
        while cell + 1 < n - 1 && times[cell + 1] <= t {
            cell += 1;
        }
        let span = times[cell + 1] - times[cell];
        let f = if span > 0.0 { ((t - times[cell]) / span).clamp(0.0, 1.0) } else { 1.0 };
        let speed = v[cell] + (v[cell + 1] - v[cell]) * f;
        // distance covered inside the cell under constant acceleration
        let frac_s = if span > 0.0 { (v[cell] * f + 0.5 * (v[cell + 1] - v[cell]) * f * f) * span / grid.ds[cell].max(f64::MIN_POSITIVE) } else { 1.0 };
        let pos = grid.pos[cell].lerp(grid.pos[cell + 1], frac_s.clamp(0.0, 1.0));
        out.push(TrajectorySample { t, pos, speed });
        if t >= total {
            break;
        }
        k += 1;
    }
    out
}

/// Energy of the sampled trajectory: positive kinetic energy increments plus
/// power times time at each sample's speed.
pub fn path_energy_oracle(waypoints: &[Point2D], model: &UavModel, sample_dt: f64) -> EnergyReport {
    let samples = trajectory_profile(waypoints, model, sample_dt);
    if samples.len() < 2 {
        return EnergyReport::default();
    }
    let mut energy = 0.0;
    let mut distance = 0.0;
    for w in samples.windows(2) {
        let (a, b) = (w[0], w[1]);
        energy += (model.kinetic(b.speed) - model.kinetic(a.speed)).max(0.0) + model.power(a.speed) * (b.t - a.t);
        distance += a.pos.dist(b.pos);
    }
    EnergyReport { energy, duration: samples.last().unwrap().t, distance }
}
