use super::{segment_energy, turn_properties, EnergyReport, UavModel};
use crate::geometry::Point2D;

/// Result of the linear-time estimator, with the speed assumed when
/// leaving each waypoint.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FastProfile {
    pub report: EnergyReport,
    /// One entry per deduplicated waypoint.
    pub waypoint_speeds: Vec<f64>,
    pub waypoints: Vec<Point2D>,
}

/// Rest-to-rest energy of flying through `waypoints`.
pub fn path_energy_fast(waypoints: &[Point2D], model: &UavModel) -> EnergyReport {
    fast_profile(waypoints, model, 0.0, 0.0).report
}

/// Like [`path_energy_fast`] with explicit speeds at the first and last waypoint.
pub fn path_energy_fast_between(waypoints: &[Point2D], model: &UavModel, v_start: f64, v_end: f64) -> EnergyReport {
    fast_profile(waypoints, model, v_start, v_end).report
}

pub(crate) fn dedup_points(waypoints: &[Point2D]) -> Vec<Point2D> {
    let mut pts: Vec<Point2D> = Vec::with_capacity(waypoints.len());
    for &p in waypoints {
        if pts.last().is_none_or(|q: &Point2D| q.dist(p) > 1e-9) {
            pts.push(p);
        }
    }
    pts
}

/// Heading change at `b` between `a -> b` and `b -> c`, in `[0, pi]`.
pub(crate) fn turning_angle(a: Point2D, b: Point2D, c: Point2D) -> f64 {
    let u = b - a;
    let w = c - b;
    u.cross(w).abs().atan2(u.dot(w))
}

/// Each turn is evaluated on its own; a segment starts at the previous
/// turn's middle speed and brakes to the next turn's entry speed. Speeds
/// that a short segment cannot honour are clipped locally, in one forward
/// sweep.
pub fn fast_profile(waypoints: &[Point2D], model: &UavModel, v_start: f64, v_end: f64) -> FastProfile {
    let pts = dedup_points(waypoints);
    let n = pts.len();
    if n < 2 {
        return FastProfile { report: EnergyReport::default(), waypoint_speeds: vec![0.0; n], waypoints: pts };
    }
    let v_start = v_start.clamp(0.0, model.v_r);
    let v_end = v_end.clamp(0.0, model.v_r);
    let turns: Vec<_> = (1..n - 1)
        .map(|i| turn_properties(turning_angle(pts[i - 1], pts[i], pts[i + 1]), model).expect("finite waypoints"))
        .collect();
    let a2 = 2.0 * model.a_max;

    let mut report = EnergyReport::default();
    let mut speeds = Vec::with_capacity(n);
    let mut arrival = v_start;
    for i in 0..n - 1 {
        let len = pts[i].dist(pts[i + 1]);
        let mut entry = if i == 0 { v_start } else { turns[i - 1].v_ym.min(arrival) };
        let target = if i + 2 == n { v_end } else { turns[i].v_in };
        entry = entry.min((target * target + a2 * len).sqrt());
        let exit = target.min((entry * entry + a2 * len).sqrt());
        speeds.push(entry);
        report += segment_energy(len, entry, exit, model).expect("speeds clipped to feasible range");
        arrival = exit;
    }
    speeds.push(arrival);
    FastProfile { report, waypoint_speeds: speeds, waypoints: pts }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::energy::reference_model;

    fn p(x: f64, y: f64) -> Point2D {
        Point2D::new(x, y)
    }

    #[test]
    fn straight_rest_to_rest() {
        // t_acc = 8.39/2 = 4.195 s over 17.598 m each side; cruise 803.804 m.
        let m = reference_model(3.5);
        let r = path_energy_fast(&[p(0.0, 0.0), p(839.0, 0.0)], &m);
        let t_acc = 4.195;
        let d_acc = 8.39 * 8.39 / 4.0;
        let t_cruise = (839.0 - 2.0 * d_acc) / 8.39;
        let e = m.kinetic(8.39) + m.p_hover * 2.0 * t_acc + m.p_range * t_cruise;
        assert!((r.duration - (2.0 * t_acc + t_cruise)).abs() / r.duration < 1e-3);
        assert!((r.duration - 104.2).abs() < 0.1);
        assert!((r.energy - e).abs() / e < 1e-3);
        assert_eq!(r.distance, 839.0);
    }

    #[test]
    fn empty_and_single() {
        let m = reference_model(3.5);
        assert_eq!(path_energy_fast(&[], &m), EnergyReport::default());
        assert_eq!(path_energy_fast(&[p(1.0, 1.0)], &m), EnergyReport::default());
        assert_eq!(path_energy_fast(&[p(1.0, 1.0), p(1.0, 1.0)], &m), EnergyReport::default());
    }

    #[test]
    fn cruise_boundaries() {
        let m = reference_model(3.5);
        let r = path_energy_fast_between(&[p(0.0, 0.0), p(839.0, 0.0)], &m, m.v_r, m.v_r);
        assert!((r.energy - 46523.0).abs() < 1e-6);
    }

    #[test]
    fn hover_floor_on_turning_path() {
        let m = reference_model(3.5);
        let path = [p(0.0, 0.0), p(100.0, 0.0), p(100.0, 10.0), p(0.0, 10.0), p(0.0, 20.0), p(3.0, 20.5)];
        let r = path_energy_fast(&path, &m);
        assert!(r.energy >= r.distance / m.v_r * m.p_hover);
    }

    #[test]
    fn turning_angles() {
        assert!((turning_angle(p(0.0, 0.0), p(1.0, 0.0), p(2.0, 0.0))).abs() < 1e-12);
        assert!((turning_angle(p(0.0, 0.0), p(1.0, 0.0), p(1.0, 1.0)) - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
        assert!((turning_angle(p(0.0, 0.0), p(1.0, 0.0), p(0.0, 0.0)) - std::f64::consts::PI).abs() < 1e-12);
    }
}
