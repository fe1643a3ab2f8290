use super::{bcd_decompose, ring_edges, Cell, Region};

/// A candidate initial rotation of the area and its decomposition cost.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationCandidate {
    /// Direction of the boundary segment (radians). The area is rotated by
    /// `-angle` before decomposition.
    pub angle: f64,
    /// Sum of cell heights, in meters.
    pub cost: f64,
}

/// Sum over cells of the vertical extent of each cell.
pub fn rotation_cost(cells: &[Cell]) -> f64 {
    cells
        .iter()
        .map(|c| {
            let (lo, hi) = c.y_extent();
            hi - lo
        })
        .sum()
}

/// Scores every outer-boundary segment direction and returns the `n_angles`
/// cheapest, sorted by cost (ties broken by the smaller angle).
pub fn select_best_rotations(region: &Region, n_angles: usize) -> Vec<RotationCandidate> {
    let mut cands: Vec<RotationCandidate> = ring_edges(region.outer())
        .map(|(a, b)| {
            let d = b - a;
            d.y.atan2(d.x)
        })
        .filter_map(|angle| {
            let cells = bcd_decompose(&region.rotated(-angle)).ok()?;
            Some(RotationCandidate { angle, cost: rotation_cost(&cells) })
        })
        .collect();
    cands.sort_by(|p, q| p.cost.total_cmp(&q.cost).then(p.angle.total_cmp(&q.angle)));
    cands.truncate(n_angles.max(1));
    cands
}
