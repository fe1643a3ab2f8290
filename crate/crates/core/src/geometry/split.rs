use super::{clean_ring, clip_vertical, signed_area, Cell, EPS};

/// Splits the largest cell with an area-bisecting vertical line until there
/// are at least `target` cells.
pub fn split_to_count(mut cells: Vec<Cell>, target: usize) -> Vec<Cell> {
    while cells.len() < target && !cells.is_empty() {
        let (idx, _) = cells
            .iter()
            .enumerate()
            .max_by(|(i, a), (j, b)| a.area().total_cmp(&b.area()).then(j.cmp(i)))
            .unwrap();
        let Some((left, right)) = bisect(&cells[idx]) else { break };
        cells[idx] = left;
        cells.insert(idx + 1, right);
    }
    cells
}

fn bisect(cell: &Cell) -> Option<(Cell, Cell)> {
    let (x0, x1) = cell.x_extent();
    if !(x1 - x0 > EPS) {
        return None;
    }
    let half = 0.5 * cell.area();
    let left_area = |c: f64| signed_area(&clip_vertical(&cell.boundary, c, false)).abs();
    let (mut lo, mut hi) = (x0, x1);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if left_area(mid) < half {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= EPS * x0.abs().max(x1.abs()).max(1.0) * 1e-3 {
            break;
        }
    }
    let c = 0.5 * (lo + hi);
    let tol = EPS * x0.abs().max(x1.abs()).max(1.0);
    let l = clean_ring(&clip_vertical(&cell.boundary, c, false), tol);
    let r = clean_ring(&clip_vertical(&cell.boundary, c, true), tol);
    if l.len() < 3 || r.len() < 3 {
        return None;
    }
    let mk = |boundary| Cell { boundary, source_rotation: cell.source_rotation };
    Some((mk(l), mk(r)))
}
