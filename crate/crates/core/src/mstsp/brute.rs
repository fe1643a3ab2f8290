//! Exhaustive reference solver for tiny instances.

use super::{CostTuple, MstspError, MstspInstance, Solution};

pub const BRUTE_FORCE_LIMIT: f64 = 1e7;

/// Number of distinct solutions: set orders x node choices x splits of the
/// ordered sequence into `n_paths` (possibly empty) paths.
pub fn solution_space_size(inst: &MstspInstance, n_paths: usize) -> f64 {
    let m = inst.sets().len();
    let orders: f64 = (1..=m).map(|k| k as f64).product();
    let choices: f64 = inst.sets().iter().map(|s| s.len() as f64).product();
    // C(m + n_paths - 1, n_paths - 1)
    let mut splits = 1.0;
    for i in 1..n_paths {
        splits = splits * (m + i) as f64 / i as f64;
    }
    orders * choices * splits
}

/// Enumerates every solution and returns the first one with the lowest cost
/// tuple.
pub fn brute_force_solve(inst: &MstspInstance, n_paths: usize) -> Result<(Solution, CostTuple), MstspError> {
    if n_paths == 0 {
        return Err(MstspError::InvalidInstance("at least one path is required".into()));
    }
    let size = solution_space_size(inst, n_paths);
    if size > BRUTE_FORCE_LIMIT {
        return Err(MstspError::SpaceTooLarge { size, limit: BRUTE_FORCE_LIMIT });
    }
    let sets = inst.sets();
    let m = sets.len();
    let mut best: Option<(Solution, CostTuple)> = None;
    let mut order: Vec<usize> = (0..m).collect();
    let mut seq = vec![0; m];
    let mut costs = vec![0.0; n_paths];
    permutations(&mut order, 0, &mut |order| {
        let mut pick = vec![0usize; m];
        loop {
            for (k, &s) in order.iter().enumerate() {
                seq[k] = sets[s][pick[s]];
            }
            let mut cuts = vec![0usize; n_paths.saturating_sub(1)];
            loop {
                let mut lo = 0;
                for p in 0..n_paths {
                    let hi = if p + 1 < n_paths { cuts[p] } else { m };
                    costs[p] = inst.path_cost(p, &seq[lo..hi]);
                    lo = hi;
                }
                let t = CostTuple::from_path_costs(&costs);
                if best.as_ref().is_none_or(|b| t < b.1) {
                    let mut paths = Vec::with_capacity(n_paths);
                    let mut lo = 0;
                    for p in 0..n_paths {
                        let hi = if p + 1 < n_paths { cuts[p] } else { m };
                        paths.push(seq[lo..hi].to_vec());
                        lo = hi;
                    }
                    best = Some((Solution { paths }, t));
                }
                if !next_cuts(&mut cuts, m) {
                    break;
                }
            }
            if !next_pick(&mut pick, sets) {
                break;
            }
        }
    });
    Ok(best.expect("at least one solution"))
}

/// Advances non-decreasing cut positions in `0..=m`.
fn next_cuts(cuts: &mut [usize], m: usize) -> bool {
    for i in (0..cuts.len()).rev() {
        if cuts[i] < m {
            cuts[i] += 1;
            for j in i + 1..cuts.len() {
                cuts[j] = cuts[i];
            }
            return true;
        }
    }
    false
}

fn next_pick(pick: &mut [usize], sets: &[Vec<usize>]) -> bool {
    for (i, p) in pick.iter_mut().enumerate() {
        *p += 1;
        if *p < sets[i].len() {
            return true;
        }
        *p = 0;
    }
    false
}

fn permutations(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, f);
        v.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point2D;
    use crate::mstsp::{solution_cost, Depot};

    fn two_by_two() -> MstspInstance {
        // sets {0,1} and {2,3}; node 1 and 3 are cheap, the 1 -> 3 edge is cheap
        let n = 4;
        let mut edge = vec![10.0; n * n];
        edge[n + 3] = 1.0;
        edge[3 * n + 1] = 5.0;
        MstspInstance::new(
            vec![vec![0, 1], vec![2, 3]],
            vec![4.0, 2.0, 4.0, 2.0],
            edge,
            vec![Depot::home(Point2D::default())],
            vec![vec![3.0; n]],
            vec![vec![3.0; n]],
        )
        .unwrap()
    }

    #[test]
    fn hand_checked_optimum() {
        let inst = two_by_two();
        let (sol, c) = brute_force_solve(&inst, 1).unwrap();
        // 3 + 2 + 1 + 2 + 3
        assert_eq!(sol.paths, vec![vec![1, 3]]);
        assert_eq!(c.max_path_cost, 11.0);
        // with two vehicles each takes one set: 3 + 2 + 3 = 8 on both
        let (sol2, c2) = brute_force_solve(&inst, 2).unwrap();
        assert_eq!((c2.max_path_cost, c2.average_path_cost), (8.0, 8.0));
        assert_eq!(solution_cost(&sol2, &inst).unwrap(), c2);
    }

    #[test]
    fn space_size_counts() {
        let inst = two_by_two();
        // 2! * 4 * C(2,0) = 8; with 2 paths C(3,1) = 3
        assert_eq!(solution_space_size(&inst, 1), 8.0);
        assert_eq!(solution_space_size(&inst, 2), 24.0);
    }

    #[test]
    fn enumeration_visits_whole_space() {
        let mut cuts = vec![0, 0];
        let mut count = 1;
        while next_cuts(&mut cuts, 3) {
            count += 1;
        }
        // C(5, 2)
        assert_eq!(count, 10);
    }

    #[test]
    fn guard_rejects_large_instances() {
        let n_sets = 9;
        let n = n_sets * 4;
        let inst = MstspInstance::new(
            (0..n_sets).map(|s| (s * 4..s * 4 + 4).collect()).collect(),
            vec![1.0; n],
            vec![1.0; n * n],
            vec![Depot::home(Point2D::default())],
            vec![vec![1.0; n]],
            vec![vec![1.0; n]],
        )
        .unwrap();
        assert!(matches!(brute_force_solve(&inst, 1), Err(MstspError::SpaceTooLarge { .. })));
    }
}
