//! Greedy randomized construction.

use rand::seq::SliceRandom;
use rand::Rng;

use super::state::State;
use super::{CostTuple, MstspError, MstspInstance, Solution};

pub const DEFAULT_RCL_SIZE: usize = 3;

#[derive(Debug, Clone, Copy)]
struct Insertion {
    tuple: CostTuple,
    node: usize,
    path: usize,
    pos: usize,
}

/// Builds a solution by repeated cheapest insertion. At every step each
/// unvisited set proposes its best (node, path, position) insertion; one of
/// the `rcl_k` best proposals is drawn uniformly and applied.
pub fn grp_initial<R: Rng>(
    inst: &MstspInstance,
    n_paths: usize,
    rcl_k: usize,
    rng: &mut R,
) -> Result<Solution, MstspError> {
    if n_paths == 0 {
        return Err(MstspError::InvalidInstance("at least one path is required".into()));
    }
    let rcl_k = rcl_k.max(1);
    let mut state = State::new(inst, &Solution::empty(n_paths));
    let mut open: Vec<usize> = (0..inst.sets().len()).collect();
    while !open.is_empty() {
        let mut props: Vec<(Insertion, usize)> = open
            .iter()
            .enumerate()
            .map(|(slot, &s)| (best_insertion(inst, &state, &inst.sets()[s]), slot))
            .collect();
        props.sort_by(|a, b| a.0.tuple.cmp(&b.0.tuple).then(a.0.node.cmp(&b.0.node)));
        props.truncate(rcl_k);
        let &(ins, slot) = props.choose(rng).expect("open sets remain");
        state.insert(inst, ins.path, ins.pos, ins.node);
        open.swap_remove(slot);
        open.sort_unstable();
    }
    Ok(state.solution())
}

fn best_insertion(inst: &MstspInstance, state: &State, nodes: &[usize]) -> Insertion {
    let mut best: Option<Insertion> = None;
    for &v in nodes {
        for path in 0..state.paths.len() {
            for pos in 0..=state.paths[path].len() {
                let d = state.insertion_delta(inst, path, pos, v);
                let tuple = state.tuple_with(&[(path, state.costs[path] + d)]);
                if best.is_none_or(|b| tuple < b.tuple) {
                    best = Some(Insertion { tuple, node: v, path, pos });
                }
            }
        }
    }
    best.expect("sets are non-empty")
}
