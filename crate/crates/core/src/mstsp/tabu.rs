//! Tabu search over set-TSP solutions.

use std::collections::hash_map::DefaultHasher;
use std::collections::VecDeque;
use std::hash::{Hash, Hasher};

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::state::State;
use super::{MstspInstance, Solution};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TabuParams {
    /// Consecutive non-improving iterations before stopping.
    pub i_max: usize,
    /// Number of recent solutions kept tabu.
    pub tabu_len: usize,
    /// Neighbors generated per iteration.
    pub neighborhood_size: usize,
}

impl Default for TabuParams {
    fn default() -> Self {
        Self { i_max: 2000, tabu_len: 100, neighborhood_size: 30 }
    }
}

fn solution_hash(paths: &[Vec<usize>]) -> u64 {
    let mut h = DefaultHasher::new();
    paths.hash(&mut h);
    h.finish()
}

/// Improves `init` and returns the best solution seen. `init` must be valid.
pub fn tabu_search<R: Rng>(inst: &MstspInstance, init: &Solution, params: &TabuParams, rng: &mut R) -> Solution {
    debug_assert!(init.validate(inst).is_ok());
    let mut current = State::new(inst, init);
    if current.node_count() == 0 {
        return init.clone();
    }
    let mut best = current.clone();
    let mut best_tuple = best.tuple();
    let mut tabu: VecDeque<u64> = VecDeque::with_capacity(params.tabu_len + 1);
    let remember = |tabu: &mut VecDeque<u64>, h: u64| {
        if params.tabu_len == 0 {
            return;
        }
        tabu.push_back(h);
        if tabu.len() > params.tabu_len {
            tabu.pop_front();
        }
    };
    remember(&mut tabu, solution_hash(&current.paths));

    let mut stale = 0;
    while stale < params.i_max {
        let mut chosen: Option<(State, u64)> = None;
        for _ in 0..params.neighborhood_size.max(1) {
            let n = neighbor(inst, &current, rng);
            let h = solution_hash(&n.paths);
            if tabu.contains(&h) {
                continue;
            }
            if chosen.as_ref().is_none_or(|(c, _)| n.tuple() < c.tuple()) {
                chosen = Some((n, h));
            }
        }
        let Some((next, h)) = chosen else {
            stale += 1;
            continue;
        };
        remember(&mut tabu, h);
        current = next;
        // drift from incremental updates stays out of the comparison
        for k in 0..current.paths.len() {
            current.recost(inst, k);
        }
        let t = current.tuple();
        if t < best_tuple {
            best = current.clone();
            best_tuple = t;
            stale = 0;
        } else {
            stale += 1;
        }
    }
    best.solution()
}

fn neighbor<R: Rng>(inst: &MstspInstance, s: &State, rng: &mut R) -> State {
    let mut n = s.clone();
    let (path, pos) = n.locate(rng.gen_range(0..n.node_count()));
    match rng.gen_range(0..4) {
        0 => {
            let v = n.remove(inst, path, pos);
            let p = rng.gen_range(0..n.paths.len());
            let q = rng.gen_range(0..=n.paths[p].len());
            n.insert(inst, p, q, v);
            n.best_of_set(inst, p, q);
        }
        1 => {
            let v = n.remove(inst, path, pos);
            let (p, q) = best_position(inst, &n, v);
            n.insert(inst, p, q, v);
            n.best_of_set(inst, p, q);
        }
        2 => {
            if let Some((p, q)) = best_partner(inst, &n, path, pos) {
                let (a, b) = (n.paths[path][pos], n.paths[p][q]);
                n.paths[path][pos] = b;
                n.paths[p][q] = a;
                n.recost(inst, path);
                n.recost(inst, p);
                n.best_of_set(inst, path, pos);
                n.best_of_set(inst, p, q);
            }
        }
        _ => {
            let u = n.paths[path][pos];
            let set = &inst.sets()[inst.set_of(u)];
            if set.len() > 1 {
                let mut v = set[rng.gen_range(0..set.len() - 1)];
                if v == u {
                    v = set[set.len() - 1];
                }
                n.paths[path][pos] = v;
                n.recost(inst, path);
            }
        }
    }
    n
}

fn best_position(inst: &MstspInstance, s: &State, v: usize) -> (usize, usize) {
    let mut best = None;
    for p in 0..s.paths.len() {
        for q in 0..=s.paths[p].len() {
            let t = s.tuple_with(&[(p, s.costs[p] + s.insertion_delta(inst, p, q, v))]);
            if best.is_none_or(|(bt, _, _)| t < bt) {
                best = Some((t, p, q));
            }
        }
    }
    let (_, p, q) = best.expect("at least one path");
    (p, q)
}

/// Placed node whose swap with `(path, pos)` gives the lowest cost tuple.
fn best_partner(inst: &MstspInstance, s: &State, path: usize, pos: usize) -> Option<(usize, usize)> {
    let u = s.paths[path][pos];
    let mut best = None;
    for p in 0..s.paths.len() {
        for q in 0..s.paths[p].len() {
            if p == path && q == pos {
                continue;
            }
            let w = s.paths[p][q];
            let t = if p == path && q.abs_diff(pos) == 1 {
                let mut seq = s.paths[p].clone();
                seq.swap(q, pos);
                s.tuple_with(&[(p, inst.path_cost(p, &seq))])
            } else if p == path {
                let d = s.replacement_delta(inst, p, pos, w) + s.replacement_delta(inst, p, q, u);
                s.tuple_with(&[(p, s.costs[p] + d)])
            } else {
                s.tuple_with(&[
                    (path, s.costs[path] + s.replacement_delta(inst, path, pos, w)),
                    (p, s.costs[p] + s.replacement_delta(inst, p, q, u)),
                ])
            };
            if best.is_none_or(|(bt, _, _)| t < bt) {
                best = Some((t, p, q));
            }
        }
    }
    best.map(|(_, p, q)| (p, q))
}
