use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{Depot, MstspError, MstspInstance};
use crate::energy::{path_energy_fast_between, UavModel};
use crate::geometry::{Anchor, ConnectorRouter, Region};
use crate::sweep::SweepPattern;

/// Builds a solver instance from world-frame patterns, routing transfers
/// around the region's no-fly zones with zero clearance.
pub fn build_instance(
    patterns: &[SweepPattern],
    region: &Region,
    model: &UavModel,
    depots: &[Depot],
) -> Result<MstspInstance, MstspError> {
    build_instance_with_router(patterns, &ConnectorRouter::new(region, 0.0), model, depots)
}

/// As [`build_instance`] with a prepared router.
///
/// Node `i` is `patterns[i]`. Transfers between patterns are flown at cruise
/// speed on both ends; depot legs start or end at rest.
pub fn build_instance_with_router(
    patterns: &[SweepPattern],
    router: &ConnectorRouter,
    model: &UavModel,
    depots: &[Depot],
) -> Result<MstspInstance, MstspError> {
    let n = patterns.len();
    let mut by_cell: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, p) in patterns.iter().enumerate() {
        by_cell.entry(p.cell_id).or_default().push(i);
    }
    let sets: Vec<Vec<usize>> = by_cell.into_values().collect();
    let node_weight = patterns.iter().map(|p| p.energy).collect();

    let starts: Vec<Anchor> = patterns.par_iter().map(|p| router.anchor(p.start)).collect();
    let ends: Vec<Anchor> = patterns.par_iter().map(|p| router.anchor(p.end)).collect();
    let v_r = model.v_r;

    let leg = |from: &Anchor, to: &Anchor, v0: f64, v1: f64, what: &str| -> Result<f64, MstspError> {
        let route = router.route_between(from, to).map_err(|_| MstspError::Disconnected {
            what: what.to_string(),
            from: from.point,
            to: to.point,
        })?;
        Ok(path_energy_fast_between(&route, model, v0, v1).energy)
    };

    let rows: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .map(|j| {
                    if patterns[i].cell_id == patterns[j].cell_id {
                        Ok(0.0)
                    } else {
                        leg(&ends[i], &starts[j], v_r, v_r, &format!("pattern {i} to pattern {j}"))
                    }
                })
                .collect()
        })
        .collect::<Result<_, _>>()?;
    let edge = rows.into_iter().flatten().collect();

    let mut depot_out = Vec::with_capacity(depots.len());
    let mut depot_in = Vec::with_capacity(depots.len());
    for (d, depot) in depots.iter().enumerate() {
        let init = router.anchor(depot.init);
        let end = router.anchor(depot.end);
        let out: Vec<f64> = (0..n)
            .into_par_iter()
            .map(|j| leg(&init, &starts[j], 0.0, v_r, &format!("depot {d} to pattern {j}")))
            .collect::<Result<_, _>>()?;
        let inn: Vec<f64> = (0..n)
            .into_par_iter()
            .map(|i| leg(&ends[i], &end, v_r, 0.0, &format!("pattern {i} to depot {d}")))
            .collect::<Result<_, _>>()?;
        depot_out.push(out);
        depot_in.push(inn);
    }
    MstspInstance::new(sets, node_weight, edge, depots.to_vec(), depot_out, depot_in)
}
