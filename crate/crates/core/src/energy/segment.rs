use super::{EnergyError, EnergyReport, UavModel};

/// Energy of a straight segment flown with a trapezoidal speed profile:
/// accelerate at `a_max` towards `v_r`, cruise, then brake to `v_exit`.
/// When `v_r` cannot be reached the profile is triangular.
pub fn segment_energy(length: f64, v_entry: f64, v_exit: f64, model: &UavModel) -> Result<EnergyReport, EnergyError> {
    if !(length >= 0.0 && length.is_finite()) {
        return Err(EnergyError::InvalidSegment(format!("length {length}")));
    }
    let v_r = model.v_r;
    let slack = 1e-9 * v_r;
    for v in [v_entry, v_exit] {
        if !(v >= -slack && v <= v_r + slack) {
            return Err(EnergyError::InvalidSegment(format!("speed {v} outside [0, {v_r}]")));
        }
    }
    let (ve, vx) = (v_entry.clamp(0.0, v_r), v_exit.clamp(0.0, v_r));
    let a = model.a_max;
    let reach = 2.0 * a * length;
    let tol = 1e-9 * (1.0 + v_r * v_r);
    if ve * ve - vx * vx > reach + tol {
        return Err(EnergyError::InfeasibleDeceleration { length, min_length: (ve * ve - vx * vx) / (2.0 * a) });
    }
    if vx * vx - ve * ve > reach + tol {
        return Err(EnergyError::InfeasibleAcceleration { length, min_length: (vx * vx - ve * ve) / (2.0 * a) });
    }
    if length == 0.0 {
        return Ok(EnergyReport::default());
    }

    let peak_sq = 0.5 * (reach + ve * ve + vx * vx);
    let (duration, energy) = if peak_sq >= v_r * v_r {
        let t_acc = (v_r - ve) / a;
        let t_dec = (v_r - vx) / a;
        let d_cruise = (length - (v_r * v_r - ve * ve) / (2.0 * a) - (v_r * v_r - vx * vx) / (2.0 * a)).max(0.0);
        let t_cruise = d_cruise / v_r;
        let e = model.kinetic(v_r) - model.kinetic(ve) + model.p_hover * (t_acc + t_dec) + model.p_range * t_cruise;
        (t_acc + t_dec + t_cruise, e)
    } else {
        let vp = peak_sq.max(ve * ve).max(vx * vx).sqrt();
        let t = (vp - ve) / a + (vp - vx) / a;
        (t, model.kinetic(vp) - model.kinetic(ve) + model.p_hover * t)
    };
    Ok(EnergyReport { energy, duration, distance: length })
}
