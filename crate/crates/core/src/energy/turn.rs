use std::f64::consts::{FRAC_PI_2, PI};

use super::{EnergyError, UavModel};

/// Speeds and accelerations around one waypoint turn.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TurnProfile {
    /// Turning angle actually evaluated (after clamping), rad.
    pub phi: f64,
    pub a_x: f64,
    pub a_y: f64,
    pub dv_x: f64,
    pub dv_y: f64,
    /// Speed along the bisector in the middle of the turn.
    pub v_ym: f64,
    /// Highest speed at which the turn may be entered.
    pub v_in: f64,
}

const PHI_MIN: f64 = 1e-6;

/// Turn speeds for a heading change of `phi` radians (0 = straight on,
/// pi = reversal). The deviation limit `d_max` bounds the lateral speed
/// change; a gentle turn instead is bounded by the cruise speed.
pub fn turn_properties(phi: f64, model: &UavModel) -> Result<TurnProfile, EnergyError> {
    if !phi.is_finite() {
        return Err(EnergyError::NonFiniteAngle);
    }
    let phi = phi.clamp(PHI_MIN, PI - PHI_MIN);
    let half = 0.5 * phi;
    let a_x = model.a_max * half.cos();
    let a_y = model.a_max * half.sin();
    let dv_x = (2.0 * model.d_max * a_x).sqrt().min((FRAC_PI_2 - phi).cos() * model.v_r / 2.0);
    let dv_y = half.tan() * dv_x;
    let v_ym = (dv_x / half.tan()).clamp(0.0, model.v_r);
    let v_in = (v_ym + dv_y).clamp(0.0, model.v_r);
    Ok(TurnProfile { phi, a_x, a_y, dv_x, dv_y, v_ym, v_in })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::energy::reference_model;

    #[test]
    fn right_angle_hand_values() {
        // a_x = 2 cos 45° = 1.414214; sqrt(2 * 0.5 * a_x) = 1.189207 < 8.39/2
        let t = turn_properties(FRAC_PI_2, &reference_model(3.0)).unwrap();
        assert!((t.a_x - std::f64::consts::SQRT_2).abs() < 1e-5);
        assert!((t.a_y - std::f64::consts::SQRT_2).abs() < 1e-5);
        assert!((t.dv_x - 1.189207).abs() < 1e-5);
        assert!((t.dv_y - 1.189207).abs() < 1e-5);
        assert!((t.v_ym - 1.189207).abs() < 1e-5);
        assert!((t.v_in - 2.378414).abs() < 1e-5);
    }

    #[test]
    fn near_straight_keeps_cruise_speed() {
        let m = reference_model(3.0);
        let t = turn_properties(1e-4, &m).unwrap();
        assert!(t.v_in >= 0.9999 * m.v_r);
        assert!(t.v_ym >= 0.9999 * m.v_r);
        let z = turn_properties(0.0, &m).unwrap();
        assert_eq!(z.phi, PHI_MIN);
    }

    #[test]
    fn reversal_stops() {
        let mut m = reference_model(3.0);
        m.d_max = 1e6;
        let t = turn_properties(PI - 1e-6, &m).unwrap();
        assert!(t.v_ym < 1e-3);
        let t = turn_properties(PI, &m).unwrap();
        assert!(t.v_ym < 1e-3);
    }

    #[test]
    fn non_finite_rejected() {
        assert_eq!(turn_properties(f64::NAN, &reference_model(1.0)), Err(EnergyError::NonFiniteAngle));
    }

    #[test]
    fn speeds_bounded_on_grid() {
        let m = reference_model(3.0);
        for deg in (5..=175).step_by(5) {
            let t = turn_properties((deg as f64).to_radians(), &m).unwrap();
            assert!(t.v_in.is_finite() && t.v_ym.is_finite());
            assert!(0.0 <= t.v_ym && t.v_ym <= t.v_in && t.v_in <= m.v_r);
            assert!(t.dv_x >= 0.0 && t.dv_y >= 0.0);
        }
    }
}
