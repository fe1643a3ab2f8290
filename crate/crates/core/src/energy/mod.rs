//! Multirotor energy model.
//!
//! Power draw is approximated by two levels: hover power below the optimal
//! range speed `v_r` and range power when cruising at `v_r`. Kinetic energy
//! is charged only when the vehicle speeds up; braking is free but never
//! recovered.
//!
//! Two path estimators are provided: [`path_energy_fast`], which works on
//! the waypoints directly in linear time, and [`path_energy_oracle`], which
//! parameterizes a spline through the waypoints and integrates a sampled
//! trajectory.

mod fast;
mod oracle;
mod segment;
mod turn;

use std::ops::{Add, AddAssign};

use serde::{Deserialize, Serialize};

pub use fast::{fast_profile, path_energy_fast, path_energy_fast_between, FastProfile};
pub use oracle::{path_energy_oracle, trajectory_profile, TrajectorySample, DEFAULT_SAMPLE_DT};
pub use segment::segment_energy;
pub use turn::{turn_properties, TurnProfile};

/// Joules per watt-hour.
pub const J_PER_WH: f64 = 3600.0;

/// Default allowed path deviation in turns, meters.
pub const DEFAULT_D_MAX: f64 = 0.5;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum EnergyError {
    #[error("turning angle is not finite")]
    NonFiniteAngle,
    #[error("segment of {length:.6} m is too short to brake; needs at least {min_length:.6} m")]
    InfeasibleDeceleration { length: f64, min_length: f64 },
    #[error("segment of {length:.6} m is too short to accelerate; needs at least {min_length:.6} m")]
    InfeasibleAcceleration { length: f64, min_length: f64 },
    #[error("invalid segment input: {0}")]
    InvalidSegment(String),
    #[error("invalid UAV model: {0}")]
    InvalidModel(String),
}

/// Physical and energetic parameters of one vehicle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UavModel {
    /// kg
    pub mass: f64,
    /// Acceleration limit, m/s².
    pub a_max: f64,
    /// Speed of maximum range, m/s.
    pub v_r: f64,
    /// Hover power, W.
    pub p_hover: f64,
    /// Power when flying at `v_r`, W.
    pub p_range: f64,
    /// Allowed path deviation in turns, m.
    #[serde(default = "default_d_max")]
    pub d_max: f64,
}

fn default_d_max() -> f64 {
    DEFAULT_D_MAX
}

impl UavModel {
    pub fn validate(&self) -> Result<(), EnergyError> {
        let fields = [
            ("mass", self.mass),
            ("a_max", self.a_max),
            ("v_r", self.v_r),
            ("p_hover", self.p_hover),
            ("p_range", self.p_range),
            ("d_max", self.d_max),
        ];
        for (name, v) in fields {
            if !(v.is_finite() && v > 0.0) {
                return Err(EnergyError::InvalidModel(format!("{name} must be finite and > 0, got {v}")));
            }
        }
        Ok(())
    }

    /// Two-level power law.
    pub fn power(&self, v: f64) -> f64 {
        if v >= self.v_r * (1.0 - 1e-9) {
            self.p_range
        } else {
            self.p_hover
        }
    }

    pub fn kinetic(&self, v: f64) -> f64 {
        0.5 * self.mass * v * v
    }
}

/// Energy, time and distance of a flown path or segment.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct EnergyReport {
    /// J
    pub energy: f64,
    /// s
    pub duration: f64,
    /// m
    pub distance: f64,
}

impl EnergyReport {
    pub fn wh(&self) -> f64 {
        self.energy / J_PER_WH
    }
}

impl Add for EnergyReport {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self { energy: self.energy + o.energy, duration: self.duration + o.duration, distance: self.distance + o.distance }
    }
}

impl AddAssign for EnergyReport {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

#[cfg(test)]
pub(crate) fn reference_model(mass: f64) -> UavModel {
    UavModel { mass, a_max: 2.0, v_r: 8.39, p_hover: 426.03, p_range: 465.23, d_max: 0.5 }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_validation() {
        assert!(reference_model(3.5).validate().is_ok());
        let mut m = reference_model(3.5);
        m.mass = 0.0;
        assert!(m.validate().is_err());
        m.mass = f64::NAN;
        assert!(m.validate().is_err());
    }

    #[test]
    fn power_levels() {
        let m = reference_model(3.5);
        assert_eq!(m.power(0.0), 426.03);
        assert_eq!(m.power(8.0), 426.03);
        assert_eq!(m.power(8.39), 465.23);
    }
}
