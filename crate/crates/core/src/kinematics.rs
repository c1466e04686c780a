//! Relativistic circular motion and the Lorentzian switching function.
//!
//! All quantities use natural units: `ħ = c = k_B = 1`. Speeds are fractions
//! of the speed of light; times, lengths and inverse accelerations share one
//! unit, as do energies, temperatures and accelerations. To restore SI units
//! multiply an acceleration by `c²/L`, a time by `L/c` and a temperature by
//! `ħc/(k_B L)` for the chosen length scale `L`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Lorentz factor `1/√(1−v²)` for `0 ≤ v < 1`.
pub fn lorentz_gamma(v: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&v) {
        return Err(Error::domain(
            "speed",
            format!("v = {v} must satisfy 0 <= v < 1"),
        ));
    }
    Ok(1.0 / ((1.0 - v) * (1.0 + v)).sqrt())
}

/// Constant-speed motion around a circle of radius `radius`.
///
/// The proper-time trajectory is
/// `(γτ, R cos(vγτ/R), R sin(vγτ/R), 0)`, the centripetal (proper) acceleration
/// is `γ²v²/R` and half a revolution lasts `πR/(γv)` of proper time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircularMotion {
    speed: f64,
    radius: f64,
    gamma: f64,
}

impl CircularMotion {
    pub fn new(speed: f64, radius: f64) -> Result<Self> {
        if !(speed > 0.0 && speed < 1.0) {
            return Err(Error::domain(
                "speed",
                format!("v = {speed} must satisfy 0 < v < 1"),
            ));
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::domain(
                "radius",
                format!("R = {radius} must be positive and finite"),
            ));
        }
        Ok(Self {
            speed,
            radius,
            gamma: lorentz_gamma(speed)?,
        })
    }

    /// Builds the motion whose centripetal acceleration is `acceleration`,
    /// i.e. `R = γ²v²/a`.
    pub fn from_acceleration(speed: f64, acceleration: f64) -> Result<Self> {
        if !(acceleration > 0.0 && acceleration.is_finite()) {
            return Err(Error::domain(
                "acceleration",
                format!("a = {acceleration} must be positive and finite"),
            ));
        }
        let gamma = lorentz_gamma(speed)?;
        Self::new(speed, gamma * gamma * speed * speed / acceleration)
    }

    pub fn speed(&self) -> f64 {
        self.speed
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn acceleration(&self) -> f64 {
        centripetal_acceleration(self)
    }

    /// Angular velocity `dθ/dt = v/R` in coordinate time.
    pub fn angular_velocity(&self) -> f64 {
        self.speed / self.radius
    }

    pub fn half_circle_duration(&self) -> f64 {
        half_circle_duration(self)
    }
}

pub fn centripetal_acceleration(m: &CircularMotion) -> f64 {
    let gv = m.gamma * m.speed;
    gv * gv / m.radius
}

/// Proper time needed for half a revolution, `πR/(γv)`.
pub fn half_circle_duration(m: &CircularMotion) -> f64 {
    PI * m.radius / (m.gamma * m.speed)
}

/// A spacetime event `(t, x, y, z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Event {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

pub fn trajectory_point(tau: f64, m: &CircularMotion) -> Event {
    let phase = m.speed * m.gamma * tau / m.radius;
    let (sin, cos) = phase.sin_cos();
    Event {
        t: m.gamma * tau,
        x: m.radius * cos,
        y: m.radius * sin,
        z: 0.0,
    }
}

/// Lorentzian switching profile `(T/2)² / (τ² + (T/2)²)` with peak 1 at `τ = 0`.
pub fn switching(tau: f64, timescale: f64) -> Result<f64> {
    if !(timescale > 0.0) {
        return Err(Error::domain(
            "timescale",
            format!("T = {timescale} must be positive"),
        ));
    }
    let half = 0.5 * timescale;
    Ok(half * half / (tau * tau + half * half))
}

/// Unruh temperature `a/(2π)`.
pub fn unruh_temperature(acceleration: f64) -> Result<f64> {
    if !(acceleration >= 0.0) {
        return Err(Error::domain(
            "acceleration",
            format!("a = {acceleration} must be non-negative"),
        ));
    }
    Ok(acceleration / (2.0 * PI))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn gamma_values() {
        assert_eq!(lorentz_gamma(0.0).unwrap(), 1.0);
        assert_relative_eq!(
            lorentz_gamma(0.999).unwrap(),
            22.366_272_042_129_4,
            max_relative = 1e-12
        );
        assert!((lorentz_gamma(0.999).unwrap() - 22.3663).abs() < 1e-4);
        assert!(lorentz_gamma(1.0).is_err());
        assert!(lorentz_gamma(-0.1).is_err());
        assert!(lorentz_gamma(f64::NAN).is_err());
    }

    #[test]
    fn acceleration_examples() {
        let m = CircularMotion::from_acceleration(0.999, 15.0).unwrap();
        assert_relative_eq!(m.acceleration(), 15.0, max_relative = 1e-14);

        let m = CircularMotion::new(0.5, 1.0).unwrap();
        assert_relative_eq!(m.acceleration(), 1.0 / 3.0, max_relative = 1e-14);

        let doubled = CircularMotion::new(0.5, 2.0).unwrap();
        assert_relative_eq!(
            doubled.acceleration(),
            m.acceleration() / 2.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn duration_examples() {
        let m = CircularMotion::from_acceleration(0.999, 15.0).unwrap();
        // πγv = 70.19545...
        assert_relative_eq!(
            PI * m.gamma() * m.speed(),
            70.195_450_219_808,
            max_relative = 1e-12
        );
        assert!((m.half_circle_duration() - 4.6797).abs() < 1e-4);

        let wide = CircularMotion::new(0.999, 2.0 * m.radius()).unwrap();
        assert_relative_eq!(
            wide.half_circle_duration(),
            2.0 * m.half_circle_duration(),
            max_relative = 1e-14
        );
    }

    #[test]
    fn invalid_motion() {
        assert!(CircularMotion::new(1.0, 1.0).is_err());
        assert!(CircularMotion::new(0.0, 1.0).is_err());
        assert!(CircularMotion::new(0.5, 0.0).is_err());
        assert!(CircularMotion::new(0.5, -1.0).is_err());
        assert!(CircularMotion::from_acceleration(0.5, 0.0).is_err());
    }

    #[test]
    fn trajectory_examples() {
        let m = CircularMotion::new(0.9, 3.0).unwrap();
        assert_eq!(
            trajectory_point(0.0, &m),
            Event {
                t: 0.0,
                x: 3.0,
                y: 0.0,
                z: 0.0
            }
        );
        let half = m.half_circle_duration();
        let e = trajectory_point(half, &m);
        assert_relative_eq!(e.t, m.gamma() * half, max_relative = 1e-14);
        assert_relative_eq!(e.x, -3.0, max_relative = 1e-14);
        assert!(e.y.abs() < 1e-12);
    }

    #[test]
    fn switching_examples() {
        assert_eq!(switching(0.0, 3.0).unwrap(), 1.0);
        assert_relative_eq!(switching(1.5, 3.0).unwrap(), 0.5, max_relative = 1e-15);
        assert_relative_eq!(switching(3.0, 3.0).unwrap(), 0.2, max_relative = 1e-15);
        assert!(switching(0.0, 0.0).is_err());
        assert!(switching(0.0, -1.0).is_err());
    }

    #[test]
    fn unruh_temperature_examples() {
        assert_eq!(unruh_temperature(0.0).unwrap(), 0.0);
        assert_relative_eq!(
            unruh_temperature(2.0 * PI).unwrap(),
            1.0,
            max_relative = 1e-15
        );
        assert!((unruh_temperature(15.0).unwrap() - 2.3873).abs() < 1e-4);
        assert!(unruh_temperature(-1.0).is_err());
    }

    proptest! {
        #[test]
        fn acceleration_times_duration(v in 0.01f64..0.9999, r in 1e-3f64..1e3) {
            let m = CircularMotion::new(v, r).unwrap();
            let lhs = m.acceleration() * m.half_circle_duration();
            let rhs = PI * m.gamma() * v;
            prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs);
            // R = a T² / π²
            let t = m.half_circle_duration();
            prop_assert!((m.acceleration() * t * t / (PI * PI) - r).abs() <= 1e-12 * r);
        }

        #[test]
        fn from_acceleration_round_trips(v in 0.01f64..0.9999, a in 1e-2f64..1e3) {
            let m = CircularMotion::from_acceleration(v, a).unwrap();
            prop_assert!((m.acceleration() - a).abs() <= 1e-12 * a);
        }

        #[test]
        fn trajectory_on_circle(v in 0.01f64..0.9999, r in 1e-2f64..1e2, tau in -1e3f64..1e3) {
            let m = CircularMotion::new(v, r).unwrap();
            let e = trajectory_point(tau, &m);
            prop_assert!(((e.x * e.x + e.y * e.y) - r * r).abs() <= 1e-12 * r * r);
            prop_assert_eq!(e.z, 0.0);
            if tau != 0.0 {
                prop_assert!((e.t / tau - m.gamma()).abs() <= 1e-12 * m.gamma());
            }
        }

        #[test]
        fn switching_even_and_bounded(tau in -1e3f64..1e3, t in 1e-3f64..1e3) {
            let s = switching(tau, t).unwrap();
            prop_assert!(s > 0.0 && s <= 1.0);
            prop_assert_eq!(s, switching(-tau, t).unwrap());
            prop_assert!(s <= switching(0.0, t).unwrap());
        }
    }
}
