//! Vacuum Wightman function of a massless scalar field pulled back to the
//! circular trajectory.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kinematics::CircularMotion;

/// Positive pole-shift regulator `η` of the `iη` prescription.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct RegulatorEta(f64);

impl RegulatorEta {
    pub fn new(eta: f64) -> Result<Self> {
        if !(eta > 0.0 && eta.is_finite()) {
            return Err(Error::domain(
                "regulator",
                format!("eta = {eta} must be positive"),
            ));
        }
        Ok(Self(eta))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// `1 − sin(x)/x`, accurate for small `x`.
fn one_minus_sinc(x: f64) -> f64 {
    if x.abs() < 1e-2 {
        let x2 = x * x;
        x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0))
    } else {
        1.0 - x.sin() / x
    }
}

/// Exact circular Wightman function
/// `−1/(4π²) / [(γΔτ − iη)² − 4R² sin²(vγΔτ/(2R))]`.
///
/// The real part of the denominator is evaluated as `γ²Δτ²(1 − v²sinc²) − η²`
/// with `1 − v·sinc` expanded, which avoids the cancellation between the two
/// large terms when `γ ≫ 1`.
pub fn wightman_circular_exact(dtau: f64, m: &CircularMotion, eta: RegulatorEta) -> Complex64 {
    let gamma = m.gamma();
    let v = m.speed();
    let eta = eta.get();
    let half_phase = v * gamma * dtau / (2.0 * m.radius());
    let sinc = 1.0 - one_minus_sinc(half_phase);
    let one_minus_vs = (1.0 - v) + v * one_minus_sinc(half_phase);
    let g_dtau = gamma * dtau;
    let re = g_dtau * g_dtau * one_minus_vs * (1.0 + v * sinc) - eta * eta;
    let im = -2.0 * g_dtau * eta;
    -1.0 / (4.0 * PI * PI) / Complex64::new(re, im)
}

/// Ultra-relativistic Wightman function
/// `−1/(4π²) / [(Δτ − iη)² + a²Δτ⁴/12]`.
///
/// `eta = 0` is allowed; the value is then real for `Δτ ≠ 0` and the
/// coincidence point is an error.
pub fn wightman_ultra(dtau: f64, acceleration: f64, eta: f64) -> Result<Complex64> {
    if !(acceleration > 0.0) {
        return Err(Error::domain(
            "acceleration",
            format!("a = {acceleration} must be positive"),
        ));
    }
    if !(eta >= 0.0) {
        return Err(Error::domain(
            "regulator",
            format!("eta = {eta} must be non-negative"),
        ));
    }
    if eta == 0.0 && dtau == 0.0 {
        return Err(Error::DivisionByZero(
            "ultra-relativistic Wightman function at zero separation",
        ));
    }
    let d2 = dtau * dtau;
    let re = d2 - eta * eta + acceleration * acceleration * d2 * d2 / 12.0;
    let im = -2.0 * eta * dtau;
    Ok(-1.0 / (4.0 * PI * PI) / Complex64::new(re, im))
}
