//! Closed-form response of a detector on an ultra-relativistic circular
//! trajectory with Lorentzian switching.
//!
//! With `b = √12/a` the response integral
//!
//! ```text
//! F(E, T) = −(T³ b²/(16π)) ∫ dm e^{−iEm} / [(m² + T²)(m − iη)²(m² + b²)],   η → 0⁺
//! ```
//!
//! has simple poles at `±iT`, `±ib` and a double pole at `iη`. For `E ≥ 0` the
//! contour closes below and picks up `−iT` and `−ib`:
//!
//! ```text
//! F(E, T) = [b² e^{−ET} − (T³/b) e^{−Eb}] / (16 (b² − T²))
//! ```
//!
//! For `E < 0` it closes above; the two simple poles give the same expression in
//! `|E|` and the double pole adds `|E|T/8`. When `b = T` the two simple poles merge
//! and the expression above is `0/0`; its limit `e^{−Eb}(Eb + 3)/32` is used
//! inside a relative band of width [`POLE_MERGE_TOLERANCE`].

use crate::error::{Error, Result};

/// Relative distance `|b − T| / max(b, T)` below which the merged-pole limit is used.
pub const POLE_MERGE_TOLERANCE: f64 = 1e-6;

/// Arguments of a single response evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResponseQuery {
    /// Signed energy gap; negative values describe de-excitation.
    pub energy: f64,
    /// Interaction timescale `T` of the Lorentzian switching.
    pub duration: f64,
    pub acceleration: f64,
}

impl ResponseQuery {
    pub fn new(energy: f64, duration: f64, acceleration: f64) -> Result<Self> {
        check_scales(duration, acceleration)?;
        if !energy.is_finite() {
            return Err(Error::domain(
                "energy",
                format!("E = {energy} must be finite"),
            ));
        }
        Ok(Self {
            energy,
            duration,
            acceleration,
        })
    }

    /// Pole scale `b = √12/a` of the ultra-relativistic correlator.
    pub fn pole_scale(&self) -> f64 {
        pole_scale(self.acceleration)
    }

    pub fn evaluate(&self) -> Result<f64> {
        response(self.energy, self.duration, self.acceleration)
    }
}

pub(crate) fn pole_scale(acceleration: f64) -> f64 {
    12f64.sqrt() / acceleration
}

fn check_scales(duration: f64, acceleration: f64) -> Result<()> {
    if !(duration > 0.0 && duration.is_finite()) {
        return Err(Error::domain(
            "duration",
            format!("T = {duration} must be positive"),
        ));
    }
    if !(acceleration > 0.0 && acceleration.is_finite()) {
        return Err(Error::domain(
            "acceleration",
            format!("a = {acceleration} must be positive"),
        ));
    }
    Ok(())
}

/// Excitation response `F(E, T)` for `E ≥ 0`.
pub fn response_positive(energy: f64, duration: f64, acceleration: f64) -> Result<f64> {
    check_scales(duration, acceleration)?;
    if !(energy >= 0.0 && energy.is_finite()) {
        return Err(Error::domain(
            "energy",
            format!("E = {energy} must be non-negative"),
        ));
    }
    let b = pole_scale(acceleration);
    let t = duration;
    if (b - t).abs() <= POLE_MERGE_TOLERANCE * b.max(t) {
        return Ok(merged_pole_limit(energy, b));
    }
    let num = b * b * (-energy * t).exp() - t * t * t / b * (-energy * b).exp();
    Ok(num / (16.0 * (b - t) * (b + t)))
}

fn merged_pole_limit(energy: f64, b: f64) -> f64 {
    (-energy * b).exp() * (energy * b + 3.0) / 32.0
}

/// De-excitation response `F(−E, T)` for `E > 0`; exceeds the excitation
/// response by the double-pole contribution `ET/8`.
pub fn response_negative(energy: f64, duration: f64, acceleration: f64) -> Result<f64> {
    if !(energy > 0.0) {
        return Err(Error::domain(
            "energy",
            format!("E = {energy} must be positive"),
        ));
    }
    Ok(response_positive(energy, duration, acceleration)? + energy * duration / 8.0)
}

/// Signed dispatch: `F(E, T)` for any real `E`.
pub fn response(energy: f64, duration: f64, acceleration: f64) -> Result<f64> {
    if energy < 0.0 {
        response_negative(-energy, duration, acceleration)
    } else {
        response_positive(energy, duration, acceleration)
    }
}
