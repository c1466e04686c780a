//! Otto-cycle thermodynamics of the circular Unruh engine.
//!
//! The four strokes are
//!
//! 1. straight flight, gap raised `E1 → E2` (work `W1`, no heat);
//! 2. half circle of radius `R_hot` at gap `E2` (heat `Q2 = E2 δp_H`);
//! 3. straight flight back, gap lowered `E2 → E1` (work `W3`, no heat);
//! 4. half circle of radius `R_cold` at gap `E1` (heat `Q4 = −E1 δp_H` once the
//!    cycle closes, `δp_C = −δp_H`).
//!
//! Transition probabilities, heats and works are second order in the coupling
//! and are reported in units of `λ²`.

use crate::error::{Error, Result};
use crate::kinematics::CircularMotion;
use crate::response::response;

/// Excited-population change `δp/λ² = (1−p) F(E, T) − p F(−E, T)`.
pub fn transition_probability(
    population: f64,
    energy: f64,
    duration: f64,
    acceleration: f64,
) -> Result<f64> {
    check_population(population)?;
    if !(energy > 0.0) {
        return Err(Error::domain(
            "energy",
            format!("E = {energy} must be positive"),
        ));
    }
    let up = response(energy, duration, acceleration)?;
    let down = response(-energy, duration, acceleration)?;
    Ok((1.0 - population) * up - population * down)
}

fn check_population(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::domain(
            "population",
            format!("p = {p} must lie in [0, 1]"),
        ));
    }
    Ok(())
}

/// The detector's interaction with one bath: gap, switching timescale and
/// acceleration during the half circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BathContact {
    pub energy: f64,
    pub duration: f64,
    pub acceleration: f64,
}

impl BathContact {
    pub fn new(energy: f64, motion: &CircularMotion) -> Self {
        Self {
            energy,
            duration: motion.half_circle_duration(),
            acceleration: motion.acceleration(),
        }
    }

    /// `F(E, T)`.
    pub fn excitation(&self) -> Result<f64> {
        response(self.energy, self.duration, self.acceleration)
    }

    /// `F(−E, T)`.
    pub fn deexcitation(&self) -> Result<f64> {
        response(-self.energy, self.duration, self.acceleration)
    }

    pub fn transition_probability(&self, population: f64) -> Result<f64> {
        transition_probability(population, self.energy, self.duration, self.acceleration)
    }
}

/// Full engine specification.
///
/// The hot bath is the tighter circle (`R_hot < R_cold`, so `a_H > a_C`) and is
/// visited at the raised gap `E2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CycleConfig {
    hot: CircularMotion,
    cold: CircularMotion,
    e1: f64,
    e2: f64,
    population: Option<f64>,
}

impl CycleConfig {
    pub fn from_radii(speed: f64, r_hot: f64, r_cold: f64, e1: f64, e2: f64) -> Result<Self> {
        let hot = CircularMotion::new(speed, r_hot)?;
        let cold = CircularMotion::new(speed, r_cold)?;
        Self::from_motions(hot, cold, e1, e2)
    }

    pub fn from_accelerations(
        speed: f64,
        a_hot: f64,
        a_cold: f64,
        e1: f64,
        e2: f64,
    ) -> Result<Self> {
        let hot = CircularMotion::from_acceleration(speed, a_hot)?;
        let cold = CircularMotion::from_acceleration(speed, a_cold)?;
        Self::from_motions(hot, cold, e1, e2)
    }

    fn from_motions(hot: CircularMotion, cold: CircularMotion, e1: f64, e2: f64) -> Result<Self> {
        if !(hot.radius() < cold.radius()) {
            return Err(Error::domain(
                "radii",
                format!(
                    "hot radius {} must be smaller than cold radius {} (a_H > a_C)",
                    hot.radius(),
                    cold.radius()
                ),
            ));
        }
        // e1 == e2 is admitted: the cycle then exchanges no net work
        if !(e1 > 0.0 && e1 <= e2 && e2.is_finite()) {
            return Err(Error::domain(
                "energy gaps",
                format!("need 0 < E1 <= E2, got E1 = {e1}, E2 = {e2}"),
            ));
        }
        Ok(Self {
            hot,
            cold,
            e1,
            e2,
            population: None,
        })
    }

    /// Fixes the initial excited-state population instead of the cyclic one.
    pub fn with_population(mut self, p: f64) -> Result<Self> {
        check_population(p)?;
        self.population = Some(p);
        Ok(self)
    }

    pub fn speed(&self) -> f64 {
        self.hot.speed()
    }
    pub fn gamma(&self) -> f64 {
        self.hot.gamma()
    }
    pub fn hot_motion(&self) -> &CircularMotion {
        &self.hot
    }
    pub fn cold_motion(&self) -> &CircularMotion {
        &self.cold
    }
    pub fn e1(&self) -> f64 {
        self.e1
    }
    pub fn e2(&self) -> f64 {
        self.e2
    }
    pub fn gap_change(&self) -> f64 {
        self.e2 - self.e1
    }
    pub fn population(&self) -> Option<f64> {
        self.population
    }

    pub fn hot_contact(&self) -> BathContact {
        BathContact::new(self.e2, &self.hot)
    }

    pub fn cold_contact(&self) -> BathContact {
        BathContact::new(self.e1, &self.cold)
    }

    /// The fixed population if one was set, otherwise [`p_cyc`].
    pub fn effective_population(&self) -> Result<f64> {
        match self.population {
            Some(p) => Ok(p),
            None => p_cyc(self),
        }
    }
}

/// Initial population that closes the cycle, `δp_H + δp_C = 0`:
/// `(F_H(E2) + F_C(E1)) / (F_H(E2) + F_H(−E2) + F_C(E1) + F_C(−E1))`.
pub fn p_cyc(c: &CycleConfig) -> Result<f64> {
    let hot = c.hot_contact();
    let cold = c.cold_contact();
    let num = hot.excitation()? + cold.excitation()?;
    let den = num + hot.deexcitation()? + cold.deexcitation()?;
    if den == 0.0 || !den.is_finite() {
        return Err(Error::DegenerateConfig(format!(
            "cyclic population undefined: denominator {den}"
        )));
    }
    Ok(num / den)
}

/// Heat and work of each stroke.
///
/// `W1 = pΔE` and the `−pΔE` part of `W3` are zeroth order in the coupling;
/// every other entry, and both totals, are per `λ²`. The zeroth-order parts
/// cancel in `W_total`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrokeLedger {
    pub population: f64,
    pub delta_p_hot: f64,
    pub q1: f64,
    pub q2: f64,
    pub q3: f64,
    pub q4: f64,
    pub w1: f64,
    pub w2: f64,
    pub w3: f64,
    pub w4: f64,
    pub w_total: f64,
    pub q_total: f64,
}

impl StrokeLedger {
    /// `W_ext = −W_total`.
    pub fn extracted_work(&self) -> f64 {
        -self.w_total
    }

    /// Net energy change of the qubit over the cycle, summed stroke by stroke.
    pub fn energy_residual(&self) -> f64 {
        (self.q1 + self.w1) + (self.q2 + self.w2) + (self.q3 + self.w3) + (self.q4 + self.w4)
    }
}

pub fn stroke_ledger(c: &CycleConfig, population: f64) -> Result<StrokeLedger> {
    check_population(population)?;
    let dp = c.hot_contact().transition_probability(population)?;
    let gap = c.gap_change();
    let w1 = population * gap;
    let q2 = c.e2 * dp;
    let w3 = -(population + dp) * gap;
    let q4 = -c.e1 * dp;
    Ok(StrokeLedger {
        population,
        delta_p_hot: dp,
        q1: 0.0,
        q2,
        q3: 0.0,
        q4,
        w1,
        w2: 0.0,
        w3,
        w4: 0.0,
        w_total: -dp * gap,
        q_total: dp * gap,
    })
}

/// `W_ext/λ² = δp̄_H (E2 − E1)` at the configured or cyclic population.
pub fn extracted_work(c: &CycleConfig) -> Result<f64> {
    let p = c.effective_population()?;
    Ok(c.hot_contact().transition_probability(p)? * c.gap_change())
}

/// `1 − E1/E2`; no kinematic dependence.
pub fn efficiency(c: &CycleConfig) -> f64 {
    1.0 - c.e1 / c.e2
}
