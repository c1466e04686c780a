//! Quantum Otto engine driven by the circular Unruh effect.
//!
//! A two-level detector (qubit) moves at constant speed `v` and swings through
//! two half circles of different radius. The tighter circle has the larger
//! centripetal acceleration and plays the hot bath, the wider one the cold
//! bath. Everything is computed to second order in the detector-field coupling
//! and reported in units of `λ²`.
//!
//! Module layout:
//!
//! * [`kinematics`]: circular motion, proper-time trajectory, Lorentzian switching.
//! * [`correlation`]: the circular Wightman function, exact and ultra-relativistic.
//! * [`response`]: closed-form detector response `F(±E, T)`.
//! * [`quadrature`] and [`oracle`]: adaptive Gauss-Kronrod integration and the
//!   regulator-extrapolated numerical response used to validate the closed forms.
//! * [`engine`]: transition probabilities, cyclicity, heat/work ledger, efficiency.
//! * [`sweep`]: declarative parameter sweeps, named presets, config files and CSV.
//!
//! Natural units (`ħ = c = k_B = 1`) are used throughout.

// `!(x > 0.0)` rejects NaN along with the out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod correlation;
pub mod engine;
pub mod error;
pub mod kinematics;
pub mod oracle;
pub mod quadrature;
pub mod response;
pub mod sweep;

pub use correlation::{wightman_circular_exact, wightman_ultra, RegulatorEta};
pub use engine::{
    efficiency, extracted_work, p_cyc, stroke_ledger, transition_probability, BathContact,
    CycleConfig, StrokeLedger,
};
pub use error::{Error, Result};
pub use kinematics::{
    centripetal_acceleration, half_circle_duration, lorentz_gamma, switching, trajectory_point,
    unruh_temperature, CircularMotion, Event,
};
pub use oracle::{
    lorentzian_reduction_check, response_extrapolated, response_quadrature, Extrapolated,
    QuadratureSpec,
};
pub use response::{response, response_negative, response_positive, ResponseQuery};
pub use sweep::{emit_csv, run_sweep, SweepRow, SweepSpec};
