//! Declarative parameter sweeps over the engine.
//!
//! A [`SweepSpec`] names one swept variable and its grid, the fixed engine
//! parameters, an optional series parameter (one curve per value) and the
//! output columns. [`run_sweep`] evaluates every grid point and returns rows in
//! series order, then ascending swept value. Evaluation is pure, so the
//! parallel path produces the same rows as the sequential one.
//!
//! Along `a_H` and `R_hot` sweeps the switching timescale follows the motion,
//! `T = πR/(γv) = πγv/a`, unless [`SweepSpec::decoupled_duration`] pins it.

mod config;
mod csv;
pub mod presets;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::engine::{p_cyc, stroke_ledger, BathContact, CycleConfig};
use crate::error::{Error, Result};
use crate::kinematics::CircularMotion;
use crate::oracle::{response_extrapolated, QuadratureSpec};
use crate::response::{response, ResponseQuery};

pub use config::{cycle_from_config_str, parse_key_values, spec_from_config_str};
pub use csv::{emit_csv, format_value, write_csv};

/// Relative closed-form vs oracle deviation tolerated by `oracle_check`.
pub const ORACLE_TOLERANCE: f64 = 1e-3;
/// Every n-th grid point is cross-checked when `oracle_check` is on.
pub const ORACLE_STRIDE: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVariable {
    HotAcceleration,
    HotRadius,
    GapChange,
}

impl SweepVariable {
    pub fn name(self) -> &'static str {
        match self {
            SweepVariable::HotAcceleration => "a_H",
            SweepVariable::HotRadius => "R_hot",
            SweepVariable::GapChange => "delta_E",
        }
    }
}

impl FromStr for SweepVariable {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a_H" => Ok(SweepVariable::HotAcceleration),
            "R_hot" => Ok(SweepVariable::HotRadius),
            "delta_E" => Ok(SweepVariable::GapChange),
            other => Err(Error::Config(format!("unknown sweep variable '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridScale {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub scale: GridScale,
}

impl Grid {
    pub fn validate(&self) -> Result<()> {
        if self.count < 2 {
            return Err(Error::Config(format!(
                "grid count {} must be at least 2",
                self.count
            )));
        }
        if !(self.min < self.max) || !self.min.is_finite() || !self.max.is_finite() {
            return Err(Error::Config(format!(
                "grid needs finite min < max, got [{}, {}]",
                self.min, self.max
            )));
        }
        if self.scale == GridScale::Log && !(self.min > 0.0) {
            return Err(Error::Config("log grid needs a positive minimum".into()));
        }
        Ok(())
    }

    pub fn points(&self) -> Vec<f64> {
        let last = self.count - 1;
        (0..self.count)
            .map(|i| {
                if i == 0 {
                    return self.min;
                }
                if i == last {
                    return self.max;
                }
                let s = i as f64 / last as f64;
                match self.scale {
                    GridScale::Linear => self.min + s * (self.max - self.min),
                    GridScale::Log => (self.min.ln() + s * (self.max.ln() - self.min.ln())).exp(),
                }
            })
            .collect()
    }
}

/// A bath fixed either by its acceleration or by its radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bath {
    Acceleration(f64),
    Radius(f64),
}

impl Bath {
    fn motion(self, speed: f64) -> Result<CircularMotion> {
        match self {
            Bath::Acceleration(a) => CircularMotion::from_acceleration(speed, a),
            Bath::Radius(r) => CircularMotion::new(speed, r),
        }
    }
}

/// Upper gap given directly or as the change above `E1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum UpperGap {
    Absolute(f64),
    Change(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Population {
    Fixed(f64),
    Cyclic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesParam {
    Population,
    Speed,
    HotAcceleration,
}

impl SeriesParam {
    pub fn name(self) -> &'static str {
        match self {
            SeriesParam::Population => "p",
            SeriesParam::Speed => "v",
            SeriesParam::HotAcceleration => "a_H",
        }
    }
}

impl FromStr for SeriesParam {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "p" => Ok(SeriesParam::Population),
            "v" => Ok(SeriesParam::Speed),
            "a_H" => Ok(SeriesParam::HotAcceleration),
            other => Err(Error::Config(format!("unknown series parameter '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub param: SeriesParam,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Output {
    DeltaPHot,
    PCyc,
    ExtractedWork,
    Efficiency,
    Ledger,
    HotDuration,
    ColdDuration,
    Gamma,
}

const LEDGER_COLUMNS: [&str; 10] = [
    "Q1", "Q2", "Q3", "Q4", "W1", "W2", "W3", "W4", "W_total", "Q_total",
];

impl Output {
    pub fn columns(self) -> Vec<&'static str> {
        match self {
            Output::DeltaPHot => vec!["delta_p_H"],
            Output::PCyc => vec!["p_cyc"],
            Output::ExtractedWork => vec!["W_ext"],
            Output::Efficiency => vec!["efficiency"],
            Output::Ledger => LEDGER_COLUMNS.to_vec(),
            Output::HotDuration => vec!["T_H"],
            Output::ColdDuration => vec!["T_C"],
            Output::Gamma => vec!["gamma"],
        }
    }

    fn needs_cold(self) -> bool {
        !matches!(
            self,
            Output::DeltaPHot | Output::HotDuration | Output::Gamma
        )
    }
}

impl FromStr for Output {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "delta_p_H" => Ok(Output::DeltaPHot),
            "p_cyc" => Ok(Output::PCyc),
            "W_ext" => Ok(Output::ExtractedWork),
            "efficiency" => Ok(Output::Efficiency),
            "ledger" => Ok(Output::Ledger),
            "T_H" => Ok(Output::HotDuration),
            "T_C" => Ok(Output::ColdDuration),
            "gamma" => Ok(Output::Gamma),
            other => Err(Error::Config(format!("unknown output '{other}'"))),
        }
    }
}

impl fmt::Display for Output {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Output::Ledger => "ledger",
            other => other.columns()[0],
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    pub grid: Grid,
    pub speed: f64,
    /// Fixed hot bath; required for `delta_E` sweeps unless a series supplies `a_H`.
    pub hot: Option<Bath>,
    /// Cold bath; only outputs that involve the full cycle need it.
    pub cold: Option<Bath>,
    pub e1: f64,
    /// Ignored for `delta_E` sweeps.
    pub upper: UpperGap,
    pub population: Population,
    pub series: Option<Series>,
    pub outputs: Vec<Output>,
    pub oracle_check: bool,
    /// Pins the hot switching timescale instead of coupling it to the motion.
    /// Only hot-contact outputs are allowed with it.
    pub decoupled_duration: Option<f64>,
}

/// One evaluated grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub series_value: Option<f64>,
    pub swept_value: f64,
    /// Requested outputs, one entry per column in header order.
    pub values: Vec<f64>,
    pub gamma: f64,
    pub hot_duration: f64,
    pub cold_duration: Option<f64>,
    /// Largest relative closed-form vs oracle deviation at this point, when checked.
    pub oracle_deviation: Option<f64>,
}

impl SweepRow {
    /// All CSV fields in column order.
    pub fn fields(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.values.len() + 2);
        out.extend(self.series_value);
        out.push(self.swept_value);
        out.extend_from_slice(&self.values);
        out
    }
}

/// Fully resolved parameters of one grid point.
#[derive(Debug, Clone, Copy)]
struct Point {
    series_value: Option<f64>,
    swept_value: f64,
    check_oracle: bool,
    speed: f64,
    hot: CircularMotion,
    cold: Option<CircularMotion>,
    e1: f64,
    e2: f64,
    population: Population,
}

impl SweepSpec {
    /// CSV header: optional series column, swept variable, then outputs.
    pub fn header(&self) -> Vec<String> {
        let mut h = Vec::new();
        if let Some(s) = &self.series {
            h.push(s.param.name().to_string());
        }
        h.push(self.variable.name().to_string());
        h.extend(
            self.outputs
                .iter()
                .flat_map(|o| o.columns())
                .map(str::to_string),
        );
        h
    }

    pub fn validate(&self) -> Result<()> {
        self.grid.validate()?;
        if self.outputs.is_empty() {
            return Err(Error::Config("no outputs requested".into()));
        }
        if let Some(s) = &self.series {
            if s.values.is_empty() {
                return Err(Error::Config("series has no values".into()));
            }
            if s.param == SeriesParam::HotAcceleration && self.variable != SweepVariable::GapChange
            {
                return Err(Error::Config(format!(
                    "an a_H series cannot be combined with a {} sweep",
                    self.variable.name()
                )));
            }
        }
        let uses_cold = self.outputs.iter().any(|o| o.needs_cold())
            || (self.population == Population::Cyclic
                && !matches!(&self.series, Some(s) if s.param == SeriesParam::Population));
        if uses_cold && self.cold.is_none() {
            return Err(Error::Config(
                "outputs need the full cycle: set a_cold or r_cold".into(),
            ));
        }
        if let Some(t) = self.decoupled_duration {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::Config(format!("decoupled T = {t} must be positive")));
            }
            if uses_cold {
                return Err(Error::Config(
                    "decoupled T only applies to hot-contact outputs at fixed population".into(),
                ));
            }
        }
        if self.variable == SweepVariable::GapChange
            && self.hot.is_none()
            && !matches!(&self.series, Some(s) if s.param == SeriesParam::HotAcceleration)
        {
            return Err(Error::Config(
                "delta_E sweep needs a fixed hot bath (a_hot or r_hot)".into(),
            ));
        }
        // resolve every point so that invariant violations surface before evaluation
        self.points().map(|_| ())
    }

    fn points(&self) -> Result<Vec<Point>> {
        let grid = self.grid.points();
        let series: Vec<Option<f64>> = match &self.series {
            Some(s) => s.values.iter().map(|&v| Some(v)).collect(),
            None => vec![None],
        };
        let mut out = Vec::with_capacity(grid.len() * series.len());
        for sv in series {
            for (i, &x) in grid.iter().enumerate() {
                out.push(self.resolve(sv, x, i % ORACLE_STRIDE == 0)?);
            }
        }
        Ok(out)
    }

    fn resolve(&self, series_value: Option<f64>, swept: f64, on_stride: bool) -> Result<Point> {
        let mut speed = self.speed;
        let mut population = self.population;
        let mut hot = self.hot;
        match (self.series.as_ref().map(|s| s.param), series_value) {
            (Some(SeriesParam::Population), Some(p)) => population = Population::Fixed(p),
            (Some(SeriesParam::Speed), Some(v)) => speed = v,
            (Some(SeriesParam::HotAcceleration), Some(a)) => hot = Some(Bath::Acceleration(a)),
            _ => {}
        }
        if let Population::Fixed(p) = population {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::Config(format!("population p = {p} outside [0, 1]")));
            }
        }
        let mut e2 = match self.upper {
            UpperGap::Absolute(e2) => e2,
            UpperGap::Change(d) => self.e1 + d,
        };
        let hot = match self.variable {
            SweepVariable::HotAcceleration => Bath::Acceleration(swept),
            SweepVariable::HotRadius => Bath::Radius(swept),
            SweepVariable::GapChange => {
                e2 = self.e1 + swept;
                hot.ok_or_else(|| Error::Config("missing hot bath".into()))?
            }
        };
        let hot = hot.motion(speed)?;
        let cold = self.cold.map(|c| c.motion(speed)).transpose()?;
        if let Some(cold) = &cold {
            // enforce the cycle invariants at this point
            CycleConfig::from_radii(speed, hot.radius(), cold.radius(), self.e1, e2)
                .map_err(|e| Error::Config(format!("{} = {swept}: {e}", self.variable.name())))?;
        } else if !(e2 > 0.0) {
            return Err(Error::Config(format!("hot gap E2 = {e2} must be positive")));
        }
        Ok(Point {
            series_value,
            swept_value: swept,
            check_oracle: self.oracle_check && on_stride,
            speed,
            hot,
            cold,
            e1: self.e1,
            e2,
            population,
        })
    }

    fn evaluate(&self, pt: &Point) -> Result<SweepRow> {
        let mut hot_contact = BathContact::new(pt.e2, &pt.hot);
        if let Some(t) = self.decoupled_duration {
            hot_contact.duration = t;
        }
        let config = match pt.cold {
            Some(cold) => Some(CycleConfig::from_radii(
                pt.speed,
                pt.hot.radius(),
                cold.radius(),
                pt.e1,
                pt.e2,
            )?),
            None => None,
        };
        let need_config =
            || config.ok_or_else(|| Error::Config("output requires a cold bath".into()));
        let population = match pt.population {
            Population::Fixed(p) => p,
            Population::Cyclic => p_cyc(&need_config()?)?,
        };

        let mut values = Vec::new();
        for out in &self.outputs {
            match out {
                Output::DeltaPHot => values.push(hot_contact.transition_probability(population)?),
                Output::PCyc => values.push(p_cyc(&need_config()?)?),
                Output::ExtractedWork => {
                    let c = need_config()?;
                    values.push(hot_contact.transition_probability(population)? * c.gap_change());
                }
                Output::Efficiency => values.push(crate::engine::efficiency(&need_config()?)),
                Output::Ledger => {
                    let l = stroke_ledger(&need_config()?, population)?;
                    values.extend([
                        l.q1, l.q2, l.q3, l.q4, l.w1, l.w2, l.w3, l.w4, l.w_total, l.q_total,
                    ]);
                }
                Output::HotDuration => values.push(hot_contact.duration),
                Output::ColdDuration => values.push(need_config()?.cold_contact().duration),
                Output::Gamma => values.push(pt.hot.gamma()),
            }
        }

        let oracle_deviation = if pt.check_oracle {
            let mut contacts = vec![hot_contact];
            if let Some(c) = &config {
                contacts.push(c.cold_contact());
            }
            Some(oracle_deviation(&contacts, pt)?)
        } else {
            None
        };

        let row = SweepRow {
            series_value: pt.series_value,
            swept_value: pt.swept_value,
            values,
            gamma: pt.hot.gamma(),
            hot_duration: hot_contact.duration,
            cold_duration: config.map(|c| c.cold_contact().duration),
            oracle_deviation,
        };
        if let Some(bad) = row.fields().iter().position(|v| !v.is_finite()) {
            let header = self.header();
            return Err(Error::NonFinite(format!(
                "column {} at {} = {}",
                header[bad],
                self.variable.name(),
                pt.swept_value
            )));
        }
        Ok(row)
    }
}

fn oracle_deviation(contacts: &[BathContact], pt: &Point) -> Result<f64> {
    let spec = QuadratureSpec::default();
    let mut worst: f64 = 0.0;
    for c in contacts {
        for energy in [c.energy, -c.energy] {
            let closed = response(energy, c.duration, c.acceleration)?;
            let q = ResponseQuery::new(energy, c.duration, c.acceleration)?;
            let oracle = response_extrapolated(&q, &spec)?.value;
            let deviation = (closed - oracle).abs() / closed.abs().max(1e-300);
            if deviation > ORACLE_TOLERANCE {
                return Err(Error::OracleMismatch {
                    at: format!(
                        "swept value {} (E = {energy}, T = {}, a = {})",
                        pt.swept_value, c.duration, c.acceleration
                    ),
                    closed,
                    oracle,
                    deviation,
                });
            }
            worst = worst.max(deviation);
        }
    }
    Ok(worst)
}

/// Evaluates the sweep on the calling thread.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    spec.points()?.iter().map(|p| spec.evaluate(p)).collect()
}

/// Evaluates grid points on up to `jobs` threads; rows keep grid order.
pub fn run_sweep_parallel(spec: &SweepSpec, jobs: usize) -> Result<Vec<SweepRow>> {
    if jobs <= 1 {
        return run_sweep(spec);
    }
    spec.validate()?;
    let points = spec.points()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Config(format!("cannot start {jobs} worker threads: {e}")))?;
    pool.install(|| points.par_iter().map(|p| spec.evaluate(p)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_spec() -> SweepSpec {
        SweepSpec {
            variable: SweepVariable::HotAcceleration,
            grid: Grid {
                min: 20.0,
                max: 200.0,
                count: 5,
                scale: GridScale::Log,
            },
            speed: 0.999,
            hot: None,
            cold: Some(Bath::Acceleration(15.0)),
            e1: 1.0,
            upper: UpperGap::Absolute(2.0),
            population: Population::Cyclic,
            series: None,
            outputs: vec![
                Output::DeltaPHot,
                Output::PCyc,
                Output::ExtractedWork,
                Output::Ledger,
            ],
            oracle_check: false,
            decoupled_duration: None,
        }
    }

    #[test]
    fn grid_points() {
        let g = Grid {
            min: 1.0,
            max: 100.0,
            count: 3,
            scale: GridScale::Log,
        };
        let p = g.points();
        assert_eq!(p[0], 1.0);
        assert!((p[1] - 10.0).abs() < 1e-12);
        assert_eq!(p[2], 100.0);
        let g = Grid {
            min: 0.0,
            max: 1.0,
            count: 5,
            scale: GridScale::Linear,
        };
        assert_eq!(g.points(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert!(Grid {
            min: 1.0,
            max: 1.0,
            count: 5,
            scale: GridScale::Linear
        }
        .validate()
        .is_err());
        assert!(Grid {
            min: 0.0,
            max: 1.0,
            count: 1,
            scale: GridScale::Linear
        }
        .validate()
        .is_err());
        assert!(Grid {
            min: 0.0,
            max: 1.0,
            count: 3,
            scale: GridScale::Log
        }
        .validate()
        .is_err());
    }

    #[test]
    fn header_layout() {
        let spec = small_spec();
        let h = spec.header();
        assert_eq!(&h[..4], &["a_H", "delta_p_H", "p_cyc", "W_ext"]);
        assert_eq!(h.len(), 4 + 10);
        let rows = run_sweep(&spec).unwrap();
        assert_eq!(rows.len(), 5);
        assert!(rows.iter().all(|r| r.fields().len() == h.len()));
        assert!(rows.windows(2).all(|w| w[0].swept_value < w[1].swept_value));
    }

    #[test]
    fn cold_bath_must_stay_colder() {
        let mut spec = small_spec();
        spec.grid.min = 10.0;
        let err = run_sweep(&spec).unwrap_err();
        assert!(err.is_config(), "{err}");
    }

    #[test]
    fn cycle_outputs_need_cold_bath() {
        let mut spec = small_spec();
        spec.cold = None;
        assert!(matches!(spec.validate(), Err(Error::Config(_))));
        spec.outputs = vec![Output::DeltaPHot];
        spec.population = Population::Fixed(0.2);
        assert!(spec.validate().is_ok());
    }

    #[test]
    fn decoupled_duration_pins_hot_timescale() {
        let mut spec = small_spec();
        spec.cold = None;
        spec.population = Population::Fixed(0.0);
        spec.outputs = vec![Output::DeltaPHot, Output::HotDuration];
        spec.decoupled_duration = Some(0.5);
        let rows = run_sweep(&spec).unwrap();
        for r in &rows {
            assert_eq!(r.values[1], 0.5);
            let expected = response(2.0, 0.5, r.swept_value).unwrap();
            assert!((r.values[0] - expected).abs() <= 1e-14 * expected);
        }
        spec.cold = Some(Bath::Acceleration(15.0));
        spec.outputs.push(Output::PCyc);
        assert!(spec.validate().is_err());
    }

    #[test]
    fn parallel_matches_sequential() {
        let spec = small_spec();
        assert_eq!(
            run_sweep(&spec).unwrap(),
            run_sweep_parallel(&spec, 4).unwrap()
        );
    }

    #[test]
    fn oracle_check_records_deviation() {
        let mut spec = small_spec();
        spec.grid.count = 11;
        spec.oracle_check = true;
        let rows = run_sweep(&spec).unwrap();
        for (i, r) in rows.iter().enumerate() {
            if i % ORACLE_STRIDE == 0 {
                assert!(r.oracle_deviation.unwrap() <= ORACLE_TOLERANCE);
            } else {
                assert!(r.oracle_deviation.is_none());
            }
        }
    }
}
