//! Named sweeps `fig2` to `fig6`, one per standard plot.
//!
//! Speeds, cold-bath accelerations, gap values and series values are fixed
//! per preset. Grid ranges:
//!
//! * `a_H` sweeps run log-spaced over `[max(a_C + 1, 15), 500]`, 100 points;
//! * the `R_hot` sweep spans the radii of `a_H ∈ [1, 500]` at `v = 0.999`,
//!   wide enough to show `δp_H` turning negative for `0 < p < 1/2`;
//! * the gap sweep runs linearly over `ΔE ∈ [0.01, 10]`, 200 points, with `E1 = 1`.
//!
//! The transition-probability presets (fig2, fig3) evaluate the hot contact at
//! gap `E = 1`.

use super::{
    Bath, Grid, GridScale, Output, Population, Series, SeriesParam, SweepSpec, SweepVariable,
    UpperGap,
};
use crate::error::{Error, Result};
use crate::kinematics::lorentz_gamma;

pub const PRESETS: [&str; 5] = ["fig2", "fig3", "fig4", "fig5", "fig6"];

const A_HOT_MAX: f64 = 500.0;

fn a_hot_grid(a_cold: Option<f64>) -> Grid {
    let min = a_cold.map_or(15.0, |a| (a + 1.0).max(15.0));
    Grid {
        min,
        max: A_HOT_MAX,
        count: 100,
        scale: GridScale::Log,
    }
}

/// `δp_H/λ²` against `a_H` for `p ∈ {0, 0.25, 0.5, 0.75}`, `v = 0.999`.
pub fn fig2() -> SweepSpec {
    SweepSpec {
        variable: SweepVariable::HotAcceleration,
        grid: a_hot_grid(None),
        speed: 0.999,
        hot: None,
        cold: None,
        e1: 0.5,
        upper: UpperGap::Absolute(1.0),
        population: Population::Fixed(0.0),
        series: Some(Series {
            param: SeriesParam::Population,
            values: vec![0.0, 0.25, 0.5, 0.75],
        }),
        outputs: vec![Output::DeltaPHot],
        oracle_check: false,
        decoupled_duration: None,
    }
}

/// `δp_H/λ²` against `R_hot` for the same populations and speed as [`fig2`].
pub fn fig3() -> SweepSpec {
    let v: f64 = 0.999;
    let gamma = lorentz_gamma(v).expect("valid speed");
    let gv2 = gamma * gamma * v * v;
    SweepSpec {
        variable: SweepVariable::HotRadius,
        grid: Grid {
            min: gv2 / A_HOT_MAX,
            max: gv2 / 1.0,
            count: 100,
            scale: GridScale::Log,
        },
        ..fig2()
    }
}

/// `p_cyc` against `a_H` for `v ∈ {0.9, 0.99, 0.999}`, `a_C = 15`, `E1 = 1`, `E2 = 2`.
pub fn fig4() -> SweepSpec {
    SweepSpec {
        variable: SweepVariable::HotAcceleration,
        grid: a_hot_grid(Some(15.0)),
        speed: 0.999,
        hot: None,
        cold: Some(Bath::Acceleration(15.0)),
        e1: 1.0,
        upper: UpperGap::Change(1.0),
        population: Population::Cyclic,
        series: Some(Series {
            param: SeriesParam::Speed,
            values: vec![0.9, 0.99, 0.999],
        }),
        outputs: vec![Output::PCyc],
        oracle_check: false,
        decoupled_duration: None,
    }
}

/// `W_ext/λ²` against `a_H`, otherwise as [`fig4`] (`ΔE = 1`).
pub fn fig5() -> SweepSpec {
    SweepSpec {
        outputs: vec![Output::ExtractedWork],
        ..fig4()
    }
}

/// `W_ext/λ²` against `ΔE` for `a_H ∈ {30, 50, 100}`, `a_C = 20`, `v = 0.999`.
pub fn fig6() -> SweepSpec {
    SweepSpec {
        variable: SweepVariable::GapChange,
        grid: Grid {
            min: 0.01,
            max: 10.0,
            count: 200,
            scale: GridScale::Linear,
        },
        speed: 0.999,
        hot: None,
        cold: Some(Bath::Acceleration(20.0)),
        e1: 1.0,
        upper: UpperGap::Change(1.0),
        population: Population::Cyclic,
        series: Some(Series {
            param: SeriesParam::HotAcceleration,
            values: vec![30.0, 50.0, 100.0],
        }),
        outputs: vec![Output::ExtractedWork],
        oracle_check: false,
        decoupled_duration: None,
    }
}

pub fn preset(name: &str) -> Result<SweepSpec> {
    match name {
        "fig2" => Ok(fig2()),
        "fig3" => Ok(fig3()),
        "fig4" => Ok(fig4()),
        "fig5" => Ok(fig5()),
        "fig6" => Ok(fig6()),
        other => Err(Error::Config(format!(
            "unknown preset '{other}' (expected one of {})",
            PRESETS.join(", ")
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_validate() {
        for name in PRESETS {
            preset(name).unwrap().validate().unwrap();
        }
        assert!(preset("fig7").is_err());
    }

    #[test]
    fn preset_parameters() {
        let f2 = fig2();
        assert_eq!(f2.speed, 0.999);
        assert_eq!(
            f2.series.as_ref().unwrap().values,
            vec![0.0, 0.25, 0.5, 0.75]
        );
        assert_eq!(fig3().series, f2.series);

        for f in [fig4(), fig5()] {
            assert_eq!(f.cold, Some(Bath::Acceleration(15.0)));
            assert_eq!(f.series.as_ref().unwrap().values, vec![0.9, 0.99, 0.999]);
            assert_eq!((f.e1, f.upper), (1.0, UpperGap::Change(1.0)));
            assert_eq!(f.grid.min, 16.0);
        }

        let f6 = fig6();
        assert_eq!(f6.cold, Some(Bath::Acceleration(20.0)));
        assert_eq!(f6.speed, 0.999);
        assert_eq!(f6.e1, 1.0);
        assert_eq!((f6.grid.min, f6.grid.max, f6.grid.count), (0.01, 10.0, 200));
    }

    #[test]
    fn fig3_radii_match_acceleration_range() {
        let f3 = fig3();
        let gamma = lorentz_gamma(0.999).unwrap();
        let a_at_min = gamma * gamma * 0.999 * 0.999 / f3.grid.min;
        assert!((a_at_min - 500.0).abs() < 1e-9);
    }
}
