//! Flat `key = value` configuration files.
//!
//! One assignment per line; `#` starts a comment; blank lines are ignored.
//! Keys may appear at most once.
//!
//! ```text
//! # fig5-like sweep
//! sweep = a_H          # a_H | R_hot | delta_E
//! min = 16
//! max = 500
//! count = 100
//! scale = log          # linear | log (default: log, linear for delta_E)
//! v = 0.999
//! a_cold = 15          # or r_cold
//! e1 = 1               # default 1
//! delta_E = 1          # or e2
//! p = cyc              # or a number in [0, 1]
//! series = v           # p | v | a_H
//! series_values = 0.9, 0.99, 0.999
//! outputs = W_ext, p_cyc
//! oracle_check = false
//! ```
//!
//! `delta_E` sweeps need a fixed hot bath (`a_hot` or `r_hot`) or an `a_H`
//! series. `decoupled_T` pins the hot switching timescale.
//!
//! A single cycle uses `v`, `a_hot`/`r_hot`, `a_cold`/`r_cold`, `e1`,
//! `e2`/`delta_E` and optionally `p`.

use std::collections::BTreeMap;

use super::{
    Bath, Grid, GridScale, Output, Population, Series, SweepSpec, SweepVariable, UpperGap,
};
use crate::engine::CycleConfig;
use crate::error::{Error, Result};

pub fn parse_key_values(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {}: expected 'key = value'", lineno + 1)))?;
        let key = key.trim();
        let value = value.trim();
        if key.is_empty() || value.is_empty() {
            return Err(Error::Config(format!(
                "line {}: empty key or value",
                lineno + 1
            )));
        }
        if map.insert(key.to_string(), value.to_string()).is_some() {
            return Err(Error::Config(format!(
                "line {}: duplicate key '{key}'",
                lineno + 1
            )));
        }
    }
    Ok(map)
}

struct Keys {
    map: BTreeMap<String, String>,
}

impl Keys {
    fn take(&mut self, key: &str) -> Option<String> {
        self.map.remove(key)
    }

    fn number(&mut self, key: &str) -> Result<Option<f64>> {
        self.take(key)
            .map(|v| {
                v.parse::<f64>()
                    .map_err(|_| Error::Config(format!("{key}: '{v}' is not a number")))
            })
            .transpose()
    }

    fn required(&mut self, key: &str) -> Result<f64> {
        self.number(key)?
            .ok_or_else(|| Error::Config(format!("missing key '{key}'")))
    }

    fn exclusive_bath(&mut self, accel: &str, radius: &str) -> Result<Option<Bath>> {
        match (self.number(accel)?, self.number(radius)?) {
            (Some(_), Some(_)) => Err(Error::Config(format!(
                "give only one of '{accel}' and '{radius}'"
            ))),
            (Some(a), None) => Ok(Some(Bath::Acceleration(a))),
            (None, Some(r)) => Ok(Some(Bath::Radius(r))),
            (None, None) => Ok(None),
        }
    }

    fn upper_gap(&mut self) -> Result<Option<UpperGap>> {
        match (self.number("e2")?, self.number("delta_E")?) {
            (Some(_), Some(_)) => Err(Error::Config("give only one of 'e2' and 'delta_E'".into())),
            (Some(e2), None) => Ok(Some(UpperGap::Absolute(e2))),
            (None, Some(d)) => Ok(Some(UpperGap::Change(d))),
            (None, None) => Ok(None),
        }
    }

    fn population(&mut self) -> Result<Population> {
        match self.take("p").as_deref() {
            None | Some("cyc") => Ok(Population::Cyclic),
            Some(v) => v
                .parse::<f64>()
                .map(Population::Fixed)
                .map_err(|_| Error::Config(format!("p: '{v}' is neither a number nor 'cyc'"))),
        }
    }

    fn finish(self) -> Result<()> {
        if let Some(k) = self.map.keys().next() {
            return Err(Error::Config(format!("unknown key '{k}'")));
        }
        Ok(())
    }
}

fn list<T, F: Fn(&str) -> Result<T>>(text: &str, f: F) -> Result<Vec<T>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(f)
        .collect()
}

pub fn spec_from_config_str(text: &str) -> Result<SweepSpec> {
    let mut keys = Keys {
        map: parse_key_values(text)?,
    };
    let variable: SweepVariable = keys
        .take("sweep")
        .ok_or_else(|| Error::Config("missing key 'sweep'".into()))?
        .parse()?;
    let scale = match keys.take("scale").as_deref() {
        Some("linear") => GridScale::Linear,
        Some("log") => GridScale::Log,
        None if variable == SweepVariable::GapChange => GridScale::Linear,
        None => GridScale::Log,
        Some(other) => return Err(Error::Config(format!("unknown scale '{other}'"))),
    };
    let count = keys.required("count")?;
    if !(count >= 2.0 && count.fract() == 0.0) {
        return Err(Error::Config(format!(
            "count = {count} must be an integer >= 2"
        )));
    }
    let grid = Grid {
        min: keys.required("min")?,
        max: keys.required("max")?,
        count: count as usize,
        scale,
    };
    let speed = keys.required("v")?;
    let hot = keys.exclusive_bath("a_hot", "r_hot")?;
    let cold = keys.exclusive_bath("a_cold", "r_cold")?;
    let e1 = keys.number("e1")?.unwrap_or(1.0);
    let upper = match keys.upper_gap()? {
        Some(u) => u,
        None if variable == SweepVariable::GapChange => UpperGap::Change(0.0),
        None => return Err(Error::Config("missing 'e2' or 'delta_E'".into())),
    };
    let population = keys.population()?;
    let series = match (keys.take("series"), keys.take("series_values")) {
        (Some(p), Some(vals)) => Some(Series {
            param: p.parse()?,
            values: list(&vals, |s| {
                s.parse::<f64>()
                    .map_err(|_| Error::Config(format!("series value '{s}' is not a number")))
            })?,
        }),
        (None, None) => None,
        _ => {
            return Err(Error::Config(
                "'series' and 'series_values' go together".into(),
            ))
        }
    };
    let outputs = list(
        &keys
            .take("outputs")
            .ok_or_else(|| Error::Config("missing key 'outputs'".into()))?,
        str::parse::<Output>,
    )?;
    let oracle_check = match keys.take("oracle_check").as_deref() {
        None | Some("false") => false,
        Some("true") => true,
        Some(other) => {
            return Err(Error::Config(format!(
                "oracle_check: '{other}' is not true/false"
            )))
        }
    };
    let decoupled_duration = keys.number("decoupled_T")?;
    keys.finish()?;

    let spec = SweepSpec {
        variable,
        grid,
        speed,
        hot,
        cold,
        e1,
        upper,
        population,
        series,
        outputs,
        oracle_check,
        decoupled_duration,
    };
    spec.validate()?;
    Ok(spec)
}

pub fn cycle_from_config_str(text: &str) -> Result<CycleConfig> {
    let mut keys = Keys {
        map: parse_key_values(text)?,
    };
    let speed = keys.required("v")?;
    let hot = keys
        .exclusive_bath("a_hot", "r_hot")?
        .ok_or_else(|| Error::Config("missing 'a_hot' or 'r_hot'".into()))?;
    let cold = keys
        .exclusive_bath("a_cold", "r_cold")?
        .ok_or_else(|| Error::Config("missing 'a_cold' or 'r_cold'".into()))?;
    let e1 = keys.number("e1")?.unwrap_or(1.0);
    let e2 = match keys.upper_gap()? {
        Some(UpperGap::Absolute(e2)) => e2,
        Some(UpperGap::Change(d)) => e1 + d,
        None => return Err(Error::Config("missing 'e2' or 'delta_E'".into())),
    };
    let population = keys.population()?;
    keys.finish()?;

    let hot = hot.motion(speed)?;
    let cold = cold.motion(speed)?;
    let config = CycleConfig::from_radii(speed, hot.radius(), cold.radius(), e1, e2)?;
    match population {
        Population::Fixed(p) => config.with_population(p),
        Population::Cyclic => Ok(config),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIG5_LIKE: &str = "\
# fig5-like sweep
sweep = a_H
min = 16
max = 500
count = 100
v = 0.999
a_cold = 15   # cold bath
delta_E = 1
p = cyc
series = v
series_values = 0.9, 0.99, 0.999
outputs = W_ext
";

    #[test]
    fn parses_preset_equivalent() {
        let spec = spec_from_config_str(FIG5_LIKE).unwrap();
        assert_eq!(spec, super::super::presets::fig5());
    }

    #[test]
    fn key_value_errors() {
        assert!(parse_key_values("a = 1\na = 2").is_err());
        assert!(parse_key_values("just words").is_err());
        assert!(parse_key_values("a =").is_err());
        assert!(parse_key_values("# only a comment\n\n").unwrap().is_empty());
    }

    #[test]
    fn unknown_and_conflicting_keys() {
        let extra = format!("{FIG5_LIKE}colour = blue\n");
        assert!(matches!(
            spec_from_config_str(&extra),
            Err(Error::Config(_))
        ));
        let both = FIG5_LIKE.replace("a_cold = 15", "a_cold = 15\nr_cold = 3");
        assert!(spec_from_config_str(&both).is_err());
        let bad_count = FIG5_LIKE.replace("count = 100", "count = 2.5");
        assert!(spec_from_config_str(&bad_count).is_err());
        let hot_too_cold = FIG5_LIKE.replace("min = 16", "min = 10");
        assert!(spec_from_config_str(&hot_too_cold).unwrap_err().is_config());
    }

    #[test]
    fn cycle_config() {
        let c =
            cycle_from_config_str("v = 0.999\na_hot = 100\na_cold = 15\ne1 = 1\ne2 = 2\n").unwrap();
        assert_eq!(c.population(), None);
        assert!((c.hot_contact().acceleration - 100.0).abs() < 1e-12);
        let c = cycle_from_config_str("v = 0.9\nr_hot = 1\nr_cold = 2\ndelta_E = 0.5\np = 0.2\n")
            .unwrap();
        assert_eq!(c.e2(), 1.5);
        assert_eq!(c.population(), Some(0.2));
        assert!(cycle_from_config_str("v = 0.9\nr_hot = 2\nr_cold = 1\ne2 = 2\n").is_err());
    }
}
