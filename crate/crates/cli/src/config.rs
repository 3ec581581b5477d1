//! Run configuration: defaults, then a flat `key = value` file, then
//! command-line overrides, each layer replacing the one before.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use desitter_core::suites::SuiteConfig;
use desitter_core::{Error, Result};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub seed: u64,
    pub ell: f64,
    pub m: f64,
    pub interior: bool,
    pub chart: String,
    pub h: f64,
    pub s_max: f64,
    pub x0: Option<[f64; 4]>,
    pub u0: Option<[f64; 4]>,
    pub radius: f64,
    pub grid: usize,
    pub samples: usize,
    pub points: usize,
    pub t_min: f64,
    pub t_max: f64,
    pub x_min: f64,
    pub x_max: f64,
    pub nt: usize,
    pub nx: usize,
    pub out_dir: PathBuf,
    pub timing: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        let s = SuiteConfig::default();
        RunConfig {
            seed: s.seed,
            ell: s.ell,
            m: s.mass,
            interior: true,
            chart: "desitter".into(),
            h: s.h,
            s_max: s.s_max,
            x0: None,
            u0: None,
            radius: s.radius,
            grid: s.grid,
            samples: s.samples,
            points: s.points,
            t_min: -3.0,
            t_max: 3.0,
            x_min: -3.0,
            x_max: 3.0,
            nt: 121,
            nx: 121,
            out_dir: PathBuf::from("."),
            timing: false,
        }
    }
}

pub const KEYS: &[&str] = &[
    "seed", "ell", "m", "interior", "chart", "h", "s_max", "x0", "u0", "radius", "grid", "samples", "points", "t_min",
    "t_max", "x_min", "x_max", "nt", "nx", "out_dir", "timing",
];

fn bad(key: &str, value: &str, what: &str) -> Error {
    Error::InvalidInput(format!("{key} = {value:?}: {what}"))
}

fn num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value.trim().parse().map_err(|_| bad(key, value, "not a number"))
}

fn positive(key: &str, value: &str) -> Result<f64> {
    let v: f64 = num(key, value)?;
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(bad(key, value, "must be positive"))
    }
}

fn finite(key: &str, value: &str) -> Result<f64> {
    let v: f64 = num(key, value)?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(bad(key, value, "must be finite"))
    }
}

fn four(key: &str, value: &str) -> Result<[f64; 4]> {
    let parts: Vec<f64> = value.split(',').map(|p| finite(key, p)).collect::<Result<_>>()?;
    parts.try_into().map_err(|_| bad(key, value, "expected four comma-separated numbers"))
}

fn flag(key: &str, value: &str) -> Result<bool> {
    match value.trim() {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        _ => Err(bad(key, value, "expected true or false")),
    }
}

impl RunConfig {
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "seed" => self.seed = num(key, value)?,
            "ell" => self.ell = positive(key, value)?,
            "m" => self.m = positive(key, value)?,
            "interior" => self.interior = flag(key, value)?,
            "chart" => self.chart = value.trim().to_string(),
            "h" => self.h = positive(key, value)?,
            "s_max" => self.s_max = positive(key, value)?,
            "x0" => self.x0 = Some(four(key, value)?),
            "u0" => self.u0 = Some(four(key, value)?),
            "radius" => self.radius = positive(key, value)?,
            "grid" => self.grid = num(key, value)?,
            "samples" => self.samples = num(key, value)?,
            "points" => self.points = num(key, value)?,
            "t_min" => self.t_min = finite(key, value)?,
            "t_max" => self.t_max = finite(key, value)?,
            "x_min" => self.x_min = finite(key, value)?,
            "x_max" => self.x_max = finite(key, value)?,
            "nt" => self.nt = num(key, value)?,
            "nx" => self.nx = num(key, value)?,
            "out_dir" => self.out_dir = PathBuf::from(value.trim()),
            "timing" => self.timing = flag(key, value)?,
            _ => return Err(Error::InvalidInput(format!("unknown configuration key {key:?}"))),
        }
        Ok(())
    }

    pub fn apply<'a>(&mut self, pairs: impl IntoIterator<Item = (&'a str, &'a str)>) -> Result<()> {
        for (k, v) in pairs {
            self.set(k, v)?;
        }
        Ok(())
    }

    /// Defaults, then `file` if given, then `overrides` in order.
    pub fn layered(file: Option<&Path>, overrides: &[(String, String)]) -> Result<Self> {
        let mut cfg = RunConfig::default();
        if let Some(path) = file {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
            let map = parse_flat(&text)?;
            cfg.apply(map.iter().map(|(k, v)| (k.as_str(), v.as_str())))?;
        }
        cfg.apply(overrides.iter().map(|(k, v)| (k.as_str(), v.as_str())))?;
        Ok(cfg)
    }

    pub fn suite_config(&self) -> SuiteConfig {
        SuiteConfig {
            seed: self.seed,
            ell: self.ell,
            mass: self.m,
            radius: self.radius,
            grid: self.grid,
            samples: self.samples,
            points: self.points,
            h: self.h,
            s_max: self.s_max,
            timing: self.timing,
        }
    }
}

/// Parse `key = value` lines. Blank lines and lines starting with `#` are skipped.
pub fn parse_flat(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::InvalidInput(format!("line {}: expected key = value", i + 1)))?;
        let k = k.trim();
        if !KEYS.contains(&k) {
            return Err(Error::InvalidInput(format!("line {}: unknown key {k:?}", i + 1)));
        }
        out.insert(k.to_string(), v.trim().to_string());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_then_overrides() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.cfg");
        fs::write(&path, "# comment\nell = 2\nseed=11\n\nradius = 30\n").unwrap();
        let cfg = RunConfig::layered(Some(&path), &[("seed".into(), "3".into())]).unwrap();
        assert_eq!(cfg.ell, 2.0);
        assert_eq!(cfg.radius, 30.0);
        assert_eq!(cfg.seed, 3);
        assert_eq!(cfg.m, 1.0);
    }

    #[test]
    fn rejects_bad_values() {
        let mut c = RunConfig::default();
        assert!(c.set("ell", "-1").is_err());
        assert!(c.set("ell", "abc").is_err());
        assert!(c.set("x0", "1,2,3").is_err());
        assert!(c.set("colour", "red").is_err());
        assert!(parse_flat("ell 2").is_err());
        assert!(parse_flat("nope = 1").is_err());
        c.set("x0", "0, 0.5, 0, 0").unwrap();
        assert_eq!(c.x0, Some([0.0, 0.5, 0.0, 0.0]));
    }
}
