//! Layered CLI settings: hard defaults, then an optional config file
//! (key=value or JSON, named by --config or $ABFRINGE_CONFIG), then flags.

use std::path::Path;

use serde::Deserialize;

use crate::{CliError, CommonArgs, EXIT_INVALID, EXIT_IO};

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Settings {
    pub l1: Option<f64>,
    pub l2: Option<f64>,
    pub b: Option<f64>,
    pub ts: Option<f64>,
    pub td: Option<f64>,
    pub i0: Option<f64>,
    pub radius: Option<f64>,
    pub omega: Option<f64>,
    pub lambda: Option<f64>,
    pub flux: Option<f64>,
    pub energy_ev: Option<f64>,
    pub mass: Option<f64>,
    pub charge: Option<f64>,
    pub omega_t_min: Option<f64>,
    pub omega_t_max: Option<f64>,
    pub step: Option<f64>,
    pub mode: Option<String>,
    pub format: Option<String>,
    pub out: Option<String>,
    pub jobs: Option<usize>,
    pub rel_tol: Option<f64>,
    pub abs_tol: Option<f64>,
    pub steps: Option<usize>,
}

impl Settings {
    /// Later layers win field by field.
    pub fn overlay(self, over: Settings) -> Settings {
        Settings {
            l1: over.l1.or(self.l1),
            l2: over.l2.or(self.l2),
            b: over.b.or(self.b),
            ts: over.ts.or(self.ts),
            td: over.td.or(self.td),
            i0: over.i0.or(self.i0),
            radius: over.radius.or(self.radius),
            omega: over.omega.or(self.omega),
            lambda: over.lambda.or(self.lambda),
            flux: over.flux.or(self.flux),
            energy_ev: over.energy_ev.or(self.energy_ev),
            mass: over.mass.or(self.mass),
            charge: over.charge.or(self.charge),
            omega_t_min: over.omega_t_min.or(self.omega_t_min),
            omega_t_max: over.omega_t_max.or(self.omega_t_max),
            step: over.step.or(self.step),
            mode: over.mode.or(self.mode),
            format: over.format.or(self.format),
            out: over.out.or(self.out),
            jobs: over.jobs.or(self.jobs),
            rel_tol: over.rel_tol.or(self.rel_tol),
            abs_tol: over.abs_tol.or(self.abs_tol),
            steps: over.steps.or(self.steps),
        }
    }
}

impl From<&CommonArgs> for Settings {
    fn from(a: &CommonArgs) -> Self {
        Settings {
            l1: a.l1,
            l2: a.l2,
            b: a.b,
            ts: a.ts,
            td: a.td,
            i0: a.i0,
            radius: a.radius,
            omega: a.omega,
            lambda: a.lambda,
            flux: a.flux,
            energy_ev: a.energy_ev,
            mass: a.mass,
            charge: a.charge,
            omega_t_min: a.omega_t_min,
            omega_t_max: a.omega_t_max,
            step: a.step,
            mode: a.mode.clone(),
            format: a.format.clone(),
            out: a.out.clone(),
            jobs: a.jobs,
            rel_tol: a.rel_tol,
            abs_tol: a.abs_tol,
            steps: a.steps,
        }
    }
}

/// Load settings from `path`, or from $ABFRINGE_CONFIG when no path is
/// given, or empty settings when neither names a file.
pub fn load(path: Option<&Path>) -> Result<Settings, CliError> {
    let owned;
    let path = match path {
        Some(p) => p,
        None => match std::env::var_os("ABFRINGE_CONFIG") {
            Some(v) => {
                owned = std::path::PathBuf::from(v);
                owned.as_path()
            }
            None => return Ok(Settings::default()),
        },
    };
    let text = std::fs::read_to_string(path).map_err(|e| CliError {
        code: EXIT_IO,
        message: format!("cannot read config {}: {e}", path.display()),
    })?;
    parse(&text).map_err(|msg| CliError {
        code: EXIT_INVALID,
        message: format!("config {}: {msg}", path.display()),
    })
}

fn parse(text: &str) -> Result<Settings, String> {
    if text.trim_start().starts_with('{') {
        serde_json::from_str(text).map_err(|e| e.to_string())
    } else {
        parse_key_value(text)
    }
}

fn parse_key_value(text: &str) -> Result<Settings, String> {
    let mut s = Settings::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("line {}: expected key=value, got '{line}'", lineno + 1))?;
        let key = key.trim();
        let value = value.trim();
        let bad =
            |e: std::num::ParseFloatError| format!("line {}: {key}: {e}", lineno + 1);
        let bad_int =
            |e: std::num::ParseIntError| format!("line {}: {key}: {e}", lineno + 1);
        match key {
            "l1" => s.l1 = Some(value.parse().map_err(bad)?),
            "l2" => s.l2 = Some(value.parse().map_err(bad)?),
            "b" => s.b = Some(value.parse().map_err(bad)?),
            "ts" => s.ts = Some(value.parse().map_err(bad)?),
            "td" => s.td = Some(value.parse().map_err(bad)?),
            "i0" => s.i0 = Some(value.parse().map_err(bad)?),
            "radius" => s.radius = Some(value.parse().map_err(bad)?),
            "omega" => s.omega = Some(value.parse().map_err(bad)?),
            "lambda" => s.lambda = Some(value.parse().map_err(bad)?),
            "flux" => s.flux = Some(value.parse().map_err(bad)?),
            "energy_ev" => s.energy_ev = Some(value.parse().map_err(bad)?),
            "mass" => s.mass = Some(value.parse().map_err(bad)?),
            "charge" => s.charge = Some(value.parse().map_err(bad)?),
            "omega_t_min" => s.omega_t_min = Some(value.parse().map_err(bad)?),
            "omega_t_max" => s.omega_t_max = Some(value.parse().map_err(bad)?),
            "step" => s.step = Some(value.parse().map_err(bad)?),
            "mode" => s.mode = Some(value.to_owned()),
            "format" => s.format = Some(value.to_owned()),
            "out" => s.out = Some(value.to_owned()),
            "jobs" => s.jobs = Some(value.parse().map_err(bad_int)?),
            "rel_tol" => s.rel_tol = Some(value.parse().map_err(bad)?),
            "abs_tol" => s.abs_tol = Some(value.parse().map_err(bad)?),
            "steps" => s.steps = Some(value.parse().map_err(bad_int)?),
            other => return Err(format!("line {}: unknown key '{other}'", lineno + 1)),
        }
    }
    Ok(s)
}
