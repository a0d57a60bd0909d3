//! omega-T sweeps over the fringe shift and their table emission
//! (CSV, JSON, gnuplot data).

use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::validate;
use crate::model::{InterferometerGeometry, ParticleParams, SolenoidDrive};
use crate::phase::{f_ratio_outcome, fringe_shift, PhaseRequest};
use crate::quadrature::QuadratureSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepMode {
    /// f(omega T) of the l1 = l2 = b geometry; needs no geometry payload.
    SymmetricF,
    /// Full fringe_shift per grid point; needs geometry and drive.
    FullGeometry,
}

impl FromStr for SweepMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "symmetric_f" | "symmetric" => Ok(SweepMode::SymmetricF),
            "full_geometry" | "full" => Ok(SweepMode::FullGeometry),
            other => Err(format!(
                "unknown mode '{other}' (expected symmetric_f or full_geometry)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
    GnuplotDat,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            "gnuplot" | "gnuplot_dat" | "dat" => Ok(OutputFormat::GnuplotDat),
            other => Err(format!(
                "unknown format '{other}' (expected csv, json or gnuplot)"
            )),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
            OutputFormat::GnuplotDat => "gnuplot",
        })
    }
}

/// One sweep over a uniform omega T grid.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub omega_t_min: f64,
    pub omega_t_max: f64,
    pub step: f64,
    pub mode: SweepMode,
    pub geom: Option<InterferometerGeometry>,
    pub drive: Option<SolenoidDrive>,
    pub particle: Option<ParticleParams>,
    pub quad: QuadratureSpec,
    pub constants: PhysicalConstants,
    /// Worker threads for row computation; 0 and 1 both mean serial.
    pub jobs: usize,
}

impl SweepSpec {
    /// The Fig. 2 preset: f(omega T) on omega T in [0, 25], step 0.05.
    pub fn fig2(quad: QuadratureSpec, constants: PhysicalConstants) -> Self {
        Self {
            omega_t_min: 0.0,
            omega_t_max: 25.0,
            step: 0.05,
            mode: SweepMode::SymmetricF,
            geom: None,
            drive: None,
            particle: None,
            quad,
            constants,
            jobs: 1,
        }
    }

    fn validate(&self) -> Result<()> {
        validate::non_negative("omega_t_min", self.omega_t_min)?;
        if !self.omega_t_max.is_finite() || self.omega_t_max < self.omega_t_min {
            return Err(Error::InvalidArgument {
                name: "omega_t_max",
                requirement: ">= omega_t_min",
                value: self.omega_t_max,
            });
        }
        validate::positive("step", self.step)?;
        if self.mode == SweepMode::FullGeometry {
            if self.geom.is_none() {
                return Err(Error::MissingInput {
                    what: "full_geometry sweep needs an interferometer geometry",
                });
            }
            if self.drive.is_none() {
                return Err(Error::MissingInput {
                    what: "full_geometry sweep needs a solenoid drive",
                });
            }
        }
        Ok(())
    }

    /// Uniform grid omega_t_k = min + k step. The count is rounded when the
    /// span is an integer number of steps to within 1e-6 steps, so e.g.
    /// [0, 25] at 0.05 yields exactly 501 points.
    fn grid(&self) -> Vec<f64> {
        let span = self.omega_t_max - self.omega_t_min;
        let ratio = span / self.step;
        let n = if (ratio - ratio.round()).abs() < 1e-6 {
            ratio.round() as usize
        } else {
            ratio.floor() as usize
        };
        (0..=n)
            .map(|k| self.omega_t_min + k as f64 * self.step)
            .collect()
    }

    /// Reference transit time converting omega T to omega: the larger
    /// transit when a geometry is given, 1 s otherwise.
    fn t_ref(&self) -> f64 {
        self.geom.map(|g| g.t_s().max(g.t_d())).unwrap_or(1.0)
    }
}

/// One grid point of a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub omega: f64,
    pub omega_t: f64,
    pub f: f64,
    pub dn_omega: f64,
    pub dn_static: f64,
    /// Quadrature error estimate on phi_u (rad).
    pub quad_error: f64,
    /// Marks quadrature non-convergence; the row is kept either way.
    pub converged: bool,
}

fn compute_row(spec: &SweepSpec, omega_t: f64, t_ref: f64) -> SweepRow {
    let omega = omega_t / t_ref;
    match spec.mode {
        SweepMode::SymmetricF => {
            let out = f_ratio_outcome(omega_t, &spec.quad);
            let dn_static = spec
                .drive
                .as_ref()
                .map(|d| {
                    let q = spec
                        .particle
                        .as_ref()
                        .map(|p| p.charge())
                        .unwrap_or_else(|| spec.constants.e_charge());
                    q * d.lambda_flux() / (2.0 * std::f64::consts::PI * spec.constants.hbar())
                })
                .unwrap_or(1.0);
            SweepRow {
                omega,
                omega_t,
                f: out.value,
                dn_omega: out.value * dn_static,
                dn_static,
                // phi error in rad: dn error times pi
                quad_error: out.error_estimate * dn_static.abs() * std::f64::consts::PI,
                converged: out.converged,
            }
        }
        SweepMode::FullGeometry => {
            let geom = spec.geom.expect("validated");
            let drive = spec
                .drive
                .expect("validated")
                .with_omega(omega)
                .expect("grid omega is non-negative");
            let req = PhaseRequest::new(geom, drive, spec.particle, spec.quad, spec.constants)
                .expect("clearance was validated before the sweep started");
            let res = fringe_shift(&req);
            SweepRow {
                omega,
                omega_t,
                f: res.f_ratio,
                dn_omega: res.dn_omega,
                dn_static: res.dn_static,
                quad_error: res.quad_error,
                converged: res.converged,
            }
        }
    }
}

/// Run the sweep: one row per grid point, strictly increasing in omega_t.
///
/// Rows are computed concurrently up to `spec.jobs` threads; assembly is
/// order-preserving and each row's arithmetic is identical to the serial
/// path, so the output does not depend on the thread count.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    let t_ref = spec.t_ref();
    if spec.mode == SweepMode::FullGeometry {
        // surface clearance violations once, before spawning workers
        let geom = spec.geom.expect("validated");
        let drive = spec.drive.expect("validated");
        PhaseRequest::new(geom, drive, spec.particle, spec.quad, spec.constants)?;
    }

    let grid = spec.grid();
    let jobs = spec.jobs.max(1).min(grid.len().max(1));
    if jobs == 1 {
        return Ok(grid
            .iter()
            .map(|&x| compute_row(spec, x, t_ref))
            .collect());
    }

    let chunk = grid.len().div_ceil(jobs);
    let mut rows: Vec<Option<SweepRow>> = vec![None; grid.len()];
    std::thread::scope(|scope| {
        for (grid_chunk, out_chunk) in grid.chunks(chunk).zip(rows.chunks_mut(chunk)) {
            scope.spawn(move || {
                for (x, slot) in grid_chunk.iter().zip(out_chunk.iter_mut()) {
                    *slot = Some(compute_row(spec, *x, t_ref));
                }
            });
        }
    });
    Ok(rows
        .into_iter()
        .map(|r| r.expect("every grid slot is filled by exactly one worker"))
        .collect())
}

pub const CSV_HEADER: &str = "omega,omega_t,f,dn_omega,dn_static,quad_error";

fn num(x: f64) -> String {
    // 17 significant digits: lossless f64 round trip
    format!("{x:.16e}")
}

/// Serialize rows to `out`. CSV columns and JSON field names follow
/// `CSV_HEADER`; gnuplot data is `omega_t f` with a '#' header line.
pub fn write_table<W: Write>(
    rows: &[SweepRow],
    format: OutputFormat,
    out: &mut W,
) -> std::io::Result<()> {
    match format {
        OutputFormat::Csv => {
            writeln!(out, "{CSV_HEADER}")?;
            for r in rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    num(r.omega),
                    num(r.omega_t),
                    num(r.f),
                    num(r.dn_omega),
                    num(r.dn_static),
                    num(r.quad_error)
                )?;
            }
        }
        OutputFormat::GnuplotDat => {
            writeln!(out, "# omega_t f")?;
            for r in rows {
                writeln!(out, "{} {}", num(r.omega_t), num(r.f))?;
            }
        }
        OutputFormat::Json => {
            writeln!(out, "[")?;
            for (i, r) in rows.iter().enumerate() {
                let comma = if i + 1 < rows.len() { "," } else { "" };
                writeln!(
                    out,
                    "  {{\"omega\": {}, \"omega_t\": {}, \"f\": {}, \"dn_omega\": {}, \"dn_static\": {}, \"quad_error\": {}}}{comma}",
                    num(r.omega),
                    num(r.omega_t),
                    num(r.f),
                    num(r.dn_omega),
                    num(r.dn_static),
                    num(r.quad_error)
                )?;
            }
            writeln!(out, "]")?;
        }
    }
    Ok(())
}

/// Write rows to a file. Empty input and I/O failures are errors; rows are
/// never silently dropped.
pub fn emit_table(rows: &[SweepRow], format: OutputFormat, path: &Path) -> Result<()> {
    if rows.is_empty() {
        return Err(Error::EmptyTable);
    }
    let wrap = |source: std::io::Error| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = File::create(path).map_err(wrap)?;
    let mut writer = BufWriter::new(file);
    write_table(rows, format, &mut writer).map_err(wrap)?;
    writer.flush().map_err(wrap)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig2_spec() -> SweepSpec {
        SweepSpec::fig2(QuadratureSpec::default(), PhysicalConstants::si())
    }

    #[test]
    fn single_point_grid() {
        let mut spec = fig2_spec();
        spec.omega_t_max = 0.0;
        let rows = run_sweep(&spec).unwrap();
        assert_eq!(rows.len(), 1);
        assert!((rows[0].f - 1.0).abs() < 1e-10);
        assert_eq!(rows[0].dn_static, 1.0);
    }

    #[test]
    fn fig2_grid_has_501_rows_increasing() {
        let rows = run_sweep(&fig2_spec()).unwrap();
        assert_eq!(rows.len(), 501);
        for pair in rows.windows(2) {
            assert!(pair[1].omega_t > pair[0].omega_t);
        }
        for r in &rows {
            assert!(r.converged);
            assert!((r.f - r.dn_omega / r.dn_static).abs() <= 1e-12);
        }
    }

    #[test]
    fn parallel_equals_serial() {
        let mut spec = fig2_spec();
        spec.omega_t_max = 5.0;
        let serial = run_sweep(&spec).unwrap();
        spec.jobs = 7;
        let parallel = run_sweep(&spec).unwrap();
        assert_eq!(serial.len(), parallel.len());
        for (a, b) in serial.iter().zip(&parallel) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn full_geometry_steady_rows() {
        let k = PhysicalConstants::si();
        let geom = InterferometerGeometry::new(0.01, 0.02, 0.008, 2e-8, 4e-8).unwrap();
        let drive =
            SolenoidDrive::from_flux(k.flux_quantum(k.e_charge()), 1e-4, 0.0, 1.0, &k).unwrap();
        let spec = SweepSpec {
            omega_t_min: 0.0,
            omega_t_max: 0.0,
            step: 1.0,
            mode: SweepMode::FullGeometry,
            geom: Some(geom),
            drive: Some(drive),
            particle: None,
            quad: QuadratureSpec::default(),
            constants: k,
            jobs: 1,
        };
        let rows = run_sweep(&spec).unwrap();
        assert_eq!(rows.len(), 1);
        let r = &rows[0];
        assert!((r.dn_omega - r.dn_static).abs() / r.dn_static < 1e-9);
    }

    #[test]
    fn full_geometry_requires_payloads() {
        let mut spec = fig2_spec();
        spec.mode = SweepMode::FullGeometry;
        assert!(matches!(
            run_sweep(&spec).unwrap_err(),
            Error::MissingInput { .. }
        ));
    }

    #[test]
    fn rejects_bad_grid() {
        let mut spec = fig2_spec();
        spec.step = 0.0;
        assert!(run_sweep(&spec).is_err());
        let mut spec = fig2_spec();
        spec.omega_t_min = -1.0;
        assert!(run_sweep(&spec).is_err());
        let mut spec = fig2_spec();
        spec.omega_t_max = spec.omega_t_min - 1.0;
        assert!(run_sweep(&spec).is_err());
    }

    #[test]
    fn csv_round_trips_at_full_precision() {
        let mut spec = fig2_spec();
        spec.omega_t_max = 2.0;
        spec.step = 0.25;
        let rows = run_sweep(&spec).unwrap();
        let mut buf = Vec::new();
        write_table(&rows, OutputFormat::Csv, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER);
        for (line, row) in lines.zip(&rows) {
            let fields: Vec<f64> = line.split(',').map(|s| s.parse().unwrap()).collect();
            assert_eq!(fields[0], row.omega);
            assert_eq!(fields[1], row.omega_t);
            assert_eq!(fields[2], row.f);
            assert_eq!(fields[3], row.dn_omega);
            assert_eq!(fields[4], row.dn_static);
            assert_eq!(fields[5], row.quad_error);
        }
    }

    #[test]
    fn gnuplot_header_is_commented() {
        let rows = vec![SweepRow {
            omega: 0.0,
            omega_t: 0.0,
            f: 1.0,
            dn_omega: 1.0,
            dn_static: 1.0,
            quad_error: 0.0,
            converged: true,
        }];
        let mut buf = Vec::new();
        write_table(&rows, OutputFormat::GnuplotDat, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with('#'));
        assert_eq!(text.lines().count(), 2);
    }

    #[test]
    fn json_field_names_match_csv_header() {
        let rows = vec![SweepRow {
            omega: 1.5,
            omega_t: 3.0,
            f: -0.25,
            dn_omega: -0.5,
            dn_static: 2.0,
            quad_error: 1e-12,
            converged: true,
        }];
        let mut buf = Vec::new();
        write_table(&rows, OutputFormat::Json, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        for name in CSV_HEADER.split(',') {
            assert!(text.contains(&format!("\"{name}\"")), "missing {name}");
        }
    }

    #[test]
    fn emit_rejects_empty_rows_and_bad_path() {
        let err = emit_table(&[], OutputFormat::Csv, Path::new("/tmp/x.csv")).unwrap_err();
        assert!(matches!(err, Error::EmptyTable));
        let rows = vec![SweepRow {
            omega: 0.0,
            omega_t: 0.0,
            f: 1.0,
            dn_omega: 1.0,
            dn_static: 1.0,
            quad_error: 0.0,
            converged: true,
        }];
        let err = emit_table(
            &rows,
            OutputFormat::Csv,
            Path::new("/nonexistent-dir/out.csv"),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Io { .. }));
    }
}
