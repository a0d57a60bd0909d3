//! Command-line front end: single-shot fringe-shift computations,
//! omega-T sweeps, the Fig. 2 preset, regime reports and an
//! oracle-vs-primary consistency hook.
//!
//! Exit codes: 0 success, 1 computation flagged non-converged,
//! 2 I/O failure, 3 invalid input.

mod settings;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use abfringe::{
    build_report, emit_table, fringe_shift, phase_oracle_time_domain, phase_upper, run_sweep,
    static_fringe_shift, write_table, InterferometerGeometry, OutputFormat, ParticleParams,
    PhaseRequest, PhysicalConstants, QuadratureSpec, SolenoidDrive, SweepMode, SweepSpec,
};

use settings::Settings;

const EXIT_NON_CONVERGED: u8 = 1;
const EXIT_IO: u8 = 2;
const EXIT_INVALID: u8 = 3;

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn invalid(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INVALID,
            message: message.into(),
        }
    }
}

impl From<abfringe::Error> for CliError {
    fn from(err: abfringe::Error) -> Self {
        let code = match &err {
            abfringe::Error::Io { .. } => EXIT_IO,
            _ => EXIT_INVALID,
        };
        Self {
            code,
            message: err.to_string(),
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "abfringe",
    version,
    about = "Time-varying Aharonov-Bohm fringe shift for a two-slit interferometer around an AC solenoid"
)]
struct Cli {
    /// Config file (key=value or JSON); flags override file values.
    /// Defaults to $ABFRINGE_CONFIG when set.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

/// Flags shared by every subcommand; all optional so config-file values
/// shine through.
#[derive(Args, Debug, Default, Clone)]
struct CommonArgs {
    /// Source-to-barrier distance l1 (m) [default 0.01]
    #[arg(long)]
    l1: Option<f64>,
    /// Barrier-to-screen distance l2 (m) [default 0.01]
    #[arg(long)]
    l2: Option<f64>,
    /// Slit half-separation b (m) [default 0.01]
    #[arg(long)]
    b: Option<f64>,
    /// Source-to-slit transit time T_S (s) [default 1e-8]
    #[arg(long)]
    ts: Option<f64>,
    /// Slit-to-screen transit time T_D (s) [default 1e-8]
    #[arg(long)]
    td: Option<f64>,
    /// Surface current density amplitude (A/m) [default 1]
    #[arg(long)]
    i0: Option<f64>,
    /// Solenoid radius R (m) [default 1e-3]
    #[arg(long)]
    radius: Option<f64>,
    /// Drive angular frequency (rad/s) [default 0]
    #[arg(long)]
    omega: Option<f64>,
    /// Order parameter lambda in (0, 1] [default 1]
    #[arg(long)]
    lambda: Option<f64>,
    /// Direct lambda*phi_s override (Wb); replaces i0
    #[arg(long)]
    flux: Option<f64>,
    /// Particle kinetic energy (eV) [default 10]
    #[arg(long = "energy-ev")]
    energy_ev: Option<f64>,
    /// Particle mass (kg) [default electron mass]
    #[arg(long)]
    mass: Option<f64>,
    /// Particle charge (C) [default +e]
    #[arg(long)]
    charge: Option<f64>,
    /// Sweep grid lower bound in omega*T [default 0]
    #[arg(long = "omega-t-min")]
    omega_t_min: Option<f64>,
    /// Sweep grid upper bound in omega*T [default 25]
    #[arg(long = "omega-t-max")]
    omega_t_max: Option<f64>,
    /// Sweep grid step in omega*T [default 0.05]
    #[arg(long)]
    step: Option<f64>,
    /// Sweep mode: symmetric_f or full_geometry [default symmetric_f]
    #[arg(long)]
    mode: Option<String>,
    /// Output format: csv, json or gnuplot
    #[arg(long)]
    format: Option<String>,
    /// Output file; stdout when omitted
    #[arg(long)]
    out: Option<String>,
    /// Worker threads for sweeps [default 1]
    #[arg(long)]
    jobs: Option<usize>,
    /// Quadrature relative tolerance [default 1e-10]
    #[arg(long = "rel-tol")]
    rel_tol: Option<f64>,
    /// Quadrature absolute tolerance [default 1e-14]
    #[arg(long = "abs-tol")]
    abs_tol: Option<f64>,
    /// Trapezoid steps per leg for the oracle [default 1000000]
    #[arg(long)]
    steps: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the steady fringe shift dn_S from the drive parameters
    Steady(CommonArgs),
    /// Print the full phase/fringe-shift result for one configuration
    Shift(CommonArgs),
    /// Run an omega-T sweep and write the table
    Sweep(CommonArgs),
    /// Preset sweep reproducing the f(omega T) curve: omega T in [0, 25],
    /// step 0.05, gnuplot two-column output
    Fig2(CommonArgs),
    /// Print the approximation-regime validity report
    Regime(CommonArgs),
    /// Compare the substituted-form phase against the raw time-domain
    /// trapezoid oracle and print the discrepancy
    Oracle(CommonArgs),
}

impl Command {
    fn common(&self) -> &CommonArgs {
        match self {
            Command::Steady(c)
            | Command::Shift(c)
            | Command::Sweep(c)
            | Command::Fig2(c)
            | Command::Regime(c)
            | Command::Oracle(c) => c,
        }
    }
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn build_geometry(s: &Settings) -> Result<InterferometerGeometry, CliError> {
    Ok(InterferometerGeometry::new(
        s.l1.unwrap_or(0.01),
        s.l2.unwrap_or(0.01),
        s.b.unwrap_or(0.01),
        s.ts.unwrap_or(1e-8),
        s.td.unwrap_or(1e-8),
    )?)
}

fn build_drive(s: &Settings, k: &PhysicalConstants) -> Result<SolenoidDrive, CliError> {
    let radius = s.radius.unwrap_or(1e-3);
    let omega = s.omega.unwrap_or(0.0);
    let lambda = s.lambda.unwrap_or(1.0);
    Ok(match s.flux {
        Some(flux) => SolenoidDrive::from_flux(flux, radius, omega, lambda, k)?,
        None => SolenoidDrive::new(s.i0.unwrap_or(1.0), radius, omega, lambda, k)?,
    })
}

fn build_particle(s: &Settings, k: &PhysicalConstants) -> Result<ParticleParams, CliError> {
    let energy = s.energy_ev.unwrap_or(10.0) * abfringe::constants::ELECTRON_VOLT;
    Ok(ParticleParams::new(
        s.mass.unwrap_or(k.m_electron()),
        s.charge.unwrap_or(k.e_charge()),
        energy,
        k,
    )?)
}

fn build_quad(s: &Settings) -> Result<QuadratureSpec, CliError> {
    let d = QuadratureSpec::default();
    Ok(QuadratureSpec::new(
        s.rel_tol.unwrap_or(d.rel_tol),
        s.abs_tol.unwrap_or(d.abs_tol),
        d.max_depth,
        d.min_interval,
    )?)
}

fn build_request(s: &Settings, k: &PhysicalConstants) -> Result<PhaseRequest, CliError> {
    Ok(PhaseRequest::new(
        build_geometry(s)?,
        build_drive(s, k)?,
        Some(build_particle(s, k)?),
        build_quad(s)?,
        *k,
    )?)
}

fn parse_format(s: &Settings, default: OutputFormat) -> Result<OutputFormat, CliError> {
    match &s.format {
        Some(text) => text.parse::<OutputFormat>().map_err(CliError::invalid),
        None => Ok(default),
    }
}

fn emit_rows(
    rows: &[abfringe::SweepRow],
    format: OutputFormat,
    out: &Option<String>,
) -> Result<(), CliError> {
    match out {
        Some(path) => {
            emit_table(rows, format, std::path::Path::new(path))?;
            Ok(())
        }
        None => {
            if rows.is_empty() {
                return Err(abfringe::Error::EmptyTable.into());
            }
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            write_table(rows, format, &mut lock).map_err(|e| CliError {
                code: EXIT_IO,
                message: format!("cannot write to stdout: {e}"),
            })
        }
    }
}

fn check_rows_converged(rows: &[abfringe::SweepRow]) -> Result<(), CliError> {
    let bad: Vec<f64> = rows
        .iter()
        .filter(|r| !r.converged)
        .map(|r| r.omega_t)
        .collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(CliError {
            code: EXIT_NON_CONVERGED,
            message: format!(
                "quadrature did not converge at {} grid point(s), omega_t = {:?}",
                bad.len(),
                bad
            ),
        })
    }
}

fn run_steady(s: &Settings, k: &PhysicalConstants) -> Result<(), CliError> {
    let drive = build_drive(s, k)?;
    println!("phi_s       = {} Wb", num(drive.phi_s()));
    println!("lambda_flux = {} Wb", num(drive.lambda_flux()));
    println!("dn_static   = {}", num(static_fringe_shift(&drive, k)));
    Ok(())
}

fn run_shift(s: &Settings, k: &PhysicalConstants) -> Result<(), CliError> {
    let req = build_request(s, k)?;
    let res = fringe_shift(&req);
    println!("phi_u      = {} rad", num(res.phi_u));
    println!("phi_l      = {} rad", num(res.phi_l));
    println!("dn_omega   = {}", num(res.dn_omega));
    println!("dn_static  = {}", num(res.dn_static));
    println!("f_ratio    = {}", num(res.f_ratio));
    println!("quad_error = {} rad", num(res.quad_error));
    if !res.converged {
        return Err(CliError {
            code: EXIT_NON_CONVERGED,
            message: "quadrature did not converge to the requested tolerance".into(),
        });
    }
    Ok(())
}

fn has_geometry_keys(s: &Settings) -> bool {
    s.l1.is_some() || s.l2.is_some() || s.b.is_some() || s.ts.is_some() || s.td.is_some()
}

fn has_drive_keys(s: &Settings) -> bool {
    s.i0.is_some()
        || s.radius.is_some()
        || s.omega.is_some()
        || s.lambda.is_some()
        || s.flux.is_some()
}

fn run_sweep_cmd(s: &Settings, k: &PhysicalConstants) -> Result<(), CliError> {
    let mode = match &s.mode {
        Some(text) => text.parse::<SweepMode>().map_err(CliError::invalid)?,
        None => SweepMode::SymmetricF,
    };
    let need_payloads = mode == SweepMode::FullGeometry;
    let spec = SweepSpec {
        omega_t_min: s.omega_t_min.unwrap_or(0.0),
        omega_t_max: s.omega_t_max.unwrap_or(25.0),
        step: s.step.unwrap_or(0.05),
        mode,
        geom: (need_payloads || has_geometry_keys(s))
            .then(|| build_geometry(s))
            .transpose()?,
        drive: (need_payloads || has_drive_keys(s))
            .then(|| build_drive(s, k))
            .transpose()?,
        particle: Some(build_particle(s, k)?),
        quad: build_quad(s)?,
        constants: *k,
        jobs: s.jobs.unwrap_or(1),
    };
    let rows = run_sweep(&spec)?;
    emit_rows(&rows, parse_format(s, OutputFormat::Csv)?, &s.out)?;
    check_rows_converged(&rows)
}

fn run_fig2(s: &Settings, k: &PhysicalConstants) -> Result<(), CliError> {
    let mut spec = SweepSpec::fig2(build_quad(s)?, *k);
    spec.jobs = s.jobs.unwrap_or(1);
    let rows = run_sweep(&spec)?;
    emit_rows(&rows, parse_format(s, OutputFormat::GnuplotDat)?, &s.out)?;
    check_rows_converged(&rows)
}

fn run_regime(s: &Settings, k: &PhysicalConstants) -> Result<(), CliError> {
    let req = build_request(s, k)?;
    println!("{}", build_report(&req));
    Ok(())
}

fn run_oracle(s: &Settings, k: &PhysicalConstants) -> Result<(), CliError> {
    let req = build_request(s, k)?;
    let steps = s.steps.unwrap_or(1_000_000);
    let primary = phase_upper(&req);
    let oracle = phase_oracle_time_domain(&req, steps)?;
    let discrepancy = (primary.phase - oracle).abs();
    let tolerance = 1e-8f64.max(1e-6 * primary.phase.abs());
    println!("phi_u (substituted form) = {} rad", num(primary.phase));
    println!(
        "phi_u (time-domain, {steps} steps/leg) = {} rad",
        num(oracle)
    );
    println!(
        "discrepancy = {} rad (tolerance {})",
        num(discrepancy),
        num(tolerance)
    );
    if !primary.converged || discrepancy > tolerance {
        return Err(CliError {
            code: EXIT_NON_CONVERGED,
            message: "oracle and substituted form disagree beyond tolerance".into(),
        });
    }
    println!("agreement: ok");
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    let file_settings = settings::load(cli.config.as_deref())?;
    let s = file_settings.overlay(Settings::from(cli.command.common()));
    let k = PhysicalConstants::si();
    match &cli.command {
        Command::Steady(_) => run_steady(&s, &k),
        Command::Shift(_) => run_shift(&s, &k),
        Command::Sweep(_) => run_sweep_cmd(&s, &k),
        Command::Fig2(_) => run_fig2(&s, &k),
        Command::Regime(_) => run_regime(&s, &k),
        Command::Oracle(_) => run_oracle(&s, &k),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_INVALID,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
