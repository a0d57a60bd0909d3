//! Time-varying Aharonov-Bohm fringe shift for a two-slit electron
//! interferometer enclosing an AC-driven infinite solenoid.
//!
//! The crate computes the phase picked up along the two classical paths
//! from the near-field vector potential of the solenoid, the resulting
//! frequency-dependent fringe-number shift, its steady (omega = 0) closed
//! form, and the symmetric-geometry ratio f(omega T). Every derived value
//! can be cross-checked against a brute-force time-domain oracle, and a
//! regime module validates the approximations (near field, negligible
//! quantum-fluctuation coupling).

pub mod constants;
pub mod error;
pub mod model;
pub mod paths;
pub mod phase;
pub mod potential;
pub mod quadrature;
pub mod regime;
pub mod specfun;
pub mod sweep;
mod validate;

pub use constants::PhysicalConstants;
pub use error::{Error, Result};
pub use model::{
    validate_geometry, ClearanceReport, InterferometerGeometry, ParticleParams, PhaseResult,
    SolenoidDrive,
};
pub use paths::{azimuthal_projection, classical_position, classical_velocity, Branch, Leg, SegmentId};
pub use phase::{
    f_ratio, f_ratio_outcome, fringe_shift, interference_factor, kernel_prefactor, phase_lower,
    phase_lower_direct, phase_oracle_time_domain, phase_upper, static_fringe_shift,
    KernelPrefactor, PhaseEstimate, PhaseRequest,
};
pub use potential::{electric_field_near, vector_potential_exact, vector_potential_near, FieldPoint};
pub use quadrature::{
    integrate_adaptive, integrate_fixed_trapezoid, QuadratureOutcome, QuadratureSpec,
};
pub use regime::{
    build_report, build_report_with, fluctuation_dominance_ratio, fluctuation_scale,
    near_field_ratio, RegimeFlags, RegimeReport, RegimeThresholds,
};
pub use specfun::{bessel_j0, bessel_j1, bessel_y0, bessel_y1};
pub use sweep::{
    emit_table, run_sweep, write_table, OutputFormat, SweepMode, SweepRow, SweepSpec, CSV_HEADER,
};
