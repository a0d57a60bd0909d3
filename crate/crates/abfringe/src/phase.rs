//! Phase integrals along the classical paths, the steady closed form, the
//! frequency-dependent fringe shift and the symmetric-geometry ratio
//! f(omega T).
//!
//! The primary integrand is the completed-square substitution of the
//! time-domain integral: per leg,
//!
//! ```text
//! phi contribution = -(q lam phi_s / 2 pi hbar) T (b l/(b^2+l^2))
//!                    * Int dy cos(omega (y + shift)) / (y^2 + rho^2)
//! ```
//!
//! with `c = b^2 T/(b^2+l^2)`, `rho = b l T/(b^2+l^2)`, `shift = -c` and
//! limits `[-T+c, c]` on the incoming leg, `shift = +c` and `[-c, T-c]` on
//! the outgoing one. A raw time-domain trapezoid oracle with no variable
//! substitution cross-checks it.

use std::f64::consts::PI;

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::model::{
    validate_geometry, InterferometerGeometry, ParticleParams, PhaseResult, SolenoidDrive,
};
use crate::paths::{azimuthal_projection, classical_position, Branch, Leg, SegmentId};
use crate::potential::{vector_potential_near, FieldPoint};
use crate::quadrature::{
    integrate_adaptive, integrate_fixed_trapezoid, QuadratureOutcome, QuadratureSpec,
};

/// Everything one phase computation needs. Construction verifies that no
/// classical path intersects the solenoid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseRequest {
    geom: InterferometerGeometry,
    drive: SolenoidDrive,
    particle: Option<ParticleParams>,
    quad: QuadratureSpec,
    constants: PhysicalConstants,
}

impl PhaseRequest {
    pub fn new(
        geom: InterferometerGeometry,
        drive: SolenoidDrive,
        particle: Option<ParticleParams>,
        quad: QuadratureSpec,
        constants: PhysicalConstants,
    ) -> Result<Self> {
        let report = validate_geometry(&geom, drive.radius_r());
        if !report.pass {
            let (leg, clearance) = if report.clearance_source <= report.clearance_screen {
                ("source-to-slit", report.clearance_source)
            } else {
                ("slit-to-screen", report.clearance_screen)
            };
            return Err(Error::PathClearance {
                radius: drive.radius_r(),
                clearance,
                leg,
            });
        }
        Ok(Self {
            geom,
            drive,
            particle,
            quad,
            constants,
        })
    }

    pub fn geom(&self) -> &InterferometerGeometry {
        &self.geom
    }

    pub fn drive(&self) -> &SolenoidDrive {
        &self.drive
    }

    pub fn particle(&self) -> Option<&ParticleParams> {
        self.particle.as_ref()
    }

    pub fn quad(&self) -> &QuadratureSpec {
        &self.quad
    }

    pub fn constants(&self) -> &PhysicalConstants {
        &self.constants
    }

    /// Charge entering the phase integrals: the particle's when present,
    /// the elementary charge otherwise.
    pub fn charge(&self) -> f64 {
        self.particle
            .as_ref()
            .map(|p| p.charge())
            .unwrap_or_else(|| self.constants.e_charge())
    }
}

/// A computed phase with its quadrature error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseEstimate {
    /// Phase in radians; `I = i * phase`.
    pub phase: f64,
    /// Absolute quadrature error estimate (rad).
    pub quad_error: f64,
    pub converged: bool,
    pub evaluations: u64,
}

struct LegPieces {
    coefficient: f64, // T * b l/(b^2 + l^2), signed with b
    shift: f64,       // argument shift inside the cosine
    rho_sq: f64,
    lo: f64,
    hi: f64,
}

fn leg_pieces(leg: Leg, b: f64, geom: &InterferometerGeometry) -> LegPieces {
    let (l, duration) = match leg {
        Leg::SourceToSlit => (geom.l1(), geom.t_s()),
        Leg::SlitToScreen => (geom.l2(), geom.t_d()),
    };
    let denom = b * b + l * l;
    let c = b * b * duration / denom;
    let rho = b * l * duration / denom;
    match leg {
        Leg::SourceToSlit => LegPieces {
            coefficient: duration * b * l / denom,
            shift: -c,
            rho_sq: rho * rho,
            lo: -duration + c,
            hi: c,
        },
        Leg::SlitToScreen => LegPieces {
            coefficient: duration * b * l / denom,
            shift: c,
            rho_sq: rho * rho,
            lo: -c,
            hi: duration - c,
        },
    }
}

/// Phase along one branch via the substituted integrals; `b` carries the
/// branch sign (+b upper, -b lower).
fn phase_branch(req: &PhaseRequest, b: f64) -> PhaseEstimate {
    let omega = req.drive.omega();
    let prefactor = req.charge() * req.drive.lambda_flux() / (2.0 * PI * req.constants.hbar());

    let mut phase = 0.0;
    let mut quad_error = 0.0;
    let mut evaluations = 0;
    let mut converged = true;
    for leg in [Leg::SourceToSlit, Leg::SlitToScreen] {
        let p = leg_pieces(leg, b, &req.geom);
        let out = integrate_adaptive(
            |y| (omega * (y + p.shift)).cos() / (y * y + p.rho_sq),
            p.lo,
            p.hi,
            &req.quad,
        )
        .expect("leg interval is finite and ordered by construction");
        phase -= prefactor * p.coefficient * out.value;
        quad_error += (prefactor * p.coefficient).abs() * out.error_estimate;
        evaluations += out.evaluations;
        converged &= out.converged;
    }
    PhaseEstimate {
        phase,
        quad_error,
        converged,
        evaluations,
    }
}

/// Phase phi_U of the upper path (I_U = i phi_U). At omega = 0 this equals
/// `-q lam phi_s / (2 hbar)` for every valid geometry.
pub fn phase_upper(req: &PhaseRequest) -> PhaseEstimate {
    phase_branch(req, req.geom.b())
}

/// Phase phi_L of the lower path. Fast path: the lower branch is the
/// b -> -b mirror of the upper, so phi_L = -phi_U with the same error
/// estimate. `phase_lower_direct` re-integrates instead.
pub fn phase_lower(req: &PhaseRequest) -> PhaseEstimate {
    let u = phase_upper(req);
    PhaseEstimate {
        phase: -u.phase,
        ..u
    }
}

/// Verification path for phi_L: re-runs the substituted integrals with
/// b -> -b instead of negating phi_U.
pub fn phase_lower_direct(req: &PhaseRequest) -> PhaseEstimate {
    phase_branch(req, -req.geom.b())
}

/// Steady fringe shift `dn_S = q lam phi_s / (2 pi hbar)`,
/// geometry-independent; `q` is the elementary charge.
pub fn static_fringe_shift(drive: &SolenoidDrive, constants: &PhysicalConstants) -> f64 {
    constants.e_charge() * drive.lambda_flux() / (2.0 * PI * constants.hbar())
}

fn static_shift_with_charge(q: f64, drive: &SolenoidDrive, constants: &PhysicalConstants) -> f64 {
    q * drive.lambda_flux() / (2.0 * PI * constants.hbar())
}

/// Full fringe-shift computation.
///
/// `dn_omega` is oriented so that omega = 0 yields `+dn_static`; the
/// observable is the displacement, and the opposite orientation is just
/// the branch relabeling. `dn_omega` is stored as `f_ratio * dn_static`
/// so that product holds bit-exactly; `f_ratio` is 1 in the degenerate
/// zero-flux case.
pub fn fringe_shift(req: &PhaseRequest) -> PhaseResult {
    let upper = phase_upper(req);
    let phi_u = upper.phase;
    let phi_l = -phi_u;
    let dn_static = static_shift_with_charge(req.charge(), &req.drive, &req.constants);
    let dn_raw = (phi_l - phi_u) / (2.0 * PI);
    let f_ratio = if dn_static != 0.0 {
        dn_raw / dn_static
    } else {
        1.0
    };
    PhaseResult {
        phi_u,
        phi_l,
        dn_omega: f_ratio * dn_static,
        dn_static,
        f_ratio,
        quad_error: upper.quad_error,
        converged: upper.converged,
    }
}

/// Symmetric-geometry ratio
/// `f(x) = (4/pi) cos(x/2) Int_0^1 dy cos(x y/2)/(1 + y^2)`,
/// with the quadrature error propagated into the outcome.
pub fn f_ratio_outcome(omega_t: f64, quad: &QuadratureSpec) -> QuadratureOutcome {
    let envelope = (4.0 / PI) * (0.5 * omega_t).cos();
    let out = integrate_adaptive(
        |y| (0.5 * omega_t * y).cos() / (1.0 + y * y),
        0.0,
        1.0,
        quad,
    )
    .expect("unit interval is always valid");
    QuadratureOutcome {
        value: envelope * out.value,
        error_estimate: envelope.abs() * out.error_estimate,
        ..out
    }
}

/// `f(omega T)`, the ratio `dn_omega / dn_static` for the
/// `l1 = l2 = b`, `T_S = T_D = T` geometry. `f(0) = 1`; zeros at odd
/// multiples of pi.
pub fn f_ratio(omega_t: f64, quad: &QuadratureSpec) -> f64 {
    f_ratio_outcome(omega_t, quad).value
}

/// Modulus and phase of the product of the two free-particle kernel
/// prefactors `(m / 2 pi i hbar T)^(1/2) exp[i m (l^2 + b^2)/(2 hbar T)]`,
/// one per leg. Identical for the upper and lower branches.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelPrefactor {
    /// `m / (2 pi hbar sqrt(T_S T_D))`.
    pub modulus: f64,
    /// Dynamical phases minus the two -pi/4 factors from i^(-1/2) (rad).
    pub phase: f64,
}

pub fn kernel_prefactor(
    geom: &InterferometerGeometry,
    particle: &ParticleParams,
    constants: &PhysicalConstants,
) -> KernelPrefactor {
    let m = particle.mass();
    let hbar = constants.hbar();
    let chord_sq_in = geom.l1() * geom.l1() + geom.b() * geom.b();
    let chord_sq_out = geom.l2() * geom.l2() + geom.b() * geom.b();
    KernelPrefactor {
        modulus: m / (2.0 * PI * hbar * (geom.t_s() * geom.t_d()).sqrt()),
        phase: m * chord_sq_in / (2.0 * hbar * geom.t_s())
            + m * chord_sq_out / (2.0 * hbar * geom.t_d())
            - 0.5 * PI,
    }
}

/// Interference of the two branches: relative intensity
/// `|1 + exp(i (phi_u - phi_l))|^2 / 4` in [0, 1] and the fringe number
/// `(phi_u - phi_l) / (2 pi)`.
pub fn interference_factor(phi_u: f64, phi_l: f64) -> (f64, f64) {
    let delta = phi_u - phi_l;
    let intensity = 0.5 * (1.0 + delta.cos());
    (intensity, delta / (2.0 * PI))
}

/// Brute-force phi_U: composite trapezoid of
/// `(q/hbar) Int A(r_cl(t), t) . rdot_cl dt` over the raw time domain,
/// with `n_steps` panels per leg and no variable substitution. This is the
/// independence oracle for `phase_upper`.
pub fn phase_oracle_time_domain(req: &PhaseRequest, n_steps: usize) -> Result<f64> {
    if n_steps < 1_000 {
        return Err(Error::InvalidStepCount {
            n: n_steps,
            min: 1_000,
        });
    }
    let mut total = 0.0;
    for leg in [Leg::SourceToSlit, Leg::SlitToScreen] {
        let seg = SegmentId {
            branch: Branch::Upper,
            leg,
        };
        let (lo, hi) = seg.interval(&req.geom);
        let integrand = |t: f64| {
            let (x, y) = classical_position(&seg, t, &req.geom)
                .expect("trapezoid nodes lie inside the leg interval");
            let r = f64::hypot(x, y);
            let a_phi = vector_potential_near(&FieldPoint::new(r, t), &req.drive)
                .expect("r > 0 on a clearance-validated path");
            let proj = azimuthal_projection(&seg, t, &req.geom)
                .expect("trapezoid nodes lie inside the leg interval");
            a_phi * proj
        };
        total += integrate_fixed_trapezoid(integrand, lo, hi, n_steps)?;
    }
    Ok(req.charge() / req.constants.hbar() * total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn si() -> PhysicalConstants {
        PhysicalConstants::si()
    }

    fn request(geom: InterferometerGeometry, omega: f64) -> PhaseRequest {
        let k = si();
        let drive = SolenoidDrive::from_flux(k.flux_quantum(k.e_charge()), 1e-4, omega, 1.0, &k)
            .unwrap();
        PhaseRequest::new(geom, drive, None, QuadratureSpec::default(), k).unwrap()
    }

    fn symmetric(omega: f64) -> PhaseRequest {
        request(InterferometerGeometry::symmetric(0.01, 1e-7).unwrap(), omega)
    }

    #[test]
    fn steady_phase_closed_form() {
        let req = symmetric(0.0);
        let expected =
            -si().e_charge() * req.drive().lambda_flux() / (2.0 * si().hbar());
        let u = phase_upper(&req);
        assert!(u.converged);
        assert!((u.phase - expected).abs() / expected.abs() < 1e-10);
        // lower is the negative
        let l = phase_lower(&req);
        assert_eq!(l.phase, -u.phase);
    }

    #[test]
    fn zero_flux_gives_zero_phase() {
        let k = si();
        let drive = SolenoidDrive::new(0.0, 1e-4, 100.0, 1.0, &k).unwrap();
        let req = PhaseRequest::new(
            InterferometerGeometry::symmetric(0.01, 1e-7).unwrap(),
            drive,
            None,
            QuadratureSpec::default(),
            k,
        )
        .unwrap();
        assert_eq!(phase_upper(&req).phase, 0.0);
        assert_eq!(phase_oracle_time_domain(&req, 1_000).unwrap(), 0.0);
    }

    #[test]
    fn request_rejects_clearance_violation() {
        let k = si();
        let geom = InterferometerGeometry::symmetric(0.01, 1e-7).unwrap();
        let drive = SolenoidDrive::new(1.0, 8e-3, 0.0, 1.0, &k).unwrap();
        let err = PhaseRequest::new(geom, drive, None, QuadratureSpec::default(), k).unwrap_err();
        assert!(err.to_string().contains("clearance"));
    }

    #[test]
    fn symmetric_phase_reduces_to_f_ratio() {
        // omega T = 5
        let t = 1e-7;
        let omega = 5.0 / t;
        let req = symmetric(omega);
        let u = phase_upper(&req);
        let f = f_ratio(5.0, req.quad());
        let expected = -req.charge() * req.drive().lambda_flux() / (2.0 * si().hbar()) * f;
        assert!((u.phase - expected).abs() < 1e-9 * expected.abs().max(1.0));
    }

    #[test]
    fn lower_direct_matches_negated_upper() {
        let geom = InterferometerGeometry::new(0.01, 0.03, 0.007, 2e-8, 5e-8).unwrap();
        let req = request(geom, 15.0 / 5e-8);
        let u = phase_upper(&req);
        let l = phase_lower_direct(&req);
        assert!((l.phase + u.phase).abs() <= 2.0 * (u.quad_error + l.quad_error));
    }

    #[test]
    fn static_shift_flux_quantum_normalization() {
        let k = si();
        let one_quantum = k.flux_quantum(k.e_charge());
        let d = SolenoidDrive::from_flux(one_quantum, 1e-3, 0.0, 1.0, &k).unwrap();
        assert!((static_fringe_shift(&d, &k) - 1.0).abs() < 1e-12);
        let half = SolenoidDrive::from_flux(0.5 * one_quantum, 1e-3, 0.0, 1.0, &k).unwrap();
        assert!((static_fringe_shift(&half, &k) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn static_shift_from_drive_parameters() {
        // i0 = 1 A/m, R = 1e-3 m, lambda = 1: dn_S ~ 9.546e2
        let k = si();
        let d = SolenoidDrive::new(1.0, 1e-3, 0.0, 1.0, &k).unwrap();
        let dn = static_fringe_shift(&d, &k);
        assert!((dn - 954.6).abs() / 954.6 < 1e-3);
    }

    #[test]
    fn fringe_shift_steady_limit_and_exact_ratio() {
        let req = symmetric(0.0);
        let res = fringe_shift(&req);
        assert!((res.dn_omega - res.dn_static).abs() / res.dn_static < 1e-9);
        assert_eq!(res.f_ratio * res.dn_static, res.dn_omega);
        assert!(res.converged);
    }

    #[test]
    fn fringe_shift_vanishes_at_omega_t_pi() {
        let t = 1e-7;
        let req = symmetric(PI / t);
        let res = fringe_shift(&req);
        assert!(res.dn_omega.abs() < 1e-9 * res.dn_static);
    }

    #[test]
    fn fringe_shift_zero_flux_degenerate_ratio() {
        let k = si();
        let drive = SolenoidDrive::new(0.0, 1e-4, 0.0, 1.0, &k).unwrap();
        let req = PhaseRequest::new(
            InterferometerGeometry::symmetric(0.01, 1e-7).unwrap(),
            drive,
            None,
            QuadratureSpec::default(),
            k,
        )
        .unwrap();
        let res = fringe_shift(&req);
        assert_eq!(res.dn_static, 0.0);
        assert_eq!(res.dn_omega, 0.0);
        assert_eq!(res.f_ratio, 1.0);
    }

    #[test]
    fn f_ratio_anchors() {
        let quad = QuadratureSpec::default();
        assert!((f_ratio(0.0, &quad) - 1.0).abs() < 1e-10);
        assert!(f_ratio(PI, &quad).abs() < 1e-9);
        // frozen from the trapezoid oracle at 1e6 steps:
        // Int_0^1 cos(pi y)/(1+y^2) dy = 0.11305464938640554,
        // f(2 pi) = -(4/pi) * that
        let oracle = integrate_fixed_trapezoid(
            |y: f64| (PI * y).cos() / (1.0 + y * y),
            0.0,
            1.0,
            1_000_000,
        )
        .unwrap();
        assert!((oracle - 0.113_054_649_386_405_54).abs() < 1e-10);
        let expected = -(4.0 / PI) * oracle;
        assert!((f_ratio(2.0 * PI, &quad) - expected).abs() < 1e-10);
        assert!((f_ratio(2.0 * PI, &quad) - (-0.143_945_650_314_940_43)).abs() < 1e-10);
    }

    #[test]
    fn kernel_prefactor_modulus_and_phase() {
        let k = si();
        let geom = InterferometerGeometry::new(0.01, 0.03, 0.007, 2e-8, 5e-8).unwrap();
        let p = ParticleParams::electron_from_ev(10.0, &k).unwrap();
        let pre = kernel_prefactor(&geom, &p, &k);
        let expected_mod =
            p.mass() / (2.0 * PI * k.hbar() * (geom.t_s() * geom.t_d()).sqrt());
        assert!((pre.modulus - expected_mod).abs() / expected_mod < 1e-14);
        let dyn1 = p.mass() * (geom.l1().powi(2) + geom.b().powi(2)) / (2.0 * k.hbar() * geom.t_s());
        let dyn2 = p.mass() * (geom.l2().powi(2) + geom.b().powi(2)) / (2.0 * k.hbar() * geom.t_d());
        assert!((pre.phase - (dyn1 + dyn2 - 0.5 * PI)).abs() <= 1e-9 * pre.phase.abs());
    }

    #[test]
    fn interference_factor_anchors() {
        let (i, n) = interference_factor(0.7, 0.7);
        assert!((i - 1.0).abs() < 1e-15);
        assert_eq!(n, 0.0);
        let (i, _) = interference_factor(PI, 0.0);
        assert!(i.abs() < 1e-15);
        let (i, n) = interference_factor(0.5 * PI, 0.0);
        assert!((i - 0.5).abs() < 1e-15);
        assert!((n - 0.25).abs() < 1e-15);
    }

    #[test]
    fn oracle_matches_steady_closed_form() {
        let req = symmetric(0.0);
        let expected = -si().e_charge() * req.drive().lambda_flux() / (2.0 * si().hbar());
        let oracle = phase_oracle_time_domain(&req, 1_000_000).unwrap();
        assert!((oracle - expected).abs() / expected.abs() < 1e-8);
    }

    #[test]
    fn oracle_rejects_coarse_steps() {
        let req = symmetric(0.0);
        assert!(phase_oracle_time_domain(&req, 999).is_err());
    }
}
