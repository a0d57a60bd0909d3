//! Lorentz-gauge (phi = 0) vector potential of the AC solenoid, outside the
//! winding: the exact Bessel form and the near-field approximation used by
//! the phase integrals, plus the induced azimuthal electric field
//! E = -dA/dt.

use std::f64::consts::PI;

use crate::constants::PhysicalConstants;
use crate::error::Result;
use crate::model::SolenoidDrive;
use crate::specfun::{bessel_j1, bessel_y1};

/// Evaluation point: radial distance from the solenoid axis and time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldPoint {
    pub r: f64,
    pub t: f64,
}

impl FieldPoint {
    pub fn new(r: f64, t: f64) -> Self {
        Self { r, t }
    }
}

fn check_radius(r: f64) -> Result<()> {
    crate::validate::positive("r", r)
}

/// Near-field azimuthal component `A = (lambda phi_s / 2 pi) cos(omega t) / r`
/// (T m), valid for `omega r / c << 1`; exact for `omega = 0`.
pub fn vector_potential_near(p: &FieldPoint, drive: &SolenoidDrive) -> Result<f64> {
    check_radius(p.r)?;
    Ok(drive.lambda_flux() / (2.0 * PI) * (drive.omega() * p.t).cos() / p.r)
}

/// Induced azimuthal electric field
/// `E = (lambda phi_s omega / 2 pi) sin(omega t) / r` (V/m).
pub fn electric_field_near(p: &FieldPoint, drive: &SolenoidDrive) -> Result<f64> {
    check_radius(p.r)?;
    Ok(drive.lambda_flux() * drive.omega() / (2.0 * PI) * (drive.omega() * p.t).sin() / p.r)
}

/// Exact azimuthal component
/// `A = -(lambda phi_s / 2R) J1(omega R/c) [sin(omega t + pi/2) Y1(omega r/c)
///    + cos(omega t + pi/2) J1(omega r/c)]`.
///
/// The Bessel form degenerates at `omega = 0` (Y1 is singular at zero
/// argument), so that case is routed to the near-field form, which is exact
/// there.
pub fn vector_potential_exact(
    p: &FieldPoint,
    drive: &SolenoidDrive,
    constants: &PhysicalConstants,
) -> Result<f64> {
    check_radius(p.r)?;
    if drive.omega() == 0.0 {
        return vector_potential_near(p, drive);
    }
    let xr = drive.omega() * p.r / constants.c();
    let x_solenoid = drive.omega() * drive.radius_r() / constants.c();
    let phase = drive.omega() * p.t + 0.5 * PI;
    let y1 = bessel_y1(xr)?;
    Ok(-drive.lambda_flux() / (2.0 * drive.radius_r())
        * bessel_j1(x_solenoid)
        * (phase.sin() * y1 + phase.cos() * bessel_j1(xr)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::PhysicalConstants;

    fn si() -> PhysicalConstants {
        PhysicalConstants::si()
    }

    fn drive_with_flux(flux: f64, omega: f64) -> SolenoidDrive {
        SolenoidDrive::from_flux(flux, 1e-3, omega, 1.0, &si()).unwrap()
    }

    #[test]
    fn near_field_direct_substitution() {
        // lambda phi_s = 2 pi * 1e-6 Wb, r = 1 m, t = 0 -> A = 1e-6 T m
        let d = drive_with_flux(2.0 * PI * 1e-6, 0.0);
        let a = vector_potential_near(&FieldPoint::new(1.0, 0.0), &d).unwrap();
        assert!((a - 1e-6).abs() / 1e-6 < 1e-12);
        // 1/r profile
        let a2 = vector_potential_near(&FieldPoint::new(2.0, 0.0), &d).unwrap();
        assert!((a2 - 0.5 * a).abs() < 1e-20);
    }

    #[test]
    fn near_field_cosine_zero() {
        let omega = 100.0;
        let d = drive_with_flux(1e-6, omega);
        let t = 0.5 * PI / omega; // omega t = pi/2
        let a = vector_potential_near(&FieldPoint::new(0.5, t), &d).unwrap();
        assert!(a.abs() < 1e-6 * d.lambda_flux() / (2.0 * PI * 0.5) * 1e-9);
    }

    #[test]
    fn near_field_rejects_bad_radius() {
        let d = drive_with_flux(1e-6, 0.0);
        assert!(vector_potential_near(&FieldPoint::new(0.0, 0.0), &d).is_err());
        assert!(vector_potential_near(&FieldPoint::new(-1.0, 0.0), &d).is_err());
        assert!(electric_field_near(&FieldPoint::new(-1.0, 0.0), &d).is_err());
    }

    #[test]
    fn electric_field_static_and_t0() {
        let d0 = drive_with_flux(1e-6, 0.0);
        let e = electric_field_near(&FieldPoint::new(0.3, 12.5), &d0).unwrap();
        assert_eq!(e, 0.0);
        let d = drive_with_flux(1e-6, 500.0);
        let e = electric_field_near(&FieldPoint::new(0.3, 0.0), &d).unwrap();
        assert_eq!(e, 0.0);
    }

    #[test]
    fn electric_field_direct_substitution() {
        // lambda phi_s = 2 pi, omega = 1, r = 1, omega t = pi/2 -> 1 V/m
        let k = si();
        let d = SolenoidDrive::from_flux(2.0 * PI, 1e-3, 1.0, 1.0, &k).unwrap();
        let e = electric_field_near(&FieldPoint::new(1.0, 0.5 * PI), &d).unwrap();
        assert!((e - 1.0).abs() < 1e-12);
    }

    #[test]
    fn exact_term_selection_at_quarter_period() {
        // omega t = pi/2: sin(omega t + pi/2) = 0, cos(omega t + pi/2) = -1.
        // omega r / c = 1 keeps |Y1| of order one so the rounding residue of
        // sin(~pi) stays negligible against the surviving J1 term.
        let k = si();
        let r = 0.05;
        let omega = k.c() / r;
        let d = drive_with_flux(1e-8, omega);
        let t = 0.5 * PI / omega;
        let a = vector_potential_exact(&FieldPoint::new(r, t), &d, &k).unwrap();
        let expected = d.lambda_flux() / (2.0 * d.radius_r())
            * bessel_j1(omega * d.radius_r() / k.c())
            * bessel_j1(omega * r / k.c());
        assert!((a - expected).abs() <= 1e-12 * expected.abs());
    }

    #[test]
    fn exact_agrees_with_near_in_near_field() {
        // omega r / c = 1e-4
        let k = si();
        let r = 0.05;
        let omega = 1e-4 * k.c() / r;
        let d = drive_with_flux(1e-8, omega);
        let p = FieldPoint::new(r, 0.0);
        let exact = vector_potential_exact(&p, &d, &k).unwrap();
        let near = vector_potential_near(&p, &d).unwrap();
        assert!((exact - near).abs() / near.abs() < 1e-6);
    }

    #[test]
    fn exact_zero_flux_limit() {
        let k = si();
        let d = SolenoidDrive::new(0.0, 1e-3, 100.0, 1.0, &k).unwrap();
        let a = vector_potential_exact(&FieldPoint::new(0.1, 0.3), &d, &k).unwrap();
        assert_eq!(a, 0.0);
    }

    #[test]
    fn exact_routes_omega_zero_to_near_field() {
        let k = si();
        let d = drive_with_flux(1e-6, 0.0);
        let p = FieldPoint::new(0.25, 3.0);
        assert_eq!(
            vector_potential_exact(&p, &d, &k).unwrap(),
            vector_potential_near(&p, &d).unwrap()
        );
    }
}
