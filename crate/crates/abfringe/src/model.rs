//! Domain records for the two-slit interferometer around an AC solenoid.
//!
//! All records are immutable after construction and validate their
//! invariants in the constructor.

use std::f64::consts::PI;

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::validate;

/// Sinusoidal surface-current drive of the infinite solenoid.
///
/// The surface current density is `I(t) = lambda i0 sin(omega t + pi/2)`,
/// so `omega = 0` reproduces the steady current. The steady flux
/// `phi_s = mu0 i0 pi R^2` is derived from `(i0, radius_r)` at
/// construction and never stored independently of them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolenoidDrive {
    i0: f64,
    radius_r: f64,
    omega: f64,
    lambda_order: f64,
    phi_s: f64,
}

impl SolenoidDrive {
    /// Build a drive from the surface current density amplitude `i0` (A/m),
    /// solenoid radius (m), angular frequency (rad/s) and the dimensionless
    /// bookkeeping factor `lambda_order` in (0, 1].
    pub fn new(
        i0: f64,
        radius_r: f64,
        omega: f64,
        lambda_order: f64,
        constants: &PhysicalConstants,
    ) -> Result<Self> {
        validate::positive("radius_r", radius_r)?;
        validate::non_negative("i0", i0)?;
        validate::non_negative("omega", omega)?;
        if lambda_order.is_nan() || lambda_order <= 0.0 || lambda_order > 1.0 {
            return Err(Error::InvalidArgument {
                name: "lambda_order",
                requirement: "in (0, 1]",
                value: lambda_order,
            });
        }
        let phi_s = constants.mu0() * i0 * PI * radius_r * radius_r;
        Ok(Self {
            i0,
            radius_r,
            omega,
            lambda_order,
            phi_s,
        })
    }

    /// Build a drive that reproduces a requested steady flux (Wb) by
    /// back-computing the surface current density `i0 = phi_s/(mu0 pi R^2)`.
    pub fn from_flux(
        phi_s: f64,
        radius_r: f64,
        omega: f64,
        lambda_order: f64,
        constants: &PhysicalConstants,
    ) -> Result<Self> {
        validate::non_negative("phi_s", phi_s)?;
        validate::positive("radius_r", radius_r)?;
        let i0 = phi_s / (constants.mu0() * PI * radius_r * radius_r);
        Self::new(i0, radius_r, omega, lambda_order, constants)
    }

    /// Same drive at a different angular frequency.
    pub fn with_omega(&self, omega: f64) -> Result<Self> {
        validate::non_negative("omega", omega)?;
        Ok(Self { omega, ..*self })
    }

    pub fn i0(&self) -> f64 {
        self.i0
    }

    pub fn radius_r(&self) -> f64 {
        self.radius_r
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn lambda_order(&self) -> f64 {
        self.lambda_order
    }

    /// Steady flux `phi_s = mu0 i0 pi R^2` (Wb).
    pub fn phi_s(&self) -> f64 {
        self.phi_s
    }

    /// `lambda * phi_s`, the single magnetic strength parameter entering
    /// every phase and potential formula (Wb).
    pub fn lambda_flux(&self) -> f64 {
        self.lambda_order * self.phi_s
    }
}

/// Distances and transit times of the two-slit setup.
///
/// The source sits at `(-l1, 0)`, the slits at `(0, +-b)` and the
/// observation point at `(l2, 0)`; `t_s` and `t_d` are the
/// source-to-slit and slit-to-screen transit times.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterferometerGeometry {
    l1: f64,
    l2: f64,
    b: f64,
    t_s: f64,
    t_d: f64,
}

impl InterferometerGeometry {
    pub fn new(l1: f64, l2: f64, b: f64, t_s: f64, t_d: f64) -> Result<Self> {
        for (name, value) in [("l1", l1), ("l2", l2), ("b", b), ("t_s", t_s), ("t_d", t_d)] {
            validate::positive(name, value)?;
        }
        Ok(Self { l1, l2, b, t_s, t_d })
    }

    /// The `l1 = l2 = b = length` geometry with equal transit times.
    pub fn symmetric(length: f64, transit: f64) -> Result<Self> {
        Self::new(length, length, length, transit, transit)
    }

    pub fn l1(&self) -> f64 {
        self.l1
    }

    pub fn l2(&self) -> f64 {
        self.l2
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn t_s(&self) -> f64 {
        self.t_s
    }

    pub fn t_d(&self) -> f64 {
        self.t_d
    }

    /// Farthest path point from the solenoid axis (m).
    pub fn r_max(&self) -> f64 {
        f64::hypot(self.l1, self.b).max(f64::hypot(self.l2, self.b))
    }
}

/// Perpendicular clearances of the two straight path segments from the
/// solenoid axis, against a given solenoid radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClearanceReport {
    pub radius: f64,
    /// Distance from the origin to the source-to-slit segment (m).
    pub clearance_source: f64,
    /// Distance from the origin to the slit-to-screen segment (m).
    pub clearance_screen: f64,
    pub pass: bool,
}

/// Check that no classical path intersects a solenoid of radius `radius_r`.
///
/// The perpendicular distance from the origin to the segment on side `i`
/// is `l_i b / sqrt(l_i^2 + b^2)`.
pub fn validate_geometry(geom: &InterferometerGeometry, radius_r: f64) -> ClearanceReport {
    let clearance_source = geom.l1 * geom.b / f64::hypot(geom.l1, geom.b);
    let clearance_screen = geom.l2 * geom.b / f64::hypot(geom.l2, geom.b);
    ClearanceReport {
        radius: radius_r,
        clearance_source,
        clearance_screen,
        pass: radius_r < clearance_source && radius_r < clearance_screen,
    }
}

/// Mass, charge and kinetic energy of the interfering particle, with the
/// derived nonrelativistic speed and de Broglie wavelength `hbar/(m v)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParticleParams {
    mass: f64,
    charge: f64,
    kinetic_energy: f64,
    speed: f64,
    de_broglie: f64,
}

impl ParticleParams {
    pub fn new(
        mass: f64,
        charge: f64,
        kinetic_energy: f64,
        constants: &PhysicalConstants,
    ) -> Result<Self> {
        validate::positive("mass", mass)?;
        if !charge.is_finite() {
            return Err(Error::InvalidArgument {
                name: "charge",
                requirement: "finite",
                value: charge,
            });
        }
        validate::positive("kinetic_energy", kinetic_energy)?;
        let speed = (2.0 * kinetic_energy / mass).sqrt();
        // nonrelativistic Lagrangian only
        if speed > 0.1 * constants.c() {
            return Err(Error::InvalidArgument {
                name: "speed",
                requirement: "below 0.1 c (nonrelativistic)",
                value: speed,
            });
        }
        let de_broglie = constants.hbar() / (mass * speed);
        Ok(Self {
            mass,
            charge,
            kinetic_energy,
            speed,
            de_broglie,
        })
    }

    /// Electron with the given kinetic energy in eV. The charge is taken as
    /// `+e`, so a positive flux gives a positive static fringe shift.
    pub fn electron_from_ev(energy_ev: f64, constants: &PhysicalConstants) -> Result<Self> {
        Self::new(
            constants.m_electron(),
            constants.e_charge(),
            energy_ev * crate::constants::ELECTRON_VOLT,
            constants,
        )
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn charge(&self) -> f64 {
        self.charge
    }

    pub fn kinetic_energy(&self) -> f64 {
        self.kinetic_energy
    }

    pub fn speed(&self) -> f64 {
        self.speed
    }

    /// de Broglie wavelength hbar/(m v) (m).
    pub fn de_broglie(&self) -> f64 {
        self.de_broglie
    }

    /// Momentum m v (kg m/s).
    pub fn momentum(&self) -> f64 {
        self.mass * self.speed
    }
}

/// Phases and fringe shifts of one computation.
///
/// `phi_u` and `phi_l` are the real phases with `I_U = i phi_u`,
/// `I_L = i phi_l`; `dn_omega` is oriented so that `omega = 0` yields
/// `+dn_static`. `f_ratio * dn_static` reproduces `dn_omega` bit-exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseResult {
    pub phi_u: f64,
    pub phi_l: f64,
    pub dn_omega: f64,
    pub dn_static: f64,
    pub f_ratio: f64,
    /// Absolute quadrature error estimate on `phi_u` (rad).
    pub quad_error: f64,
    /// False when the adaptive quadrature failed to reach its tolerance.
    pub converged: bool,
}
