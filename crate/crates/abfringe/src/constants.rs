//! Physical constants in SI units.
//!
//! Values from CODATA 2018 recommended values. Since the 2019 SI
//! redefinition, `h`, `e` and `c` are exact; `hbar` is stored as
//! `h / (2 pi)` at full f64 precision so that flux-quantum identities
//! (e.g. `e * (h/e) / (2 pi hbar) = 1`) hold to machine precision.

use std::f64::consts::PI;

use crate::error::Result;

/// Planck constant (J s), exact.
pub const PLANCK: f64 = 6.626_070_15e-34;

/// Reduced Planck constant hbar = h/(2 pi) (J s).
pub const HBAR: f64 = PLANCK / (2.0 * PI);

/// Vacuum permeability (T m/A).
pub const VACUUM_PERMEABILITY: f64 = 1.256_637_062_12e-6;

/// Speed of light in vacuum (m/s), exact.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Elementary charge (C), exact.
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;

/// Electron mass (kg).
pub const ELECTRON_MASS: f64 = 9.109_383_701_5e-31;

/// One electronvolt (J), exact.
pub const ELECTRON_VOLT: f64 = ELEMENTARY_CHARGE;

/// Bundle of the constants entering the phase and field computations.
///
/// Immutable after construction; the `custom` constructor exists for
/// natural-unit testing (e.g. hbar = c = 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    hbar: f64,
    mu0: f64,
    c: f64,
    e_charge: f64,
    m_electron: f64,
}

impl PhysicalConstants {
    /// CODATA-2018 SI values.
    pub fn si() -> Self {
        Self {
            hbar: HBAR,
            mu0: VACUUM_PERMEABILITY,
            c: SPEED_OF_LIGHT,
            e_charge: ELEMENTARY_CHARGE,
            m_electron: ELECTRON_MASS,
        }
    }

    /// Custom values; every entry must be strictly positive.
    pub fn custom(hbar: f64, mu0: f64, c: f64, e_charge: f64, m_electron: f64) -> Result<Self> {
        for (name, value) in [
            ("hbar", hbar),
            ("mu0", mu0),
            ("c", c),
            ("e_charge", e_charge),
            ("m_electron", m_electron),
        ] {
            crate::validate::positive(name, value)?;
        }
        Ok(Self {
            hbar,
            mu0,
            c,
            e_charge,
            m_electron,
        })
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn mu0(&self) -> f64 {
        self.mu0
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn e_charge(&self) -> f64 {
        self.e_charge
    }

    pub fn m_electron(&self) -> f64 {
        self.m_electron
    }

    /// Planck constant h = 2 pi hbar.
    pub fn planck(&self) -> f64 {
        2.0 * PI * self.hbar
    }

    /// Magnetic flux quantum h/q for charge `q` (Wb).
    pub fn flux_quantum(&self, charge: f64) -> f64 {
        self.planck() / charge
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::si()
    }
}
