//! Order-of-magnitude validity checks for the approximations behind the
//! phase computation: quantum-fluctuation scale, dominance of the kinetic
//! term over the A-coupling, and the near-field condition omega r/c << 1.
//!
//! Scales are reported in SI and in g cm s units (the unit system of the
//! original estimates).

use std::fmt;

use crate::constants::PhysicalConstants;
use crate::error::Result;
use crate::model::{InterferometerGeometry, ParticleParams, SolenoidDrive};
use crate::phase::{static_fringe_shift, PhaseRequest};

/// Exact SI -> cgs conversion factors.
pub const KG_M_PER_S_TO_G_CM_PER_S: f64 = 1e5;
pub const M_TO_CM: f64 = 1e2;

/// Warn thresholds for the "<< 1" conditions; two orders of magnitude is
/// the adopted reading of "much less than".
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeThresholds {
    pub fluctuation_warn: f64,
    pub near_field_warn: f64,
}

impl Default for RegimeThresholds {
    fn default() -> Self {
        Self {
            fluctuation_warn: 1e-2,
            near_field_warn: 1e-2,
        }
    }
}

/// Pass/warn flags derived solely from the stored ratios and thresholds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegimeFlags {
    /// None when no particle was supplied.
    pub fluctuation_pass: Option<bool>,
    pub near_field_pass: bool,
}

/// Aggregated validity report. Particle-dependent entries are `None` when
/// the request carries no particle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeReport {
    pub dn_static: f64,
    /// sqrt(2 hbar T / m) at the larger of the two transit times (m).
    pub fluct_y_scale: Option<f64>,
    /// |dn_static| lambda_dB / R, the A-coupling to kinetic-term ratio.
    pub fluct_ratio: Option<f64>,
    pub de_broglie: Option<f64>,
    pub momentum: Option<f64>,
    /// omega r_max / c over the farthest path point.
    pub near_field_ratio: f64,
    pub flags: RegimeFlags,
    pub thresholds: RegimeThresholds,
}

/// Scale of quantum fluctuations around the classical path,
/// `sqrt(2 hbar T / m)` (m). The matching velocity scale is derived
/// metadata: `|y_dot|^2 <~ 2 hbar/(m T)`, i.e. `(scale / T)^2`.
pub fn fluctuation_scale(
    particle: &ParticleParams,
    transit: f64,
    constants: &PhysicalConstants,
) -> Result<f64> {
    crate::validate::positive("transit", transit)?;
    Ok((2.0 * constants.hbar() * transit / particle.mass()).sqrt())
}

/// Magnitude of the ratio of the A-dependent quadratic-fluctuation term to
/// the kinetic term, `|dn_static| (hbar/(m v)) / R`. Much less than one
/// certifies neglecting the A-fluctuation coupling.
pub fn fluctuation_dominance_ratio(
    dn_static: f64,
    particle: &ParticleParams,
    length_scale_r: f64,
) -> Result<f64> {
    crate::validate::positive("length_scale_r", length_scale_r)?;
    Ok(dn_static.abs() * particle.de_broglie() / length_scale_r)
}

/// `omega r_max / c`, where r_max is the farthest path point from the
/// solenoid axis. Must be small for the near-field potential to hold.
pub fn near_field_ratio(
    geom: &InterferometerGeometry,
    drive: &SolenoidDrive,
    constants: &PhysicalConstants,
) -> f64 {
    drive.omega() * geom.r_max() / constants.c()
}

/// Build the full report with default thresholds.
pub fn build_report(req: &PhaseRequest) -> RegimeReport {
    build_report_with(req, &RegimeThresholds::default())
}

/// Build the full report with explicit thresholds. A request without a
/// particle yields a partial report: particle-dependent fields are `None`.
pub fn build_report_with(req: &PhaseRequest, thresholds: &RegimeThresholds) -> RegimeReport {
    let constants = req.constants();
    let geom = req.geom();
    let drive = req.drive();
    let dn_static = static_fringe_shift(drive, constants);
    let nf_ratio = near_field_ratio(geom, drive, constants);

    // the gradient scale R ~ b, l of the estimates: the smallest path
    // distance is the conservative choice
    let length_scale = geom.b().min(geom.l1()).min(geom.l2());

    let (fluct_y_scale, fluct_ratio, de_broglie, momentum, fluct_pass) = match req.particle() {
        Some(p) => {
            let transit = geom.t_s().max(geom.t_d());
            let scale = fluctuation_scale(p, transit, constants)
                .expect("transit > 0 by geometry invariant");
            let ratio = fluctuation_dominance_ratio(dn_static, p, length_scale)
                .expect("length scale > 0 by geometry invariant");
            (
                Some(scale),
                Some(ratio),
                Some(p.de_broglie()),
                Some(p.momentum()),
                Some(ratio < thresholds.fluctuation_warn),
            )
        }
        None => (None, None, None, None, None),
    };

    RegimeReport {
        dn_static,
        fluct_y_scale,
        fluct_ratio,
        de_broglie,
        momentum,
        near_field_ratio: nf_ratio,
        flags: RegimeFlags {
            fluctuation_pass: fluct_pass,
            near_field_pass: nf_ratio < thresholds.near_field_warn,
        },
        thresholds: *thresholds,
    }
}

impl RegimeReport {
    pub fn momentum_g_cm_s(&self) -> Option<f64> {
        self.momentum.map(|p| p * KG_M_PER_S_TO_G_CM_PER_S)
    }

    pub fn de_broglie_cm(&self) -> Option<f64> {
        self.de_broglie.map(|l| l * M_TO_CM)
    }

    pub fn fluct_y_scale_cm(&self) -> Option<f64> {
        self.fluct_y_scale.map(|s| s * M_TO_CM)
    }

    pub fn all_pass(&self) -> bool {
        self.flags.near_field_pass && self.flags.fluctuation_pass.unwrap_or(true)
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    match v {
        Some(x) => format!("{x:.6e}"),
        None => "absent (no particle given)".to_owned(),
    }
}

fn fmt_flag(pass: Option<bool>) -> &'static str {
    match pass {
        Some(true) => "pass",
        Some(false) => "WARN",
        None => "n/a",
    }
}

impl fmt::Display for RegimeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dn_static           = {:.6e}", self.dn_static)?;
        writeln!(
            f,
            "momentum            = {} kg m/s ({} g cm/s)",
            fmt_opt(self.momentum),
            fmt_opt(self.momentum_g_cm_s())
        )?;
        writeln!(
            f,
            "de_broglie          = {} m ({} cm)",
            fmt_opt(self.de_broglie),
            fmt_opt(self.de_broglie_cm())
        )?;
        writeln!(
            f,
            "fluct_y_scale       = {} m ({} cm)",
            fmt_opt(self.fluct_y_scale),
            fmt_opt(self.fluct_y_scale_cm())
        )?;
        writeln!(
            f,
            "fluct_ratio         = {}  [{} < {:.0e}]",
            fmt_opt(self.fluct_ratio),
            fmt_flag(self.flags.fluctuation_pass),
            self.thresholds.fluctuation_warn
        )?;
        write!(
            f,
            "near_field_ratio    = {:.6e}  [{} < {:.0e}]",
            self.near_field_ratio,
            fmt_flag(Some(self.flags.near_field_pass)),
            self.thresholds.near_field_warn
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::QuadratureSpec;
    use std::f64::consts::PI;

    fn si() -> PhysicalConstants {
        PhysicalConstants::si()
    }

    fn canonical_request(with_particle: bool) -> PhaseRequest {
        let k = si();
        let geom = InterferometerGeometry::symmetric(0.01, 1e-8).unwrap();
        let drive = SolenoidDrive::from_flux(
            k.flux_quantum(k.e_charge()),
            1e-4,
            2.0 * PI * 50.0,
            1.0,
            &k,
        )
        .unwrap();
        let particle = with_particle.then(|| ParticleParams::electron_from_ev(10.0, &k).unwrap());
        PhaseRequest::new(geom, drive, particle, QuadratureSpec::default(), k).unwrap()
    }

    #[test]
    fn fluctuation_scale_electron_reference() {
        let k = si();
        let p = ParticleParams::electron_from_ev(10.0, &k).unwrap();
        let s = fluctuation_scale(&p, 1e-8, &k).unwrap();
        // sqrt(2 * 1.0546e-34 * 1e-8 / 9.109e-31) = 1.5216e-6 m
        assert!((s - 1.5216e-6).abs() / 1.5216e-6 < 1e-3);
        // square-root laws
        let s4 = fluctuation_scale(&p, 4e-8, &k).unwrap();
        assert!((s4 - 2.0 * s).abs() / s4 < 1e-12);
        let heavy = ParticleParams::new(4.0 * p.mass(), p.charge(), p.kinetic_energy(), &k)
            .unwrap();
        let sh = fluctuation_scale(&heavy, 1e-8, &k).unwrap();
        assert!((sh - 0.5 * s).abs() / sh < 1e-12);
        assert!(fluctuation_scale(&p, 0.0, &k).is_err());
    }

    #[test]
    fn dominance_ratio_reference() {
        let k = si();
        let p = ParticleParams::electron_from_ev(10.0, &k).unwrap();
        // expected orders: p ~ 1.7e-19 g cm/s, lambda ~ 1e-8 cm
        assert!((p.momentum() * KG_M_PER_S_TO_G_CM_PER_S - 1.7e-19).abs() / 1.7e-19 < 1e-2);
        let lambda_cm = p.de_broglie() * M_TO_CM;
        assert!(lambda_cm > 0.5e-8 && lambda_cm < 2e-8);

        let ratio = fluctuation_dominance_ratio(1.0, &p, 0.01).unwrap();
        assert!((ratio - 6.2e-9).abs() / 6.2e-9 < 5e-2);
        assert_eq!(fluctuation_dominance_ratio(0.0, &p, 0.01).unwrap(), 0.0);
        assert!(fluctuation_dominance_ratio(1.0, &p, 0.0).is_err());
    }

    #[test]
    fn near_field_ratio_reference() {
        let k = si();
        let geom = InterferometerGeometry::new(0.04, 0.03, 0.03, 1e-8, 1e-8).unwrap();
        // r_max = sqrt(0.04^2 + 0.03^2) = 0.05
        let drive = SolenoidDrive::new(1.0, 1e-3, 2.0 * PI * 50.0, 1.0, &k).unwrap();
        let ratio = near_field_ratio(&geom, &drive, &k);
        assert!((ratio - 5.2e-8).abs() / 5.2e-8 < 1e-2);
        let steady = SolenoidDrive::new(1.0, 1e-3, 0.0, 1.0, &k).unwrap();
        assert_eq!(near_field_ratio(&geom, &steady, &k), 0.0);
    }

    #[test]
    fn canonical_setup_passes_all_checks() {
        let rep = build_report(&canonical_request(true));
        assert!(rep.all_pass());
        assert_eq!(rep.flags.fluctuation_pass, Some(true));
        assert!(rep.flags.near_field_pass);
        assert!((rep.dn_static - 1.0).abs() < 1e-12);
    }

    #[test]
    fn near_field_flag_warns_when_ratio_large() {
        let k = si();
        let geom = InterferometerGeometry::symmetric(0.01, 1e-8).unwrap();
        // omega r_max / c = 0.5
        let omega = 0.5 * k.c() / geom.r_max();
        let drive = SolenoidDrive::new(1.0, 1e-4, omega, 1.0, &k).unwrap();
        let req =
            PhaseRequest::new(geom, drive, None, QuadratureSpec::default(), k).unwrap();
        let rep = build_report(&req);
        assert!(!rep.flags.near_field_pass);
        assert!((rep.near_field_ratio - 0.5).abs() < 1e-12);
    }

    #[test]
    fn large_shift_small_wavelength_still_passes() {
        // dn_static = 1e6 with lambda_dB/R = 1e-9: ratio 1e-3 < 1e-2
        let k = si();
        let p = ParticleParams::electron_from_ev(10.0, &k).unwrap();
        let r = p.de_broglie() / 1e-9;
        let ratio = fluctuation_dominance_ratio(1e6, &p, r).unwrap();
        assert!((ratio - 1e-3).abs() / 1e-3 < 1e-12);
        assert!(ratio < RegimeThresholds::default().fluctuation_warn);
    }

    #[test]
    fn partial_report_without_particle() {
        let rep = build_report(&canonical_request(false));
        assert_eq!(rep.momentum, None);
        assert_eq!(rep.fluct_ratio, None);
        assert_eq!(rep.flags.fluctuation_pass, None);
        let text = rep.to_string();
        assert!(text.contains("absent"));
    }

    #[test]
    fn report_is_deterministic() {
        let a = build_report(&canonical_request(true));
        let b = build_report(&canonical_request(true));
        assert_eq!(a, b);
    }
}
