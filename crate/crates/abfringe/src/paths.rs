//! Zeroth-order classical straight-line paths of the two-slit setup and
//! the azimuthal projection `theta_hat . rdot` feeding the phase integrand.
//!
//! Time origin: the wave packet reaches both slits at t = 0, so the
//! source-to-slit leg runs over t in [-T_S, 0] and the slit-to-screen leg
//! over [0, T_D]. The lower branch is the b -> -b mirror of the upper.

use crate::error::{Error, Result};
use crate::model::InterferometerGeometry;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Upper,
    Lower,
}

impl Branch {
    /// Sign of the slit y-coordinate on this branch.
    pub fn sign(self) -> f64 {
        match self {
            Branch::Upper => 1.0,
            Branch::Lower => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Leg {
    SourceToSlit,
    SlitToScreen,
}

/// One of the four straight segments of the classical paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SegmentId {
    pub branch: Branch,
    pub leg: Leg,
}

impl SegmentId {
    pub const ALL: [SegmentId; 4] = [
        SegmentId {
            branch: Branch::Upper,
            leg: Leg::SourceToSlit,
        },
        SegmentId {
            branch: Branch::Upper,
            leg: Leg::SlitToScreen,
        },
        SegmentId {
            branch: Branch::Lower,
            leg: Leg::SourceToSlit,
        },
        SegmentId {
            branch: Branch::Lower,
            leg: Leg::SlitToScreen,
        },
    ];

    /// Time interval of this segment's leg.
    pub fn interval(&self, geom: &InterferometerGeometry) -> (f64, f64) {
        match self.leg {
            Leg::SourceToSlit => (-geom.t_s(), 0.0),
            Leg::SlitToScreen => (0.0, geom.t_d()),
        }
    }
}

fn check_time(seg: &SegmentId, t: f64, geom: &InterferometerGeometry) -> Result<()> {
    let (lo, hi) = seg.interval(geom);
    if t.is_nan() || t < lo || t > hi {
        return Err(Error::TimeOutsideLeg { t, lo, hi });
    }
    Ok(())
}

/// Position (x, y) in metres at time `t` on the given segment.
///
/// Upper source-to-slit: `(l1 t/T_S, b (t + T_S)/T_S)`;
/// upper slit-to-screen: `(l2 t/T_D, b (T_D - t)/T_D)`;
/// the lower branch negates the y component.
pub fn classical_position(
    seg: &SegmentId,
    t: f64,
    geom: &InterferometerGeometry,
) -> Result<(f64, f64)> {
    check_time(seg, t, geom)?;
    let s = seg.branch.sign();
    Ok(match seg.leg {
        Leg::SourceToSlit => (
            geom.l1() * t / geom.t_s(),
            s * geom.b() * (t + geom.t_s()) / geom.t_s(),
        ),
        Leg::SlitToScreen => (
            geom.l2() * t / geom.t_d(),
            s * geom.b() * (geom.t_d() - t) / geom.t_d(),
        ),
    })
}

/// Constant velocity (vx, vy) in m/s on the given segment:
/// `(l1/T_S, +-b/T_S)` and `(l2/T_D, -+b/T_D)`.
pub fn classical_velocity(seg: &SegmentId, geom: &InterferometerGeometry) -> (f64, f64) {
    let s = seg.branch.sign();
    match seg.leg {
        Leg::SourceToSlit => (geom.l1() / geom.t_s(), s * geom.b() / geom.t_s()),
        Leg::SlitToScreen => (geom.l2() / geom.t_d(), -s * geom.b() / geom.t_d()),
    }
}

/// Azimuthal projection `theta_hat . rdot = (-y vx + x vy)/r` (m/s).
///
/// On a straight segment this reduces to a constant over r(t): the upper
/// source-to-slit leg gives `-b l1 / (T_S r(t))`.
pub fn azimuthal_projection(seg: &SegmentId, t: f64, geom: &InterferometerGeometry) -> Result<f64> {
    let (x, y) = classical_position(seg, t, geom)?;
    let (vx, vy) = classical_velocity(seg, geom);
    let r = f64::hypot(x, y);
    if r == 0.0 {
        return Err(Error::InvalidArgument {
            name: "r",
            requirement: "nonzero (the path passes through the solenoid axis)",
            value: r,
        });
    }
    Ok((-y * vx + x * vy) / r)
}
