//! Bessel functions J0, J1, Y0, Y1 of real argument.
//!
//! Ascending power series for |x| <= 12, Hankel asymptotic expansion with
//! optimal truncation beyond. The series routines are exposed so tests can
//! use them as oracles at moderate arguments; the switchover is validated
//! against them in the test suite.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Euler-Mascheroni constant.
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Series/asymptotic switchover point.
const SWITCHOVER: f64 = 12.0;

const MAX_SERIES_TERMS: usize = 120;

/// J1 by the ascending series sum_k (-1)^k (x/2)^(2k+1) / (k! (k+1)!).
pub fn j1_series(x: f64) -> f64 {
    let half = 0.5 * x;
    let neg_q = -(half * half);
    let mut term = half;
    let mut sum = term;
    let mut scale = term.abs();
    for k in 1..MAX_SERIES_TERMS {
        term *= neg_q / ((k * (k + 1)) as f64);
        sum += term;
        scale = scale.max(term.abs());
        if term.abs() <= 0.5 * f64::EPSILON * scale && term.abs() <= f64::EPSILON * sum.abs() {
            break;
        }
    }
    sum
}

/// J0 by the ascending series sum_k (-1)^k (x/2)^(2k) / (k!)^2.
pub fn j0_series(x: f64) -> f64 {
    let neg_q = -(0.25 * x * x);
    let mut term = 1.0;
    let mut sum = term;
    let mut scale = 1.0f64;
    for k in 1..MAX_SERIES_TERMS {
        term *= neg_q / ((k * k) as f64);
        sum += term;
        scale = scale.max(term.abs());
        if term.abs() <= 0.5 * f64::EPSILON * scale && term.abs() <= f64::EPSILON * sum.abs() {
            break;
        }
    }
    sum
}

/// Y1 by the ascending series
/// `(2/pi)(ln(x/2) + gamma) J1(x) - 2/(pi x)
///  - (1/pi) sum_k (-1)^k (H_k + H_{k+1}) (x/2)^(2k+1)/(k!(k+1)!)`.
pub fn y1_series(x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::BesselDomain { x });
    }
    let half = 0.5 * x;
    let neg_q = -(half * half);
    let mut term = half; // (x/2)^(2k+1)/(k!(k+1)!) at k = 0
    let mut h_k = 0.0; // H_0
    let mut h_k1 = 1.0; // H_1
    let mut sum = term * (h_k + h_k1);
    let mut scale = sum.abs();
    for k in 1..MAX_SERIES_TERMS {
        term *= neg_q / ((k * (k + 1)) as f64);
        h_k = h_k1;
        h_k1 += 1.0 / ((k + 1) as f64);
        let contrib = term * (h_k + h_k1);
        sum += contrib;
        scale = scale.max(contrib.abs());
        if contrib.abs() <= 0.5 * f64::EPSILON * scale {
            break;
        }
    }
    Ok((2.0 / PI) * (half.ln() + EULER_GAMMA) * j1_series(x) - 2.0 / (PI * x) - sum / PI)
}

/// Y0 by the ascending series
/// `(2/pi)(ln(x/2) + gamma) J0(x) + (2/pi) sum_{k>=1} (-1)^(k+1) H_k (x^2/4)^k/(k!)^2`.
pub fn y0_series(x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::BesselDomain { x });
    }
    let q = 0.25 * x * x;
    let mut term = 1.0; // (x^2/4)^k/(k!)^2, updated before use
    let mut h_k = 0.0;
    let mut sum = 0.0;
    let mut sign = 1.0;
    let mut scale = 0.0f64;
    for k in 1..MAX_SERIES_TERMS {
        term *= q / ((k * k) as f64);
        h_k += 1.0 / (k as f64);
        let contrib = sign * h_k * term;
        sum += contrib;
        sign = -sign;
        scale = scale.max(contrib.abs());
        if contrib.abs() <= 0.5 * f64::EPSILON * scale {
            break;
        }
    }
    Ok((2.0 / PI) * ((0.5 * x).ln() + EULER_GAMMA) * j0_series(x) + (2.0 / PI) * sum)
}

/// Hankel asymptotic amplitude series P, Q for order `nu` at `x`.
///
/// `a_m = prod_{j=1..m} (4 nu^2 - (2j-1)^2) / (8 j)`;
/// `P = 1 - a_2/x^2 + a_4/x^4 - ...`, `Q = a_1/x - a_3/x^3 + ...`.
/// Terms are summed until they stop decreasing (optimal truncation).
fn hankel_pq(nu: u32, x: f64) -> (f64, f64) {
    let mu = (4 * nu * nu) as f64;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0; // a_m / x^m
    let mut prev = f64::INFINITY;
    for m in 1..=60u32 {
        let j = m as f64;
        let factor = 2.0 * j - 1.0;
        term *= (mu - factor * factor) / (8.0 * j * x);
        if term.abs() >= prev {
            break;
        }
        prev = term.abs();
        match m % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
        if term.abs() < 0.25 * f64::EPSILON {
            break;
        }
    }
    (p, q)
}

fn j1_asymptotic(x: f64) -> f64 {
    let (p, q) = hankel_pq(1, x);
    let w = x - 0.75 * PI;
    (2.0 / (PI * x)).sqrt() * (p * w.cos() - q * w.sin())
}

fn y1_asymptotic(x: f64) -> f64 {
    let (p, q) = hankel_pq(1, x);
    let w = x - 0.75 * PI;
    (2.0 / (PI * x)).sqrt() * (p * w.sin() + q * w.cos())
}

fn j0_asymptotic(x: f64) -> f64 {
    let (p, q) = hankel_pq(0, x);
    let w = x - 0.25 * PI;
    (2.0 / (PI * x)).sqrt() * (p * w.cos() - q * w.sin())
}

fn y0_asymptotic(x: f64) -> f64 {
    let (p, q) = hankel_pq(0, x);
    let w = x - 0.25 * PI;
    (2.0 / (PI * x)).sqrt() * (p * w.sin() + q * w.cos())
}

/// Bessel function of the first kind, order one, for any finite `x`.
pub fn bessel_j1(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    let ax = x.abs();
    let v = if ax <= SWITCHOVER {
        j1_series(ax)
    } else {
        j1_asymptotic(ax)
    };
    if x < 0.0 {
        -v // J1 is odd
    } else {
        v
    }
}

/// Bessel function of the first kind, order zero.
pub fn bessel_j0(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    let ax = x.abs();
    if ax <= SWITCHOVER {
        j0_series(ax)
    } else {
        j0_asymptotic(ax)
    }
}

/// Bessel function of the second kind, order one. Singular at the origin;
/// `x <= 0` is a domain error.
pub fn bessel_y1(x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::BesselDomain { x });
    }
    if x <= SWITCHOVER {
        y1_series(x)
    } else {
        Ok(y1_asymptotic(x))
    }
}

/// Bessel function of the second kind, order zero; `x <= 0` is a domain error.
pub fn bessel_y0(x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::BesselDomain { x });
    }
    if x <= SWITCHOVER {
        y0_series(x)
    } else {
        Ok(y0_asymptotic(x))
    }
}
