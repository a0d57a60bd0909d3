//! Numerical integration: adaptive Gauss-Kronrod (primary) and a
//! fixed-step composite trapezoid (independent brute-force oracle).

use crate::error::{Error, Result};
use crate::validate;

/// Tolerances and subdivision limits for the adaptive integrator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Maximum bisection depth of any subinterval.
    pub max_depth: u32,
    /// Smallest allowed subinterval, as a fraction of the original.
    pub min_interval: f64,
}

impl QuadratureSpec {
    pub fn new(rel_tol: f64, abs_tol: f64, max_depth: u32, min_interval: f64) -> Result<Self> {
        validate::positive("rel_tol", rel_tol)?;
        validate::positive("abs_tol", abs_tol)?;
        if max_depth < 1 {
            return Err(Error::InvalidArgument {
                name: "max_depth",
                requirement: ">= 1",
                value: max_depth as f64,
            });
        }
        if min_interval.is_nan() || min_interval <= 0.0 || min_interval >= 1.0 {
            return Err(Error::InvalidArgument {
                name: "min_interval",
                requirement: "in (0, 1)",
                value: min_interval,
            });
        }
        Ok(Self {
            rel_tol,
            abs_tol,
            max_depth,
            min_interval,
        })
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-14,
            max_depth: 60,
            min_interval: 1e-12,
        }
    }
}

/// Result of one adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureOutcome {
    pub value: f64,
    /// Estimated absolute error; when `converged` it is bounded by
    /// `max(abs_tol, rel_tol * |value|)`.
    pub error_estimate: f64,
    pub evaluations: u64,
    pub converged: bool,
}

// 15-point Kronrod abscissae on [-1, 1] (positive half) with the embedded
// 7-point Gauss weights; standard QUADPACK values.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_33,
    0.949_107_912_342_758_524_526_189_684_047_85,
    0.864_864_423_359_769_072_789_712_788_640_93,
    0.741_531_185_599_394_439_863_864_773_280_79,
    0.586_087_235_467_691_130_294_144_838_258_73,
    0.405_845_151_377_397_166_906_606_412_076_96,
    0.207_784_955_007_898_467_600_689_403_773_24,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_08,
    0.279_705_391_489_276_667_901_467_771_423_78,
    0.381_830_050_505_118_944_950_369_775_488_98,
    0.417_959_183_673_469_387_755_102_040_816_33,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_97,
    0.063_092_092_629_978_553_290_700_663_189_2,
    0.104_790_010_322_250_183_839_876_322_541_52,
    0.140_653_259_715_525_918_745_189_590_510_24,
    0.169_004_726_639_267_902_826_583_426_598_55,
    0.190_350_578_064_785_409_913_256_402_421_01,
    0.204_432_940_075_298_892_414_161_999_234_65,
    0.209_482_141_084_727_828_012_999_174_891_71,
];

/// One 15-point Gauss-Kronrod evaluation: returns the Kronrod value, a
/// rescaled error estimate (QUADPACK heuristic) and whether the estimate
/// was clamped to the round-off floor, in which case subdivision cannot
/// improve it.
fn gauss_kronrod_15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64, bool) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let f_center = f(center);
    let mut res_gauss = WG[3] * f_center;
    let mut res_kronrod = WGK[7] * f_center;
    let mut res_abs = res_kronrod.abs();
    let mut fv1 = [0.0f64; 7];
    let mut fv2 = [0.0f64; 7];

    for j in 0..7 {
        let dx = half * XGK[j];
        let v1 = f(center - dx);
        let v2 = f(center + dx);
        fv1[j] = v1;
        fv2[j] = v2;
        let sum = v1 + v2;
        if j % 2 == 1 {
            res_gauss += WG[j / 2] * sum;
        }
        res_kronrod += WGK[j] * sum;
        res_abs += WGK[j] * (v1.abs() + v2.abs());
    }

    let mean = 0.5 * res_kronrod;
    let mut res_asc = WGK[7] * (f_center - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let value = res_kronrod * half;
    res_abs *= half.abs();
    res_asc *= half.abs();

    let mut err = ((res_kronrod - res_gauss) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * 1.0f64.min((200.0 * err / res_asc).powf(1.5));
    }
    let mut at_floor = false;
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        let floor = 50.0 * f64::EPSILON * res_abs;
        if floor >= err {
            err = floor;
            at_floor = true;
        }
    }
    (value, err, at_floor)
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    depth: u32,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error && self.a == other.a
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    // max-heap on the error estimate; ties broken by left endpoint so the
    // processing order is fully deterministic
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error
            .total_cmp(&other.error)
            .then(other.a.total_cmp(&self.a))
    }
}

/// Adaptive interval-subdivision quadrature of `f` over `[a, b]` built on
/// the embedded 7/15 Gauss-Kronrod pair. The worst panel is bisected until
/// the summed error estimate meets `max(abs_tol, rel_tol * |value|)` or the
/// subdivision limits are hit; non-convergence is flagged, never silent.
pub fn integrate_adaptive<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<QuadratureOutcome> {
    if !a.is_finite() || !b.is_finite() || a > b {
        return Err(Error::InvalidInterval { a, b });
    }
    if a == b {
        return Ok(QuadratureOutcome {
            value: 0.0,
            error_estimate: 0.0,
            evaluations: 0,
            converged: true,
        });
    }

    let width_total = b - a;
    let min_width = spec.min_interval * width_total;
    // hard stop for pathological integrands; normal cases stay far below
    const MAX_PANELS: usize = 10_000;

    let mut active = std::collections::BinaryHeap::new();
    // panels that can no longer be improved: subdivision limit reached or
    // error estimate already at the round-off floor
    let mut settled: Vec<Panel> = Vec::new();

    let (v0, e0, floor0) = gauss_kronrod_15(&f, a, b);
    let mut evaluations = 15u64;
    let mut total_value = v0;
    let mut total_error = e0;
    let first = Panel {
        a,
        b,
        value: v0,
        error: e0,
        depth: 0,
    };
    if floor0 {
        settled.push(first);
    } else {
        active.push(first);
    }

    loop {
        let tol = spec.abs_tol.max(spec.rel_tol * total_value.abs());
        if total_error <= tol || active.len() + settled.len() >= MAX_PANELS {
            break;
        }
        let Some(parent) = active.pop() else {
            break; // nothing left that subdivision could improve
        };
        let mid = 0.5 * (parent.a + parent.b);
        let child_depth = parent.depth + 1;
        if child_depth >= spec.max_depth || (mid - parent.a) < min_width {
            settled.push(parent);
            continue;
        }

        let (v1, e1, floor1) = gauss_kronrod_15(&f, parent.a, mid);
        let (v2, e2, floor2) = gauss_kronrod_15(&f, mid, parent.b);
        evaluations += 30;
        total_value += v1 + v2 - parent.value;
        total_error += e1 + e2 - parent.error;
        for (child, at_floor) in [
            (
                Panel {
                    a: parent.a,
                    b: mid,
                    value: v1,
                    error: e1,
                    depth: child_depth,
                },
                floor1,
            ),
            (
                Panel {
                    a: mid,
                    b: parent.b,
                    value: v2,
                    error: e2,
                    depth: child_depth,
                },
                floor2,
            ),
        ] {
            if at_floor {
                settled.push(child);
            } else {
                active.push(child);
            }
        }
    }

    // final deterministic left-to-right assembly
    let mut panels = settled;
    panels.extend(active);
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    let value: f64 = panels.iter().map(|p| p.value).sum();
    let error_estimate: f64 = panels.iter().map(|p| p.error).sum();
    let converged = error_estimate <= spec.abs_tol.max(spec.rel_tol * value.abs());

    Ok(QuadratureOutcome {
        value,
        error_estimate,
        evaluations,
        converged,
    })
}

/// Composite trapezoid rule with `n_steps` equal panels. Deterministic;
/// used as the brute-force oracle for every derived expected value.
pub fn integrate_fixed_trapezoid<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    n_steps: usize,
) -> Result<f64> {
    if !a.is_finite() || !b.is_finite() || a > b {
        return Err(Error::InvalidInterval { a, b });
    }
    if n_steps < 1 {
        return Err(Error::InvalidStepCount { n: n_steps, min: 1 });
    }
    if a == b {
        return Ok(0.0);
    }
    let h = (b - a) / n_steps as f64;
    // compensated summation keeps the rounding error well below the
    // truncation error even at 1e6+ steps
    let mut sum = 0.5 * (f(a) + f(b));
    let mut comp = 0.0;
    for i in 1..n_steps {
        let term = f(a + i as f64 * h);
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    Ok(h * sum)
}
