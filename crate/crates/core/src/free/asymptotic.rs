//! Late-time violation probability of the half-line release.
//!
//! At large `τ` the density along the ray `ζ = yτ` is `4π(s/τ) g(sy)²`, so the
//! weight beyond the light front `y = 1` tends to
//!
//! ```text
//! P(s) = 1 − 4π ∫₀^s sin²θ / (θ² − π²)² dθ
//! ```
//!
//! The closed form in `Si`/`Ci` and the cubic small-argument series
//! are antiderivatives of the same integrand with upper limit `2π·arg`, i.e.
//! with the size measured in units of `h/mc` instead of `ħ/mc`. Both are
//! exposed verbatim; [`ComptonConvention`] connects them to `s`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::convention::ComptonConvention;
use super::momentum_amplitude;
use crate::numerics::{entire_cosine_integral, integrate, sine_integral, QuadratureConfig};
use crate::{Error, Result};

const TOL: f64 = 1e-10;

/// Periods integrated numerically beyond `s` before the closed-form tail.
const TAIL_PERIODS: f64 = 200.0;

/// `sin²θ / (θ² − π²)²`, equal to `1/(4π²)` at `θ = π`.
pub fn asymptotic_integrand(theta: f64) -> f64 {
    momentum_amplitude(theta).powi(2)
}

fn integral(a: f64, b: f64) -> Result<f64> {
    let first = (a / PI).floor() as usize + 1;
    let last = (b / PI).ceil() as usize;
    let cfg = QuadratureConfig::with_tolerances(TOL * 1e-3, TOL)
        .breakpoints((first..last).map(|k| k as f64 * PI))
        .max_subdivisions(20_000);
    let r = integrate(asymptotic_integrand, a, b, &cfg)?
        .require_converged(|| format!("asymptotic integrand over [{a}, {b}]"))?;
    Ok(r.value)
}

// ∫_T^∞ sin²θ/(θ² − π²)² dθ for T a multiple of π, up to O(T⁻⁵): the
// non-oscillating half in closed form, the cos 2θ half vanishing at leading
// order because sin 2T = 0.
fn tail_from(t: f64) -> f64 {
    let a = PI;
    let rational = (1.0 / (t - a) + 1.0 / (t + a) - (2.0 * a / (t - a)).ln_1p() / a) / (4.0 * a * a);
    0.5 * rational
}

/// `4π ∫₀^θ sin²θ'/(θ'² − π²)² dθ'`: the probability captured inside the
/// light front.
pub fn asymptotic_weight(theta: f64) -> Result<f64> {
    Ok(1.0 - asymptotic_violation(theta)?)
}

/// `P(s) = 1 − 4π ∫₀^s sin²θ/(θ² − π²)² dθ`.
///
/// Past `θ = π` the complement `4π ∫_s^∞` is integrated.
pub fn asymptotic_violation(s: f64) -> Result<f64> {
    if !(s >= 0.0) {
        return Err(Error::domain(format!("argument must be ≥ 0, got {s}")));
    }
    if s == f64::INFINITY {
        return Ok(0.0);
    }
    if s <= PI {
        return Ok(1.0 - 4.0 * PI * integral(0.0, s)?);
    }
    let t = ((s / PI).ceil() + TAIL_PERIODS) * PI;
    Ok(4.0 * PI * (integral(s, t)? + tail_from(t)))
}

/// The closed form in `Si` and `Ci`, as a function of its own
/// argument. Equals `1 − 4π ∫₀^{2π·arg}` of the asymptotic integrand.
///
/// Each `Ci(x) − ln(x/2)` pair is rewritten as `γ + ln 2 − Cin(x)`, which
/// stays finite (and real) as `x` crosses zero at `arg = 1/2`.
pub fn asymptotic_violation_closed(arg: f64) -> Result<f64> {
    if !(arg.is_finite() && arg > 0.0) {
        return Err(Error::domain(format!("closed form needs arg > 0, got {arg}")));
    }
    let a = 4.0 * PI * arg - 2.0 * PI;
    let b = 4.0 * PI * arg + 2.0 * PI;
    let d = arg - 0.5;
    // sin²(2π·arg)/(4arg² − 1) with 4arg² − 1 = 4d(1 + d); zero at d = 0.
    let resonance = if d == 0.0 {
        0.0
    } else {
        (2.0 * PI * d).sin().powi(2) / (4.0 * d * (1.0 + d))
    };
    let si = (sine_integral(a) + sine_integral(b)) / PI;
    let cin = (entire_cosine_integral(a) - entire_cosine_integral(b)) / (2.0 * PI * PI);
    Ok(1.0 - si + 4.0 * arg / (PI * PI) * resonance + cin)
}

/// `1 − (4/3)(2·arg)³`.
pub fn asymptotic_series(arg: f64) -> Result<f64> {
    if !(arg.is_finite() && arg >= 0.0) {
        return Err(Error::domain(format!("series needs arg ≥ 0, got {arg}")));
    }
    Ok(1.0 - 4.0 / 3.0 * (2.0 * arg).powi(3))
}

/// `P(s)` under the given reading of the size unit.
pub fn adjudicated_violation(s: f64, convention: ComptonConvention) -> Result<f64> {
    if !(s >= 0.0) {
        return Err(Error::domain(format!("size must be ≥ 0, got {s}")));
    }
    asymptotic_violation(convention.upper_limit(s))
}

/// The three forms evaluated at one size.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticResult {
    pub s: f64,
    pub p_quadrature: f64,
    pub p_closed: f64,
    pub p_series: f64,
    pub convention: ComptonConvention,
}

impl AsymptoticResult {
    pub fn evaluate(s: f64, convention: ComptonConvention) -> Result<Self> {
        if !(s.is_finite() && s > 0.0) {
            return Err(Error::domain(format!("size must be positive, got {s}")));
        }
        let arg = convention.closed_argument(s);
        Ok(Self {
            s,
            p_quadrature: adjudicated_violation(s, convention)?,
            p_closed: asymptotic_violation_closed(arg)?,
            p_series: asymptotic_series(arg)?,
            convention,
        })
    }
}
