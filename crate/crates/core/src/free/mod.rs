//! Release into a half-line (`Λ → ∞`).
//!
//! With a reflecting wall at `ζ = 0` the state is the odd extension of the
//! initial profile evolved freely. In momentum space
//!
//! ```text
//! φ̂(ζ, τ) = i√2 ∫ g(κ) exp(iκζ − iκ²τ/(2s)) dκ,    g(κ) = sin κ / (κ² − π²)
//! ```
//!
//! The real-line integral converges only conditionally and oscillates
//! quadratically, so it is never evaluated on the real axis for `τ > 0`.
//! Completing the square about `κ₀ = sζ/τ` and rotating onto the steepest
//! descent line `κ₀ + e^{−iπ/4}u` turns it into a Gaussian integral:
//!
//! ```text
//! φ̂ = i√2 e^{−iπ/4} e^{isζ²/(2τ)} ∫ g(κ₀ + e^{−iπ/4}u) e^{−τu²/(2s)} du
//! ```
//!
//! `g` is entire, but `|sin κ|` grows like `e^{|Im κ|}` off the axis, which
//! costs a factor `e^{s/(4τ)}` of cancellation. For `τ/s` below
//! [`CONTOUR_SWITCH`] the exponential in `sin κ` is split off instead,
//!
//! ```text
//! g(κ) e^{iκζ} = [e^{iκ(ζ+1)} − e^{iκ(ζ−1)}] / (2i(κ² − π²))
//! ```
//!
//! and each piece gets its own saddle at `s(ζ ± 1)/τ`. The pieces have real
//! poles at `±π`, so the rotated line collects residues from the poles it
//! sweeps across. Along each line the integrand is a pure Gaussian times a
//! bounded rational function.
//!
//! At `τ = 0` the Fourier integral is done on the real axis up to a cut-off,
//! with the tail summed in closed form through `Si`.

mod asymptotic;
mod convention;

pub use asymptotic::{
    adjudicated_violation, asymptotic_integrand, asymptotic_series, asymptotic_violation, asymptotic_violation_closed,
    asymptotic_weight, AsymptoticResult,
};
pub use convention::{adjudicate_convention, ComptonConvention, ConventionRecord, ConventionSample};

use std::cell::RefCell;
use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::numerics::{integrate, sine_integral, CancelToken, ProgressObserver, QuadratureConfig};
use crate::{Error, Result};

/// `τ/s` below which the split-exponential contours are used.
pub const CONTOUR_SWITCH: f64 = 0.05;

/// Real-axis cut-off for the `τ = 0` Fourier integral. A multiple of `π`, so
/// panels align with the zeros of `sin κ`.
const INITIAL_CUTOFF_PERIODS: usize = 1000;

/// Gaussian half-width, in units of the standard scale, beyond which the
/// contour integrand is below `e^{−49}`.
const GAUSSIAN_REACH: f64 = 7.0;

const SINGULAR_WINDOW: f64 = 1e-3;

fn rotation() -> Complex64 {
    Complex64::new(FRAC_1_SQRT_2, -FRAC_1_SQRT_2)
}

/// `g(κ) = sin κ / (κ² − π²)`, with `g(±π) = ∓1/(2π)`.
pub fn momentum_amplitude(kappa: f64) -> f64 {
    let d = kappa - PI;
    if d.abs() < SINGULAR_WINDOW {
        return -small_sinc(d) / (2.0 * PI + d);
    }
    let d = kappa + PI;
    if d.abs() < SINGULAR_WINDOW {
        return -small_sinc(d) / (d - 2.0 * PI);
    }
    kappa.sin() / ((kappa - PI) * (kappa + PI))
}

fn small_sinc(d: f64) -> f64 {
    let d2 = d * d;
    1.0 - d2 / 6.0 * (1.0 - d2 / 20.0)
}

fn momentum_amplitude_complex(kappa: Complex64) -> Complex64 {
    let d = kappa - PI;
    if d.norm() < SINGULAR_WINDOW {
        return -complex_small_sinc(d) / (d + 2.0 * PI);
    }
    let d = kappa + PI;
    if d.norm() < SINGULAR_WINDOW {
        return -complex_small_sinc(d) / (d - 2.0 * PI);
    }
    kappa.sin() / ((kappa - PI) * (kappa + PI))
}

fn complex_small_sinc(d: Complex64) -> Complex64 {
    let d2 = d * d;
    1.0 - d2 / 6.0 * (1.0 - d2 / 20.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentumAmplitude {
    pub kappa: f64,
    pub value: f64,
}

impl MomentumAmplitude {
    pub fn at(kappa: f64) -> Self {
        Self {
            kappa,
            value: momentum_amplitude(kappa),
        }
    }
}

/// Tolerances for the free-space integrals.
#[derive(Debug, Clone)]
pub struct FreeQuadConfig {
    /// Momentum (contour) integral for a single amplitude.
    pub amplitude: QuadratureConfig,
    /// Position integral of the density.
    pub density: QuadratureConfig,
}

impl Default for FreeQuadConfig {
    fn default() -> Self {
        Self {
            amplitude: QuadratureConfig::with_tolerances(1e-13, 1e-12).max_subdivisions(4000),
            density: QuadratureConfig::with_tolerances(1e-10, 1e-10).max_subdivisions(4000),
        }
    }
}

impl FreeQuadConfig {
    pub fn with_cancel(mut self, token: CancelToken) -> Self {
        self.amplitude.cancel = Some(token.clone());
        self.density.cancel = Some(token);
        self
    }

    /// Progress of the outer (density) integration.
    pub fn with_progress(mut self, observer: ProgressObserver) -> Self {
        self.density.progress = Some(observer);
        self
    }
}

fn check_size(s: f64) -> Result<()> {
    if s.is_finite() && s > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("confinement size must be positive, got {s}")))
    }
}

/// Amplitude and the achieved error estimate.
fn amplitude_with_error(zeta: f64, tau: f64, s: f64, cfg: &QuadratureConfig) -> Result<(Complex64, f64)> {
    if !(zeta.is_finite() && zeta >= 0.0) {
        return Err(Error::domain(format!("position must be finite and ≥ 0, got {zeta}")));
    }
    if !(tau.is_finite() && tau >= 0.0) {
        return Err(Error::domain(format!("time must be finite and ≥ 0, got {tau}")));
    }
    check_size(s)?;
    if tau == 0.0 {
        initial_fourier(zeta, cfg)
    } else if tau / s >= CONTOUR_SWITCH {
        steepest_descent(zeta, tau, s, cfg)
    } else {
        split_contours(zeta, tau, s, cfg)
    }
}

/// `φ̂(ζ, τ)` for the half-line release.
pub fn free_wavefunction(zeta: f64, tau: f64, s: f64, cfg: &FreeQuadConfig) -> Result<Complex64> {
    amplitude_with_error(zeta, tau, s, &cfg.amplitude).map(|(v, _)| v)
}

fn steepest_descent(zeta: f64, tau: f64, s: f64, cfg: &QuadratureConfig) -> Result<(Complex64, f64)> {
    let rot = rotation();
    let kappa0 = s * zeta / tau;
    let scale = (2.0 * s / tau).sqrt();
    let peak = 0.5 * (s / tau).sqrt();
    let reach = peak + GAUSSIAN_REACH;
    let cfg = cfg.clone().breakpoints([-peak, 0.0, peak]);
    let r = integrate(
        |v| momentum_amplitude_complex(kappa0 + rot * (scale * v)) * (-v * v).exp(),
        -reach,
        reach,
        &cfg,
    )?
    .require_converged(|| format!("free amplitude at ζ = {zeta}, τ = {tau}"))?;
    let phase = Complex64::from_polar(1.0, s * zeta * zeta / (2.0 * tau));
    let prefactor = Complex64::new(0.0, SQRT_2) * rot * phase * scale;
    Ok((prefactor * r.value, prefactor.norm() * r.error_estimate))
}

fn split_contours(zeta: f64, tau: f64, s: f64, cfg: &QuadratureConfig) -> Result<(Complex64, f64)> {
    let (plus, e1) = split_piece(zeta + 1.0, tau, s, cfg)?;
    let (minus, e2) = split_piece(zeta - 1.0, tau, s, cfg)?;
    Ok((FRAC_1_SQRT_2 * (plus - minus), FRAC_1_SQRT_2 * (e1 + e2)))
}

// ∫ e^{iκw − iκ²τ/(2s)} / (κ² − π²) dκ along the real line passing below
// both poles.
fn split_piece(w: f64, tau: f64, s: f64, cfg: &QuadratureConfig) -> Result<(Complex64, f64)> {
    let rot = rotation();
    let a = tau / (2.0 * s);
    let centre = s * w / tau;
    // Keep the line at least a unit away from either pole.
    let mut line = centre;
    for pole in [PI, -PI] {
        if (centre - pole).abs() < 1.0 {
            line = if centre >= pole { pole + 1.0 } else { pole - 1.0 };
        }
    }
    let shift = line - centre;
    let scale = (2.0 * s / tau).sqrt();
    let drift = Complex64::new(0.0, -2.0 * a * shift) * rot * scale;
    let reach = GAUSSIAN_REACH + shift.abs() / scale;
    let poles_on_line = [PI, -PI].map(|p| (p - line) / (SQRT_2 * scale));
    let cfg = cfg
        .clone()
        .breakpoints(std::iter::once(0.0).chain(poles_on_line.into_iter().filter(|v| v.abs() < reach)));
    let r = integrate(
        |v| {
            let kappa = line + rot * (scale * v);
            (drift * v - v * v).exp() / ((kappa - PI) * (kappa + PI))
        },
        -reach,
        reach,
        &cfg,
    )?
    .require_converged(|| format!("free amplitude contour at w = {w}, τ = {tau}"))?;
    let phase = Complex64::from_polar(1.0, a * (centre * centre - shift * shift));
    let prefactor = rot * phase * scale;
    let mut value = prefactor * r.value;

    let decay = Complex64::from_polar(1.0, -PI * PI * a);
    let two_pi_i = Complex64::new(0.0, 2.0 * PI);
    if PI < line {
        value += two_pi_i * Complex64::from_polar(1.0, PI * w) * decay / (2.0 * PI);
    }
    if -PI < line {
        value -= two_pi_i * Complex64::from_polar(1.0, -PI * w) * decay / (2.0 * PI);
    }
    Ok((value, prefactor.norm() * r.error_estimate))
}

// φ̂(ζ, 0) = −2√2 ∫₀^∞ g(κ) sin(κζ) dκ, cut at K with the tail summed for
// g ≈ sin κ/κ²; what remains is below π²/(3K³).
fn initial_fourier(zeta: f64, cfg: &QuadratureConfig) -> Result<(Complex64, f64)> {
    let cutoff = INITIAL_CUTOFF_PERIODS as f64 * PI;
    let per_period = (zeta + 1.0).ceil() as usize;
    let panels = INITIAL_CUTOFF_PERIODS * per_period;
    let width = cutoff / panels as f64;
    let cfg = cfg
        .clone()
        .breakpoints((1..panels).map(|k| k as f64 * width))
        .max_subdivisions(cfg.max_subdivisions.max(2 * panels));
    let r = integrate(|k| momentum_amplitude(k) * (k * zeta).sin(), 0.0, cutoff, &cfg)?
        .require_converged(|| format!("initial Fourier integral at ζ = {zeta}"))?;
    let tail = 0.5 * (cosine_tail((1.0 - zeta).abs(), cutoff) - cosine_tail(1.0 + zeta, cutoff));
    let value = -2.0 * SQRT_2 * (r.value + tail);
    let remainder = PI * PI / (3.0 * cutoff.powi(3));
    Ok((
        Complex64::new(value, 0.0),
        2.0 * SQRT_2 * (r.error_estimate + remainder),
    ))
}

// ∫_K^∞ cos(ωκ)/κ² dκ for ω ≥ 0.
fn cosine_tail(omega: f64, cutoff: f64) -> f64 {
    if omega == 0.0 {
        return 1.0 / cutoff;
    }
    (omega * cutoff).cos() / cutoff - omega * (0.5 * PI - sine_integral(omega * cutoff))
}

/// `κ₀ = s·y`: the wavenumber that dominates the ray `ζ = yτ` at late times.
pub fn stationary_wavenumber(y: f64, s: f64) -> Result<f64> {
    if !(y.is_finite() && y >= 0.0) {
        return Err(Error::domain(format!("ray variable must be ≥ 0, got {y}")));
    }
    check_size(s)?;
    Ok(s * y)
}

/// Leading-order stationary-phase amplitude.
pub fn stationary_phase_amplitude(zeta: f64, tau: f64, s: f64) -> Result<Complex64> {
    if !(tau > 0.0) {
        return Err(Error::domain("stationary phase needs τ > 0"));
    }
    let kappa0 = stationary_wavenumber(zeta / tau, s)?;
    let phase = Complex64::from_polar(1.0, s * zeta * zeta / (2.0 * tau) - 0.25 * PI);
    Ok(Complex64::new(0.0, SQRT_2) * phase * (2.0 * PI * s / tau).sqrt() * momentum_amplitude(kappa0))
}

/// One evaluation of the free wavefunction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FreeEvolutionSample {
    pub zeta: f64,
    pub tau: f64,
    /// `ζ/τ`; absent at `τ = 0`.
    pub y: Option<f64>,
    pub chi: Complex64,
    pub density: f64,
}

pub fn free_sample(zeta: f64, tau: f64, s: f64, cfg: &FreeQuadConfig) -> Result<FreeEvolutionSample> {
    let chi = free_wavefunction(zeta, tau, s, cfg)?;
    Ok(FreeEvolutionSample {
        zeta,
        tau,
        y: (tau > 0.0).then(|| zeta / tau),
        chi,
        density: chi.norm_sqr(),
    })
}

/// A probability together with its error budget.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FreeProbability {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

/// `∫_a^b |φ̂(ζ, τ)|² dζ`.
pub fn free_probability_between(a: f64, b: f64, tau: f64, s: f64, cfg: &FreeQuadConfig) -> Result<FreeProbability> {
    if !(a >= 0.0 && a <= b && b.is_finite()) {
        return Err(Error::domain(format!("invalid window [{a}, {b}]")));
    }
    check_size(s)?;
    if !(tau.is_finite() && tau >= 0.0) {
        return Err(Error::domain(format!("time must be finite and ≥ 0, got {tau}")));
    }
    let failure = RefCell::new(None);
    let worst = RefCell::new((0.0f64, 0.0f64));
    let density = |z: f64| -> f64 {
        if failure.borrow().is_some() {
            return 0.0;
        }
        match amplitude_with_error(z, tau, s, &cfg.amplitude) {
            Ok((v, e)) => {
                let mut w = worst.borrow_mut();
                w.0 = w.0.max(v.norm());
                w.1 = w.1.max(e);
                v.norm_sqr()
            }
            Err(err) => {
                *failure.borrow_mut() = Some(err);
                0.0
            }
        }
    };
    // Zeros of the late-time density sit on the rays κ₀ = kπ.
    let spacing = if tau > 0.0 { PI * tau / s } else { f64::INFINITY };
    let rays = (1..=256).map(|k| k as f64 * spacing).take_while(|&z| z < b);
    let outer = cfg.density.clone().breakpoints(std::iter::once(1.0).chain(rays));
    let r = integrate(density, a, b, &outer)?;
    if let Some(err) = failure.into_inner() {
        return Err(err);
    }
    let r = r.require_converged(|| format!("free density integral over [{a}, {b}] at τ = {tau}"))?;
    let (peak, amp_err) = worst.into_inner();
    let propagated = (b - a) * amp_err * (2.0 * peak + amp_err);
    Ok(FreeProbability {
        value: r.value,
        error_estimate: r.error_estimate + propagated,
        evaluations: r.evaluations,
    })
}

/// `1 − ∫₀^{1+τ} |φ̂|² dζ` for the half-line release.
pub fn free_violation_probability(tau: f64, s: f64, cfg: &FreeQuadConfig) -> Result<FreeProbability> {
    if !(tau.is_finite() && tau > 0.0) {
        return Err(Error::domain(format!("free violation needs finite τ > 0, got {tau}")));
    }
    let inside = free_probability_between(0.0, 1.0 + tau, tau, s, cfg)?;
    Ok(FreeProbability {
        value: 1.0 - inside.value,
        ..inside
    })
}
