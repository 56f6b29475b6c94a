//! Probability of finding the particle outside every future light cone of the
//! initial confinement region.
//!
//! In one dimension the union of compatible light cones is `(0, 1 + τ)`, cut
//! off by the outer wall, so the violation probability is
//! `P(τ) = ∫_{ζ_f}^{Λ} |φ̂(ζ, τ)|² dζ` with `ζ_f = min(1 + τ, Λ)`.
//!
//! For a sine series `φ̂ = Σ c_n sin(nπζ/Λ)` this integral is a finite double
//! sum over mode pairs,
//!
//! ```text
//! P = ½ Σ_{n,m} c_n c̄_m [ I(n − m) − I(n + m) ],   I(j) = ∫_{ζ_f}^{Λ} cos(jπζ/Λ) dζ
//! ```
//!
//! whose difference and sum parts are an autocorrelation and a convolution of
//! the coefficients. Both come out of one forward and two inverse FFTs, so
//! each `P(τ)` costs `O(N log N)` and carries no quadrature error. An
//! adaptive Gauss–Kronrod route is kept for cross-checks.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::boxed::{ModeSpectrum, PhasedSpectrum};
use crate::numerics::{integrate, QuadratureConfig};
use crate::params::SystemParams;
use crate::{Error, Result};

/// Position of the light front at a given time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LightConeGeometry {
    pub tau: f64,
    pub front_position: f64,
}

/// `min(1 + τ, Λ)`.
pub fn light_front(tau: f64, lambda_factor: f64) -> Result<f64> {
    if !(tau.is_finite() && tau >= 0.0) {
        return Err(Error::domain(format!("time must be finite and ≥ 0, got {tau}")));
    }
    Ok((1.0 + tau).min(lambda_factor))
}

impl LightConeGeometry {
    pub fn at(tau: f64, lambda_factor: f64) -> Result<Self> {
        Ok(Self {
            tau,
            front_position: light_front(tau, lambda_factor)?,
        })
    }
}

/// A single violation probability together with its error budget.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ViolationEstimate {
    pub tau: f64,
    pub front_position: f64,
    /// `raw` clamped to `[0, 1]`.
    pub value: f64,
    /// Unclamped integral of the truncated series.
    pub raw: f64,
    /// Bound on `|raw − P_exact|` from truncation plus rounding.
    pub error_estimate: f64,
}

/// Exact window integrals of `|Σ c_n sin(nπζ/Λ)|²` by FFT.
///
/// Holds the FFT plans for repeated evaluation over a time grid. Shareable
/// across threads.
pub struct SpectralIntegrator {
    lambda_factor: f64,
    len: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl SpectralIntegrator {
    pub fn new(lambda_factor: f64, max_mode: usize) -> Self {
        let len = (2 * max_mode + 2).next_power_of_two();
        let mut planner = FftPlanner::new();
        Self {
            lambda_factor,
            len,
            forward: planner.plan_fft_forward(len),
            inverse: planner.plan_fft_inverse(len),
        }
    }

    /// `∫_a^b |φ̂|² dζ` for `0 ≤ a ≤ b ≤ Λ`. Also returns the rounding error
    /// estimate.
    pub fn probability_between(&self, phased: &PhasedSpectrum, a: f64, b: f64) -> Result<(f64, f64)> {
        let lambda = self.lambda_factor;
        if phased.lambda_factor() != lambda {
            return Err(Error::domain(
                "spectrum and integrator disagree on the expansion factor",
            ));
        }
        if !(0.0 <= a && a <= b && b <= lambda) {
            return Err(Error::domain(format!("window [{a}, {b}] not inside [0, {lambda}]")));
        }
        let coeffs = phased.coefficients();
        let n = coeffs.len();
        if 2 * n + 1 > self.len {
            return Err(Error::domain(
                "spectrum has more modes than the integrator was planned for",
            ));
        }
        if a == b {
            return Ok((0.0, 0.0));
        }

        let len = self.len;
        let zero = Complex64::new(0.0, 0.0);
        let mut spectrum = vec![zero; len];
        spectrum[1..=n].copy_from_slice(coeffs);
        self.forward.process(&mut spectrum);

        // Correlation uses F·F̄; the pair-sum convolution uses F(ω)·conj F(−ω),
        // which is the transform of the conjugated coefficients.
        let mut corr: Vec<Complex64> = spectrum.iter().map(|f| f * f.conj()).collect();
        let mut conv: Vec<Complex64> = (0..len)
            .map(|w| spectrum[w] * spectrum[(len - w) % len].conj())
            .collect();
        self.inverse.process(&mut corr);
        self.inverse.process(&mut conv);
        let scale = 1.0 / len as f64;

        let window = |j: usize| -> f64 {
            if j == 0 {
                b - a
            } else {
                let k = j as f64 * PI / lambda;
                ((k * b).sin() - (k * a).sin()) / k
            }
        };

        let mut diff = corr[0].re * window(0);
        for j in (1..n).rev() {
            diff += 2.0 * corr[j].re * window(j);
        }
        let mut pair = 0.0;
        for k in (2..=2 * n).rev() {
            pair += conv[k].re * window(k);
        }
        let value = 0.5 * (diff - pair) * scale;

        let norm = corr[0].re * scale;
        let harmonic = (2.0 * n as f64 + 1.0).ln() + 1.0;
        let rounding = 32.0 * f64::EPSILON * (len as f64).log2() * harmonic * norm * (1.0 + lambda);
        Ok((value, rounding))
    }
}

fn check_pairing(spectrum: &ModeSpectrum, params: &SystemParams) -> Result<()> {
    if spectrum.lambda_factor() != params.lambda_factor() {
        return Err(Error::domain(format!(
            "spectrum built for Λ = {} but parameters have Λ = {}",
            spectrum.lambda_factor(),
            params.lambda_factor()
        )));
    }
    Ok(())
}

// |‖u‖² − ‖v‖²| ≤ √ε (2‖v‖ + √ε) when ‖u − v‖² ≤ ε.
fn truncation_error(raw: f64, tail: f64) -> f64 {
    2.0 * (raw.max(0.0) * tail).sqrt() + tail
}

fn finish(tau: f64, front: f64, raw: f64, error_estimate: f64) -> Result<ViolationEstimate> {
    let slack = error_estimate + 1e-12;
    if !(raw >= -slack && raw <= 1.0 + slack) {
        return Err(Error::NumericalFailure {
            what: format!("violation probability {raw} at τ = {tau} outside [0, 1]"),
            achieved: error_estimate,
        });
    }
    Ok(ViolationEstimate {
        tau,
        front_position: front,
        value: raw.clamp(0.0, 1.0),
        raw,
        error_estimate,
    })
}

fn evaluate(
    integrator: &SpectralIntegrator,
    spectrum: &ModeSpectrum,
    params: &SystemParams,
    tau: f64,
) -> Result<ViolationEstimate> {
    let lambda = params.lambda_factor();
    let front = light_front(tau, lambda)?;
    if front >= lambda {
        return finish(tau, front, 0.0, 0.0);
    }
    let phased = spectrum.at_time(params.s(), tau)?;
    let (raw, rounding) = integrator.probability_between(&phased, front, lambda)?;
    finish(tau, front, raw, truncation_error(raw, spectrum.tail_bound()) + rounding)
}

/// `P(τ)` for the truncated spectrum, integrated exactly.
pub fn violation_probability(spectrum: &ModeSpectrum, params: &SystemParams, tau: f64) -> Result<ViolationEstimate> {
    check_pairing(spectrum, params)?;
    let integrator = SpectralIntegrator::new(spectrum.lambda_factor(), spectrum.max_mode());
    evaluate(&integrator, spectrum, params, tau)
}

/// `P(τ)` by adaptive Gauss–Kronrod on the pointwise density, with
/// breakpoints every `Λ/N`. Costs `O(N²)`; intended for modest spectra.
pub fn violation_probability_adaptive(
    spectrum: &ModeSpectrum,
    params: &SystemParams,
    tau: f64,
    cfg: &QuadratureConfig,
) -> Result<ViolationEstimate> {
    check_pairing(spectrum, params)?;
    let lambda = params.lambda_factor();
    let front = light_front(tau, lambda)?;
    if front >= lambda {
        return finish(tau, front, 0.0, 0.0);
    }
    let phased = spectrum.at_time(params.s(), tau)?;
    let spacing = lambda / spectrum.max_mode() as f64;
    let first = (front / spacing).floor() as usize + 1;
    let last = (lambda / spacing).ceil() as usize;
    let cfg = cfg.clone().breakpoints((first..last).map(|k| k as f64 * spacing));
    let result = integrate(|z| phased.amplitude_unchecked(z).norm_sqr(), front, lambda, &cfg)?
        .require_converged(|| format!("violation integral at τ = {tau}"))?;
    let raw = result.value;
    finish(
        tau,
        front,
        raw,
        truncation_error(raw, spectrum.tail_bound()) + result.error_estimate,
    )
}

/// Tolerances behind a [`ViolationCurve`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveTolerances {
    pub max_mode: usize,
    pub truncation_bound: f64,
    pub method: IntegrationMethod,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IntegrationMethod {
    /// Exact mode-pair sum evaluated by FFT.
    Spectral,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ViolationCurve {
    pub tau_grid: Vec<f64>,
    /// Clamped probabilities.
    pub values: Vec<f64>,
    pub raw_values: Vec<f64>,
    pub errors: Vec<f64>,
    pub params: SystemParams,
    pub tolerances: CurveTolerances,
}

impl ViolationCurve {
    /// Largest value and the time it occurs at.
    pub fn peak(&self) -> Option<(f64, f64)> {
        self.tau_grid
            .iter()
            .zip(&self.values)
            .fold(None, |best: Option<(f64, f64)>, (&t, &v)| match best {
                Some((_, bv)) if bv >= v => best,
                _ => Some((t, v)),
            })
    }
}

/// Evaluates `P` over an increasing grid. Points are computed in parallel on
/// the current rayon pool; each is independent, so the output does not depend
/// on the number of threads.
pub fn violation_curve(spectrum: &ModeSpectrum, params: &SystemParams, tau_grid: &[f64]) -> Result<ViolationCurve> {
    check_pairing(spectrum, params)?;
    if tau_grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::domain("time grid must be strictly increasing"));
    }
    if let Some(&t) = tau_grid.first() {
        light_front(t, params.lambda_factor())?;
    }
    let integrator = SpectralIntegrator::new(spectrum.lambda_factor(), spectrum.max_mode());
    let estimates: Vec<ViolationEstimate> = tau_grid
        .par_iter()
        .map(|&t| evaluate(&integrator, spectrum, params, t))
        .collect::<Result<_>>()?;
    Ok(ViolationCurve {
        tau_grid: tau_grid.to_vec(),
        values: estimates.iter().map(|e| e.value).collect(),
        raw_values: estimates.iter().map(|e| e.raw).collect(),
        errors: estimates.iter().map(|e| e.error_estimate).collect(),
        params: *params,
        tolerances: CurveTolerances {
            max_mode: spectrum.max_mode(),
            truncation_bound: spectrum.tail_bound(),
            method: IntegrationMethod::Spectral,
        },
    })
}

/// Half-width of the refined band around the specular time.
pub const REFINEMENT_HALF_WIDTH: f64 = 0.05;

/// Uniform grid on `[0, Λ − 1]` with spacing `step`, plus points ten times
/// denser within `±0.05` of the specular time.
pub fn default_tau_grid(params: &SystemParams, step: f64) -> Result<Vec<f64>> {
    if !(step.is_finite() && step > 0.0) {
        return Err(Error::domain(format!("time step must be positive, got {step}")));
    }
    let end = params.lambda_factor() - 1.0;
    let count = (end / step + 1e-9).floor() as usize;
    let mut grid: Vec<f64> = (0..=count).map(|i| i as f64 * step).collect();
    if end - grid[count] > 1e-9 * step {
        grid.push(end);
    }
    let centre = params.time_scales().tau_specular;
    let fine = step / 10.0;
    let lo = (centre - REFINEMENT_HALF_WIDTH).max(0.0);
    let hi = (centre + REFINEMENT_HALF_WIDTH).min(end);
    if lo < hi {
        let first = (lo / fine).ceil() as usize;
        let last = (hi / fine).floor() as usize;
        grid.extend((first..=last).map(|k| k as f64 * fine));
    }
    grid.sort_by(f64::total_cmp);
    grid.dedup_by(|b, a| (*b - *a).abs() <= 1e-9 * step);
    Ok(grid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boxed::DEFAULT_TRUNCATION_TOL;
    use proptest::prelude::*;

    fn setup(s: f64, lambda: f64, tol: f64) -> (SystemParams, ModeSpectrum) {
        let p = SystemParams::new(s, lambda).unwrap();
        (p, ModeSpectrum::new(lambda, tol).unwrap())
    }

    #[test]
    fn light_front_values() {
        assert_eq!(light_front(0.0, 5.0).unwrap(), 1.0);
        assert_eq!(light_front(4.0, 5.0).unwrap(), 5.0);
        assert_eq!(light_front(10.0, 5.0).unwrap(), 5.0);
        assert!(light_front(-0.1, 5.0).is_err());
        assert_eq!(LightConeGeometry::at(2.5, 5.0).unwrap().front_position, 3.5);
    }

    #[test]
    fn window_endpoints_vanish() {
        let (p, sp) = setup(0.3, 5.0, DEFAULT_TRUNCATION_TOL);
        let c = violation_curve(&sp, &p, &[0.0, 4.0, 5.0]).unwrap();
        assert!(c.values[0] < 1e-8, "{}", c.values[0]);
        assert_eq!(&c.values[1..], &[0.0, 0.0]);
    }

    #[test]
    fn specular_peak_reaches_one() {
        let (p, sp) = setup(0.1, 5.0, DEFAULT_TRUNCATION_TOL);
        let e = violation_probability(&sp, &p, 5.0 / PI).unwrap();
        assert!((e.value - 1.0).abs() < 1e-3, "{e:?}");
    }

    // At the specular time the density is 2 sin²(πζ) mirrored to the far
    // wall, so the weight beyond the front has a closed form.
    #[test]
    fn specular_window_closed_form() {
        let (p, sp) = setup(0.2, 5.0, DEFAULT_TRUNCATION_TOL);
        let tau = 10.0 / PI;
        let width = 4.0 - tau;
        let expected = width - (2.0 * PI * width).sin() / (2.0 * PI);
        assert!((expected - 0.962_200_887_587_665).abs() < 1e-12);
        let e = violation_probability(&sp, &p, tau).unwrap();
        assert!((e.raw - expected).abs() < 1e-6, "{}", e.raw - expected);
        assert!((e.raw - expected).abs() <= e.error_estimate);
    }

    #[test]
    fn rejects_mismatched_inputs() {
        let (p, _) = setup(0.1, 5.0, 1e-8);
        let other = ModeSpectrum::new(4.0, 1e-8).unwrap();
        assert!(violation_probability(&other, &p, 1.0).is_err());
        let sp = ModeSpectrum::new(5.0, 1e-8).unwrap();
        assert!(violation_probability(&sp, &p, -1.0).is_err());
        assert!(violation_curve(&sp, &p, &[0.5, 0.2]).is_err());
    }

    // Midpoint rule on 10⁵ panels as an independent integrator.
    #[test]
    fn agrees_with_riemann_oracle() {
        for &(s, lambda, tau) in &[(0.1, 5.0, 1.3), (4.0, 5.0, 0.7), (0.5, 3.3, 0.2), (1.0, 8.0, 5.5)] {
            let (p, sp) = setup(s, lambda, 1e-8);
            let phased = sp.at_time(s, tau).unwrap();
            let front = 1.0 + tau;
            let panels = 100_000;
            let h = (lambda - front) / panels as f64;
            let oracle: f64 = (0..panels)
                .map(|k| phased.amplitude_unchecked(front + (k as f64 + 0.5) * h).norm_sqr())
                .sum::<f64>()
                * h;
            let e = violation_probability(&sp, &p, tau).unwrap();
            assert!(
                (e.raw - oracle).abs() < 1e-9,
                "s={s} Λ={lambda} τ={tau}: {} vs {oracle}",
                e.raw
            );
        }
    }

    #[test]
    fn agrees_with_adaptive_route() {
        let (p, sp) = setup(0.1, 5.0, 1e-7);
        let cfg = QuadratureConfig::with_tolerances(1e-12, 1e-12);
        for tau in [0.3, 1.59, 2.9] {
            let a = violation_probability_adaptive(&sp, &p, tau, &cfg).unwrap();
            let b = violation_probability(&sp, &p, tau).unwrap();
            assert!((a.raw - b.raw).abs() < 1e-10, "τ={tau}");
        }
    }

    #[test]
    fn complement_identity() {
        let (p, sp) = setup(0.7, 5.0, 1e-8);
        let cfg = QuadratureConfig::with_tolerances(1e-12, 1e-12);
        for tau in [0.0, 0.8, 2.2] {
            let phased = sp.at_time(0.7, tau).unwrap();
            let front = 1.0 + tau;
            let spacing = 5.0 / sp.max_mode() as f64;
            let inner_cfg = cfg
                .clone()
                .breakpoints((1..(front / spacing) as usize).map(|k| k as f64 * spacing));
            let inside = integrate(|z| phased.amplitude_unchecked(z).norm_sqr(), 0.0, front, &inner_cfg)
                .unwrap()
                .value;
            let outside = violation_probability(&sp, &p, tau).unwrap();
            assert!((inside + outside.raw - 1.0).abs() < sp.tail_bound() + 1e-10);
        }
    }

    #[test]
    fn whole_box_is_parseval() {
        let sp = ModeSpectrum::new(4.2, 1e-9).unwrap();
        let integ = SpectralIntegrator::new(4.2, sp.max_mode());
        let phased = sp.at_time(0.4, 3.1).unwrap();
        let (total, _) = integ.probability_between(&phased, 0.0, 4.2).unwrap();
        assert!((total - sp.parseval_sum()).abs() < 1e-13);
    }

    #[test]
    fn default_grid_shape() {
        let p = SystemParams::new(0.1, 5.0).unwrap();
        let g = default_tau_grid(&p, 0.005).unwrap();
        assert_eq!(g[0], 0.0);
        assert!((g[g.len() - 1] - 4.0).abs() < 1e-12);
        assert!(g.windows(2).all(|w| w[1] > w[0]));
        let spec = 5.0 / PI;
        let near = g.iter().filter(|&&t| (t - spec).abs() <= 0.05).count();
        assert!((195..=202).contains(&near), "{near}");
        assert!(default_tau_grid(&p, 0.0).is_err());
    }

    #[test]
    fn peak_of_curve() {
        let (p, sp) = setup(0.1, 5.0, 1e-10);
        let c = violation_curve(&sp, &p, &[1.0, 5.0 / PI, 2.0]).unwrap();
        let (t, v) = c.peak().unwrap();
        assert_eq!(t, 5.0 / PI);
        assert!(v > 0.999);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn probability_in_unit_interval(log_s in -1.5f64..1.0, lambda in 1.5f64..8.0, frac in 0.0f64..1.2) {
            let s = 10f64.powf(log_s);
            let (p, sp) = setup(s, lambda, 1e-9);
            let e = violation_probability(&sp, &p, frac * (lambda - 1.0)).unwrap();
            prop_assert!(e.raw >= -e.error_estimate - 1e-12 && e.raw <= 1.0 + e.error_estimate + 1e-12);
            prop_assert!((0.0..=1.0).contains(&e.value));
        }

        #[test]
        fn light_front_monotone(t in 0.0f64..10.0, dt in 0.0f64..3.0, lambda in 1.0f64..10.0) {
            prop_assert!(light_front(t + dt, lambda).unwrap() >= light_front(t, lambda).unwrap());
        }
    }
}
