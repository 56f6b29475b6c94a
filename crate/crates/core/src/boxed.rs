//! Exact evolution of the released particle inside the outer box.
//!
//! At `τ = 0` the state is the inner-box ground state `φ̂₀(ζ) = √2 sin(πζ)`
//! on `(0, 1)`, zero elsewhere (amplitudes are `φ̂ = √a·φ`). Expanding it in
//! the outer-box eigenbasis `sin(nπζ/Λ)` gives
//!
//! ```text
//! φ̂(ζ, τ) = Σ_{n≥1} b_n sin(nπζ/Λ) exp(−2πi n² τ/τ_rev)
//! b_n     = −(2√2 Λ/π) · sin(nπ/Λ) / (n² − Λ²)
//! ```
//!
//! with `τ_rev = 4Λ²s/π`, i.e. a phase of `π²n²τ/(2Λ²s)` per mode. The sum over
//! all integers found in the literature pairs the terms `±n` into this sine
//! series, because `sin(nπ/Λ)/(n² − Λ²)` is odd in `n`. The sign of `b_n` is
//! chosen so that the reconstruction at `τ = 0` is positive on `(0, 1)`.
//!
//! At `τ = τ_rev/2` every phase is `(−1)ⁿ`, and since
//! `(−1)ⁿ sin(nπζ/Λ) = −sin(nπ(Λ − ζ)/Λ)` the truncated sum satisfies
//! `φ̂(ζ, τ_rev/2) = −φ̂(Λ − ζ, 0)` exactly: the specular revival.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::params::SystemParams;
use crate::{Error, Result};

/// Default bound on the discarded probability weight of a spectrum.
pub const DEFAULT_TRUNCATION_TOL: f64 = 1e-13;

/// `|n − Λ|` below which the resonant ratio is taken from its Taylor
/// expansion about the removable singularity.
const RESONANCE_WINDOW: f64 = 1e-6;

/// `sin(nπ/Λ) / (n² − Λ²)` with the removable singularity at `n = Λ`
/// filled in (limit `−π/(2Λ²)`).
pub fn resonant_ratio(n: f64, lambda: f64) -> f64 {
    let delta = n - lambda;
    if delta.abs() < RESONANCE_WINDOW {
        -PI / (2.0 * lambda * lambda) * (1.0 - delta / (2.0 * lambda))
    } else if delta.abs() < 0.5 {
        // sin(nπ/Λ) = −sin(πδ/Λ); δ is exact here, so no cancellation.
        -(PI * delta / lambda).sin() / (delta * (2.0 * lambda + delta))
    } else {
        (n * PI / lambda).sin() / ((n - lambda) * (n + lambda))
    }
}

/// Expansion coefficient `b_n` of the initial state in the outer-box basis.
///
/// `Λ = 1` is accepted as the degenerate no-expansion case, where only
/// `b_1 = √2` survives.
pub fn mode_coefficient(n: i64, lambda: f64) -> Result<f64> {
    if n < 1 {
        return Err(Error::domain(format!("mode index must be ≥ 1, got {n}")));
    }
    check_lambda(lambda)?;
    Ok(coefficient_unchecked(n as f64, lambda))
}

fn coefficient_unchecked(n: f64, lambda: f64) -> f64 {
    -(2.0 * SQRT_2 * lambda / PI) * resonant_ratio(n, lambda)
}

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda.is_finite() && lambda >= 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("expansion factor must be ≥ 1, got {lambda}")))
    }
}

/// Upper bound on the probability carried by modes `n > max_mode`.
///
/// `(Λ/2) Σ_{n>N} b_n² ≤ (4Λ³/π²) ∫_N^∞ dn/(n² − Λ²)²
///                     ≤ 4Λ³ / (3π² N³ (1 − Λ²/N²)²)`, valid for `N > Λ`.
pub fn truncation_tail_bound(lambda: f64, max_mode: usize) -> f64 {
    let n = max_mode as f64;
    if n <= lambda {
        return f64::INFINITY;
    }
    let shrink = 1.0 - (lambda / n).powi(2);
    4.0 * lambda.powi(3) / (3.0 * PI * PI * n.powi(3) * shrink * shrink)
}

/// Truncated set of expansion coefficients `b_1..b_N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModeSpectrum {
    lambda_factor: f64,
    coefficients: Vec<f64>,
    tail_bound: f64,
}

impl ModeSpectrum {
    /// Smallest spectrum whose discarded weight is provably `≤ tol`.
    pub fn new(lambda: f64, tol: f64) -> Result<Self> {
        check_lambda(lambda)?;
        if !(tol > 0.0 && tol < 1.0) {
            return Err(Error::domain(format!(
                "truncation tolerance must lie in (0, 1), got {tol}"
            )));
        }
        let estimate = (4.0 * lambda.powi(3) / (3.0 * PI * PI * tol)).cbrt();
        let mut n = (estimate.ceil() as usize).max(lambda.floor() as usize + 1);
        while truncation_tail_bound(lambda, n) > tol {
            n += 1 + n / 64;
        }
        Ok(Self::with_modes_unchecked(lambda, n))
    }

    /// Spectrum with an explicit number of modes.
    pub fn with_modes(lambda: f64, max_mode: usize) -> Result<Self> {
        check_lambda(lambda)?;
        if max_mode == 0 {
            return Err(Error::domain("a spectrum needs at least one mode"));
        }
        Ok(Self::with_modes_unchecked(lambda, max_mode))
    }

    fn with_modes_unchecked(lambda: f64, max_mode: usize) -> Self {
        let coefficients = (1..=max_mode)
            .map(|n| coefficient_unchecked(n as f64, lambda))
            .collect();
        Self {
            lambda_factor: lambda,
            coefficients,
            tail_bound: truncation_tail_bound(lambda, max_mode),
        }
    }

    pub fn lambda_factor(&self) -> f64 {
        self.lambda_factor
    }

    pub fn max_mode(&self) -> usize {
        self.coefficients.len()
    }

    /// `b_n` for `n = 1..=N`.
    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    /// Retained probability `(Λ/2) Σ b_n²`, summed from the smallest terms up.
    pub fn parseval_sum(&self) -> f64 {
        let sum: f64 = self.coefficients.iter().rev().map(|b| b * b).sum();
        0.5 * self.lambda_factor * sum
    }

    /// Coefficients with the time-dependent phases applied.
    pub fn at_time(&self, s: f64, tau: f64) -> Result<PhasedSpectrum> {
        if !(s.is_finite() && s > 0.0) {
            return Err(Error::domain(format!("confinement size must be positive, got {s}")));
        }
        if !(tau.is_finite() && tau >= 0.0) {
            return Err(Error::domain(format!("time must be finite and ≥ 0, got {tau}")));
        }
        let tau_revival = 4.0 * self.lambda_factor * self.lambda_factor * s / PI;
        let cycles = tau / tau_revival;
        let cycles = cycles - cycles.floor();
        let coefficients = self
            .coefficients
            .iter()
            .enumerate()
            .map(|(i, &b)| {
                let n = (i + 1) as f64;
                let turn = (n * n * cycles).fract();
                let (sin, cos) = (2.0 * PI * turn).sin_cos();
                Complex64::new(b * cos, -b * sin)
            })
            .collect();
        Ok(PhasedSpectrum {
            lambda_factor: self.lambda_factor,
            tau,
            coefficients,
        })
    }
}

/// Builds the spectrum for `params` with discarded weight at most `tol`.
pub fn build_spectrum(params: &SystemParams, tol: f64) -> Result<ModeSpectrum> {
    ModeSpectrum::new(params.lambda_factor(), tol)
}

/// Complex mode amplitudes `c_n = b_n exp(−2πi n² τ/τ_rev)` at a fixed time.
#[derive(Debug, Clone)]
pub struct PhasedSpectrum {
    lambda_factor: f64,
    tau: f64,
    coefficients: Vec<Complex64>,
}

impl PhasedSpectrum {
    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn lambda_factor(&self) -> f64 {
        self.lambda_factor
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    /// `φ̂(ζ)`; requires `0 ≤ ζ ≤ Λ`.
    pub fn amplitude(&self, zeta: f64) -> Result<Complex64> {
        if !(zeta >= 0.0 && zeta <= self.lambda_factor) {
            return Err(Error::domain(format!(
                "position {zeta} outside the outer box [0, {}]",
                self.lambda_factor
            )));
        }
        Ok(self.amplitude_unchecked(zeta))
    }

    pub(crate) fn amplitude_unchecked(&self, zeta: f64) -> Complex64 {
        if zeta == 0.0 || zeta == self.lambda_factor {
            return Complex64::new(0.0, 0.0);
        }
        sine_series(&self.coefficients, PI * zeta / self.lambda_factor)
    }

    pub fn density(&self, zeta: f64) -> Result<f64> {
        self.amplitude(zeta).map(|a| a.norm_sqr())
    }

    /// Amplitudes on the uniform grid `ζ_j = jΛ/intervals`, `j = 0..=intervals`,
    /// by a single FFT.
    pub fn uniform_grid(&self, intervals: usize) -> Result<Vec<Complex64>> {
        if intervals == 0 {
            return Err(Error::domain("uniform grid needs at least one interval"));
        }
        let n_modes = self.coefficients.len();
        // The sine transform needs more grid intervals than modes; refine and
        // subsample otherwise.
        let refine = n_modes / intervals + 1;
        let m = intervals * refine;
        let len = 2 * m;
        let mut buf = vec![Complex64::new(0.0, 0.0); len];
        for (i, &c) in self.coefficients.iter().enumerate() {
            let n = i + 1;
            buf[n] = c;
            buf[len - n] = -c;
        }
        FftPlanner::new().plan_fft_forward(len).process(&mut buf);
        // X_j = −2i Σ c_n sin(πnj/m)
        let half_i = Complex64::new(0.0, 0.5);
        let mut out: Vec<Complex64> = (0..=intervals).map(|j| buf[j * refine] * half_i).collect();
        out[0] = Complex64::new(0.0, 0.0);
        out[intervals] = Complex64::new(0.0, 0.0);
        Ok(out)
    }
}

/// `Σ_{n=1}^{N} c_n sin(n x)` by Clenshaw's recurrence in Reinsch's form,
/// which stays accurate for `x` near `0` and `π`.
pub fn sine_series(coefficients: &[Complex64], x: f64) -> Complex64 {
    let zero = Complex64::new(0.0, 0.0);
    let (mut u, mut d) = (zero, zero);
    if x.cos() >= 0.0 {
        let lam = -4.0 * (0.5 * x).sin().powi(2);
        for &c in coefficients.iter().rev() {
            d = c + u * lam + d;
            u = d + u;
        }
    } else {
        let lam = 4.0 * (0.5 * x).cos().powi(2);
        for &c in coefficients.iter().rev() {
            d = c + u * lam - d;
            u = d - u;
        }
    }
    u * x.sin()
}

/// Analytic initial state `√2 sin(πζ)` on `(0, 1)`, zero elsewhere.
pub fn initial_state(zeta: f64) -> f64 {
    if zeta > 0.0 && zeta < 1.0 {
        SQRT_2 * (PI * zeta).sin()
    } else {
        0.0
    }
}

/// A single evaluation of the wavefunction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaveSample {
    pub zeta: f64,
    pub tau: f64,
    pub amplitude: Complex64,
}

/// Truncated mode sum at `(ζ, τ)`.
///
/// For many positions at one time, use [`ModeSpectrum::at_time`] once and
/// evaluate the returned [`PhasedSpectrum`].
pub fn wavefunction(spectrum: &ModeSpectrum, s: f64, zeta: f64, tau: f64) -> Result<WaveSample> {
    let amplitude = spectrum.at_time(s, tau)?.amplitude(zeta)?;
    Ok(WaveSample { zeta, tau, amplitude })
}

/// Probability density on a grid at fixed time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityCurve {
    pub tau: f64,
    /// `(ζ, ρ)` pairs in grid order.
    pub points: Vec<(f64, f64)>,
}

/// `ρ(ζ) = |φ̂(ζ, τ)|²` at each grid point. The grid must be non-empty,
/// strictly increasing and inside `[0, Λ]`.
pub fn density_snapshot(spectrum: &ModeSpectrum, s: f64, zeta_grid: &[f64], tau: f64) -> Result<DensityCurve> {
    if zeta_grid.is_empty() {
        return Err(Error::domain("density grid is empty"));
    }
    if zeta_grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::domain("density grid must be strictly increasing"));
    }
    let lambda = spectrum.lambda_factor();
    if !(zeta_grid[0] >= 0.0 && zeta_grid[zeta_grid.len() - 1] <= lambda) {
        return Err(Error::domain(format!("density grid must lie in [0, {lambda}]")));
    }
    let phased = spectrum.at_time(s, tau)?;
    let points = zeta_grid
        .par_iter()
        .map(|&z| (z, phased.amplitude_unchecked(z).norm_sqr()))
        .collect();
    Ok(DensityCurve { tau, points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn resonant_ratio_reference_values() {
        // Λ = 5, n = 1: sin(π/5)/(1 − 25)
        assert!((resonant_ratio(1.0, 5.0) - (-0.024_491_052_178_853_047)).abs() < 1e-17);
        assert_eq!(resonant_ratio(5.0, 5.0), -PI / 50.0);
        for n in 1..20 {
            assert!(resonant_ratio(n as f64, 5.0).is_finite());
        }
    }

    // Approach the removable point from both sides with the raw formula in
    // extended steps and compare with the filled-in value.
    #[test]
    fn resonant_limit_matches_neighbourhood() {
        let lambda = 5.0;
        for eps in [1e-7, -1e-7] {
            let nu = lambda * (1.0 + eps);
            let raw = (nu * PI / lambda).sin() / (nu * nu - lambda * lambda);
            let filled = resonant_ratio(nu, lambda);
            assert!((raw - filled).abs() < 1e-9, "{raw} vs {filled}");
            assert!((filled - (-PI / 50.0)).abs() < 1e-8);
        }
        // Either side of the Taylor window agrees with the exact form.
        for delta in [0.999e-6, 1.001e-6, -0.999e-6, 3e-4, 0.4999, 0.5001] {
            let n = lambda + delta;
            let exact = -(PI * delta / lambda).sin() / (delta * (2.0 * lambda + delta));
            assert!((resonant_ratio(n, lambda) - exact).abs() < 1e-13 * exact.abs().max(1e-3));
        }
    }

    #[test]
    fn coefficient_domain() {
        assert!(mode_coefficient(0, 5.0).is_err());
        assert!(mode_coefficient(-3, 5.0).is_err());
        assert!(mode_coefficient(1, 0.5).is_err());
        assert!((mode_coefficient(1, 1.0).unwrap() - SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn degenerate_box_keeps_all_weight_in_one_mode() {
        let sp = ModeSpectrum::new(1.0, 1e-10).unwrap();
        let b = sp.coefficients();
        assert!((b[0] * b[0] * 0.5 - 1.0).abs() < 1e-15);
        assert!(b[1..].iter().all(|x| x.abs() < 1e-14));
        assert!((sp.parseval_sum() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn truncation_respects_tolerance() {
        for &(lambda, tol) in &[(5.0, 1e-10), (5.0, 0.5), (3.7, 1e-13), (20.0, 1e-8)] {
            let sp = ModeSpectrum::new(lambda, tol).unwrap();
            assert!(sp.tail_bound() <= tol);
            let eps = 1.0 - sp.parseval_sum();
            assert!(eps >= -1e-13 && eps <= sp.tail_bound(), "Λ={lambda} ε={eps}");
        }
        let loose = ModeSpectrum::new(5.0, 0.5).unwrap();
        assert!(loose.max_mode() < 20);
        assert!(ModeSpectrum::new(5.0, 1.0).is_err());
        assert!(ModeSpectrum::new(5.0, 0.0).is_err());
    }

    // Brute-force check of the bound: sum the discarded terms directly.
    #[test]
    fn tail_bound_dominates_discarded_weight() {
        for &lambda in &[2.0, 5.0, 4.7] {
            let sp = ModeSpectrum::new(lambda, 1e-8).unwrap();
            let n0 = sp.max_mode();
            let mut discarded = 0.0;
            for n in (n0 + 1..=n0 * 400).rev() {
                discarded += coefficient_unchecked(n as f64, lambda).powi(2);
            }
            discarded *= 0.5 * lambda;
            assert!(discarded <= sp.tail_bound());
            assert!(discarded > 0.1 * sp.tail_bound());
        }
    }

    #[test]
    fn initial_reconstruction() {
        let sp = ModeSpectrum::new(5.0, 1e-10).unwrap();
        let w = wavefunction(&sp, 0.3, 0.5, 0.0).unwrap();
        assert!((w.amplitude.norm() - SQRT_2).abs() < 1e-6);
        assert!(w.amplitude.re > 0.0);
        let outside = wavefunction(&sp, 0.3, 1.7, 0.0).unwrap();
        assert!(outside.amplitude.norm() < 1e-6);
        assert!(wavefunction(&sp, 0.3, 5.1, 0.0).is_err());
        assert!(wavefunction(&sp, 0.3, -0.1, 0.0).is_err());
        assert!(wavefunction(&sp, 0.3, 1.0, -1.0).is_err());
    }

    #[test]
    fn walls_are_exact_nodes() {
        let sp = ModeSpectrum::new(3.7, 1e-8).unwrap();
        let ph = sp.at_time(0.5, 0.77).unwrap();
        assert_eq!(ph.amplitude(0.0).unwrap(), Complex64::new(0.0, 0.0));
        assert_eq!(ph.amplitude(3.7).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn specular_revival_of_truncated_sum() {
        let sp = ModeSpectrum::new(5.0, 1e-10).unwrap();
        let s = 0.1;
        let spec = 2.0 * 25.0 * s / PI;
        let now = sp.at_time(s, spec).unwrap();
        let start = sp.at_time(s, 0.0).unwrap();
        for i in 0..=200 {
            let z = 5.0 * i as f64 / 200.0;
            let a = now.amplitude(z).unwrap();
            let b = start.amplitude(5.0 - z).unwrap();
            assert!((a + b).norm() < 1e-12, "at ζ={z}");
        }
    }

    #[test]
    fn snapshot_validation() {
        let sp = ModeSpectrum::new(5.0, 1e-8).unwrap();
        assert!(density_snapshot(&sp, 0.1, &[], 0.0).is_err());
        assert!(density_snapshot(&sp, 0.1, &[0.2, 0.1], 0.0).is_err());
        assert!(density_snapshot(&sp, 0.1, &[0.2, 5.5], 0.0).is_err());
        let c = density_snapshot(&sp, 0.1, &[0.25, 0.5, 2.0], 0.0).unwrap();
        assert!((c.points[1].1 - 2.0).abs() < 1e-5);
        assert!((c.points[0].1 - 1.0).abs() < 1e-5);
        assert!(c.points[2].1 < 1e-9);
    }

    #[test]
    fn fft_grid_matches_pointwise_evaluation() {
        let sp = ModeSpectrum::new(4.7, 1e-9).unwrap();
        let ph = sp.at_time(0.8, 1.234).unwrap();
        for intervals in [50, 4000, sp.max_mode() + 3] {
            let grid = ph.uniform_grid(intervals).unwrap();
            for (j, &v) in grid.iter().enumerate().step_by(7) {
                let z = 4.7 * j as f64 / intervals as f64;
                let direct = ph.amplitude_unchecked(z.min(4.7));
                assert!((v - direct).norm() < 1e-11, "j={j} of {intervals}");
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        // Reinsch–Clenshaw against term-by-term evaluation.
        #[test]
        fn clenshaw_matches_direct_sum(x in 0.0f64..PI, seed in 0u64..1000) {
            let coeffs: Vec<Complex64> = (1..=300)
                .map(|n| {
                    let t = (n as f64 * 0.37 + seed as f64).sin();
                    Complex64::new(t, 0.5 * t * t) / (n as f64)
                })
                .collect();
            let direct: Complex64 = coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c * ((i + 1) as f64 * x).sin())
                .sum();
            prop_assert!((sine_series(&coeffs, x) - direct).norm() < 1e-12);
        }

        #[test]
        fn exact_periodicity(tau in 0.0f64..20.0, z in 0.0f64..5.0, s in 0.05f64..5.0) {
            let sp = ModeSpectrum::new(5.0, 1e-8).unwrap();
            let period = 4.0 * 25.0 * s / PI;
            let a = sp.at_time(s, tau).unwrap().amplitude(z).unwrap();
            let b = sp.at_time(s, tau + period).unwrap().amplitude(z).unwrap();
            prop_assert!((a - b).norm() < 1e-10);
        }

        #[test]
        fn parseval_for_any_expansion(lambda in 1.0f64..12.0) {
            let sp = ModeSpectrum::new(lambda, 1e-9).unwrap();
            let eps = 1.0 - sp.parseval_sum();
            prop_assert!(eps >= -1e-12 && eps <= sp.tail_bound() + 1e-12);
        }
    }
}
