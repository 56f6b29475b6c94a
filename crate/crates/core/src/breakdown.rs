//! When the specular revival outruns light.
//!
//! At `τ_spec = τ_rev/2` the whole packet sits mirrored against the far wall,
//! on `(Λ − 1, Λ)`. If by then the light front `1 + τ_spec` has not passed
//! `Λ − 1`, every bit of probability lies outside the compatible light cones:
//! `P = 1`. With `τ_rev = 4Λ²s/π` that condition reads
//!
//! ```text
//! (2s/π) Λ² − Λ + 2 ≤ 0
//! ```
//!
//! which has real roots only for `s ≤ π/16`, i.e. `γ ≥ 129`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::params::lorentz_factor;
use crate::{Error, Result};

/// Largest confinement size for which total breakdown can occur.
pub const CONFINEMENT_THRESHOLD: f64 = PI / 16.0;

/// Lorentz factor at [`CONFINEMENT_THRESHOLD`].
pub const GAMMA_THRESHOLD: f64 = 129.0;

pub fn breakdown_possible(s: f64) -> bool {
    s <= CONFINEMENT_THRESHOLD
}

/// Range of expansion factors with total breakdown, `(Λ₋, Λ₊)`.
pub fn breakdown_interval(s: f64) -> Option<(f64, f64)> {
    if !(s > 0.0 && breakdown_possible(s)) {
        return None;
    }
    let disc = (1.0 - 16.0 * s / PI).max(0.0);
    let upper = PI / (4.0 * s) * (1.0 + disc.sqrt());
    // Product of the roots is π/s.
    let lower = PI / s / upper;
    Some((lower, upper))
}

/// `(2s/π)Λ² − Λ + 2 ≤ 0`.
pub fn is_total_breakdown(s: f64, lambda_factor: f64) -> bool {
    breakdown_margin(s, lambda_factor) <= 0.0
}

/// Left-hand side of the breakdown inequality.
pub fn breakdown_margin(s: f64, lambda_factor: f64) -> f64 {
    2.0 * s / PI * lambda_factor * lambda_factor - lambda_factor + 2.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BreakdownReport {
    pub s: f64,
    pub lambda_factor: f64,
    pub gamma: f64,
    pub possible: bool,
    pub interval: Option<(f64, f64)>,
    pub gamma_threshold: f64,
    pub total_breakdown: bool,
}

impl BreakdownReport {
    pub fn new(s: f64, lambda_factor: f64) -> Result<Self> {
        let gamma = lorentz_factor(s)?;
        if !(lambda_factor.is_finite() && lambda_factor > 1.0) {
            return Err(Error::domain(format!(
                "expansion factor must be > 1, got {lambda_factor}"
            )));
        }
        Ok(Self {
            s,
            lambda_factor,
            gamma,
            possible: breakdown_possible(s),
            interval: breakdown_interval(s),
            gamma_threshold: GAMMA_THRESHOLD,
            total_breakdown: is_total_breakdown(s, lambda_factor),
        })
    }
}

/// Free Gaussian packet of initial width `σ₀` (lengths in reduced Compton
/// wavelengths, time `ct/λ̄c`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianSpreadDemo {
    pub sigma0: f64,
    /// The width eventually grows faster than light.
    pub superluminal: bool,
}

impl GaussianSpreadDemo {
    pub fn new(sigma0: f64) -> Result<Self> {
        check_width(sigma0)?;
        Ok(Self {
            sigma0,
            superluminal: sigma0 < 0.5,
        })
    }

    pub fn width(&self, tau: f64) -> Result<f64> {
        gaussian_width(self.sigma0, tau)
    }

    /// `lim σ(τ)/τ = 1/(2σ₀)`.
    pub fn asymptotic_speed(&self) -> f64 {
        0.5 / self.sigma0
    }
}

fn check_width(sigma0: f64) -> Result<()> {
    if sigma0.is_finite() && sigma0 > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("initial width must be positive, got {sigma0}")))
    }
}

/// `σ(τ) = sqrt(σ₀² + (τ/(2σ₀))²)`.
pub fn gaussian_width(sigma0: f64, tau: f64) -> Result<f64> {
    check_width(sigma0)?;
    if !(tau.is_finite() && tau >= 0.0) {
        return Err(Error::domain(format!("time must be finite and ≥ 0, got {tau}")));
    }
    Ok(sigma0.hypot(tau / (2.0 * sigma0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn threshold() {
        assert!(breakdown_possible(0.1));
        assert!(!breakdown_possible(0.2));
        assert!(breakdown_possible(PI / 16.0));
        assert!((lorentz_factor(CONFINEMENT_THRESHOLD).unwrap() - GAMMA_THRESHOLD).abs() < 1e-12);
    }

    #[test]
    fn interval_reference() {
        let (lo, hi) = breakdown_interval(0.1).unwrap();
        assert!((lo - 2.352_245_456_10).abs() < 1e-10);
        assert!((hi - 13.355_717_811_8).abs() < 1e-9);
        // Two-decimal bounds.
        assert!((lo - 2.36).abs() < 0.01 && (hi - 13.36).abs() < 0.01);
        let (lo, hi) = breakdown_interval(PI / 16.0).unwrap();
        assert!((lo - 4.0).abs() < 1e-12 && (hi - 4.0).abs() < 1e-12);
        assert_eq!(breakdown_interval(0.25), None);
        assert_eq!(breakdown_interval(0.0), None);
    }

    #[test]
    fn total_breakdown_cases() {
        assert!(is_total_breakdown(0.1, 5.0));
        assert!(!is_total_breakdown(0.2, 5.0));
        assert!(!is_total_breakdown(0.1, 2.0));
        assert!((breakdown_margin(0.1, 2.0) - 0.254_647_908_947_032_5).abs() < 1e-14);
        assert!(is_total_breakdown(PI / 16.0, 4.0));
    }

    // Equivalent reading: the far-wall image sits beyond the light front.
    #[test]
    fn matches_specular_time_condition() {
        for &(s, lambda) in &[(0.1, 5.0), (0.05, 10.0), (0.19, 4.0), (0.1, 2.0), (0.2, 5.0)] {
            let tau_spec = 2.0 * lambda * lambda * s / PI;
            assert_eq!(is_total_breakdown(s, lambda), lambda - 2.0 >= tau_spec);
        }
    }

    #[test]
    fn small_sizes_keep_precision() {
        let s = 1e-9;
        let (lo, hi) = breakdown_interval(s).unwrap();
        assert!(breakdown_margin(s, lo).abs() < 1e-12);
        assert!((lo - 2.0).abs() < 1e-7);
        assert!(breakdown_margin(s, hi).abs() / (hi * hi * s) < 1e-12);
    }

    #[test]
    fn report() {
        let r = BreakdownReport::new(0.1, 5.0).unwrap();
        assert!(r.possible && r.total_breakdown);
        assert_eq!(r.gamma_threshold, 129.0);
        assert!(BreakdownReport::new(0.1, 1.0).is_err());
        assert!(BreakdownReport::new(-0.1, 5.0).is_err());
    }

    #[test]
    fn gaussian_demo() {
        assert_eq!(gaussian_width(0.3, 0.0).unwrap(), 0.3);
        assert!((gaussian_width(0.1, 1.0).unwrap() - 5.000_999_900_019_995).abs() < 1e-14);
        assert!(gaussian_width(0.0, 1.0).is_err());
        let marginal = GaussianSpreadDemo::new(0.5).unwrap();
        assert!(!marginal.superluminal);
        for tau in [1.0, 10.0, 1e3] {
            let w = marginal.width(tau).unwrap();
            assert!(w >= tau && w - tau < 0.25 / tau);
        }
        assert!(GaussianSpreadDemo::new(0.1).unwrap().superluminal);
    }

    #[test]
    fn implication_on_grid() {
        for i in 1..=400 {
            let s = i as f64 * 0.001;
            for j in 0..=300 {
                let lambda = 1.01 + j as f64 * 0.1;
                if is_total_breakdown(s, lambda) {
                    assert!(breakdown_possible(s), "s={s} Λ={lambda}");
                    let (lo, hi) = breakdown_interval(s).unwrap();
                    assert!(lo - 1e-12 <= lambda && lambda <= hi + 1e-12);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn endpoints_solve_quadratic(s in 1e-6f64..(PI / 16.0)) {
            let (lo, hi) = breakdown_interval(s).unwrap();
            prop_assert!(lo <= hi);
            prop_assert!(breakdown_margin(s, lo).abs() < 1e-12);
            prop_assert!(breakdown_margin(s, hi).abs() < 1e-12 * hi);
        }

        #[test]
        fn gaussian_asymptotic_speed(sigma0 in 0.05f64..3.0) {
            let demo = GaussianSpreadDemo::new(sigma0).unwrap();
            let tau = 1e7;
            let ratio = demo.width(tau).unwrap() / tau;
            prop_assert!((ratio - demo.asymptotic_speed()).abs() < 1e-9 * demo.asymptotic_speed());
            prop_assert_eq!(demo.superluminal, demo.asymptotic_speed() > 1.0);
        }
    }
}
