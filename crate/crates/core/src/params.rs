//! Dimensionless parameterization of the expansion problem.
//!
//! The outer box has width `Λ` in units of the inner box, so positions live
//! in `ζ ∈ [0, Λ]`. Time is `τ = ct/a`. The single physical knob is
//! `s = a/λ̄c`: the ground-state kinetic energy of the inner box, relative to
//! the rest energy, is `π²/(2s²)`.
//!
//! The revival time of the outer box, `T = 4mΛ²a²/(πħ)`, becomes
//! `τ_rev = cT/a = 4Λ²s/π`. The phase accumulated by mode `n` is therefore
//!
//! ```text
//! 2π n² t / T = 2π n² τ / τ_rev = π² n² τ / (2Λ² s)
//! ```
//!
//! which is the form used by [`crate::boxed`].

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Confinement size `s` and expansion factor `Λ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    s: f64,
    lambda_factor: f64,
}

impl SystemParams {
    /// Requires `s > 0` and `Λ > 1`, both finite.
    pub fn new(s: f64, lambda_factor: f64) -> Result<Self> {
        check_size(s)?;
        if !(lambda_factor.is_finite() && lambda_factor > 1.0) {
            return Err(Error::domain(format!(
                "expansion factor must be finite and > 1, got {lambda_factor}"
            )));
        }
        Ok(Self { s, lambda_factor })
    }

    /// Confinement size `a/λ̄c`.
    pub fn s(&self) -> f64 {
        self.s
    }

    /// Expansion factor `Λ`.
    pub fn lambda_factor(&self) -> f64 {
        self.lambda_factor
    }

    pub fn relativistic(&self) -> RelativisticContext {
        RelativisticContext::from_size_unchecked(self.s)
    }

    pub fn time_scales(&self) -> TimeScales {
        time_scales(self)
    }
}

/// Lorentz factor and speed of a classical particle carrying the inner-box
/// ground-state kinetic energy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RelativisticContext {
    pub gamma: f64,
    pub speed_fraction: f64,
    /// `E₀ / mc² = γ − 1`.
    pub ground_energy_ratio: f64,
}

impl RelativisticContext {
    pub fn from_size(s: f64) -> Result<Self> {
        check_size(s)?;
        Ok(Self::from_size_unchecked(s))
    }

    fn from_size_unchecked(s: f64) -> Self {
        let excess = kinetic_ratio(s);
        let gamma = 1.0 + excess;
        Self {
            gamma,
            speed_fraction: speed_from_excess(excess),
            ground_energy_ratio: excess,
        }
    }
}

/// Dimensionless time scales of the boxed expansion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeScales {
    /// Full revival time `4Λ²s/π`.
    pub tau_revival: f64,
    /// Half revival: the mirror image of the initial state at the far wall.
    pub tau_specular: f64,
    /// Time for the light front to reach the outer wall, `Λ − 1`.
    pub tau_evacuation: f64,
}

fn check_size(s: f64) -> Result<()> {
    if s.is_finite() && s > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "confinement size must be finite and positive, got {s}"
        )))
    }
}

fn kinetic_ratio(s: f64) -> f64 {
    PI * PI / (2.0 * s * s)
}

// sqrt(1 − 1/γ²) written as sqrt(e(e + 2))/(1 + e) with e = γ − 1, which
// keeps full relative precision when γ is close to 1.
fn speed_from_excess(excess: f64) -> f64 {
    (excess * (excess + 2.0)).sqrt() / (1.0 + excess)
}

/// `γ = 1 + π²/(2s²)`.
pub fn lorentz_factor(s: f64) -> Result<f64> {
    check_size(s)?;
    Ok(1.0 + kinetic_ratio(s))
}

/// `v/c = sqrt(1 − 1/γ²)`, in `[0, 1)`.
pub fn speed_fraction(s: f64) -> Result<f64> {
    check_size(s)?;
    Ok(speed_from_excess(kinetic_ratio(s)))
}

pub fn time_scales(params: &SystemParams) -> TimeScales {
    let lambda = params.lambda_factor;
    let tau_revival = 4.0 * lambda * lambda * params.s / PI;
    TimeScales {
        tau_revival,
        tau_specular: 0.5 * tau_revival,
        tau_evacuation: lambda - 1.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn lorentz_factor_reference_values() {
        assert_relative_eq!(
            lorentz_factor(4.0).unwrap(),
            1.308_425_137_534_042_5,
            max_relative = 1e-15
        );
        assert_relative_eq!(lorentz_factor(PI / 16.0).unwrap(), 129.0, max_relative = 1e-14);
        assert_relative_eq!(lorentz_factor(1e8).unwrap(), 1.0, max_relative = 1e-15);
    }

    #[test]
    fn speed_reference_values() {
        // mpmath, 30 digits
        assert_relative_eq!(
            speed_fraction(4.0).unwrap(),
            0.644_887_415_020_945_3,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            speed_fraction(1.0).unwrap(),
            0.985_702_061_813_924_4,
            max_relative = 1e-14
        );
        assert!(speed_fraction(1e9).unwrap() < 1e-8);
    }

    #[test]
    fn rejects_non_positive_sizes() {
        assert!(matches!(lorentz_factor(0.0), Err(Error::Domain(_))));
        assert!(matches!(speed_fraction(-1.0), Err(Error::Domain(_))));
        assert!(SystemParams::new(f64::NAN, 5.0).is_err());
        assert!(SystemParams::new(0.1, 1.0).is_err());
        assert!(RelativisticContext::from_size(0.0).is_err());
    }

    #[test]
    fn time_scales_reference() {
        let p = SystemParams::new(0.1, 5.0).unwrap();
        let t = time_scales(&p);
        assert_relative_eq!(t.tau_revival, 10.0 / PI, max_relative = 1e-15);
        assert_relative_eq!(t.tau_specular, 5.0 / PI, max_relative = 1e-15);
        assert_eq!(t.tau_evacuation, 4.0);

        let doubled = time_scales(&SystemParams::new(0.2, 5.0).unwrap());
        assert_relative_eq!(doubled.tau_revival, 2.0 * t.tau_revival, max_relative = 1e-15);
    }

    // Redo the bookkeeping with explicit SI-like units: a in metres,
    // λ̄c = ħ/mc. The revival time cT/a must collapse onto 4Λ²s/π.
    #[test]
    fn revival_time_dimensional_bookkeeping() {
        let hbar = 1.054_571_817e-34;
        let c = 2.997_924_58e8;
        let m = 9.109_383_7e-31;
        let compton = hbar / (m * c);
        for &(s, lambda) in &[(0.1, 5.0), (2.5, 3.7), (40.0, 1.5)] {
            let a = s * compton;
            let period = 4.0 * m * lambda * lambda * a * a / (PI * hbar);
            let tau = c * period / a;
            let p = SystemParams::new(s, lambda).unwrap();
            assert_relative_eq!(tau, p.time_scales().tau_revival, max_relative = 1e-12);
        }
    }

    proptest::proptest! {
        #[test]
        fn speed_and_gamma_are_consistent(log_s in -3.0f64..3.0) {
            let s = 10f64.powf(log_s);
            let g = lorentz_factor(s).unwrap();
            let v = speed_fraction(s).unwrap();
            proptest::prop_assert!((v * v + 1.0 / (g * g) - 1.0).abs() < 1e-14);
            proptest::prop_assert!(g > 1.0 && (0.0..1.0).contains(&v));
        }

        #[test]
        fn gamma_strictly_decreasing(log_s in -3.0f64..3.0, step in 1e-3f64..1.0) {
            let s = 10f64.powf(log_s);
            proptest::prop_assert!(lorentz_factor(s).unwrap() > lorentz_factor(s * (1.0 + step)).unwrap());
        }

        #[test]
        fn revival_identity(log_s in -3.0f64..3.0, lambda in 1.01f64..50.0) {
            let s = 10f64.powf(log_s);
            let t = time_scales(&SystemParams::new(s, lambda).unwrap());
            proptest::prop_assert!((t.tau_revival * PI / (4.0 * lambda * lambda * s) - 1.0).abs() < 4.0 * f64::EPSILON);
            proptest::prop_assert_eq!(t.tau_specular, t.tau_revival / 2.0);
        }
    }
}
