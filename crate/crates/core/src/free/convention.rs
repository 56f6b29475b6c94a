//! Deciding which unit of length the closed-form asymptotic formulas assume.
//!
//! The direct integral is consistent with `s = a/λ̄c`; the closed form, the
//! cubic series and the 1% value at unit argument correspond to an upper
//! limit `2πs`, i.e. `a` measured in `h/mc`. The finite-time violation
//! probability at a large time is compared against both readings.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::asymptotic::asymptotic_violation;
use super::{free_violation_probability, FreeQuadConfig};
use crate::{Error, Result};

/// Agreement required for a reading to count as a match.
pub const MATCH_TOLERANCE: f64 = 0.02;

/// Beyond this no reading is accepted at all.
pub const FAILURE_TOLERANCE: f64 = 0.05;

/// Time from which the tolerances apply unscaled. The finite-time
/// probability approaches its limit as `O(s/τ)`, so earlier comparisons get
/// proportionally wider tolerances.
pub const REFERENCE_TIME: f64 = 100.0;

fn widening(tau_large: f64) -> f64 {
    (REFERENCE_TIME / tau_large).max(1.0)
}

/// Samples where the two readings differ by less than this carry no
/// information.
const MIN_SEPARATION: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComptonConvention {
    /// Sizes in `ħ/mc`: upper limit `s`.
    Reduced,
    /// Sizes in `h/mc`: upper limit `2πs`.
    NonReduced,
}

impl ComptonConvention {
    pub const ALL: [ComptonConvention; 2] = [ComptonConvention::Reduced, ComptonConvention::NonReduced];

    /// Upper limit of the asymptotic integral for a size given in `ħ/mc`
    /// under this reading.
    pub fn upper_limit(self, s: f64) -> f64 {
        match self {
            ComptonConvention::Reduced => s,
            ComptonConvention::NonReduced => 2.0 * PI * s,
        }
    }

    /// Argument of the closed form that reproduces `P(s)`.
    pub fn closed_argument(self, s: f64) -> f64 {
        match self {
            ComptonConvention::Reduced => s / (2.0 * PI),
            ComptonConvention::NonReduced => s,
        }
    }

    /// Size in `ħ/mc` corresponding to a closed-form argument.
    pub fn size_for_closed_argument(self, arg: f64) -> f64 {
        match self {
            ComptonConvention::Reduced => 2.0 * PI * arg,
            ComptonConvention::NonReduced => arg,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ComptonConvention::Reduced => "reduced",
            ComptonConvention::NonReduced => "nonreduced",
        }
    }
}

impl fmt::Display for ComptonConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ComptonConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "reduced" => Ok(ComptonConvention::Reduced),
            "nonreduced" | "non-reduced" => Ok(ComptonConvention::NonReduced),
            other => Err(Error::domain(format!("unknown convention {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConventionSample {
    pub s: f64,
    /// Finite-time violation probability at the adjudication time.
    pub p_dynamics: f64,
    pub dynamics_error: f64,
    pub p_reduced: f64,
    pub p_nonreduced: f64,
    pub residual_reduced: f64,
    pub residual_nonreduced: f64,
    /// Whether the two readings are far enough apart to discriminate.
    pub informative: bool,
}

impl ConventionSample {
    pub fn residual(&self, convention: ComptonConvention) -> f64 {
        match convention {
            ComptonConvention::Reduced => self.residual_reduced,
            ComptonConvention::NonReduced => self.residual_nonreduced,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConventionRecord {
    pub convention: ComptonConvention,
    pub tau_large: f64,
    pub samples: Vec<ConventionSample>,
    pub max_residual_reduced: f64,
    pub max_residual_nonreduced: f64,
    /// The selected reading matched within `match_tolerance` and the other
    /// did not.
    pub decisive: bool,
    pub match_tolerance: f64,
}

impl ConventionRecord {
    pub fn max_residual(&self, convention: ComptonConvention) -> f64 {
        match convention {
            ComptonConvention::Reduced => self.max_residual_reduced,
            ComptonConvention::NonReduced => self.max_residual_nonreduced,
        }
    }

    /// Size in `ħ/mc` at which the closed form is evaluated at `arg`.
    pub fn size_for_closed_argument(&self, arg: f64) -> f64 {
        self.convention.size_for_closed_argument(arg)
    }
}

/// Compares `P(τ_large, s)` from the exact free evolution against both
/// readings of the asymptotic formula.
pub fn adjudicate_convention(s_samples: &[f64], tau_large: f64, cfg: &FreeQuadConfig) -> Result<ConventionRecord> {
    if s_samples.is_empty() {
        return Err(Error::domain("adjudication needs at least one size sample"));
    }
    if !(tau_large.is_finite() && tau_large > 0.0) {
        return Err(Error::domain(format!(
            "adjudication time must be positive, got {tau_large}"
        )));
    }
    let samples: Vec<ConventionSample> = s_samples
        .par_iter()
        .map(|&s| -> Result<ConventionSample> {
            let p_reduced = asymptotic_violation(ComptonConvention::Reduced.upper_limit(s))?;
            let p_nonreduced = asymptotic_violation(ComptonConvention::NonReduced.upper_limit(s))?;
            let dynamics = free_violation_probability(tau_large, s, cfg)?;
            Ok(ConventionSample {
                s,
                p_dynamics: dynamics.value,
                dynamics_error: dynamics.error_estimate,
                p_reduced,
                p_nonreduced,
                residual_reduced: (dynamics.value - p_reduced).abs(),
                residual_nonreduced: (dynamics.value - p_nonreduced).abs(),
                informative: s >= 1e-3 && (p_reduced - p_nonreduced).abs() > MIN_SEPARATION,
            })
        })
        .collect::<Result<_>>()?;

    let worst = |c: ComptonConvention| {
        samples
            .iter()
            .filter(|x| x.informative)
            .map(|x| x.residual(c))
            .fold(f64::NEG_INFINITY, f64::max)
    };
    let reduced = worst(ComptonConvention::Reduced);
    let nonreduced = worst(ComptonConvention::NonReduced);
    if reduced == f64::NEG_INFINITY {
        return Err(Error::Adjudication(
            "no sample separates the two readings; add sizes of order one".into(),
        ));
    }
    let match_tolerance = MATCH_TOLERANCE * widening(tau_large);
    let failure_tolerance = FAILURE_TOLERANCE * widening(tau_large);
    let (convention, best, other) = if reduced <= nonreduced {
        (ComptonConvention::Reduced, reduced, nonreduced)
    } else {
        (ComptonConvention::NonReduced, nonreduced, reduced)
    };
    if best > failure_tolerance {
        return Err(Error::Adjudication(format!(
            "neither reading matches the dynamics (max residuals: reduced {reduced:.4}, nonreduced {nonreduced:.4})"
        )));
    }
    Ok(ConventionRecord {
        convention,
        tau_large,
        samples,
        max_residual_reduced: reduced,
        max_residual_nonreduced: nonreduced,
        decisive: best <= match_tolerance && other > match_tolerance,
        match_tolerance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conversions() {
        let r = ComptonConvention::Reduced;
        let n = ComptonConvention::NonReduced;
        assert_eq!(r.upper_limit(1.5), 1.5);
        assert!((n.upper_limit(1.0) - 2.0 * PI).abs() < 1e-15);
        assert!((r.size_for_closed_argument(1.0) - 2.0 * PI).abs() < 1e-15);
        assert!((r.closed_argument(r.size_for_closed_argument(0.7)) - 0.7).abs() < 1e-15);
        assert_eq!("NonReduced".parse::<ComptonConvention>().unwrap(), n);
        assert_eq!(r.to_string(), "reduced");
        assert!("auto".parse::<ComptonConvention>().is_err());
    }

    #[test]
    fn readings_are_far_apart_at_unit_size() {
        let i = asymptotic_violation(1.0).unwrap();
        let ii = asymptotic_violation(2.0 * PI).unwrap();
        assert!(i - ii > 0.5);
    }

    #[test]
    fn dynamics_select_reduced_units() {
        let rec = adjudicate_convention(&[0.5, 1.0, 2.0], 1000.0, &FreeQuadConfig::default()).unwrap();
        assert_eq!(rec.convention, ComptonConvention::Reduced);
        assert!(rec.decisive);
        assert!(rec.max_residual_reduced < 0.01);
    }

    #[test]
    fn short_times_widen_but_keep_the_verdict() {
        let cfg = FreeQuadConfig::default();
        let late = adjudicate_convention(&[0.5, 1.0, 2.0], 1000.0, &cfg).unwrap();
        let early = adjudicate_convention(&[0.5, 1.0, 2.0], 10.0, &cfg).unwrap();
        assert_eq!(early.convention, late.convention);
        assert!(early.max_residual_reduced > late.max_residual_reduced);
        assert!(early.match_tolerance > MATCH_TOLERANCE);
    }

    #[test]
    fn tiny_sizes_are_uninformative() {
        let cfg = FreeQuadConfig::default();
        assert!(matches!(
            adjudicate_convention(&[1e-4], 100.0, &cfg),
            Err(Error::Adjudication(_))
        ));
        assert!(adjudicate_convention(&[], 100.0, &cfg).is_err());
    }
}
