//! Causality violation of Schrödinger dynamics in the sudden expansion of a
//! particle confined to a one-dimensional box.
//!
//! A particle sits in the ground state of a box `(0, a)`. At `t = 0` the right
//! wall is removed and the particle expands into a larger box `(0, Λa)`, or into
//! the half-line when there is no outer wall. Special relativity confines the
//! particle to the light front `x ≤ a + ct`; Schrödinger evolution does not, and
//! the weight found beyond the front is the violation probability.
//!
//! Everything is expressed in dimensionless variables:
//!
//! * `ζ = x/a`: position, `ζ ∈ [0, Λ]` in the outer box;
//! * `τ = ct/a`: time;
//! * `s = a/λ̄c`: confinement size in units of the reduced Compton wavelength
//!   `λ̄c = ħ/mc`.
//!
//! Mass, `c`, `ħ` and the box size only ever enter through `s`.
//!
//! Modules:
//!
//! * [`params`]: parameters, Lorentz factor, time scales;
//! * [`boxed`]: exact mode-sum evolution inside the outer box;
//! * [`violation`]: probability outside the light front, `P(τ)`;
//! * [`breakdown`]: the total-breakdown (deterministic signalling) regime;
//! * [`free`]: release into the half-line and the asymptotic `P(s)`;
//! * [`numerics`]: adaptive quadrature and the Si/Ci/Cin functions;
//! * [`cli`]: CSV-producing commands behind the `lightcone` binary.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod boxed;
pub mod breakdown;
pub mod cli;
mod error;
pub mod free;
pub mod numerics;
pub mod params;
pub mod violation;

pub use boxed::{build_spectrum, density_snapshot, mode_coefficient, wavefunction, ModeSpectrum};
pub use breakdown::{breakdown_interval, breakdown_possible, is_total_breakdown, BreakdownReport};
pub use error::{Error, Result};
pub use free::{
    adjudicate_convention, asymptotic_series, asymptotic_violation, asymptotic_violation_closed,
    free_violation_probability, free_wavefunction, ComptonConvention, ConventionRecord,
};
pub use params::{lorentz_factor, speed_fraction, time_scales, SystemParams, TimeScales};
pub use violation::{light_front, violation_curve, violation_probability, ViolationCurve};
