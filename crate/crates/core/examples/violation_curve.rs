//! Probability of finding the particle outside the light cone as a function
//! of time, for a size below and a size above the breakdown threshold.
//!
//! cargo run --release --example violation_curve

use lightcone::boxed::DEFAULT_TRUNCATION_TOL;
use lightcone::violation::default_tau_grid;
use lightcone::{build_spectrum, violation_curve, SystemParams};

fn main() -> lightcone::Result<()> {
    for s in [0.1, 4.0] {
        let params = SystemParams::new(s, 5.0)?;
        let spectrum = build_spectrum(&params, DEFAULT_TRUNCATION_TOL)?;
        let grid = default_tau_grid(&params, 0.05)?;
        let curve = violation_curve(&spectrum, &params, &grid)?;
        let (tau, peak) = curve.peak().expect("non-empty grid");
        println!("s = {s}: peak P = {peak:.6} at tau = {tau:.4}");
        for (i, (&tau, &p)) in curve.tau_grid.iter().zip(&curve.values).enumerate() {
            if i % 8 == 0 {
                println!("  tau {tau:>7.4}  P {p:.6}  +/- {:.1e}", curve.errors[i]);
            }
        }
    }
    Ok(())
}
