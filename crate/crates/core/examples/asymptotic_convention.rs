//! The late-time violation probability, its closed form and cubic series,
//! and the check that decides which length unit those formulas assume.
//!
//! cargo run --release --example asymptotic_convention

use lightcone::free::{AsymptoticResult, FreeQuadConfig};
use lightcone::{adjudicate_convention, asymptotic_violation_closed};

fn main() -> lightcone::Result<()> {
    let rec = adjudicate_convention(&[0.5, 1.0, 2.0], 1000.0, &FreeQuadConfig::default())?;
    println!("selected convention: {} (decisive: {})", rec.convention, rec.decisive);
    for x in &rec.samples {
        println!(
            "  s {:<4} dynamics {:.6}  reduced {:.6}  nonreduced {:.6}",
            x.s, x.p_dynamics, x.p_reduced, x.p_nonreduced
        );
    }

    println!("{:>10} {:>14} {:>14} {:>14}", "s", "quadrature", "closed", "series");
    for s in [
        0.01,
        0.1,
        0.5,
        1.0,
        2.0,
        std::f64::consts::PI,
        2.0 * std::f64::consts::PI,
        20.0,
    ] {
        let r = AsymptoticResult::evaluate(s, rec.convention)?;
        println!(
            "{s:>10.4} {:>14.8e} {:>14.8e} {:>14.8e}",
            r.p_quadrature, r.p_closed, r.p_series
        );
    }
    println!("closed form at argument 1: {:.5}", asymptotic_violation_closed(1.0)?);
    Ok(())
}
