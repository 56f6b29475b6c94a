//! Density in the expanded box at the initial time, half revival and full
//! revival, printed as coarse text profiles.
//!
//! cargo run --release --example revival_snapshot

use lightcone::boxed::DEFAULT_TRUNCATION_TOL;
use lightcone::{build_spectrum, density_snapshot, SystemParams};

fn main() -> lightcone::Result<()> {
    let params = SystemParams::new(0.1, 5.0)?;
    let spectrum = build_spectrum(&params, DEFAULT_TRUNCATION_TOL)?;
    println!(
        "{} modes, discarded weight <= {:.1e}",
        spectrum.max_mode(),
        spectrum.tail_bound()
    );

    let t = params.time_scales();
    let grid: Vec<f64> = (0..=50).map(|j| 0.1 * j as f64).collect();
    for (label, tau) in [
        ("initial", 0.0),
        ("quarter", t.tau_revival / 4.0),
        ("specular", t.tau_specular),
        ("revival", t.tau_revival),
    ] {
        let curve = density_snapshot(&spectrum, params.s(), &grid, tau)?;
        let bars: String = curve
            .points
            .iter()
            .map(|&(_, rho)| match rho {
                r if r > 1.5 => '#',
                r if r > 0.5 => '+',
                r if r > 0.05 => '.',
                _ => ' ',
            })
            .collect();
        println!("{label:>9} tau={tau:>8.5} |{bars}|");
    }
    Ok(())
}
