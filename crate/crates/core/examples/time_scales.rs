//! Relativistic context and time scales for a few confinement sizes.
//!
//! cargo run --example time_scales -- 0.1 5

use lightcone::{lorentz_factor, speed_fraction, SystemParams};

fn main() -> lightcone::Result<()> {
    let args: Vec<f64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let lambda = args.get(1).copied().unwrap_or(5.0);
    let sizes = match args.first() {
        Some(&s) => vec![s],
        None => vec![0.05, 0.1, std::f64::consts::PI / 16.0, 0.5, 1.0, 4.0],
    };

    println!(
        "{:>10} {:>14} {:>12} {:>12} {:>12}",
        "s", "gamma", "v/c", "tau_rev", "tau_spec"
    );
    for s in sizes {
        let params = SystemParams::new(s, lambda)?;
        let t = params.time_scales();
        println!(
            "{s:>10.5} {:>14.6} {:>12.8} {:>12.6} {:>12.6}",
            lorentz_factor(s)?,
            speed_fraction(s)?,
            t.tau_revival,
            t.tau_specular
        );
    }
    println!("light front reaches the outer wall at tau = {}", lambda - 1.0);
    Ok(())
}
