//! Release into the half line: wavefunction samples and the weight outside
//! the light front as time grows.
//!
//! cargo run --release --example free_expansion

use lightcone::free::{free_sample, stationary_phase_amplitude, FreeQuadConfig};
use lightcone::numerics::ProgressObserver;
use lightcone::{asymptotic_violation, free_violation_probability};

fn main() -> lightcone::Result<()> {
    let s = 1.0;
    let cfg = FreeQuadConfig::default();

    println!("density at tau = 2:");
    for zeta in [0.25, 0.5, 1.0, 2.0, 2.5, 3.0, 4.0] {
        let x = free_sample(zeta, 2.0, s, &cfg)?;
        println!("  zeta {zeta:>4}  |chi|^2 {:.6e}", x.density);
    }

    let tau = 400.0;
    let exact = free_sample(300.0, tau, s, &cfg)?.chi;
    let sp = stationary_phase_amplitude(300.0, tau, s)?;
    println!("zeta = 300, tau = 400: exact {exact:.6e}, stationary phase {sp:.6e}");

    let steps = std::sync::Arc::new(std::sync::atomic::AtomicUsize::new(0));
    let counter = steps.clone();
    let watched = cfg.clone().with_progress(ProgressObserver::new(move |_| {
        counter.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
    }));
    println!("P outside the light front (limit {:.6}):", asymptotic_violation(s)?);
    for tau in [1.0, 10.0, 100.0, 1000.0] {
        let p = free_violation_probability(tau, s, &watched)?;
        println!("  tau {tau:>6}  P {:.6}  +/- {:.1e}", p.value, p.error_estimate);
    }
    println!("{} progress reports", steps.load(std::sync::atomic::Ordering::Relaxed));
    Ok(())
}
