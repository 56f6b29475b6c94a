//! Sine and cosine integrals against the built-in reference table, and a
//! cancellable adaptive quadrature.
//!
//! cargo run --example special_functions

use lightcone::numerics::{
    cosine_integral, entire_cosine_integral, integrate, sine_integral, CancelToken, QuadratureConfig, REFERENCE_TABLE,
};

fn main() -> lightcone::Result<()> {
    let mut worst = 0.0f64;
    for &(x, si, ci) in REFERENCE_TABLE.iter() {
        worst = worst
            .max((sine_integral(x) - si).abs())
            .max((cosine_integral(x)? - ci).abs());
    }
    println!(
        "worst deviation over {} table entries: {worst:.1e}",
        REFERENCE_TABLE.len()
    );
    for x in [1e-3, 1.0, 10.0, 100.0] {
        println!(
            "x {x:>7}: Si {:.15}  Ci {:.15}  Cin {:.15}",
            sine_integral(x),
            cosine_integral(x)?,
            entire_cosine_integral(x)
        );
    }

    let cfg = QuadratureConfig::with_tolerances(1e-14, 1e-14);
    let r = integrate(|t: f64| if t == 0.0 { 1.0 } else { t.sin() / t }, 0.0, 10.0, &cfg)?;
    println!(
        "int_0^10 sin t / t = {:.15} (Si(10) = {:.15})",
        r.value,
        sine_integral(10.0)
    );

    let token = CancelToken::new();
    token.cancel();
    let mut cancelled = cfg.clone();
    cancelled.cancel = Some(token);
    match integrate(|t: f64| t.cos(), 0.0, 1.0, &cancelled) {
        Err(e) => println!("cancelled run: {e}"),
        Ok(r) => println!("unexpected result {}", r.value),
    }
    Ok(())
}
