//! Where total breakdown of the light cone happens in the (s, Λ) plane.
//!
//! cargo run --example breakdown_map

use lightcone::breakdown::{BreakdownReport, GaussianSpreadDemo, CONFINEMENT_THRESHOLD};

fn main() -> lightcone::Result<()> {
    println!("breakdown needs s <= pi/16 = {CONFINEMENT_THRESHOLD:.6}");
    for s in [0.02, 0.05, 0.1, 0.15, 0.19, 0.2] {
        let r = BreakdownReport::new(s, 5.0)?;
        match r.interval {
            Some((lo, hi)) => println!(
                "s = {s:<5} gamma = {:>9.2}  total for {lo:.4} <= Lambda <= {hi:.4}",
                r.gamma
            ),
            None => println!("s = {s:<5} gamma = {:>9.2}  no breakdown", r.gamma),
        }
    }

    println!();
    let lambdas: Vec<f64> = (0..=24).map(|i| 1.5 + i as f64).collect();
    print!("{:>6} ", "s\\L");
    for l in &lambdas {
        print!("{}", (*l as i64) % 10);
    }
    println!();
    for i in 1..=20 {
        let s = 0.01 * i as f64;
        let row: String = lambdas
            .iter()
            .map(|&l| {
                if BreakdownReport::new(s, l).map(|r| r.total_breakdown).unwrap_or(false) {
                    '*'
                } else {
                    '.'
                }
            })
            .collect();
        println!("{s:>6.2} {row}");
    }

    println!();
    for sigma0 in [0.1, 0.5, 2.0] {
        let g = GaussianSpreadDemo::new(sigma0)?;
        println!(
            "gaussian sigma0 = {sigma0}: width(100) = {:.3}, late growth rate {:.3} c, superluminal: {}",
            g.width(100.0)?,
            g.asymptotic_speed(),
            g.superluminal
        );
    }
    Ok(())
}
