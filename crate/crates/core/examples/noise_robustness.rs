//! Perturb 20% and 40% of the points and compare the separation-sweep
//! curve with the clean one.
//!
//! cargo run --release --example noise_robustness

use bipersist::experiments::{arange, noise_robustness, CircleSweep};
use bipersist::MatchConfig;

fn main() -> bipersist::Result<()> {
    let sweep = CircleSweep::separation(3.0, 7);
    let values = arange(0.5, 9.5, 1.0);
    let report = noise_robustness(&sweep, &values, &[10.0], &[0.2, 0.4], 0.3, &MatchConfig::default())?;
    print!("{:>6} {:>8}", "d1", "clean");
    for c in &report.noisy {
        print!(" {:>8}", format!("{}%", c.noise.fraction * 100.0));
    }
    println!();
    for (i, row) in report.clean.rows.iter().enumerate() {
        print!("{:>6} {:>8.4}", row.params[1], row.distance);
        for c in &report.noisy {
            print!(" {:>8.4}", c.distances[i]);
        }
        println!();
    }
    for c in &report.noisy {
        println!("spearman at {}: {:.3}", c.noise.fraction, c.spearman);
    }
    Ok(())
}
