//! Two-circle separation sweep: clouds with separation d1 compared against
//! the cloud with separation d2 = 10 (radius 3, 50 points per circle).
//!
//! cargo run --release --example two_circles -- [degree]

use bipersist::experiments::{arange, two_circle_sweep, CircleSweep};
use bipersist::MatchConfig;

fn main() -> bipersist::Result<()> {
    let degree: usize = std::env::args().nth(1).map_or(0, |a| a.parse().expect("degree"));
    let cfg = MatchConfig::new(20, degree, true)?;
    let sweep = CircleSweep::separation(3.0, 7);
    let result = two_circle_sweep(&sweep, &arange(0.5, 9.5, 0.5), &[10.0], &cfg)?;

    println!("{:>8} {:>10}  argmax line", "d2-d1", "d_M");
    let mut rows = result.rows.clone();
    rows.sort_by(|a, b| a.params[3].total_cmp(&b.params[3]));
    let top = rows.iter().map(|r| r.distance).fold(0.0, f64::max);
    for r in &rows {
        let bar = "#".repeat((40.0 * r.distance / top).round() as usize);
        println!(
            "{:>8.2} {:>10.5}  ({:.2} deg, {:+.3})  {bar}",
            r.params[3],
            r.distance,
            r.argmax_angle.unwrap_or(f64::NAN),
            r.argmax_offset.unwrap_or(f64::NAN)
        );
    }
    Ok(())
}
