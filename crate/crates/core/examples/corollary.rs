//! Monte Carlo estimate of the probability that two random three-point
//! clouds are at matching distance zero.
//!
//! cargo run --release --example corollary -- [trials]

use bipersist::experiments::corollary_montecarlo;
use bipersist::MatchConfig;

fn main() -> bipersist::Result<()> {
    let trials: usize = std::env::args().nth(1).map_or(400, |a| a.parse().expect("trials"));
    let cfg = MatchConfig::new(10, 0, true)?;
    for (r, d) in [(1.0, 3.0), (0.5, 3.0), (2.0, 3.0)] {
        let rep = corollary_montecarlo(r, d, trials, 5, &cfg)?;
        println!(
            "r={r} d={d}: empirical {:.3}  geometric {:.3}  predicted {:.4}",
            rep.empirical, rep.geometric, rep.predicted
        );
    }
    Ok(())
}
