//! Configurations whose matching distance is exactly zero, with
//! out-of-hypothesis controls that are generally not.
//!
//! cargo run --release --example proposition

use bipersist::experiments::verify_proposition;
use bipersist::MatchConfig;

fn main() -> bipersist::Result<()> {
    let report = verify_proposition(20, 5, &[3, 4, 5, 6], 11, &MatchConfig::default())?;
    for t in &report.trials {
        println!(
            "{:<20} in_hypothesis={:<5} d_M={:.6}{}",
            t.kind,
            t.in_hypothesis,
            t.distance,
            if t.is_failure() { "  FAILURE" } else { "" }
        );
    }
    println!(
        "{} in-hypothesis trials, {} failures",
        report.in_hypothesis(),
        report.failures().len()
    );
    Ok(())
}
