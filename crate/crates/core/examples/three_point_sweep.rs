//! Matching distance between three-point clouds {A, B, (r, s)} and
//! {A, B, (t, s)} with densities (1, 2, 1).
//!
//! cargo run --release --example three_point_sweep -- [s]

use bipersist::experiments::{default_three_point_values, three_point_complex, three_point_sweep};
use bipersist::{matching_distance, MatchConfig};

fn main() -> bipersist::Result<()> {
    let s: f64 = std::env::args().nth(1).map_or(3.0, |a| a.parse().expect("s must be a number"));
    let t = default_three_point_values();
    let cfg = MatchConfig::default();
    let sweep = three_point_sweep(s, &t, &t, &cfg)?;

    println!("d_M for s = u = {s}; rows r, columns t");
    print!("{:>6}", "");
    for x in &t {
        print!("{x:>7.3}");
    }
    println!();
    for (i, r) in t.iter().enumerate() {
        print!("{r:>6.3}");
        for row in &sweep.rows[i * t.len()..(i + 1) * t.len()] {
            print!("{:>7.4}", row.distance);
        }
        println!();
    }
    let zeros = sweep.rows.iter().filter(|r| r.distance == 0.0 && r.params[0] != r.params[2]).count();
    println!("off-diagonal exact zeros on this grid: {zeros}");

    // C mirrored about x = 1 keeps |AC|; when C stays closer to A than to B
    // the degree-0 modules coincide
    for r in [0.0, 0.25, 0.5, 0.8] {
        let a = three_point_complex(r, s, &cfg)?;
        let b = three_point_complex(2.0 - r, s, &cfg)?;
        println!("d_M(X_({r},{s}), X_({},{s})) = {}", 2.0 - r, matching_distance(&a, &b, &cfg)?.distance);
    }
    Ok(())
}
