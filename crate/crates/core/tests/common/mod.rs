#![allow(dead_code)]

use bipersist::persistence::FilteredComplex;
use bipersist::pointcloud::{rng_from_seed, Rng64};
use bipersist::slicing::slice;
use bipersist::{build_density_rips, Line, PointCloud};
use rand::Rng;

pub fn rng(seed: u64) -> Rng64 {
    rng_from_seed(seed)
}

/// Cost of pairing `p` with `q`; points at infinity only pair with each
/// other.
fn pair_cost(p: (f64, f64), q: (f64, f64)) -> f64 {
    match (p.1.is_infinite(), q.1.is_infinite()) {
        (true, true) => (p.0 - q.0).abs(),
        (false, false) => (p.0 - q.0).abs().max((p.1 - q.1).abs()),
        _ => f64::INFINITY,
    }
}

fn diag_cost(p: (f64, f64)) -> f64 {
    if p.1.is_infinite() {
        f64::INFINITY
    } else {
        (p.1 - p.0) / 2.0
    }
}

/// Bottleneck distance by enumerating every partial matching.
pub fn brute_bottleneck(a: &[(f64, f64)], b: &[(f64, f64)]) -> f64 {
    fn go(i: usize, a: &[(f64, f64)], b: &[(f64, f64)], used: &mut Vec<bool>, acc: f64, best: &mut f64) {
        if acc >= *best {
            return;
        }
        if i == a.len() {
            let rest = b
                .iter()
                .zip(used.iter())
                .filter(|(_, &u)| !u)
                .map(|(&q, _)| diag_cost(q))
                .fold(acc, f64::max);
            if rest < *best {
                *best = rest;
            }
            return;
        }
        go(i + 1, a, b, used, acc.max(diag_cost(a[i])), best);
        for j in 0..b.len() {
            if !used[j] {
                used[j] = true;
                go(i + 1, a, b, used, acc.max(pair_cost(a[i], b[j])), best);
                used[j] = false;
            }
        }
    }
    let mut best = f64::INFINITY;
    go(0, a, b, &mut vec![false; b.len()], 0.0, &mut best);
    best
}

/// Up to `max_points` diagram points on a half-integer lattice (so ties
/// are common), some at infinity.
pub fn random_diagram(rng: &mut Rng64, max_points: usize) -> Vec<(f64, f64)> {
    let n = rng.gen_range(0..=max_points);
    (0..n)
        .map(|_| {
            let b = rng.gen_range(0..12) as f64 * 0.5;
            if rng.gen_bool(0.15) {
                (b, f64::INFINITY)
            } else {
                (b, b + rng.gen_range(1..10) as f64 * 0.5)
            }
        })
        .collect()
}

/// Random cloud of `n` points on a coarse lattice with random densities.
pub fn random_cloud(rng: &mut Rng64, n: usize) -> PointCloud {
    let coords: Vec<(f64, f64)> = (0..n)
        .map(|_| (rng.gen_range(0..8) as f64, rng.gen_range(0..8) as f64))
        .collect();
    let densities = (0..n).map(|_| rng.gen_range(0..5) as f64 * 0.5).collect();
    PointCloud::from_xy(&coords).unwrap().set_density(densities).unwrap()
}

pub fn random_line(rng: &mut Rng64) -> Line {
    Line::new(rng.gen_range(1.0..89.0), rng.gen_range(-3.0..3.0)).unwrap()
}

/// Slice of a random density-Rips complex on at most `max_points` points,
/// capped so it has at most `max_simplices` simplices.
pub fn random_filtered_complex(rng: &mut Rng64, max_points: usize, max_simplices: usize) -> FilteredComplex {
    let n = rng.gen_range(2..=max_points);
    let cloud = random_cloud(rng, n);
    let mut cap = rng.gen_range(1.0..12.0);
    loop {
        let complex = build_density_rips(&cloud, 2, Some(cap)).unwrap();
        if complex.len() <= max_simplices {
            return slice(&complex, &random_line(rng));
        }
        cap *= 0.8;
    }
}

pub fn sorted_bars(bars: impl Iterator<Item = (f64, f64)>) -> Vec<(f64, f64)> {
    let mut v: Vec<_> = bars.collect();
    v.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    v
}
