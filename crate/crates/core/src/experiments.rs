//! Reproducible experiment drivers: three-point and two-circle sweeps,
//! exact zero-distance checks, the zero-probability Monte Carlo, and the
//! noise study.
//!
//! Every random draw goes through [`rng_from_seed`]; datasets in a sweep
//! get a seed derived from the base seed and their own parameters, so a
//! dataset is the same object wherever it appears in a sweep.

use std::f64::consts::{PI, TAU};
use std::fmt::Write as _;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bifiltration::{build_density_rips, BifilteredComplex};
use crate::distances::{matching_distance, MatchConfig, MatchResult};
use crate::error::{invalid, Result};
use crate::pointcloud::{
    add_noise, knn_density, rng_from_seed, three_point, two_circles, CircleSpec, Point2,
    PointCloud,
};

/// Distances at or below this count as zero in the Monte Carlo. The two
/// clouds compared there share `r` only up to rounding of the sampled
/// coordinates.
pub const MONTE_CARLO_ZERO: f64 = 1e-9;

/// Densities used by the three-point family: `A` and `C` at 1, `B` at 2.
pub const THREE_POINT_DENSITIES: [f64; 3] = [1.0, 2.0, 1.0];

/// `t` values of the three-point sweep: 0 to 3.3 in steps of 0.184.
pub fn default_three_point_values() -> Vec<f64> {
    (0..)
        .map(|i| i as f64 * 0.184)
        .take_while(|&t| t <= 3.3 + 1e-12)
        .collect()
}

/// `{start, start + step, ..., <= stop}`, accumulated by index.
pub fn arange(start: f64, stop: f64, step: f64) -> Vec<f64> {
    (0..)
        .map(|i| start + i as f64 * step)
        .take_while(|&x| x <= stop + step * 1e-9)
        .collect()
}

/// One sweep cell: the parameters, the distance and where it was attained.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub params: Vec<f64>,
    pub distance: f64,
    pub argmax_angle: Option<f64>,
    pub argmax_offset: Option<f64>,
    pub seeds: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepResult {
    pub name: String,
    pub param_names: Vec<String>,
    pub grid_size: usize,
    pub degree: usize,
    pub seed: u64,
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    /// Comment header, then `params..., distance, argmax_angle,
    /// argmax_offset, seed_a, seed_b, grid_size, degree`.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "# {} seed={} grid_size={} degree={}",
            self.name, self.seed, self.grid_size, self.degree
        );
        let _ = writeln!(
            out,
            "{},distance,argmax_angle,argmax_offset,seed_a,seed_b,grid_size,degree",
            self.param_names.join(",")
        );
        for row in &self.rows {
            let params: Vec<String> = row.params.iter().map(f64::to_string).collect();
            let opt = |v: Option<f64>| v.map_or(String::new(), |x| x.to_string());
            let seed = |i: usize| row.seeds.get(i).map_or(String::new(), u64::to_string);
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                params.join(","),
                row.distance,
                opt(row.argmax_angle),
                opt(row.argmax_offset),
                seed(0),
                seed(1),
                self.grid_size,
                self.degree
            );
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("sweep serializes")
    }

    pub fn distances(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.distance).collect()
    }
}

fn row(params: Vec<f64>, result: &MatchResult, seeds: Vec<u64>) -> SweepRow {
    SweepRow {
        params,
        distance: result.distance,
        argmax_angle: result.argmax.map(|e| e.line.angle_deg()),
        argmax_offset: result.argmax.map(|e| e.line.offset()),
        seeds,
    }
}

/// SplitMix64 finalizer; used to derive per-dataset seeds.
pub fn mix_seed(base: u64, salt: u64) -> u64 {
    let mut z = base ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn complex_for(cloud: &PointCloud, cfg: &MatchConfig, scale_cap: Option<f64>) -> Result<BifilteredComplex> {
    build_density_rips(cloud, cfg.degree + 1, scale_cap)
}

/// Three-point cloud `{A, B, (x, y)}` with densities `(1, 2, 1)`.
pub fn three_point_complex(x: f64, y: f64, cfg: &MatchConfig) -> Result<BifilteredComplex> {
    let cloud = three_point(x, y)?.set_density(THREE_POINT_DENSITIES.to_vec())?;
    complex_for(&cloud, cfg, None)
}

/// Matching distance between `X_{r,s}` and `X_{t,s}` for every `(r, t)`.
pub fn three_point_sweep(
    s: f64,
    t_values: &[f64],
    r_values: &[f64],
    cfg: &MatchConfig,
) -> Result<SweepResult> {
    if t_values.is_empty() || r_values.is_empty() {
        return Err(invalid("three-point sweep needs nonempty r and t lists"));
    }
    cfg.validate()?;
    let cells: Vec<(f64, f64)> = r_values
        .iter()
        .flat_map(|&r| t_values.iter().map(move |&t| (r, t)))
        .collect();
    let rows = cells
        .par_iter()
        .map(|&(r, t)| {
            let a = three_point_complex(r, s, cfg)?;
            let b = three_point_complex(t, s, cfg)?;
            let res = matching_distance(&a, &b, cfg)?;
            Ok(row(vec![r, s, t, s], &res, vec![]))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult {
        name: "three-point".into(),
        param_names: ["r", "s", "t", "u"].map(String::from).to_vec(),
        grid_size: cfg.grid_size,
        degree: cfg.degree,
        seed: 0,
        rows,
    })
}

/// Which circle parameter a two-circle sweep varies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CircleAxis {
    Separation,
    Radius,
}

/// Settings shared by every dataset of a two-circle sweep.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CircleSweep {
    pub axis: CircleAxis,
    /// The parameter that is held fixed (radius for a separation sweep,
    /// separation for a radius sweep).
    pub fixed: f64,
    pub points_per_circle: usize,
    pub k: usize,
    pub seed: u64,
    /// Optional noise applied before the density estimate.
    pub noise: Option<NoiseSpec>,
    pub scale_cap: Option<f64>,
    /// Draw every dataset from the same angle sequence (common random
    /// numbers), so datasets differ only in the swept parameter.
    pub shared_angles: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NoiseSpec {
    pub fraction: f64,
    pub magnitude: f64,
}

impl CircleSweep {
    /// Desk-scale separation sweep: 50 points per circle, `k = 20`.
    pub fn separation(radius: f64, seed: u64) -> Self {
        Self {
            axis: CircleAxis::Separation,
            fixed: radius,
            points_per_circle: 50,
            k: 20,
            seed,
            noise: None,
            scale_cap: None,
            shared_angles: true,
        }
    }

    pub fn radius(separation: f64, seed: u64) -> Self {
        Self {
            axis: CircleAxis::Radius,
            fixed: separation,
            ..Self::separation(1.0, seed)
        }
    }

    pub fn spec_for(&self, value: f64) -> Result<CircleSpec> {
        let seed = self.dataset_seed(value);
        match self.axis {
            CircleAxis::Separation => {
                CircleSpec::new(self.fixed, value, self.points_per_circle, seed)
            }
            CircleAxis::Radius => CircleSpec::new(value, self.fixed, self.points_per_circle, seed),
        }
    }

    /// Seed of the dataset with varied parameter `value`.
    pub fn dataset_seed(&self, value: f64) -> u64 {
        if self.shared_angles {
            self.seed
        } else {
            mix_seed(self.seed, value.to_bits())
        }
    }

    /// Dataset with varied parameter `value`, densities attached.
    pub fn cloud(&self, value: f64) -> Result<PointCloud> {
        let spec = self.spec_for(value)?;
        let mut cloud = two_circles(&spec)?;
        if let Some(noise) = self.noise {
            cloud = add_noise(&cloud, noise.fraction, noise.magnitude, mix_seed(spec.seed, 1))?;
        }
        knn_density(&cloud, self.k)
    }
}

/// Matching distance between every dataset in `values` and every dataset
/// in `reference_values`. Rows carry `(fixed, v1, v2, v2 - v1)` and are
/// ordered by `v2`, then `v1`.
pub fn two_circle_sweep(
    sweep: &CircleSweep,
    values: &[f64],
    reference_values: &[f64],
    cfg: &MatchConfig,
) -> Result<SweepResult> {
    if values.is_empty() || reference_values.is_empty() {
        return Err(invalid("two-circle sweep needs nonempty value lists"));
    }
    if sweep.points_per_circle * 2 <= sweep.k {
        return Err(invalid(format!(
            "k = {} needs more than {} points",
            sweep.k,
            2 * sweep.points_per_circle
        )));
    }
    cfg.validate()?;
    let mut all: Vec<f64> = values.iter().chain(reference_values).copied().collect();
    all.sort_unstable_by(f64::total_cmp);
    all.dedup();
    let complexes = all
        .par_iter()
        .map(|&v| complex_for(&sweep.cloud(v)?, cfg, sweep.scale_cap))
        .collect::<Result<Vec<_>>>()?;
    let lookup = |v: f64| {
        let i = all.binary_search_by(|x| x.total_cmp(&v)).expect("value present");
        &complexes[i]
    };
    let cells: Vec<(f64, f64)> = reference_values
        .iter()
        .flat_map(|&v2| values.iter().map(move |&v1| (v1, v2)))
        .collect();
    let rows = cells
        .iter()
        .map(|&(v1, v2)| {
            let res = matching_distance(lookup(v1), lookup(v2), cfg)?;
            Ok(row(
                vec![sweep.fixed, v1, v2, v2 - v1],
                &res,
                vec![sweep.dataset_seed(v1), sweep.dataset_seed(v2)],
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let (fixed, v) = match sweep.axis {
        CircleAxis::Separation => ("r", "d"),
        CircleAxis::Radius => ("d", "r"),
    };
    Ok(SweepResult {
        name: format!(
            "two-circle {:?} sweep, {} points per circle, k={}{}",
            sweep.axis,
            sweep.points_per_circle,
            sweep.k,
            sweep
                .noise
                .map_or(String::new(), |n| format!(", noise {}x{}", n.fraction, n.magnitude))
        ),
        param_names: vec![
            fixed.to_string(),
            format!("{v}1"),
            format!("{v}2"),
            format!("{v}2_minus_{v}1"),
        ],
        grid_size: cfg.grid_size,
        degree: cfg.degree,
        seed: sweep.seed,
        rows,
    })
}

/// Manual densities used by the zero-distance configurations: the extra
/// point `C` (last in the cloud) and its nearest other point get 1,
/// everything else 2.
pub fn nearest_pair_densities(points: &[Point2]) -> Vec<f64> {
    let c = points.len() - 1;
    let nearest = (0..c)
        .min_by(|&i, &j| points[i].dist(&points[c]).total_cmp(&points[j].dist(&points[c])))
        .expect("at least two points");
    (0..points.len())
        .map(|i| if i == c || i == nearest { 1.0 } else { 2.0 })
        .collect()
}

fn density_complex(points: Vec<Point2>, degree: usize) -> Result<BifilteredComplex> {
    let densities = nearest_pair_densities(&points);
    let cloud = PointCloud::with_densities(points, densities)?;
    build_density_rips(&cloud, degree + 1, None)
}

/// Two clouds that differ only in the position of their last point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairTrial {
    pub kind: String,
    pub base: Vec<Point2>,
    pub c1: Point2,
    pub c2: Point2,
    pub in_hypothesis: bool,
    pub distance: f64,
}

impl PairTrial {
    pub fn is_failure(&self) -> bool {
        self.in_hypothesis && self.distance != 0.0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProofReport {
    pub seed: u64,
    pub grid_size: usize,
    pub trials: Vec<PairTrial>,
}

impl ProofReport {
    pub fn failures(&self) -> Vec<&PairTrial> {
        self.trials.iter().filter(|t| t.is_failure()).collect()
    }

    pub fn in_hypothesis(&self) -> usize {
        self.trials.iter().filter(|t| t.in_hypothesis).count()
    }

    pub fn passed(&self) -> bool {
        self.failures().is_empty()
    }
}

fn evaluate_pair(
    kind: &str,
    base: Vec<Point2>,
    c1: Point2,
    c2: Point2,
    in_hypothesis: bool,
    cfg: &MatchConfig,
) -> Result<PairTrial> {
    let with = |c: Point2| {
        let mut pts = base.clone();
        pts.push(c);
        density_complex(pts, cfg.degree)
    };
    let res = matching_distance(&with(c1)?, &with(c2)?, cfg)?;
    Ok(PairTrial {
        kind: kind.to_string(),
        base,
        c1,
        c2,
        in_hypothesis,
        distance: res.distance,
    })
}

// The eight symmetries of the square applied to an offset (a, b). All of
// them have bit-identical Euclidean norm.
fn square_symmetry(a: f64, b: f64, which: usize) -> (f64, f64) {
    match which % 8 {
        0 => (a, b),
        1 => (b, a),
        2 => (-a, b),
        3 => (a, -b),
        4 => (-a, -b),
        5 => (-b, a),
        6 => (b, -a),
        _ => (-b, -a),
    }
}

/// Samples `A = (0, 0)`, `B` at distance `d`, and `C1`, `C2` at the same
/// distance `r < d` from `A`. `C2` is a reflection or rotation of `C1`
/// about `A` by a symmetry of the square, so `|C1 - A|` and `|C2 - A|`
/// agree exactly in floating point.
pub fn sample_three_point_pair(rng: &mut impl Rng, in_hypothesis: bool) -> (Vec<Point2>, Point2, Point2) {
    loop {
        let d = rng.gen_range(1.0..10.0);
        let phi = rng.gen_range(0.0..TAU);
        let b = Point2 {
            x: d * phi.cos(),
            y: d * phi.sin(),
        };
        let a = Point2 { x: 0.0, y: 0.0 };
        let d_ab = a.dist(&b);
        let r = d_ab * rng.gen_range(0.05..0.95);
        let psi = rng.gen_range(0.0..TAU);
        let (x1, y1) = (r * psi.cos(), r * psi.sin());
        let (x2, y2) = square_symmetry(x1, y1, rng.gen_range(1..8));
        let c1 = Point2 { x: x1, y: y1 };
        let c2 = Point2 { x: x2, y: y2 };
        let (h1, h2) = (c1.dist(&b), c2.dist(&b));
        let r_eff = c1.dist(&a);
        debug_assert_eq!(r_eff, c2.dist(&a));
        let ok = if in_hypothesis {
            h1 > d_ab && h2 > d_ab && r_eff < d_ab
        } else {
            // one of the C's sits closer to B than A does, at a different
            // edge length than the other
            r_eff < d_ab && (h1 > d_ab) != (h2 > d_ab) && h1.min(h2) > r_eff
        };
        if ok {
            return (vec![a, b], c1, c2);
        }
    }
}

/// Vertices of a regular `n`-gon with side `side`, first vertex at the
/// origin and the polygon to its right.
pub fn regular_polygon(n: usize, side: f64) -> Vec<Point2> {
    let radius = side / (2.0 * (PI / n as f64).sin());
    let mut pts = vec![Point2 { x: 0.0, y: 0.0 }];
    for k in 1..n {
        let angle = PI + TAU * k as f64 / n as f64;
        pts.push(Point2 {
            x: radius + radius * angle.cos(),
            y: radius * angle.sin(),
        });
    }
    pts
}

/// Polygon of side `side` plus two satellite positions at distance `r` from
/// the first vertex (mirror images across the x axis) and farther than
/// every polygon side from all other vertices.
pub fn sample_polygon_pair(rng: &mut impl Rng, n: usize, side: f64, r: f64) -> (Vec<Point2>, Point2, Point2) {
    let poly = regular_polygon(n, side);
    let longest_side = (0..n)
        .map(|i| poly[i].dist(&poly[(i + 1) % n]))
        .fold(0.0, f64::max);
    loop {
        let psi = rng.gen_range(-0.5..0.5);
        let c1 = Point2 {
            x: -r * f64::cos(psi),
            y: r * f64::sin(psi),
        };
        let c2 = Point2 { x: c1.x, y: -c1.y };
        let far = |c: &Point2| poly[1..].iter().all(|v| v.dist(c) > longest_side);
        if far(&c1) && far(&c2) && r < side {
            return (poly, c1, c2);
        }
    }
}

/// Randomized three-point configurations satisfying the zero-distance
/// hypothesis, optional out-of-hypothesis controls, and the polygon
/// variant for `n` in `polygon_sides`. In-hypothesis trials must give
/// exactly 0.
pub fn verify_proposition(
    trials: usize,
    controls: usize,
    polygon_sides: &[usize],
    seed: u64,
    cfg: &MatchConfig,
) -> Result<ProofReport> {
    if trials == 0 {
        return Err(invalid("trials must be >= 1"));
    }
    cfg.validate()?;
    let mut rng = rng_from_seed(seed);
    let mut jobs = Vec::new();
    for _ in 0..trials {
        let (base, c1, c2) = sample_three_point_pair(&mut rng, true);
        jobs.push(("three-point", base, c1, c2, true));
    }
    for _ in 0..controls {
        let (base, c1, c2) = sample_three_point_pair(&mut rng, false);
        jobs.push(("three-point-control", base, c1, c2, false));
    }
    for &n in polygon_sides {
        if n < 3 {
            return Err(invalid(format!("polygon needs >= 3 sides, got {n}")));
        }
        let (base, c1, c2) = sample_polygon_pair(&mut rng, n, 1.0, 0.4);
        jobs.push(("polygon", base, c1, c2, true));
    }
    let trials = jobs
        .into_par_iter()
        .map(|(kind, base, c1, c2, hyp)| evaluate_pair(kind, base, c1, c2, hyp, cfg))
        .collect::<Result<Vec<_>>>()?;
    Ok(ProofReport {
        seed,
        grid_size: cfg.grid_size,
        trials,
    })
}

/// `(1 - arccos(r / 2d) / pi)^2`.
pub fn predicted_zero_probability(r: f64, d: f64) -> f64 {
    (1.0 - (r / (2.0 * d)).acos() / PI).powi(2)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonteCarloReport {
    pub r: f64,
    pub d: f64,
    pub trials: usize,
    pub seed: u64,
    pub grid_size: usize,
    /// Fraction of trials whose matching distance is zero.
    pub empirical: f64,
    /// Fraction of trials where both satellites are farther than `d` from
    /// the opposite center (the geometric event behind the formula).
    pub geometric: f64,
    pub predicted: f64,
}

/// `A = (0, 0)`, `B = (d, 0)`; `C1` uniform on the radius-`r` circle about
/// `A`, `C2` uniform on the one about `B`. Counts zero matching distances
/// between `{A, B, C1}` and `{A, B, C2}`.
pub fn corollary_montecarlo(
    r: f64,
    d: f64,
    trials: usize,
    seed: u64,
    cfg: &MatchConfig,
) -> Result<MonteCarloReport> {
    if !(r > 0.0 && d > 0.0 && r < d) {
        return Err(invalid(format!("need 0 < r < d, got r={r}, d={d}")));
    }
    if trials == 0 {
        return Err(invalid("trials must be >= 1"));
    }
    cfg.validate()?;
    let a = Point2 { x: 0.0, y: 0.0 };
    let b = Point2 { x: d, y: 0.0 };
    let mut rng = rng_from_seed(seed);
    let samples: Vec<(Point2, Point2)> = (0..trials)
        .map(|_| {
            let (p1, p2) = (rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU));
            (
                Point2 {
                    x: a.x + r * p1.cos(),
                    y: a.y + r * p1.sin(),
                },
                Point2 {
                    x: b.x + r * p2.cos(),
                    y: b.y + r * p2.sin(),
                },
            )
        })
        .collect();
    let outcomes = samples
        .par_iter()
        .map(|&(c1, c2)| {
            let geometric = c1.dist(&b) > d && c2.dist(&a) > d;
            let trial = evaluate_pair("corollary", vec![a, b], c1, c2, geometric, cfg)?;
            Ok((trial.distance <= MONTE_CARLO_ZERO, geometric))
        })
        .collect::<Result<Vec<_>>>()?;
    let frac = |f: fn(&(bool, bool)) -> bool| {
        outcomes.iter().filter(|o| f(o)).count() as f64 / trials as f64
    };
    Ok(MonteCarloReport {
        r,
        d,
        trials,
        seed,
        grid_size: cfg.grid_size,
        empirical: frac(|o| o.0),
        geometric: frac(|o| o.1),
        predicted: predicted_zero_probability(r, d),
    })
}

/// Spearman rank correlation with average ranks for ties.
pub fn spearman(x: &[f64], y: &[f64]) -> f64 {
    assert_eq!(x.len(), y.len());
    let (rx, ry) = (ranks(x), ranks(y));
    let n = x.len() as f64;
    let (mx, my) = (rx.iter().sum::<f64>() / n, ry.iter().sum::<f64>() / n);
    let cov: f64 = rx.iter().zip(&ry).map(|(a, b)| (a - mx) * (b - my)).sum();
    let vx: f64 = rx.iter().map(|a| (a - mx).powi(2)).sum();
    let vy: f64 = ry.iter().map(|b| (b - my).powi(2)).sum();
    if vx == 0.0 || vy == 0.0 {
        return if vx == vy { 1.0 } else { 0.0 };
    }
    cov / (vx * vy).sqrt()
}

fn ranks(v: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&i, &j| v[i].total_cmp(&v[j]));
    let mut out = vec![0.0; v.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && v[idx[j + 1]] == v[idx[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for &k in &idx[i..=j] {
            out[k] = avg;
        }
        i = j + 1;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NoiseCurve {
    pub noise: NoiseSpec,
    pub distances: Vec<f64>,
    pub spearman: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NoiseReport {
    pub clean: SweepResult,
    pub noisy: Vec<NoiseCurve>,
}

/// Reruns `sweep` with noise on every dataset for each fraction and
/// compares each noisy curve with the clean one by rank correlation.
pub fn noise_robustness(
    sweep: &CircleSweep,
    values: &[f64],
    reference_values: &[f64],
    fractions: &[f64],
    magnitude: f64,
    cfg: &MatchConfig,
) -> Result<NoiseReport> {
    let clean = two_circle_sweep(&CircleSweep { noise: None, ..*sweep }, values, reference_values, cfg)?;
    let clean_d = clean.distances();
    let noisy = fractions
        .iter()
        .map(|&fraction| {
            let noise = NoiseSpec { fraction, magnitude };
            let s = CircleSweep {
                noise: Some(noise),
                ..*sweep
            };
            let distances = two_circle_sweep(&s, values, reference_values, cfg)?.distances();
            Ok(NoiseCurve {
                noise,
                spearman: spearman(&clean_d, &distances),
                distances,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(NoiseReport { clean, noisy })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_t_values() {
        let t = default_three_point_values();
        assert_eq!(t.len(), 18);
        assert_eq!(t[0], 0.0);
        assert!((t[17] - 3.128).abs() < 1e-12);
    }

    #[test]
    fn arange_inclusive() {
        let v = arange(0.5, 9.5, 0.5);
        assert_eq!(v.len(), 19);
        assert_eq!(v[18], 9.5);
    }

    #[test]
    fn predicted_probability() {
        let p = predicted_zero_probability(1.0, 3.0);
        assert!((p - 0.3062).abs() < 1e-4, "{p}");
        assert!((predicted_zero_probability(1e-9, 3.0) - 0.25).abs() < 1e-9);
    }

    #[test]
    fn spearman_basics() {
        assert!((spearman(&[1.0, 2.0, 3.0], &[10.0, 20.0, 30.0]) - 1.0).abs() < 1e-12);
        assert!((spearman(&[1.0, 2.0, 3.0], &[3.0, 2.0, 1.0]) + 1.0).abs() < 1e-12);
        assert_eq!(ranks(&[1.0, 1.0, 2.0]), vec![1.5, 1.5, 3.0]);
    }

    #[test]
    fn symmetries_preserve_norm_bits() {
        let (a, b): (f64, f64) = (0.123456789, -2.71);
        let n0 = (a * a + b * b).sqrt();
        for w in 0..8 {
            let (x, y) = square_symmetry(a, b, w);
            assert_eq!((x * x + y * y).sqrt().to_bits(), n0.to_bits());
        }
    }

    #[test]
    fn nearest_pair_rule() {
        let pts = vec![
            Point2 { x: 0.0, y: 0.0 },
            Point2 { x: 5.0, y: 0.0 },
            Point2 { x: 4.0, y: 0.5 },
        ];
        assert_eq!(nearest_pair_densities(&pts), vec![2.0, 1.0, 1.0]);
    }

    #[test]
    fn polygon_sides_are_equal() {
        for n in 3..=6 {
            let p = regular_polygon(n, 1.0);
            for i in 0..n {
                assert!((p[i].dist(&p[(i + 1) % n]) - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn proposition_reference_configuration() {
        // A=(0,0), B=(5,0), C1=(-1,0), C2=(0,1)
        let cfg = MatchConfig::default();
        let base = vec![Point2 { x: 0.0, y: 0.0 }, Point2 { x: 5.0, y: 0.0 }];
        let t = evaluate_pair(
            "fixed",
            base,
            Point2 { x: -1.0, y: 0.0 },
            Point2 { x: 0.0, y: 1.0 },
            true,
            &cfg,
        )
        .unwrap();
        assert_eq!(t.distance, 0.0);
    }

    #[test]
    fn sweep_diagonal_is_zero() {
        let cfg = MatchConfig::new(5, 0, true).unwrap();
        let res = three_point_sweep(3.0, &[0.5, 2.0], &[0.5, 2.0], &cfg).unwrap();
        for r in &res.rows {
            if r.params[0] == r.params[2] {
                assert_eq!(r.distance, 0.0);
            } else {
                assert!(r.distance > 0.0);
            }
        }
        let csv = res.to_csv();
        assert!(csv.lines().nth(1).unwrap().starts_with("r,s,t,u,distance"));
        assert_eq!(csv.lines().count(), 6);
    }

    #[test]
    fn montecarlo_rejects_bad_radius() {
        let cfg = MatchConfig::new(2, 0, true).unwrap();
        assert!(corollary_montecarlo(3.0, 3.0, 10, 0, &cfg).is_err());
        assert!(corollary_montecarlo(1.0, 3.0, 0, 0, &cfg).is_err());
    }
}
