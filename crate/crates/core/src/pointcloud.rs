//! Planar point clouds: generators for the three-point and two-circle
//! families, noise injection, k-nearest-neighbor density and CSV I/O.

use std::f64::consts::TAU;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Fixed point `A` of the three-point family.
pub const POINT_A: Point2 = Point2 { x: 1.0, y: 1.0 };
/// Fixed point `B` of the three-point family.
pub const POINT_B: Point2 = Point2 { x: 6.1, y: 1.0 };

/// Seedable generator used by every random operation in the crate.
pub type Rng64 = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !x.is_finite() || !y.is_finite() {
            return Err(invalid(format!("non-finite coordinate ({x}, {y})")));
        }
        Ok(Self { x, y })
    }

    /// Euclidean distance. Symmetric bit-for-bit in its arguments.
    #[inline]
    pub fn dist(&self, other: &Point2) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        (dx * dx + dy * dy).sqrt()
    }
}

/// Points with optional per-point density values.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PointCloud {
    points: Vec<Point2>,
    densities: Option<Vec<f64>>,
}

impl PointCloud {
    pub fn new(points: Vec<Point2>) -> Result<Self> {
        for p in &points {
            Point2::new(p.x, p.y)?;
        }
        Ok(Self {
            points,
            densities: None,
        })
    }

    pub fn from_xy(coords: &[(f64, f64)]) -> Result<Self> {
        let points = coords
            .iter()
            .map(|&(x, y)| Point2::new(x, y))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            points,
            densities: None,
        })
    }

    pub fn with_densities(points: Vec<Point2>, densities: Vec<f64>) -> Result<Self> {
        Self::new(points)?.set_density(densities)
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    pub fn densities(&self) -> Option<&[f64]> {
        self.densities.as_deref()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Returns the cloud with `densities = values`.
    pub fn set_density(mut self, values: Vec<f64>) -> Result<Self> {
        if values.len() != self.points.len() {
            return Err(invalid(format!(
                "{} density values for {} points",
                values.len(),
                self.points.len()
            )));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(invalid(format!("non-finite density {v}")));
        }
        self.densities = Some(values);
        Ok(self)
    }

    pub fn clear_density(mut self) -> Self {
        self.densities = None;
        self
    }

    /// Applies `(x, y) -> (s x, s y)` and scales densities by `s` too.
    pub fn scaled(&self, s: f64) -> Result<Self> {
        let points = self
            .points
            .iter()
            .map(|p| Point2::new(p.x * s, p.y * s))
            .collect::<Result<Vec<_>>>()?;
        let densities = self
            .densities
            .as_ref()
            .map(|d| d.iter().map(|v| v * s).collect());
        Ok(Self { points, densities })
    }
}

/// Two circles of equal radius whose boundaries are `separation` apart.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CircleSpec {
    pub radius: f64,
    pub separation: f64,
    pub points_per_circle: usize,
    pub seed: u64,
}

impl CircleSpec {
    pub fn new(radius: f64, separation: f64, points_per_circle: usize, seed: u64) -> Result<Self> {
        let spec = Self {
            radius,
            separation,
            points_per_circle,
            seed,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.radius.is_finite() && self.radius > 0.0) {
            return Err(invalid(format!("radius must be > 0, got {}", self.radius)));
        }
        if !(self.separation.is_finite() && self.separation >= 0.0) {
            return Err(invalid(format!(
                "separation must be >= 0, got {}",
                self.separation
            )));
        }
        if self.points_per_circle == 0 {
            return Err(invalid("points_per_circle must be >= 1"));
        }
        Ok(())
    }

    pub fn centers(&self) -> [Point2; 2] {
        [
            Point2 { x: 0.0, y: 0.0 },
            Point2 {
                x: 2.0 * self.radius + self.separation,
                y: 0.0,
            },
        ]
    }
}

/// The cloud `{A, B, (cx, cy)}` in that order, densities unset.
pub fn three_point(cx: f64, cy: f64) -> Result<PointCloud> {
    let c = Point2::new(cx, cy)?;
    Ok(PointCloud {
        points: vec![POINT_A, POINT_B, c],
        densities: None,
    })
}

/// Samples `points_per_circle` uniform angles on each circle. The first
/// circle's points come first.
pub fn two_circles(spec: &CircleSpec) -> Result<PointCloud> {
    spec.validate()?;
    let mut rng = rng_from_seed(spec.seed);
    let mut points = Vec::with_capacity(2 * spec.points_per_circle);
    for center in spec.centers() {
        for _ in 0..spec.points_per_circle {
            let theta = rng.gen_range(0.0..TAU);
            points.push(Point2 {
                x: center.x + spec.radius * theta.cos(),
                y: center.y + spec.radius * theta.sin(),
            });
        }
    }
    Ok(PointCloud {
        points,
        densities: None,
    })
}

/// Displaces `round(fraction * n)` distinct points, each by a vector drawn
/// uniformly from the disk of radius `magnitude`. Densities are dropped when
/// any point actually moves, since they no longer describe the cloud.
pub fn add_noise(cloud: &PointCloud, fraction: f64, magnitude: f64, seed: u64) -> Result<PointCloud> {
    if !(0.0..=1.0).contains(&fraction) {
        return Err(invalid(format!("noise fraction {fraction} outside [0, 1]")));
    }
    if !(magnitude.is_finite() && magnitude >= 0.0) {
        return Err(invalid(format!("noise magnitude must be >= 0, got {magnitude}")));
    }
    if cloud.is_empty() {
        return Err(invalid("cannot add noise to an empty cloud"));
    }
    let n = cloud.len();
    let count = (fraction * n as f64).round() as usize;
    if count == 0 || magnitude == 0.0 {
        return Ok(cloud.clone());
    }
    let mut rng = rng_from_seed(seed);
    let mut chosen = index::sample(&mut rng, n, count).into_vec();
    chosen.sort_unstable();
    let mut points = cloud.points.clone();
    for i in chosen {
        let radius = magnitude * rng.gen::<f64>().sqrt();
        let angle = rng.gen_range(0.0..TAU);
        points[i].x += radius * angle.cos();
        points[i].y += radius * angle.sin();
    }
    Ok(PointCloud {
        points,
        densities: None,
    })
}

/// Density of each point = distance to its `k`-th nearest other point.
pub fn knn_density(cloud: &PointCloud, k: usize) -> Result<PointCloud> {
    let n = cloud.len();
    if k == 0 {
        return Err(invalid("k must be >= 1"));
    }
    if k >= n {
        return Err(invalid(format!("k = {k} needs at least {} points, have {n}", k + 1)));
    }
    let pts = &cloud.points;
    let mut scratch = Vec::with_capacity(n - 1);
    let densities = (0..n)
        .map(|i| {
            scratch.clear();
            scratch.extend((0..n).filter(|&j| j != i).map(|j| pts[i].dist(&pts[j])));
            let (_, kth, _) = scratch.select_nth_unstable_by(k - 1, f64::total_cmp);
            *kth
        })
        .collect();
    cloud.clone().set_density(densities)
}

/// Manual density assignment.
pub fn set_density(cloud: &PointCloud, values: &[f64]) -> Result<PointCloud> {
    cloud.clone().set_density(values.to_vec())
}

/// Parses `x,y` or `x,y,density` rows. Lines starting with `#` and blank
/// lines are skipped; every data row must have the same number of fields.
pub fn read_csv_from<R: Read>(reader: R, origin: &Path) -> Result<PointCloud> {
    let parse_err = |line: usize, message: String| Error::Parse {
        path: origin.to_path_buf(),
        line,
        message,
    };
    let mut points = Vec::new();
    let mut densities = Vec::new();
    let mut width: Option<usize> = None;
    for (i, text) in BufReader::new(reader).lines().enumerate() {
        let line = i + 1;
        let text = text.map_err(|e| parse_err(line, e.to_string()))?;
        let text = text.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = text.split(',').map(str::trim).collect();
        if !(2..=3).contains(&fields.len()) {
            return Err(parse_err(line, format!("expected 2 or 3 fields, found {}", fields.len())));
        }
        match width {
            None => width = Some(fields.len()),
            Some(w) if w != fields.len() => {
                return Err(parse_err(
                    line,
                    format!("inconsistent column count: {} after {w}", fields.len()),
                ))
            }
            _ => {}
        }
        let mut values = [0.0; 3];
        for (slot, field) in values.iter_mut().zip(&fields) {
            let v: f64 = field
                .parse()
                .map_err(|_| parse_err(line, format!("non-numeric field {field:?}")))?;
            if !v.is_finite() {
                return Err(parse_err(line, format!("non-finite value {field:?}")));
            }
            *slot = v;
        }
        points.push(Point2 {
            x: values[0],
            y: values[1],
        });
        if fields.len() == 3 {
            densities.push(values[2]);
        }
    }
    let densities = (width == Some(3)).then_some(densities);
    Ok(PointCloud { points, densities })
}

pub fn read_csv(path: impl AsRef<Path>) -> Result<PointCloud> {
    let path = path.as_ref();
    read_csv_from(File::open(path)?, path)
}

/// Writes one row per point. `f64` display is the shortest representation
/// that parses back to the same value, so the round trip is exact.
pub fn write_csv_to<W: Write>(cloud: &PointCloud, mut out: W) -> Result<()> {
    match &cloud.densities {
        Some(d) => {
            for (p, v) in cloud.points.iter().zip(d) {
                writeln!(out, "{},{},{}", p.x, p.y, v)?;
            }
        }
        None => {
            for p in &cloud.points {
                writeln!(out, "{},{}", p.x, p.y)?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

pub fn write_csv(cloud: &PointCloud, path: impl AsRef<Path>) -> Result<()> {
    write_csv_to(cloud, BufWriter::new(File::create(path)?))
}
