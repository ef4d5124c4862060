//! Grid approximation of the matching distance.

use rayon::prelude::*;

use super::bottleneck::{bottleneck, Diagram};
use crate::bifiltration::{BifilteredComplex, Bigrade};
use crate::error::{invalid, Result};
use crate::slicing::{fibered_barcode, Line};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MatchConfig {
    pub grid_size: usize,
    pub degree: usize,
    pub normalize: bool,
}

impl Default for MatchConfig {
    fn default() -> Self {
        Self {
            grid_size: 20,
            degree: 0,
            normalize: true,
        }
    }
}

impl MatchConfig {
    pub fn new(grid_size: usize, degree: usize, normalize: bool) -> Result<Self> {
        let cfg = Self {
            grid_size,
            degree,
            normalize,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.grid_size == 0 {
            return Err(invalid("grid_size must be >= 1"));
        }
        if self.degree > 1 {
            return Err(invalid(format!("homology degree {} not supported", self.degree)));
        }
        Ok(())
    }
}

/// `1 / sqrt(1 + q^2)` with `q = max(m, 1/m)`.
pub fn weight(slope: f64) -> Result<f64> {
    if !(slope.is_finite() && slope > 0.0) {
        return Err(invalid(format!("slope must be positive and finite, got {slope}")));
    }
    let q = slope.max(1.0 / slope);
    Ok(1.0 / (1.0 + q * q).sqrt())
}

/// Affine map `x -> (x - lo) / (hi - lo)` on one axis; a zero-width range
/// maps everything to 0.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AxisMap {
    pub lo: f64,
    pub hi: f64,
}

impl AxisMap {
    pub fn apply(&self, x: f64) -> f64 {
        if self.hi > self.lo {
            (x - self.lo) / (self.hi - self.lo)
        } else {
            0.0
        }
    }
}

/// The shared rescaling applied by [`normalize_pair`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Normalization {
    pub density: AxisMap,
    pub scale: AxisMap,
}

impl Normalization {
    pub fn apply(&self, g: Bigrade) -> Bigrade {
        Bigrade::new(self.density.apply(g.density), self.scale.apply(g.scale))
    }
}

/// Rescales both complexes with one affine map per axis sending the joint
/// grade range onto `[0, 1]`.
pub fn normalize_pair(
    a: &BifilteredComplex,
    b: &BifilteredComplex,
) -> Result<(BifilteredComplex, BifilteredComplex, Normalization)> {
    if a.is_empty() || b.is_empty() {
        return Err(invalid("cannot normalize an empty complex"));
    }
    let range = |f: fn(&Bigrade) -> f64| {
        a.grades()
            .iter()
            .chain(b.grades())
            .map(f)
            .fold(AxisMap { lo: f64::INFINITY, hi: f64::NEG_INFINITY }, |m, x| AxisMap {
                lo: m.lo.min(x),
                hi: m.hi.max(x),
            })
    };
    let norm = Normalization {
        density: range(|g| g.density),
        scale: range(|g| g.scale),
    };
    Ok((
        a.map_grades(|g| norm.apply(g)),
        b.map_grades(|g| norm.apply(g)),
        norm,
    ))
}

/// `grid_size` interior angles `90 i / (grid_size + 1)` and, per angle,
/// `grid_size` offsets at the cell centres of the offset interval over
/// which the line meets the unit square.
pub fn line_grid(cfg: &MatchConfig) -> Vec<Line> {
    let n = cfg.grid_size;
    let mut lines = Vec::with_capacity(n * n);
    for i in 1..=n {
        let angle = 90.0 * i as f64 / (n + 1) as f64;
        let (sin, cos) = angle.to_radians().sin_cos();
        // offset of a point p is (-sin, cos) . p; over the square it ranges
        // from -sin (corner (1, 0)) to cos (corner (0, 1))
        let (lo, hi) = (-sin, cos);
        for j in 0..n {
            let offset = lo + (j as f64 + 0.5) * (hi - lo) / n as f64;
            lines.push(Line::new(angle, offset).expect("interior angle"));
        }
    }
    lines
}

/// Weighted bottleneck distance on one line.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LineEvaluation {
    pub line: Line,
    pub bottleneck: f64,
    pub weighted: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MatchResult {
    /// Maximum weighted bottleneck distance over the sampled lines; a lower
    /// bound on the true matching distance. In normalized units when the
    /// config asks for normalization.
    pub distance: f64,
    /// First line (in grid order) attaining `distance`.
    pub argmax: Option<LineEvaluation>,
    /// Set when some line produced an infinite bottleneck distance.
    pub infinite: bool,
    pub normalization: Option<Normalization>,
    pub lines_evaluated: usize,
}

/// Evaluates the weighted bottleneck distance of the fibered barcodes on
/// each line, in parallel, in the order given.
pub fn evaluate_lines(
    a: &BifilteredComplex,
    b: &BifilteredComplex,
    lines: &[Line],
    degree: usize,
) -> Result<Vec<LineEvaluation>> {
    let a = a.truncate_dim(degree + 1);
    let b = b.truncate_dim(degree + 1);
    lines
        .par_iter()
        .map(|line| {
            let da = Diagram::from(&fibered_barcode(&a, line, degree)?);
            let db = Diagram::from(&fibered_barcode(&b, line, degree)?);
            let d = bottleneck(&da, &db);
            let w = weight(line.slope())?;
            Ok(LineEvaluation {
                line: *line,
                bottleneck: d,
                weighted: d * w,
            })
        })
        .collect()
}

/// Maximum of the weighted bottleneck distances over `lines`.
pub fn matching_distance_over(
    a: &BifilteredComplex,
    b: &BifilteredComplex,
    lines: &[Line],
    degree: usize,
    normalize: bool,
) -> Result<MatchResult> {
    let (na, nb, normalization) = if normalize {
        let (na, nb, n) = normalize_pair(a, b)?;
        (na, nb, Some(n))
    } else {
        (a.clone(), b.clone(), None)
    };
    let evals = evaluate_lines(&na, &nb, lines, degree)?;
    let mut best: Option<LineEvaluation> = None;
    for e in &evals {
        if best.is_none_or(|b| e.weighted > b.weighted) {
            best = Some(*e);
        }
    }
    let distance = best.map_or(0.0, |b| b.weighted);
    Ok(MatchResult {
        distance,
        argmax: best,
        infinite: distance == f64::INFINITY,
        normalization,
        lines_evaluated: evals.len(),
    })
}

/// Grid approximation of the matching distance.
pub fn matching_distance(
    a: &BifilteredComplex,
    b: &BifilteredComplex,
    cfg: &MatchConfig,
) -> Result<MatchResult> {
    cfg.validate()?;
    matching_distance_over(a, b, &line_grid(cfg), cfg.degree, cfg.normalize)
}
