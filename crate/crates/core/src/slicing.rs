//! Restriction of a bifiltered complex to a line of positive slope.
//!
//! A line is given by its angle with the density axis and its signed
//! perpendicular offset from the origin; positive offsets move it toward
//! the upper left. Points on the line are parametrized by arclength, with
//! `t = 0` at the foot of the perpendicular from the origin.

use crate::bifiltration::{BifilteredComplex, Bigrade};
use crate::error::{invalid, Result};
use crate::persistence::{self, filtration_order, Barcode, FilteredComplex, NO_FACE};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Line {
    angle_deg: f64,
    offset: f64,
    cos: f64,
    sin: f64,
}

impl Line {
    /// `angle_deg` must lie strictly between 0 and 90.
    pub fn new(angle_deg: f64, offset: f64) -> Result<Self> {
        if !(angle_deg > 0.0 && angle_deg < 90.0) {
            return Err(invalid(format!("line angle {angle_deg} not in (0, 90) degrees")));
        }
        if !offset.is_finite() {
            return Err(invalid(format!("non-finite line offset {offset}")));
        }
        let (sin, cos) = angle_deg.to_radians().sin_cos();
        Ok(Self {
            angle_deg,
            offset,
            cos,
            sin,
        })
    }

    pub fn angle_deg(&self) -> f64 {
        self.angle_deg
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn slope(&self) -> f64 {
        self.sin / self.cos
    }

    /// Unit direction `(cos, sin)`.
    pub fn direction(&self) -> (f64, f64) {
        (self.cos, self.sin)
    }

    /// Foot of the perpendicular from the origin.
    pub fn base_point(&self) -> (f64, f64) {
        (-self.offset * self.sin, self.offset * self.cos)
    }

    pub fn point_at(&self, t: f64) -> (f64, f64) {
        let (x0, y0) = self.base_point();
        (x0 + t * self.cos, y0 + t * self.sin)
    }
}

/// Smallest `t` such that the line point at `t` dominates `g`.
#[inline]
pub fn push(line: &Line, g: Bigrade) -> f64 {
    let (x0, y0) = line.base_point();
    ((g.density - x0) / line.cos).max((g.scale - y0) / line.sin)
}

/// One-parameter filtration induced on `line`.
pub fn slice(complex: &BifilteredComplex, line: &Line) -> FilteredComplex {
    slice_up_to(complex, line, 2)
}

/// Like [`slice`], keeping only simplices of dimension `<= max_dim`.
pub fn slice_up_to(complex: &BifilteredComplex, line: &Line, max_dim: usize) -> FilteredComplex {
    let simplices = complex.simplices();
    let mut order: Vec<(u32, f64)> = complex
        .iter()
        .enumerate()
        .filter(|(_, (s, _))| s.dim() <= max_dim)
        .map(|(i, (_, g))| (i as u32, push(line, *g)))
        .collect();
    order.sort_unstable_by(|&(i, a), &(j, b)| {
        filtration_order((&simplices[i as usize], a), (&simplices[j as usize], b))
    });
    let mut new_pos = vec![NO_FACE; complex.len()];
    for (p, &(i, _)) in order.iter().enumerate() {
        new_pos[i as usize] = p as u32;
    }
    let mut out_simplices = Vec::with_capacity(order.len());
    let mut appearance = Vec::with_capacity(order.len());
    let mut facets = Vec::with_capacity(order.len());
    for &(i, a) in &order {
        out_simplices.push(simplices[i as usize]);
        appearance.push(a);
        let mut f = [NO_FACE; 3];
        for (slot, &old) in f.iter_mut().zip(complex.facets_of(i as usize)) {
            *slot = new_pos[old as usize];
        }
        facets.push(f);
    }
    FilteredComplex::from_sorted_parts(out_simplices, appearance, facets)
}

/// Barcode of the restriction of `complex` to `line`. Degree 0 only looks
/// at the 1-skeleton and uses union-find.
pub fn fibered_barcode(complex: &BifilteredComplex, line: &Line, degree: usize) -> Result<Barcode> {
    match degree {
        0 => Ok(persistence::reduce_h0(&slice_up_to(complex, line, 1))),
        1 => persistence::reduce(&slice_up_to(complex, line, 2), 1),
        d => Err(invalid(format!("homology degree {d} not supported (0 or 1)"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bifiltration::build_density_rips;
    use crate::pointcloud::{set_density, three_point, PointCloud};

    const SQRT2: f64 = std::f64::consts::SQRT_2;

    #[test]
    fn push_diagonal_line() {
        let l = Line::new(45.0, 0.0).unwrap();
        for (a, b) in [(3.0, 1.0), (0.5, 2.0), (1.0, 1.0), (0.0, 0.0)] {
            let t = push(&l, Bigrade::new(a, b));
            assert!((t - SQRT2 * f64::max(a, b)).abs() < 1e-12, "{a} {b} {t}");
        }
        assert!((push(&l, Bigrade::new(3.0, 1.0)) - 4.2426).abs() < 1e-4);
    }

    #[test]
    fn push_fixes_points_on_the_line() {
        let l = Line::new(30.0, 0.4).unwrap();
        for t in [-1.0, 0.0, 0.7, 5.0] {
            let (x, y) = l.point_at(t);
            assert!((push(&l, Bigrade::new(x, y)) - t).abs() < 1e-12);
        }
    }

    #[test]
    fn line_rejects_degenerate_angles() {
        assert!(Line::new(0.0, 0.0).is_err());
        assert!(Line::new(90.0, 0.0).is_err());
        assert!(Line::new(-10.0, 0.0).is_err());
        assert!(Line::new(45.0, f64::NAN).is_err());
    }

    #[test]
    fn three_point_slice() {
        let cloud = set_density(&three_point(1.0, 3.0).unwrap(), &[1.0, 2.0, 1.0]).unwrap();
        let c = build_density_rips(&cloud, 2, None).unwrap();
        let fc = slice(&c, &Line::new(45.0, 0.0).unwrap());
        fc.check_invariants().unwrap();
        let app = |verts: &[u32]| {
            let i = fc.simplices().iter().position(|s| s.vertices() == verts).unwrap();
            fc.appearance()[i]
        };
        assert!((app(&[0]) - SQRT2).abs() < 1e-12);
        assert!((app(&[1]) - 2.0 * SQRT2).abs() < 1e-12);
        assert!((app(&[2]) - SQRT2).abs() < 1e-12);
        assert!((app(&[0, 2]) - 2.0 * SQRT2).abs() < 1e-12);
    }

    #[test]
    fn empty_slice() {
        let fc = slice(&BifilteredComplex::empty(), &Line::new(10.0, 0.0).unwrap());
        assert!(fc.is_empty());
    }

    #[test]
    fn two_point_fibered_barcode() {
        let (delta, d) = (0.5, 2.0);
        let cloud = PointCloud::from_xy(&[(0.0, 0.0), (d, 0.0)])
            .unwrap()
            .set_density(vec![delta, delta])
            .unwrap();
        let c = build_density_rips(&cloud, 2, None).unwrap();
        let b = fibered_barcode(&c, &Line::new(45.0, 0.0).unwrap(), 0).unwrap();
        let bars: Vec<_> = b.bars().collect();
        assert_eq!(bars.len(), 2);
        assert!((bars[0].0 - SQRT2 * delta).abs() < 1e-12);
        assert!((bars[0].1 - SQRT2 * d).abs() < 1e-12);
        assert!((bars[1].0 - SQRT2 * delta).abs() < 1e-12);
        assert_eq!(bars[1].1, f64::INFINITY);
    }

    #[test]
    fn tree_has_no_degree_one_bars() {
        let cloud = PointCloud::from_xy(&[(0.0, 0.0), (1.0, 0.0), (3.0, 0.0)])
            .unwrap()
            .set_density(vec![0.0; 3])
            .unwrap();
        let c = build_density_rips(&cloud, 1, Some(2.0)).unwrap();
        let b = fibered_barcode(&c, &Line::new(60.0, 0.1).unwrap(), 1).unwrap();
        assert!(b.is_empty());
    }
}
