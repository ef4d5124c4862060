//! Bigraded simplicial complexes and the density-Rips construction.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt::{self, Write as _};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::pointcloud::PointCloud;

const NO_FACE: u32 = u32::MAX;

/// A simplex of dimension 0, 1 or 2 on point indices, vertices strictly
/// increasing.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Simplex {
    verts: [u32; 3],
    len: u8,
}

impl Simplex {
    pub fn vertex(v: u32) -> Self {
        Self {
            verts: [v, 0, 0],
            len: 1,
        }
    }

    pub fn edge(a: u32, b: u32) -> Self {
        debug_assert_ne!(a, b);
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        Self {
            verts: [a, b, 0],
            len: 2,
        }
    }

    pub fn triangle(a: u32, b: u32, c: u32) -> Self {
        let mut v = [a, b, c];
        v.sort_unstable();
        debug_assert!(v[0] < v[1] && v[1] < v[2]);
        Self { verts: v, len: 3 }
    }

    /// Builds a simplex from 1 to 3 distinct vertices, in any order.
    pub fn new(vertices: &[u32]) -> Result<Self> {
        let mut v = vertices.to_vec();
        v.sort_unstable();
        let distinct = v.windows(2).all(|w| w[0] < w[1]);
        match (v.len(), distinct) {
            (1, _) => Ok(Self::vertex(v[0])),
            (2, true) => Ok(Self::edge(v[0], v[1])),
            (3, true) => Ok(Self::triangle(v[0], v[1], v[2])),
            _ => Err(invalid(format!("bad simplex vertices {vertices:?}"))),
        }
    }

    pub fn vertices(&self) -> &[u32] {
        &self.verts[..self.len as usize]
    }

    pub fn dim(&self) -> usize {
        self.len as usize - 1
    }

    /// Codimension-one faces; empty for a vertex.
    pub fn facets(&self) -> impl Iterator<Item = Simplex> + '_ {
        let v = self.vertices();
        let n = if v.len() > 1 { v.len() } else { 0 };
        (0..n).map(move |skip| {
            let rest: Vec<u32> = v
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &x)| x)
                .collect();
            match rest.len() {
                1 => Simplex::vertex(rest[0]),
                _ => Simplex::edge(rest[0], rest[1]),
            }
        })
    }
}

impl Ord for Simplex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.vertices().cmp(other.vertices())
    }
}

impl PartialOrd for Simplex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.vertices())
    }
}

/// Bigrade `(density, scale)` at which a simplex enters the bifiltration.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bigrade {
    pub density: f64,
    pub scale: f64,
}

impl Bigrade {
    pub fn new(density: f64, scale: f64) -> Self {
        Self { density, scale }
    }

    /// Componentwise `<=`.
    pub fn le(&self, other: &Bigrade) -> bool {
        self.density <= other.density && self.scale <= other.scale
    }
}

/// One-critical bifiltered complex. Each simplex carries its minimal
/// bigrade and the positions of its facets within `simplices`.
#[derive(Clone, Debug, PartialEq)]
pub struct BifilteredComplex {
    simplices: Vec<Simplex>,
    grades: Vec<Bigrade>,
    facets: Vec<[u32; 3]>,
    vertex_count: usize,
}

impl BifilteredComplex {
    /// Validates face closure, grade monotonicity and uniqueness.
    pub fn new(vertex_count: usize, entries: Vec<(Simplex, Bigrade)>) -> Result<Self> {
        for (s, g) in &entries {
            if !(g.density.is_finite() && g.scale.is_finite() && g.scale >= 0.0) {
                return Err(invalid(format!("bad bigrade {g:?} on {s:?}")));
            }
            if s.vertices().iter().any(|&v| v as usize >= vertex_count) {
                return Err(invalid(format!("{s:?} references a vertex >= {vertex_count}")));
            }
        }
        let (simplices, grades): (Vec<_>, Vec<_>) = entries.into_iter().unzip();
        let facets = facet_positions(&simplices)?;
        for (i, f) in facets.iter().enumerate() {
            for &p in f.iter().filter(|&&p| p != NO_FACE) {
                if !grades[p as usize].le(&grades[i]) {
                    return Err(invalid(format!(
                        "face {:?} at {:?} not below {:?} at {:?}",
                        simplices[p as usize], grades[p as usize], simplices[i], grades[i]
                    )));
                }
            }
        }
        Ok(Self {
            simplices,
            grades,
            facets,
            vertex_count,
        })
    }

    pub fn empty() -> Self {
        Self {
            simplices: Vec::new(),
            grades: Vec::new(),
            facets: Vec::new(),
            vertex_count: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn grades(&self) -> &[Bigrade] {
        &self.grades
    }

    /// Positions of the facets of simplex `i` (empty for vertices).
    pub fn facets_of(&self, i: usize) -> &[u32] {
        let n = if self.simplices[i].dim() == 0 {
            0
        } else {
            self.simplices[i].dim() + 1
        };
        &self.facets[i][..n]
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Simplex, &Bigrade)> {
        self.simplices.iter().zip(&self.grades)
    }

    /// Number of simplices of each dimension 0, 1, 2.
    pub fn counts(&self) -> [usize; 3] {
        let mut c = [0; 3];
        for s in &self.simplices {
            c[s.dim()] += 1;
        }
        c
    }

    /// Same simplices and facet structure with every grade mapped through
    /// `f`. `f` must be monotone in both coordinates.
    pub fn map_grades(&self, f: impl Fn(Bigrade) -> Bigrade) -> Self {
        Self {
            simplices: self.simplices.clone(),
            grades: self.grades.iter().map(|&g| f(g)).collect(),
            facets: self.facets.clone(),
            vertex_count: self.vertex_count,
        }
    }

    /// Drops every simplex of dimension above `max_dim`.
    pub fn truncate_dim(&self, max_dim: usize) -> Self {
        if self.simplices.iter().all(|s| s.dim() <= max_dim) {
            return self.clone();
        }
        let entries = self
            .iter()
            .filter(|(s, _)| s.dim() <= max_dim)
            .map(|(s, g)| (*s, *g))
            .collect();
        // facets of kept simplices are kept as well
        Self::new(self.vertex_count, entries).expect("truncation preserves validity")
    }

    /// Debug listing, one simplex per line: `v1 v2 v3 ; density scale`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (s, g) in self.iter() {
            let verts: Vec<String> = s.vertices().iter().map(u32::to_string).collect();
            let _ = writeln!(out, "{} ; {} {}", verts.join(" "), g.density, g.scale);
        }
        out
    }
}

fn facet_positions(simplices: &[Simplex]) -> Result<Vec<[u32; 3]>> {
    let index: HashMap<Simplex, u32> = simplices
        .iter()
        .enumerate()
        .map(|(i, s)| (*s, i as u32))
        .collect();
    if index.len() != simplices.len() {
        return Err(invalid("duplicate simplices"));
    }
    simplices
        .iter()
        .map(|s| {
            let mut out = [NO_FACE; 3];
            for (slot, face) in out.iter_mut().zip(s.facets()) {
                *slot = *index
                    .get(&face)
                    .ok_or_else(|| invalid(format!("face {face:?} of {s:?} missing")))?;
            }
            Ok(out)
        })
        .collect()
}

/// Density-Rips construction: vertex `i` at `(f_i, 0)`, a simplex at
/// `(max f over its vertices, max pairwise distance)`. Simplices above
/// `scale_cap` are omitted. Output is ordered by
/// `(scale, density, dimension, vertices)`.
pub fn build_density_rips(
    cloud: &PointCloud,
    max_dim: usize,
    scale_cap: Option<f64>,
) -> Result<BifilteredComplex> {
    let density = cloud
        .densities()
        .ok_or_else(|| invalid("density-Rips construction needs densities"))?;
    if !(1..=2).contains(&max_dim) {
        return Err(invalid(format!("max_dim must be 1 or 2, got {max_dim}")));
    }
    if let Some(cap) = scale_cap {
        if cap.is_nan() || cap < 0.0 {
            return Err(invalid(format!("scale cap must be >= 0, got {cap}")));
        }
    }
    let n = cloud.len();
    if n > u32::MAX as usize / 2 {
        return Err(invalid("too many points"));
    }
    let pts = cloud.points();
    let cap = scale_cap.unwrap_or(f64::INFINITY);
    let dist: Vec<f64> = (0..n * n)
        .into_par_iter()
        .map(|ij| pts[ij / n].dist(&pts[ij % n]))
        .collect();
    let d = |i: usize, j: usize| dist[i * n + j];

    let mut entries: Vec<(Simplex, Bigrade)> = (0..n)
        .map(|i| (Simplex::vertex(i as u32), Bigrade::new(density[i], 0.0)))
        .collect();
    for i in 0..n {
        for j in i + 1..n {
            if d(i, j) <= cap {
                entries.push((
                    Simplex::edge(i as u32, j as u32),
                    Bigrade::new(density[i].max(density[j]), d(i, j)),
                ));
            }
        }
    }
    if max_dim == 2 {
        let triangles: Vec<(Simplex, Bigrade)> = (0..n)
            .into_par_iter()
            .flat_map_iter(|i| {
                let d = &d;
                (i + 1..n).flat_map(move |j| {
                    (j + 1..n).filter_map(move |k| {
                        let s = d(i, j).max(d(i, k)).max(d(j, k));
                        (s <= cap).then(|| {
                            (
                                Simplex::triangle(i as u32, j as u32, k as u32),
                                Bigrade::new(density[i].max(density[j]).max(density[k]), s),
                            )
                        })
                    })
                })
            })
            .collect();
        entries.extend(triangles);
    }
    entries.par_sort_unstable_by(|(sa, ga), (sb, gb)| {
        ga.scale
            .total_cmp(&gb.scale)
            .then(ga.density.total_cmp(&gb.density))
            .then(sa.dim().cmp(&sb.dim()))
            .then(sa.cmp(sb))
    });
    let (simplices, grades): (Vec<_>, Vec<_>) = entries.into_iter().unzip();
    let facets = rips_facets(n, &simplices);
    Ok(BifilteredComplex {
        simplices,
        grades,
        facets,
        vertex_count: n,
    })
}

// Facet lookup for a complex built from all vertices: vertex `i` is found
// through a position table, edges through a dense pair table.
fn rips_facets(n: usize, simplices: &[Simplex]) -> Vec<[u32; 3]> {
    let mut vertex_pos = vec![NO_FACE; n];
    let mut edge_pos = vec![NO_FACE; n * n];
    for (p, s) in simplices.iter().enumerate() {
        match *s.vertices() {
            [v] => vertex_pos[v as usize] = p as u32,
            [a, b] => edge_pos[a as usize * n + b as usize] = p as u32,
            _ => {}
        }
    }
    simplices
        .par_iter()
        .map(|s| match *s.vertices() {
            [_] => [NO_FACE; 3],
            [a, b] => [vertex_pos[b as usize], vertex_pos[a as usize], NO_FACE],
            [a, b, c] => {
                let e = |x: u32, y: u32| edge_pos[x as usize * n + y as usize];
                [e(b, c), e(a, c), e(a, b)]
            }
            _ => unreachable!(),
        })
        .collect()
}

/// Strictly increasing distinct grade values on each axis.
pub fn grade_axes(complex: &BifilteredComplex) -> Result<(Vec<f64>, Vec<f64>)> {
    if complex.is_empty() {
        return Err(invalid("grade axes of an empty complex"));
    }
    let axis = |f: fn(&Bigrade) -> f64| {
        let mut v: Vec<f64> = complex.grades.iter().map(f).collect();
        v.sort_unstable_by(f64::total_cmp);
        v.dedup();
        v
    };
    Ok((axis(|g| g.density), axis(|g| g.scale)))
}
