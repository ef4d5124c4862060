//! Exact bottleneck distance under the L-infinity ground metric.

use crate::error::{invalid, Result};
use crate::persistence::Barcode;

/// Persistence diagram: one `(birth, death)` point per bar, `death` may be
/// `f64::INFINITY`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Diagram {
    points: Vec<(f64, f64)>,
}

impl Diagram {
    pub fn new(points: Vec<(f64, f64)>) -> Result<Self> {
        for &(b, d) in &points {
            if !b.is_finite() || d.is_nan() || b >= d {
                return Err(invalid(format!("diagram point ({b}, {d}) needs birth < death")));
            }
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

impl From<&Barcode> for Diagram {
    fn from(b: &Barcode) -> Self {
        Self {
            points: b.bars().collect(),
        }
    }
}

/// L-infinity distance from a finite point to the diagonal.
#[inline]
pub fn diagonal_cost(p: (f64, f64)) -> f64 {
    (p.1 - p.0) / 2.0
}

#[inline]
pub fn linf(p: (f64, f64), q: (f64, f64)) -> f64 {
    (p.0 - q.0).abs().max((p.1 - q.1).abs())
}

/// Bottleneck distance. Points at infinity only match each other (cost =
/// birth gap); unequal counts of them give `f64::INFINITY`.
pub fn bottleneck(a: &Diagram, b: &Diagram) -> f64 {
    let (fin_a, inf_a) = split(a);
    let (fin_b, inf_b) = split(b);
    if inf_a.len() != inf_b.len() {
        return f64::INFINITY;
    }
    // sorted order is optimal for matching points on a line
    let essential = inf_a
        .iter()
        .zip(&inf_b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    essential.max(finite_bottleneck(&fin_a, &fin_b))
}

fn split(d: &Diagram) -> (Vec<(f64, f64)>, Vec<f64>) {
    let mut finite = Vec::new();
    let mut births = Vec::new();
    for &p in &d.points {
        if p.1 == f64::INFINITY {
            births.push(p.0);
        } else {
            finite.push(p);
        }
    }
    births.sort_unstable_by(f64::total_cmp);
    (finite, births)
}

// Binary search over the finite candidate set: every pairwise distance and
// every diagonal cost. Feasibility at threshold `c` asks for a matching
// between the two point sets, using only pairs within `c`, that covers
// every point farther than `c` from the diagonal. A matching covering the
// far points of `a` and one covering the far points of `b` can always be
// combined into one covering both (Mendelsohn-Dulmage), so two one-sided
// maximum matchings decide it.
fn finite_bottleneck(a: &[(f64, f64)], b: &[(f64, f64)]) -> f64 {
    if a.is_empty() && b.is_empty() {
        return 0.0;
    }
    let mut candidates: Vec<f64> = Vec::with_capacity(a.len() * b.len() + a.len() + b.len());
    candidates.extend(a.iter().chain(b).map(|&p| diagonal_cost(p)));
    let upper = candidates.iter().copied().fold(0.0, f64::max);
    for &p in a {
        for &q in b {
            let c = linf(p, q);
            if c < upper {
                candidates.push(c);
            }
        }
    }
    candidates.sort_unstable_by(f64::total_cmp);
    candidates.dedup();

    // the largest candidate (all points to the diagonal) is always feasible
    let (mut lo, mut hi) = (0, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible(a, b, candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    candidates[lo]
}

fn feasible(a: &[(f64, f64)], b: &[(f64, f64)], c: f64) -> bool {
    covers_far_points(a, b, c) && covers_far_points(b, a, c)
}

fn covers_far_points(far_side: &[(f64, f64)], other: &[(f64, f64)], c: f64) -> bool {
    let far: Vec<(f64, f64)> = far_side
        .iter()
        .copied()
        .filter(|&p| diagonal_cost(p) > c)
        .collect();
    if far.is_empty() {
        return true;
    }
    if far.len() > other.len() {
        return false;
    }
    let adj: Vec<Vec<u32>> = far
        .iter()
        .map(|&p| {
            other
                .iter()
                .enumerate()
                .filter(|&(_, &q)| linf(p, q) <= c)
                .map(|(j, _)| j as u32)
                .collect()
        })
        .collect();
    if adj.iter().any(Vec::is_empty) {
        return false;
    }
    HopcroftKarp::new(&adj, other.len()).max_matching() == far.len()
}

/// Maximum bipartite matching by shortest augmenting paths.
pub struct HopcroftKarp<'a> {
    adj: &'a [Vec<u32>],
    match_left: Vec<u32>,
    match_right: Vec<u32>,
    dist: Vec<u32>,
}

const FREE: u32 = u32::MAX;

impl<'a> HopcroftKarp<'a> {
    pub fn new(adj: &'a [Vec<u32>], right_len: usize) -> Self {
        Self {
            adj,
            match_left: vec![FREE; adj.len()],
            match_right: vec![FREE; right_len],
            dist: vec![0; adj.len()],
        }
    }

    pub fn max_matching(mut self) -> usize {
        let mut size = 0;
        while self.bfs() {
            for u in 0..self.adj.len() {
                if self.match_left[u] == FREE && self.dfs(u) {
                    size += 1;
                }
            }
        }
        size
    }

    fn bfs(&mut self) -> bool {
        let mut queue = std::collections::VecDeque::new();
        for u in 0..self.adj.len() {
            if self.match_left[u] == FREE {
                self.dist[u] = 0;
                queue.push_back(u);
            } else {
                self.dist[u] = u32::MAX;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                let w = self.match_right[v as usize];
                if w == FREE {
                    found = true;
                } else if self.dist[w as usize] == u32::MAX {
                    self.dist[w as usize] = self.dist[u] + 1;
                    queue.push_back(w as usize);
                }
            }
        }
        found
    }

    fn dfs(&mut self, u: usize) -> bool {
        for k in 0..self.adj[u].len() {
            let v = self.adj[u][k] as usize;
            let w = self.match_right[v];
            if w == FREE || (self.dist[w as usize] == self.dist[u] + 1 && self.dfs(w as usize)) {
                self.match_left[u] = v as u32;
                self.match_right[v] = u as u32;
                return true;
            }
        }
        self.dist[u] = u32::MAX;
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dg(points: &[(f64, f64)]) -> Diagram {
        Diagram::new(points.to_vec()).unwrap()
    }

    #[test]
    fn far_points_match_each_other() {
        let (a, b, c, d) = (0.0, 10.0, 1.0, 12.0);
        assert_eq!(bottleneck(&dg(&[(a, b)]), &dg(&[(c, d)])), 2.0);
    }

    #[test]
    fn identical_is_zero() {
        let d = dg(&[(0.0, 1.0), (0.5, 3.0), (1.0, f64::INFINITY)]);
        assert_eq!(bottleneck(&d, &d), 0.0);
        assert_eq!(bottleneck(&Diagram::default(), &Diagram::default()), 0.0);
    }

    #[test]
    fn single_point_against_empty() {
        assert_eq!(bottleneck(&dg(&[(0.0, 2.0)]), &Diagram::default()), 1.0);
    }

    #[test]
    fn infinite_points() {
        let a = dg(&[(0.0, f64::INFINITY), (2.0, f64::INFINITY)]);
        let b = dg(&[(0.5, f64::INFINITY), (1.0, f64::INFINITY)]);
        assert_eq!(bottleneck(&a, &b), 1.0);
        let c = dg(&[(0.5, f64::INFINITY)]);
        assert_eq!(bottleneck(&a, &c), f64::INFINITY);
    }

    #[test]
    fn prefers_diagonal_when_cheaper() {
        // matching the two points costs 3, sending both to the diagonal costs 0.5
        let a = dg(&[(0.0, 1.0)]);
        let b = dg(&[(3.0, 4.0)]);
        assert_eq!(bottleneck(&a, &b), 0.5);
    }

    #[test]
    fn rejects_bad_points() {
        assert!(Diagram::new(vec![(1.0, 1.0)]).is_err());
        assert!(Diagram::new(vec![(f64::INFINITY, f64::INFINITY)]).is_err());
    }

    #[test]
    fn hopcroft_karp_small() {
        let adj = vec![vec![0, 1], vec![0], vec![1, 2]];
        assert_eq!(HopcroftKarp::new(&adj, 3).max_matching(), 3);
        let adj = vec![vec![0], vec![0]];
        assert_eq!(HopcroftKarp::new(&adj, 1).max_matching(), 1);
    }
}
