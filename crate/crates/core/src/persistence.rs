//! One-parameter persistent homology over the two-element field.
//!
//! [`reduce`] runs the standard column reduction on the filtered boundary
//! matrix. [`oracle_barcode`] recovers the same barcode from persistent
//! Betti numbers computed with dense rank computations; it exists to check
//! the reduction on small inputs and refuses anything over 64 simplices.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::bifiltration::Simplex;
use crate::error::{invalid, Error, Result};

pub(crate) const NO_FACE: u32 = u32::MAX;

/// Simplices ordered by `(appearance, dimension, vertices)` so that every
/// face precedes its cofaces.
#[derive(Clone, Debug, PartialEq)]
pub struct FilteredComplex {
    simplices: Vec<Simplex>,
    appearance: Vec<f64>,
    facets: Vec<[u32; 3]>,
}

impl FilteredComplex {
    /// Sorts `entries` into filtration order and checks the invariants.
    pub fn new(mut entries: Vec<(Simplex, f64)>) -> Result<Self> {
        if let Some((s, a)) = entries.iter().find(|(_, a)| !a.is_finite()) {
            return Err(invalid(format!("non-finite appearance {a} for {s:?}")));
        }
        entries.sort_by(|(sa, a), (sb, b)| filtration_order((sa, *a), (sb, *b)));
        let index: HashMap<Simplex, u32> = entries
            .iter()
            .enumerate()
            .map(|(i, (s, _))| (*s, i as u32))
            .collect();
        if index.len() != entries.len() {
            return Err(invalid("duplicate simplices in filtration"));
        }
        let mut facets = Vec::with_capacity(entries.len());
        for (i, (s, a)) in entries.iter().enumerate() {
            let mut f = [NO_FACE; 3];
            for (slot, face) in f.iter_mut().zip(s.facets()) {
                let p = *index
                    .get(&face)
                    .ok_or_else(|| invalid(format!("face {face:?} of {s:?} missing")))?;
                if entries[p as usize].1 > *a {
                    return Err(invalid(format!("face {face:?} enters after {s:?}")));
                }
                debug_assert!((p as usize) < i);
                *slot = p;
            }
            facets.push(f);
        }
        let (simplices, appearance) = entries.into_iter().unzip();
        Ok(Self {
            simplices,
            appearance,
            facets,
        })
    }

    /// Caller guarantees filtration order and facet positions.
    pub(crate) fn from_sorted_parts(
        simplices: Vec<Simplex>,
        appearance: Vec<f64>,
        facets: Vec<[u32; 3]>,
    ) -> Self {
        debug_assert_eq!(simplices.len(), appearance.len());
        debug_assert_eq!(simplices.len(), facets.len());
        Self {
            simplices,
            appearance,
            facets,
        }
    }

    pub fn empty() -> Self {
        Self {
            simplices: Vec::new(),
            appearance: Vec::new(),
            facets: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn appearance(&self) -> &[f64] {
        &self.appearance
    }

    /// Positions of the facets of the simplex at position `i`.
    pub fn facets_of(&self, i: usize) -> &[u32] {
        let d = self.simplices[i].dim();
        &self.facets[i][..if d == 0 { 0 } else { d + 1 }]
    }

    /// Checks face-before-coface and nondecreasing appearance.
    pub fn check_invariants(&self) -> Result<()> {
        for i in 0..self.len() {
            if i > 0 && self.appearance[i - 1] > self.appearance[i] {
                return Err(Error::Internal(format!("appearance decreases at {i}")));
            }
            let faces: Vec<Simplex> = self.simplices[i].facets().collect();
            for (&p, face) in self.facets_of(i).iter().zip(&faces) {
                if p as usize >= i || self.simplices[p as usize] != *face {
                    return Err(Error::Internal(format!(
                        "face {face:?} of {:?} misplaced",
                        self.simplices[i]
                    )));
                }
            }
        }
        Ok(())
    }
}

pub(crate) fn filtration_order(a: (&Simplex, f64), b: (&Simplex, f64)) -> std::cmp::Ordering {
    a.1.total_cmp(&b.1)
        .then(a.0.dim().cmp(&b.0.dim()))
        .then(a.0.cmp(b.0))
}

/// A bar `[birth, death)`; `death` is `f64::INFINITY` for essential classes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BarcodeEntry {
    pub birth: f64,
    pub death: f64,
    pub degree: usize,
}

impl BarcodeEntry {
    pub fn is_infinite(&self) -> bool {
        self.death == f64::INFINITY
    }
}

/// Bars of a single homology degree, kept sorted by `(birth, death)` so
/// that equality is multiset equality.
#[derive(Clone, Debug, PartialEq)]
pub struct Barcode {
    degree: usize,
    entries: Vec<BarcodeEntry>,
}

impl Barcode {
    /// Drops zero-length bars and sorts.
    pub fn new(degree: usize, bars: impl IntoIterator<Item = (f64, f64)>) -> Result<Self> {
        let mut entries = Vec::new();
        for (birth, death) in bars {
            if !birth.is_finite() || death.is_nan() || death < birth {
                return Err(invalid(format!("bad bar [{birth}, {death})")));
            }
            if birth < death {
                entries.push(BarcodeEntry {
                    birth,
                    death,
                    degree,
                });
            }
        }
        entries.sort_by(|a, b| a.birth.total_cmp(&b.birth).then(a.death.total_cmp(&b.death)));
        Ok(Self { degree, entries })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn entries(&self) -> &[BarcodeEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn bars(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.entries.iter().map(|e| (e.birth, e.death))
    }

    pub fn infinite_count(&self) -> usize {
        self.entries.iter().filter(|e| e.is_infinite()).count()
    }

    pub fn finite_count(&self) -> usize {
        self.len() - self.infinite_count()
    }

    /// `{"degree": k, "bars": [[birth, death|null], ...]}`
    pub fn to_json(&self) -> String {
        serde_json::to_string(&BarcodeJson::from(self)).expect("barcode serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: BarcodeJson = serde_json::from_str(text)?;
        Barcode::new(
            raw.degree,
            raw.bars
                .into_iter()
                .map(|(b, d)| (b, d.unwrap_or(f64::INFINITY))),
        )
    }
}

#[derive(Serialize, Deserialize)]
pub struct BarcodeJson {
    pub degree: usize,
    pub bars: Vec<(f64, Option<f64>)>,
}

impl From<&Barcode> for BarcodeJson {
    fn from(b: &Barcode) -> Self {
        Self {
            degree: b.degree,
            bars: b
                .bars()
                .map(|(x, y)| (x, y.is_finite().then_some(y)))
                .collect(),
        }
    }
}

fn check_degree(degree: usize) -> Result<()> {
    if degree > 1 {
        return Err(invalid(format!("homology degree {degree} not supported (0 or 1)")));
    }
    Ok(())
}

// Sparse column over GF(2): sorted row positions, pivot is the last entry.
fn add_into(target: &mut Vec<u32>, source: &[u32], scratch: &mut Vec<u32>) {
    scratch.clear();
    let (mut i, mut j) = (0, 0);
    while i < target.len() && j < source.len() {
        match target[i].cmp(&source[j]) {
            std::cmp::Ordering::Less => {
                scratch.push(target[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                scratch.push(source[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    scratch.extend_from_slice(&target[i..]);
    scratch.extend_from_slice(&source[j..]);
    std::mem::swap(target, scratch);
}

/// Left-to-right reduction of the columns of dimension `dim`. Returns
/// `pivot[row] = column` for every pairing found. Columns listed in
/// `cleared` are known to reduce to zero and are skipped.
fn reduce_dimension(fc: &FilteredComplex, dim: usize, cleared: &[bool]) -> HashMap<u32, u32> {
    let mut pivot_of_row: HashMap<u32, u32> = HashMap::new();
    let mut reduced: HashMap<u32, Vec<u32>> = HashMap::new();
    let mut scratch = Vec::new();
    for (col, s) in fc.simplices.iter().enumerate() {
        if s.dim() != dim || cleared[col] {
            continue;
        }
        let mut column: Vec<u32> = fc.facets_of(col).to_vec();
        column.sort_unstable();
        while let Some(&low) = column.last() {
            match pivot_of_row.get(&low) {
                Some(&other) => add_into(&mut column, &reduced[&other], &mut scratch),
                None => break,
            }
        }
        if let Some(&low) = column.last() {
            pivot_of_row.insert(low, col as u32);
            reduced.insert(col as u32, column);
        }
    }
    pivot_of_row
}

/// Barcode in `degree` (0 or 1) by boundary-matrix reduction. Columns of
/// dimension `degree + 1` are reduced first; their pivots are cleared
/// before reducing dimension `degree`.
pub fn reduce(fc: &FilteredComplex, degree: usize) -> Result<Barcode> {
    check_degree(degree)?;
    let n = fc.len();
    let killers = reduce_dimension(fc, degree + 1, &vec![false; n]);
    let mut cleared = vec![false; n];
    for &row in killers.keys() {
        cleared[row as usize] = true;
    }
    // a degree-dimensional simplex is negative iff its column survives
    let negative: Vec<bool> = if degree == 0 {
        vec![false; n]
    } else {
        let lower = reduce_dimension(fc, degree, &cleared);
        let mut neg = vec![false; n];
        for &col in lower.values() {
            neg[col as usize] = true;
        }
        neg
    };
    let mut bars = Vec::new();
    for (i, s) in fc.simplices.iter().enumerate() {
        if s.dim() != degree || negative[i] {
            continue;
        }
        let death = killers
            .get(&(i as u32))
            .map_or(f64::INFINITY, |&c| fc.appearance[c as usize]);
        bars.push((fc.appearance[i], death));
    }
    Barcode::new(degree, bars)
}

/// Degree-0 barcode by union-find with the elder rule. Produces the same
/// pairing as [`reduce`] for degree 0, in near-linear time.
pub fn reduce_h0(fc: &FilteredComplex) -> Barcode {
    let n = fc.len();
    let mut parent: Vec<u32> = (0..n as u32).collect();
    fn find(parent: &mut [u32], mut x: u32) -> u32 {
        while parent[x as usize] != x {
            let p = parent[x as usize];
            parent[x as usize] = parent[p as usize];
            x = p;
        }
        x
    }
    // roots are always the oldest vertex position of their component
    let mut death = vec![f64::INFINITY; n];
    for i in 0..n {
        if fc.simplices[i].dim() != 1 {
            continue;
        }
        let f = fc.facets_of(i);
        let (a, b) = (find(&mut parent, f[0]), find(&mut parent, f[1]));
        if a == b {
            continue;
        }
        let (elder, younger) = if a < b { (a, b) } else { (b, a) };
        parent[younger as usize] = elder;
        death[younger as usize] = fc.appearance[i];
    }
    let bars = (0..n)
        .filter(|&i| fc.simplices[i].dim() == 0)
        .map(|i| (fc.appearance[i], death[i]));
    Barcode::new(0, bars).expect("deaths follow births in filtration order")
}

/// Largest complex [`oracle_barcode`] accepts.
pub const ORACLE_MAX_SIMPLICES: usize = 64;

/// Barcode from persistent Betti numbers
/// `beta(s, t) = rank(H(X_s) -> H(X_t)) = dim(Z_s + B_t) - dim(B_t)`,
/// evaluated at every pair of distinct filtration values and turned into
/// bar multiplicities by inclusion-exclusion.
pub fn oracle_barcode(fc: &FilteredComplex, degree: usize) -> Result<Barcode> {
    check_degree(degree)?;
    let n = fc.len();
    if n > ORACLE_MAX_SIMPLICES {
        return Err(Error::TooLarge(format!(
            "{n} simplices, oracle accepts at most {ORACLE_MAX_SIMPLICES}"
        )));
    }
    fc.check_invariants()?;
    if n == 0 {
        return Barcode::new(degree, []);
    }
    let mut values: Vec<f64> = fc.appearance.clone();
    values.dedup();
    let m = values.len();

    let boundary = |i: usize| -> u64 {
        fc.facets_of(i).iter().fold(0u64, |acc, &p| acc | 1u64 << p)
    };
    let present = |i: usize, s: usize| fc.appearance[i] <= values[s];

    // cycle space of the degree-chains present at each step
    let cycles: Vec<Vec<u64>> = (0..m)
        .map(|s| {
            let cols: Vec<(u64, u64)> = (0..n)
                .filter(|&i| fc.simplices[i].dim() == degree && present(i, s))
                .map(|i| (boundary(i), 1u64 << i))
                .collect();
            kernel(cols)
        })
        .collect();
    let boundaries: Vec<Vec<u64>> = (0..m)
        .map(|t| {
            (0..n)
                .filter(|&i| fc.simplices[i].dim() == degree + 1 && present(i, t))
                .map(boundary)
                .collect()
        })
        .collect();

    let mut beta = vec![vec![0i64; m]; m];
    for s in 0..m {
        for t in s..m {
            let b = rank(boundaries[t].clone());
            let zb = rank(cycles[s].iter().chain(&boundaries[t]).copied().collect());
            beta[s][t] = (zb - b) as i64;
        }
    }
    let b = |s: isize, t: usize| if s < 0 { 0 } else { beta[s as usize][t] };

    let mut bars = Vec::new();
    for i in 0..m {
        let si = i as isize;
        for j in i + 1..m {
            let mult = b(si, j - 1) - b(si, j) - b(si - 1, j - 1) + b(si - 1, j);
            if mult < 0 {
                return Err(Error::Internal("negative bar multiplicity".into()));
            }
            bars.extend(std::iter::repeat_n((values[i], values[j]), mult as usize));
        }
        let mult = b(si, m - 1) - b(si - 1, m - 1);
        if mult < 0 {
            return Err(Error::Internal("negative bar multiplicity".into()));
        }
        bars.extend(std::iter::repeat_n((values[i], f64::INFINITY), mult as usize));
    }
    Barcode::new(degree, bars)
}

fn rank(mut vectors: Vec<u64>) -> usize {
    let mut basis: [u64; 64] = [0; 64];
    let mut r = 0;
    for v in vectors.iter_mut() {
        let mut x = *v;
        while x != 0 {
            let hi = 63 - x.leading_zeros() as usize;
            if basis[hi] == 0 {
                basis[hi] = x;
                r += 1;
                break;
            }
            x ^= basis[hi];
        }
    }
    r
}

// Basis of the kernel of the map sending each chain to its boundary.
// Input pairs are (boundary, chain); the chain side is tracked through
// elimination.
fn kernel(cols: Vec<(u64, u64)>) -> Vec<u64> {
    let mut pivots: [(u64, u64); 64] = [(0, 0); 64];
    let mut out = Vec::new();
    for (mut bd, mut chain) in cols {
        loop {
            if bd == 0 {
                out.push(chain);
                break;
            }
            let hi = 63 - bd.leading_zeros() as usize;
            if pivots[hi].0 == 0 {
                pivots[hi] = (bd, chain);
                break;
            }
            bd ^= pivots[hi].0;
            chain ^= pivots[hi].1;
        }
    }
    out
}
