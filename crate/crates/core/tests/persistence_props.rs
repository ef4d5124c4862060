mod common;

use bipersist::persistence::{oracle_barcode, reduce, reduce_h0, FilteredComplex};
use bipersist::Simplex;
use common::{random_filtered_complex, rng, sorted_bars};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduction_matches_rank_oracle(seed in any::<u64>()) {
        let fc = random_filtered_complex(&mut rng(seed), 8, 64);
        for degree in [0, 1] {
            let fast = reduce(&fc, degree).unwrap();
            let slow = oracle_barcode(&fc, degree).unwrap();
            prop_assert_eq!(sorted_bars(fast.bars()), sorted_bars(slow.bars()));
        }
    }

    #[test]
    fn union_find_matches_reduction(seed in any::<u64>()) {
        let fc = random_filtered_complex(&mut rng(seed), 10, 200);
        prop_assert_eq!(reduce_h0(&fc), reduce(&fc, 0).unwrap());
    }

    #[test]
    fn h0_has_one_essential_bar_per_component(seed in any::<u64>()) {
        let fc = random_filtered_complex(&mut rng(seed), 10, 200);
        let vertices = fc.simplices().iter().filter(|s| s.dim() == 0).count();
        // components of the final complex, counted independently
        let mut label: Vec<usize> = (0..fc.len()).collect();
        let edges: Vec<(usize, usize)> = (0..fc.len())
            .filter(|&i| fc.simplices()[i].dim() == 1)
            .map(|i| (fc.facets_of(i)[0] as usize, fc.facets_of(i)[1] as usize))
            .collect();
        let mut changed = true;
        while changed {
            changed = false;
            for &(a, b) in &edges {
                let m = label[a].min(label[b]);
                if label[a] != m || label[b] != m {
                    label[a] = m;
                    label[b] = m;
                    changed = true;
                }
            }
        }
        let components = (0..fc.len())
            .filter(|&i| fc.simplices()[i].dim() == 0 && label[i] == i)
            .count();
        let h0 = reduce(&fc, 0).unwrap();
        prop_assert_eq!(h0.infinite_count(), components);
        // zero-length bars are dropped, so at most one bar per vertex
        prop_assert!(h0.len() <= vertices);
    }

    // essential classes of the final complex satisfy the Euler relation
    #[test]
    fn rank_nullity(seed in any::<u64>()) {
        let fc = random_filtered_complex(&mut rng(seed), 8, 64);
        let count = |d: usize| fc.simplices().iter().filter(|s| s.dim() == d).count() as i64;
        let b0 = reduce(&fc, 0).unwrap().infinite_count() as i64;
        let b1 = reduce(&fc, 1).unwrap().infinite_count() as i64;
        // no 3-simplices, so H2 is the kernel of the triangle boundary
        let b2 = h2_dimension(&fc);
        prop_assert_eq!(b0 - b1 + b2, count(0) - count(1) + count(2));
    }

    #[test]
    fn tie_order_does_not_change_bars(seed in any::<u64>(), shift in 0u32..5) {
        let fc = random_filtered_complex(&mut rng(seed), 8, 64);
        // relabel vertices: breaks ties among equal values differently
        let n = fc.simplices().iter().filter(|s| s.dim() == 0).count() as u32;
        let entries: Vec<(Simplex, f64)> = fc
            .simplices()
            .iter()
            .zip(fc.appearance())
            .map(|(s, &a)| {
                let mut v: Vec<u32> = s.vertices().iter().map(|&x| (x + shift) % n.max(1)).collect();
                v.sort_unstable();
                (Simplex::new(&v).unwrap(), a)
            })
            .collect();
        prop_assume!(vertices_dense(&fc, n));
        let relabeled = FilteredComplex::new(entries).unwrap();
        for degree in [0, 1] {
            prop_assert_eq!(
                sorted_bars(reduce(&fc, degree).unwrap().bars()),
                sorted_bars(reduce(&relabeled, degree).unwrap().bars())
            );
        }
    }
}

fn vertices_dense(fc: &FilteredComplex, n: u32) -> bool {
    fc.simplices().iter().filter(|s| s.dim() == 0).all(|s| s.vertices()[0] < n)
}

/// Dimension of the kernel of the triangle boundary map over GF(2), by
/// Gaussian elimination on the edge-incidence vectors.
fn h2_dimension(fc: &FilteredComplex) -> i64 {
    let mut rows: Vec<u128> = (0..fc.len())
        .filter(|&i| fc.simplices()[i].dim() == 2)
        .map(|i| fc.facets_of(i).iter().fold(0u128, |acc, &p| acc | 1u128 << p))
        .collect();
    let total = rows.len() as i64;
    let mut rank = 0;
    for bit in 0..128 {
        if let Some(p) = (rank..rows.len()).find(|&r| rows[r] >> bit & 1 == 1) {
            rows.swap(rank, p);
            for r in 0..rows.len() {
                if r != rank && rows[r] >> bit & 1 == 1 {
                    rows[r] ^= rows[rank];
                }
            }
            rank += 1;
        }
    }
    total - rank as i64
}

#[test]
fn filled_triangle_has_no_h1() {
    let fc = FilteredComplex::new(vec![
        (Simplex::vertex(0), 0.0),
        (Simplex::vertex(1), 0.0),
        (Simplex::vertex(2), 0.0),
        (Simplex::edge(0, 1), 1.0),
        (Simplex::edge(1, 2), 1.0),
        (Simplex::edge(0, 2), 2.0),
        (Simplex::triangle(0, 1, 2), 3.0),
    ])
    .unwrap();
    assert_eq!(sorted_bars(reduce(&fc, 1).unwrap().bars()), vec![(2.0, 3.0)]);
    assert_eq!(
        sorted_bars(reduce(&fc, 0).unwrap().bars()),
        vec![(0.0, 1.0), (0.0, 1.0), (0.0, f64::INFINITY)]
    );
}

#[test]
fn rejects_missing_face() {
    assert!(FilteredComplex::new(vec![(Simplex::vertex(0), 0.0), (Simplex::edge(0, 1), 1.0)]).is_err());
}
