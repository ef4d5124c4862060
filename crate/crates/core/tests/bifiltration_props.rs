mod common;

use std::collections::BTreeSet;

use bipersist::{build_density_rips, BifilteredComplex, Bigrade, PointCloud, Simplex};
use common::{random_cloud, rng};
use proptest::prelude::*;
use rand::seq::SliceRandom;

fn grade_multisets(c: &BifilteredComplex) -> [Vec<(u64, u64)>; 3] {
    let mut out: [Vec<(u64, u64)>; 3] = Default::default();
    for (s, g) in c.iter() {
        out[s.dim()].push((g.density.to_bits(), g.scale.to_bits()));
    }
    for v in &mut out {
        v.sort_unstable();
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closed_and_monotone(seed in any::<u64>(), n in 1usize..12) {
        let cloud = random_cloud(&mut rng(seed), n);
        let c = build_density_rips(&cloud, 2, None).unwrap();
        let index: std::collections::HashMap<Simplex, Bigrade> =
            c.iter().map(|(s, g)| (*s, *g)).collect();
        for (s, g) in c.iter() {
            for f in s.facets() {
                let fg = index.get(&f);
                prop_assert!(fg.is_some(), "missing face {:?} of {:?}", f, s);
                prop_assert!(fg.unwrap().le(g));
            }
        }
        let [v, e, t] = c.counts();
        prop_assert_eq!(v, n);
        prop_assert_eq!(e, n * n.saturating_sub(1) / 2);
        prop_assert_eq!(t, n * n.saturating_sub(1) * n.saturating_sub(2) / 6);
    }

    #[test]
    fn permutation_gives_isomorphic_complex(seed in any::<u64>(), n in 1usize..10) {
        let mut r = rng(seed);
        let cloud = random_cloud(&mut r, n);
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut r);
        let d = cloud.densities().unwrap();
        let permuted = PointCloud::with_densities(
            order.iter().map(|&i| cloud.points()[i]).collect(),
            order.iter().map(|&i| d[i]).collect(),
        )
        .unwrap();
        prop_assert_eq!(
            grade_multisets(&build_density_rips(&cloud, 2, None).unwrap()),
            grade_multisets(&build_density_rips(&permuted, 2, None).unwrap())
        );
    }

    #[test]
    fn constant_density_is_rips(seed in any::<u64>(), n in 2usize..10, eps in 0.0f64..12.0) {
        let cloud = random_cloud(&mut rng(seed), n).set_density(vec![0.5; n]).unwrap();
        let c = build_density_rips(&cloud, 2, None).unwrap();
        let p = cloud.points();
        let present: BTreeSet<Vec<u32>> = c
            .iter()
            .filter(|(_, g)| g.scale <= eps)
            .map(|(s, g)| {
                assert_eq!(g.density, 0.5);
                s.vertices().to_vec()
            })
            .collect();
        // brute-force Rips complex at eps
        let mut expected = BTreeSet::new();
        for i in 0..n as u32 {
            expected.insert(vec![i]);
            for j in i + 1..n as u32 {
                let dij = p[i as usize].dist(&p[j as usize]);
                if dij <= eps {
                    expected.insert(vec![i, j]);
                }
                for k in j + 1..n as u32 {
                    let ok = dij <= eps
                        && p[i as usize].dist(&p[k as usize]) <= eps
                        && p[j as usize].dist(&p[k as usize]) <= eps;
                    if ok {
                        expected.insert(vec![i, j, k]);
                    }
                }
            }
        }
        prop_assert_eq!(present, expected);
    }

    #[test]
    fn scale_cap_keeps_short_simplices(seed in any::<u64>(), n in 2usize..10, cap in 0.5f64..8.0) {
        let cloud = random_cloud(&mut rng(seed), n);
        let full = build_density_rips(&cloud, 2, None).unwrap();
        let capped = build_density_rips(&cloud, 2, Some(cap)).unwrap();
        let expect: Vec<_> = full.iter().filter(|(_, g)| g.scale <= cap).map(|(s, g)| (*s, *g)).collect();
        let got: Vec<_> = capped.iter().map(|(s, g)| (*s, *g)).collect();
        prop_assert_eq!(got, expect);
    }
}

#[test]
fn three_point_bigrades() {
    let cloud = bipersist::three_point(2.0, 3.0)
        .unwrap()
        .set_density(vec![1.0, 2.0, 1.0])
        .unwrap();
    let c = build_density_rips(&cloud, 2, None).unwrap();
    let grade = |v: &[u32]| {
        c.iter()
            .find(|(s, _)| s.vertices() == v)
            .map(|(_, g)| *g)
            .unwrap()
    };
    assert_eq!(grade(&[0]), Bigrade::new(1.0, 0.0));
    assert_eq!(grade(&[1]), Bigrade::new(2.0, 0.0));
    assert_eq!(grade(&[0, 2]), Bigrade::new(1.0, 5f64.sqrt()));
    assert_eq!(grade(&[0, 1]), Bigrade::new(2.0, 5.1));
    assert_eq!(grade(&[0, 1, 2]), Bigrade::new(2.0, 5.1));
}

#[test]
fn needs_densities() {
    let cloud = PointCloud::from_xy(&[(0.0, 0.0), (1.0, 0.0)]).unwrap();
    assert!(build_density_rips(&cloud, 2, None).is_err());
    let cloud = cloud.set_density(vec![0.0, 0.0]).unwrap();
    assert!(build_density_rips(&cloud, 3, None).is_err());
}
