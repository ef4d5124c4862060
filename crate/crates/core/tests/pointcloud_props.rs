mod common;

use bipersist::pointcloud::{read_csv_from, write_csv_to};
use bipersist::{add_noise, knn_density, two_circles, CircleSpec, Error, PointCloud};
use common::rng;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn cloud_strategy() -> impl Strategy<Value = PointCloud> {
    prop::collection::vec((-50.0f64..50.0, -50.0f64..50.0), 2..30)
        .prop_map(|xy| PointCloud::from_xy(&xy).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn knn_is_permutation_equivariant(cloud in cloud_strategy(), seed in any::<u64>()) {
        let n = cloud.len();
        let k = 1 + seed as usize % (n - 1);
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng(seed));
        let permuted = PointCloud::new(order.iter().map(|&i| cloud.points()[i]).collect()).unwrap();
        let a = knn_density(&cloud, k).unwrap();
        let b = knn_density(&permuted, k).unwrap();
        for (j, &i) in order.iter().enumerate() {
            prop_assert_eq!(a.densities().unwrap()[i], b.densities().unwrap()[j]);
        }
    }

    #[test]
    fn knn_is_monotone_in_k(cloud in cloud_strategy()) {
        let n = cloud.len();
        let mut prev = vec![0.0; n];
        for k in 1..n {
            let d = knn_density(&cloud, k).unwrap();
            for (p, &x) in prev.iter_mut().zip(d.densities().unwrap()) {
                prop_assert!(x >= *p);
                *p = x;
            }
        }
    }

    #[test]
    fn zero_noise_is_identity(cloud in cloud_strategy(), seed in any::<u64>(), f in 0.0f64..=1.0) {
        prop_assert_eq!(&add_noise(&cloud, f, 0.0, seed).unwrap(), &cloud);
        prop_assert_eq!(&add_noise(&cloud, 0.0, 3.0, seed).unwrap(), &cloud);
    }

    #[test]
    fn noise_moves_the_requested_points(cloud in cloud_strategy(), seed in any::<u64>(), f in 0.0f64..=1.0, m in 0.01f64..2.0) {
        let noisy = add_noise(&cloud, f, m, seed).unwrap();
        let moved: Vec<f64> = cloud
            .points()
            .iter()
            .zip(noisy.points())
            .map(|(a, b)| a.dist(b))
            .filter(|&d| d > 0.0)
            .collect();
        prop_assert!(moved.len() <= (f * cloud.len() as f64).round() as usize);
        prop_assert!(moved.iter().all(|&d| d <= m * (1.0 + 1e-12)));
    }

    #[test]
    fn csv_round_trip(cloud in cloud_strategy(), with_density in any::<bool>(), seed in any::<u64>()) {
        let cloud = if with_density {
            let mut r = rng(seed);
            let d = (0..cloud.len()).map(|_| r.gen_range(-5.0..5.0)).collect();
            cloud.set_density(d).unwrap()
        } else {
            cloud
        };
        let mut buf = Vec::new();
        write_csv_to(&cloud, &mut buf).unwrap();
        prop_assert_eq!(read_csv_from(buf.as_slice(), "mem".as_ref()).unwrap(), cloud);
    }

    #[test]
    fn circle_points_lie_on_circles(seed in any::<u64>(), r in 0.1f64..5.0, d in 0.0f64..10.0) {
        let spec = CircleSpec::new(r, d, 25, seed).unwrap();
        let cloud = two_circles(&spec).unwrap();
        let [c1, c2] = spec.centers();
        for (i, p) in cloud.points().iter().enumerate() {
            let c = if i < 25 { c1 } else { c2 };
            prop_assert!((p.dist(&c) - r).abs() < 1e-9);
        }
    }
}

#[test]
fn knn_rejects_bad_k() {
    let cloud = PointCloud::from_xy(&[(0.0, 0.0), (1.0, 0.0), (3.0, 0.0)]).unwrap();
    assert!(matches!(knn_density(&cloud, 0), Err(Error::InvalidArgument(_))));
    assert!(matches!(knn_density(&cloud, 3), Err(Error::InvalidArgument(_))));
    assert_eq!(knn_density(&cloud, 2).unwrap().densities().unwrap(), &[3.0, 2.0, 3.0]);
}

#[test]
fn parse_errors_carry_line_numbers() {
    let text = "# header\n0,0\n1,x\n";
    match read_csv_from(text.as_bytes(), "pts.csv".as_ref()) {
        Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
        other => panic!("expected parse error, got {other:?}"),
    }
    assert!(read_csv_from("0,0\n1,1,1\n".as_bytes(), "p".as_ref()).is_err());
    assert!(read_csv_from("0,inf\n".as_bytes(), "p".as_ref()).is_err());
}

#[test]
fn same_seed_same_cloud() {
    let spec = CircleSpec::new(3.0, 2.0, 40, 9).unwrap();
    assert_eq!(two_circles(&spec).unwrap(), two_circles(&spec).unwrap());
    let other = CircleSpec { seed: 10, ..spec };
    assert_ne!(two_circles(&spec).unwrap(), two_circles(&other).unwrap());
}
