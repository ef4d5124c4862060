//! Generating, perturbing, annotating and saving point clouds.
//!
//! cargo run --example point_clouds

use bipersist::pointcloud::{read_csv_from, write_csv_to};
use bipersist::{add_noise, knn_density, two_circles, CircleSpec};

fn main() -> bipersist::Result<()> {
    let spec = CircleSpec::new(1.0, 0.5, 8, 3)?;
    let cloud = two_circles(&spec)?;
    let noisy = add_noise(&cloud, 0.25, 0.1, 4)?;
    let moved = cloud.points().iter().zip(noisy.points()).filter(|(a, b)| a != b).count();
    println!("{} points, {moved} displaced", cloud.len());

    let with_density = knn_density(&noisy, 3)?;
    let mut buf = Vec::new();
    write_csv_to(&with_density, &mut buf)?;
    print!("{}", String::from_utf8_lossy(&buf));

    let back = read_csv_from(buf.as_slice(), "memory".as_ref())?;
    assert_eq!(back, with_density);
    println!("round trip ok");
    Ok(())
}
