//! Rips barcode of a five-point cloud, then fibered barcodes of a
//! density-Rips complex along a few lines.
//!
//! cargo run --example fibered_barcode

use bipersist::{build_density_rips, fibered_barcode, Line, PointCloud};

fn main() -> bipersist::Result<()> {
    // constant density: the 45 degree line through the origin recovers the
    // ordinary Rips filtration, stretched by sqrt(2)
    let cloud = PointCloud::from_xy(&[(-9.0, 1.0), (-9.0, 2.0), (-7.0, 1.0), (-8.0, 6.0), (-4.0, 4.0)])?
        .set_density(vec![0.0; 5])?;
    let complex = build_density_rips(&cloud, 2, None)?;
    let diagonal = Line::new(45.0, 0.0)?;
    for degree in [0, 1] {
        let barcode = fibered_barcode(&complex, &diagonal, degree)?;
        println!("H{degree}: {} bars", barcode.len());
        for (b, d) in barcode.bars() {
            println!("  [{:.4}, {:.4})", b / 2f64.sqrt(), d / 2f64.sqrt());
        }
    }

    // three points with densities (1, 2, 1): the barcode depends on the line
    let cloud = bipersist::three_point(2.0, 3.0)?.set_density(vec![1.0, 2.0, 1.0])?;
    let complex = build_density_rips(&cloud, 2, None)?;
    print!("{}", complex.dump());
    for (angle, offset) in [(20.0, 0.0), (45.0, 0.0), (70.0, 0.5)] {
        let barcode = fibered_barcode(&complex, &Line::new(angle, offset)?, 0)?;
        println!("angle {angle:>4} offset {offset:>4}: {}", barcode.to_json());
    }
    Ok(())
}
