//! Bottleneck distance between persistence diagrams.
//!
//! cargo run --example bottleneck

use bipersist::distances::bottleneck::{bottleneck, Diagram};
use bipersist::Barcode;

fn main() -> bipersist::Result<()> {
    let a = Diagram::new(vec![(0.0, 4.0), (1.0, 2.0), (0.0, f64::INFINITY)])?;
    let b = Diagram::new(vec![(0.5, 4.5), (0.0, f64::INFINITY)])?;
    // (0,4) -> (0.5,4.5) costs 0.5; (1,2) goes to the diagonal at cost 0.5
    println!("d_B(a, b) = {}", bottleneck(&a, &b));

    let c = Diagram::new(vec![(0.0, 4.0)])?;
    println!("essential-class mismatch: {}", bottleneck(&a, &c));

    // barcodes round-trip through the JSON format used by the CLI
    let barcode = Barcode::from_json(r#"{"degree":1,"bars":[[0.25,1.5],[2.0,null]]}"#)?;
    println!("{} -> {:?}", barcode.to_json(), Diagram::from(&barcode).points());
    Ok(())
}
