//! Two-parameter persistent homology of planar point clouds.
//!
//! The pipeline is:
//!
//! 1. build or load a [`PointCloud`] and attach a density value to every
//!    point ([`knn_density`] or [`set_density`]);
//! 2. build the density-Rips [`BifilteredComplex`]; each simplex carries the
//!    bigrade `(density, scale)` at which it enters;
//! 3. restrict the complex to a positive-slope [`Line`] to get a
//!    one-parameter filtration and its barcode ([`fibered_barcode`]);
//! 4. compare two complexes with the slope-weighted [`matching_distance`],
//!    the maximum over a grid of lines of weighted bottleneck distances.
//!
//! The [`experiments`] module reproduces the three-point and two-circle
//! studies on top of these pieces.

pub mod bifiltration;
pub mod distances;
pub mod error;
pub mod experiments;
pub mod persistence;
pub mod pointcloud;
pub mod slicing;

pub use bifiltration::{build_density_rips, grade_axes, BifilteredComplex, Bigrade, Simplex};
pub use distances::{
    bottleneck, line_grid, matching_distance, normalize_pair, weight, Diagram, MatchConfig,
    MatchResult,
};
pub use error::{Error, Result};
pub use persistence::{oracle_barcode, reduce, Barcode, BarcodeEntry, FilteredComplex};
pub use pointcloud::{
    add_noise, knn_density, read_csv, set_density, three_point, two_circles, write_csv,
    CircleSpec, Point2, PointCloud,
};
pub use slicing::{fibered_barcode, push, slice, Line};
