//! Zonotopes, generating measures, support functions and Wulff shapes.

pub mod approx;
pub mod directed;
pub mod hausdorff;
pub mod measure;
pub mod polygon;
pub mod wulff;
pub mod zonotope;

pub use approx::{approximate_zonoid, ApproxOptions, ApproxResult, ZonoidTarget};
pub use directed::directed_wulff;
pub use hausdorff::{hausdorff_distance, hausdorff_distance_on, sample_directions};
pub use measure::{
    measure_from_exact_zonotope, measure_from_zonotope, zonotope_from_measure, AtomWeight,
    GeneratingMeasure, MeasureAtom,
};
pub use polygon::{perimeter_energy_polygon, ConvexPolygon};
pub use wulff::wulff_shape_2d;
pub use zonotope::Zonotope;

/// Convex body known through its support function.
pub trait ConvexBody {
    fn dim(&self) -> usize;
    fn support(&self, z: &[f64]) -> f64;
    /// A point of the body maximizing `⟨z, ·⟩`.
    fn support_point(&self, z: &[f64]) -> Vec<f64>;
    /// Outward edge normals (any length) of a planar body.
    fn edge_normals_2d(&self) -> Vec<[f64; 2]>;
}

/// Support function of the zonotope `[-w_1, w_1] + …`.
pub fn support_function<T: crate::num::Scalar>(z: &Zonotope<T>, x: &[T]) -> T {
    z.support(x)
}
