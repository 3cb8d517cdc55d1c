//! Hecke degrees, characteristic polynomials, Newton polygons and the
//! projective boundedness predicate.

pub mod charpoly;
pub mod degree;
pub mod element;
pub mod exhecke;
pub mod newton;

pub use charpoly::char_poly;
pub use degree::{hecke_degree, standard_hecke_matrix};
pub use exhecke::exhecke_element;
pub use element::{
    projectively_bounded, spread_cross_check, unboundedness_sample_check, HeckeElement, SampleReport,
};
pub use newton::{newton_polygon, NewtonPolygon, Segment};
