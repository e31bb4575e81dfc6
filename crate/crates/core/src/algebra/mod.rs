//! Coxeter matrices, the exact scalar field, roots, reflections, group
//! elements and diagram classification.

pub mod diagram;
pub mod field;
pub mod matrix;
pub mod system;

pub use diagram::{
    classify_component_type, components, diagram_type, max_finite_order, parabolic_order, spherical_subsets,
    ComponentType, DiagramType,
};
pub use field::{Field, Scalar};
pub use matrix::{catalog, validate_matrix, CoxeterMatrix};
pub use system::{CoxeterSystem, GroupElement, Mat, Root};
