//! A desk-scale model of the Niblo-Reeves cube complex: vertices as finite
//! flip sets, cubes, cubical chambers, distances to the Cayley graph, the
//! constants K and A, `σ(T)` and `𝒯(c)`, 2-spherical reflection subgroups up
//! to conjugacy, and the co-Hopf test.

mod bounds;
mod classes;
mod complex;
mod deep;
mod tuples;

pub use bounds::{bound_a, constant_k, DepthBound, KReport};
pub use classes::{co_hopf, enumerate_2spherical_classes, ClassReport, CoHopf, SphericalClass};
pub use complex::{vertex_valid, CayleyDistance, Cube, CubeCell, Flips, VertexSpace, DEFAULT_VERTEX_CAP};
pub use deep::{check_deep_cube_affine, DeepCubeReport};
pub use tuples::{sigma_of_tuple, tuples_of_cube, SigmaReport, TuplesReport};
