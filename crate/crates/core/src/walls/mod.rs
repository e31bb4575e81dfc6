//! Roots as half-spaces: crossing and nesting, chamber sides, distances,
//! projections and separating walls.

mod ball;
mod halfspace;
mod space;

pub use ball::{ChamberBall, DEFAULT_CHAMBER_CAP};
pub use halfspace::{
    chamber_side, classify_wall_pair, depth_of, facing_away, positive_relation, strictly_inside, PairTable, Rel,
    WallPairClass,
};
pub use space::{
    distance_to_halfspace, project_to_halfspace, DihedralVerdict, HalfspaceDistance, QEstimate, Separation, Signed,
    WallSpace,
};
