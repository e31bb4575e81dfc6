use serde::Serialize;

use super::complex::{CayleyDistance, VertexSpace};
use crate::algebra::{ComponentType, DiagramType, Root};
use crate::error::Result;
use crate::roots::canonical_simple_system;

#[derive(Clone, Debug, Serialize)]
pub struct DeepCubeReport {
    pub walls: Vec<Root>,
    /// Distance from the intersection of the walls to the Cayley graph.
    pub distance: CayleyDistance,
    pub threshold: usize,
    /// The distance reaches the threshold, so the conclusion is checked.
    pub claimed: bool,
    pub components: Option<Vec<DiagramType>>,
    pub affine_rank3: Option<bool>,
}

/// When `⋂ walls` lies at least `threshold` from the Cayley graph, checks
/// that the canonical simple system of `W(walls)` has an affine component of
/// rank at least 3.
pub fn check_deep_cube_affine(vs: &VertexSpace, walls: &[usize], threshold: usize) -> Result<DeepCubeReport> {
    let inv = vs.space().inventory();
    let (distance, _) = vs.wall_set_distance(walls)?;
    let roots: Vec<Root> = walls.iter().map(|&i| inv.root(i).clone()).collect();
    let claimed = distance.distance >= threshold;
    let mut report =
        DeepCubeReport { walls: roots.clone(), distance, threshold, claimed, components: None, affine_rank3: None };
    if claimed {
        let cs = canonical_simple_system(inv, &roots)?;
        let types: Vec<DiagramType> = cs.components().into_iter().map(|c| c.1).collect();
        report.affine_rank3 = Some(types.iter().any(|t| t.kind == ComponentType::Affine && t.rank >= 3));
        report.components = Some(types);
    }
    Ok(report)
}
