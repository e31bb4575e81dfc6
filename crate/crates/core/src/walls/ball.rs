use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::algebra::{GroupElement, Root};
use crate::error::{Error, Result};
use crate::roots::RootInventory;

pub const DEFAULT_CHAMBER_CAP: usize = 200_000;

/// All chambers `wC` with `ℓ(w) ≤ radius`, in ShortLex order, each with the
/// set of walls (inventory indices) separating it from `C`.
#[derive(Clone, Debug)]
pub struct ChamberBall {
    radius: usize,
    elements: Vec<GroupElement>,
    index: HashMap<GroupElement, usize>,
    neighbors: Vec<Vec<Option<usize>>>,
    separators: Vec<FixedBitSet>,
    layer_starts: Vec<usize>,
}

impl ChamberBall {
    pub fn new(inv: &RootInventory, radius: usize) -> Result<ChamberBall> {
        ChamberBall::with_cap(inv, radius, DEFAULT_CHAMBER_CAP)
    }

    pub fn with_cap(inv: &RootInventory, radius: usize, cap: usize) -> Result<ChamberBall> {
        if radius > inv.depth_limit() && !inv.is_complete() {
            return Err(Error::DepthInsufficient(format!(
                "ball radius {radius} exceeds inventory depth {}",
                inv.depth_limit()
            )));
        }
        let sys = inv.system();
        let n = sys.rank();
        let nwalls = inv.len();
        let mut elements = vec![sys.identity()];
        let mut index = HashMap::new();
        index.insert(sys.identity(), 0);
        let mut neighbors = vec![vec![None; n]];
        let mut separators = vec![FixedBitSet::with_capacity(nwalls)];
        let mut layer_starts = vec![0];
        let mut start = 0;
        for _ in 0..radius {
            let end = elements.len();
            layer_starts.push(end);
            for i in start..end {
                for s in 0..n {
                    if neighbors[i][s].is_some() {
                        continue;
                    }
                    let w = &elements[i];
                    if !sys.is_right_ascent(w, s) {
                        continue;
                    }
                    let wall = w.matrix().column(s);
                    let k = inv
                        .index_of(&wall)
                        .ok_or_else(|| Error::InvariantViolation("separating wall missing from inventory".into()))?;
                    let next = sys.extend_unchecked(w, s);
                    let j = match index.get(&next) {
                        Some(&j) => j,
                        None => {
                            let j = elements.len();
                            if j >= cap {
                                return Err(Error::ResourceLimit(format!("more than {cap} chambers")));
                            }
                            let mut sep = separators[i].clone();
                            sep.insert(k);
                            index.insert(next.clone(), j);
                            elements.push(next);
                            neighbors.push(vec![None; n]);
                            separators.push(sep);
                            j
                        }
                    };
                    neighbors[i][s] = Some(j);
                    neighbors[j][s] = Some(i);
                }
            }
            start = end;
        }
        Ok(ChamberBall { radius, elements, index, neighbors, separators, layer_starts })
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &GroupElement {
        &self.elements[i]
    }

    pub fn index_of(&self, w: &GroupElement) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Neighbor across the `s`-panel, when inside the ball.
    pub fn neighbor(&self, i: usize, s: usize) -> Option<usize> {
        self.neighbors[i][s]
    }

    /// Walls separating `C` from chamber `i`.
    pub fn separators(&self, i: usize) -> &FixedBitSet {
        &self.separators[i]
    }

    /// Chambers of length exactly `k`.
    pub fn layer(&self, k: usize) -> std::ops::Range<usize> {
        let start = self.layer_starts.get(k).copied().unwrap_or(self.len());
        let end = self.layer_starts.get(k + 1).copied().unwrap_or(self.len());
        start..end
    }

    /// Number of walls separating chambers `i` and `j`.
    pub fn distance(&self, i: usize, j: usize) -> usize {
        self.separators[i].symmetric_difference(&self.separators[j]).count()
    }

    /// Whether chamber `i` lies in the half-space of inventory root `k` with
    /// the given sign.
    pub fn in_halfspace(&self, i: usize, (k, positive): (usize, bool)) -> bool {
        self.separators[i].contains(k) != positive
    }

    /// Side test for an arbitrary root.
    pub fn side(&self, i: usize, h: &Root) -> bool {
        super::chamber_side(&self.elements[i], h)
    }
}
