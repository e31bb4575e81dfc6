use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::{CoxeterMatrix, CoxeterSystem, Root, Scalar};
use crate::error::{Error, Result};

pub const DEFAULT_ROOT_CAP: usize = 100_000;

/// Positive roots up to a depth limit, indexed in BFS order (by depth, then
/// discovery order).
#[derive(Clone, Debug)]
pub struct RootInventory {
    system: Arc<CoxeterSystem>,
    depth_limit: usize,
    roots: Vec<Root>,
    depths: Vec<usize>,
    index: HashMap<Root, usize>,
    /// `table[i][s]`: index of `s · roots[i]`, `None` when it is negative
    /// (`roots[i] = e_s`) or deeper than the limit.
    table: Vec<Vec<Option<usize>>>,
    complete: bool,
}

pub fn enumerate_roots(matrix: &CoxeterMatrix, depth_limit: usize) -> Result<RootInventory> {
    RootInventory::build(Arc::new(CoxeterSystem::new(matrix.clone())), depth_limit, DEFAULT_ROOT_CAP)
}

impl RootInventory {
    pub fn build(system: Arc<CoxeterSystem>, depth_limit: usize, cap: usize) -> Result<RootInventory> {
        if depth_limit == 0 {
            return Err(Error::BadParameters("depth limit must be at least 1".into()));
        }
        let n = system.rank();
        let mut roots: Vec<Root> = system.simple_roots();
        let mut depths = vec![1; n];
        let mut index: HashMap<Root, usize> = roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        let mut table: Vec<Vec<Option<usize>>> = vec![vec![None; n]; n];
        let mut layer: Vec<usize> = (0..n).collect();
        let mut depth = 1;
        loop {
            let mut next = Vec::new();
            for &i in &layer {
                for s in 0..n {
                    if system.simple_index(&roots[i]) == Some(s) {
                        continue;
                    }
                    let c = system.form_simple(&roots[i], s);
                    if c.is_zero() {
                        table[i][s] = Some(i);
                        continue;
                    }
                    let image = system.reflect_simple(s, &roots[i]);
                    if c.is_positive() {
                        let j = *index
                            .get(&image)
                            .ok_or_else(|| Error::InvariantViolation("descent image missing from inventory".into()))?;
                        table[i][s] = Some(j);
                        continue;
                    }
                    if depth == depth_limit {
                        continue;
                    }
                    let j = match index.get(&image) {
                        Some(&j) => j,
                        None => {
                            let j = roots.len();
                            if j >= cap {
                                return Err(Error::ResourceLimit(format!("more than {cap} roots")));
                            }
                            index.insert(image.clone(), j);
                            roots.push(image);
                            depths.push(depth + 1);
                            table.push(vec![None; n]);
                            next.push(j);
                            j
                        }
                    };
                    table[i][s] = Some(j);
                }
            }
            if next.is_empty() {
                let complete = depth < depth_limit || layer_is_closed(&system, &roots, &layer);
                return Ok(RootInventory { system, depth_limit, roots, depths, index, table, complete });
            }
            layer = next;
            depth += 1;
        }
    }

    pub fn system(&self) -> &Arc<CoxeterSystem> {
        &self.system
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        self.system.matrix()
    }

    pub fn rank(&self) -> usize {
        self.system.rank()
    }

    pub fn depth_limit(&self) -> usize {
        self.depth_limit
    }

    /// True when the whole (finite) root system is present.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn root(&self, i: usize) -> &Root {
        &self.roots[i]
    }

    pub fn depth_of(&self, i: usize) -> usize {
        self.depths[i]
    }

    /// Largest depth present.
    pub fn max_depth(&self) -> usize {
        self.depths.last().copied().unwrap_or(0)
    }

    pub fn index_of(&self, a: &Root) -> Option<usize> {
        self.index.get(a).copied()
    }

    /// Index of the positive representative and whether `a` itself is positive.
    pub fn signed_index(&self, a: &Root) -> Option<(usize, bool)> {
        if a.is_positive() {
            self.index_of(a).map(|i| (i, true))
        } else {
            self.index_of(&-a).map(|i| (i, false))
        }
    }

    pub fn reflect_index(&self, i: usize, s: usize) -> Option<usize> {
        self.table[i][s]
    }

    /// Indices with depth at most `d`.
    pub fn up_to_depth(&self, d: usize) -> std::ops::Range<usize> {
        0..self.depths.partition_point(|&x| x <= d)
    }

    pub fn form(&self, i: usize, j: usize) -> Scalar {
        self.system.form(&self.roots[i], &self.roots[j])
    }
}

/// A final layer at the depth limit is closed when no generator raises depth.
fn layer_is_closed(system: &CoxeterSystem, roots: &[Root], layer: &[usize]) -> bool {
    layer.iter().all(|&i| (0..system.rank()).all(|s| !system.form_simple(&roots[i], s).is_negative()))
}

pub fn root_depth(inv: &RootInventory, a: &Root) -> Result<usize> {
    if !a.is_positive() {
        return Err(Error::PreconditionFailed("depth is defined for positive roots".into()));
    }
    inv.index_of(a).map(|i| inv.depth_of(i)).ok_or(Error::OutOfInventory)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog;

    #[test]
    fn a2_stabilizes() {
        let inv = enumerate_roots(&catalog::a(2), 10).unwrap();
        assert_eq!(inv.len(), 3);
        assert!(inv.is_complete());
    }

    #[test]
    fn affine_a1_to_depth_three() {
        let inv = enumerate_roots(&catalog::affine_a(1), 3).unwrap();
        let sys = inv.system().clone();
        let mut got: Vec<Root> = inv.roots().to_vec();
        got.sort_by_key(|r| format!("{r}"));
        let mut want: Vec<Root> =
            [[1, 0], [0, 1], [1, 2], [2, 1], [2, 3], [3, 2]].iter().map(|c| sys.vector_from_ints(c)).collect();
        want.sort_by_key(|r| format!("{r}"));
        assert_eq!(got, want);
        assert!(!inv.is_complete());
        assert_eq!(root_depth(&inv, &sys.vector_from_ints(&[0, 1])), Ok(1));
        assert_eq!(root_depth(&inv, &sys.vector_from_ints(&[1, 2])), Ok(2));
        assert_eq!(root_depth(&inv, &sys.vector_from_ints(&[2, 3])), Ok(3));
        assert_eq!(root_depth(&inv, &sys.vector_from_ints(&[3, 4])), Err(Error::OutOfInventory));
    }

    #[test]
    fn h3_has_fifteen() {
        let inv = enumerate_roots(&catalog::h3(), 100).unwrap();
        assert_eq!(inv.len(), 15);
        assert!(inv.is_complete());
    }

    #[test]
    fn cap_is_enforced() {
        let sys = Arc::new(CoxeterSystem::new(catalog::triangle(0, 0, 0)));
        assert!(matches!(RootInventory::build(sys, 30, 500), Err(Error::ResourceLimit(_))));
    }
}
