use std::collections::{BTreeSet, HashSet};

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::algebra::{CoxeterMatrix, GroupElement, Root};
use crate::error::{Error, Result};
use crate::roots::DEFAULT_ROOT_CAP;
use crate::walls::{Rel, WallSpace, DEFAULT_CHAMBER_CAP};

/// Default bound on the number of vertices or cubes enumerated.
pub const DEFAULT_VERTEX_CAP: usize = 2_000_000;

/// A vertex of the cube complex, given by the positive roots `β` on which it
/// chooses `-β` (its flips relative to the identity chamber).
pub type Flips = FixedBitSet;

/// A cube: the corner nearest the identity vertex and the walls through it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubeCell {
    pub corner: Flips,
    /// Inventory indices, ascending.
    pub walls: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cube {
    pub corner: Vec<Root>,
    pub walls: Vec<Root>,
}

/// Distance from a set of vertices (or an intersection of walls) to the
/// Cayley graph, with the first nearest chamber in ShortLex order.
#[derive(Clone, Debug, Serialize)]
pub struct CayleyDistance {
    pub distance: usize,
    pub nearest: GroupElement,
}

/// Vertices of the cube complex within a combinatorial radius of the
/// identity vertex, together with enough of the root system to decide
/// consistency exactly.
///
/// A vertex is a finite set `D` of positive roots. It is consistent when `D`
/// is closed under taking positive roots strictly inside a member and no two
/// members `β, β'` have `-β ∩ -β' = ∅`. The Cayley vertex `w` is
/// `D = N(w⁻¹)`, and the distance between vertices is `|D Δ D'|`.
#[derive(Clone, Debug)]
pub struct VertexSpace {
    space: WallSpace,
    radius: usize,
    inner: Vec<FixedBitSet>,
    opposite: Vec<FixedBitSet>,
    /// Roots with fewer than `radius` roots strictly inside.
    relevant: Vec<usize>,
}

impl VertexSpace {
    /// Builds a space deep enough that every vertex within `radius` uses only
    /// inventoried roots, and with a chamber ball of radius at least
    /// `2·radius`.
    ///
    /// A root with `k` roots strictly inside descends to a root with at most
    /// `k` inside, so the search stops at the first depth where no root has
    /// fewer than `radius` roots inside.
    pub fn new(matrix: &CoxeterMatrix, radius: usize) -> Result<VertexSpace> {
        VertexSpace::with_limits(matrix, radius, DEFAULT_ROOT_CAP, DEFAULT_CHAMBER_CAP)
    }

    pub fn with_limits(
        matrix: &CoxeterMatrix,
        radius: usize,
        root_cap: usize,
        chamber_cap: usize,
    ) -> Result<VertexSpace> {
        let mut depth = (2 * radius).max(4);
        loop {
            let space = WallSpace::with_limits(matrix, depth, root_cap, chamber_cap)?;
            let inv = space.inventory();
            let n = inv.len();
            let t = space.table();
            let mut inner = vec![FixedBitSet::with_capacity(n); n];
            let mut opposite = vec![FixedBitSet::with_capacity(n); n];
            for i in 0..n {
                for j in 0..n {
                    match t.rel(i, j) {
                        Rel::Inside if i != j => inner[j].insert(i),
                        Rel::Opposite if i != j => opposite[i].insert(j),
                        _ => {}
                    }
                }
            }
            let relevant: Vec<usize> = (0..n).filter(|&i| inner[i].count_ones(..) < radius).collect();
            let deepest = relevant.iter().map(|&i| inv.depth_of(i)).max().unwrap_or(0);
            if deepest < depth || inv.is_complete() {
                return Ok(VertexSpace { space, radius, inner, opposite, relevant });
            }
            depth += radius.max(2);
        }
    }

    pub fn space(&self) -> &WallSpace {
        &self.space
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len_roots(&self) -> usize {
        self.space.inventory().len()
    }

    pub fn empty(&self) -> Flips {
        FixedBitSet::with_capacity(self.len_roots())
    }

    pub fn inner(&self, i: usize) -> &FixedBitSet {
        &self.inner[i]
    }

    /// Consistency of a flip set.
    pub fn is_valid(&self, d: &Flips) -> bool {
        d.ones().all(|b| self.inner[b].is_subset(d) && self.opposite[b].is_disjoint(d))
    }

    /// Whether `b` may be flipped at the vertex `d` (moving away from the
    /// identity).
    pub fn addable(&self, d: &Flips, b: usize) -> bool {
        !d.contains(b) && self.inner[b].is_subset(d) && self.opposite[b].is_disjoint(d)
    }

    pub fn flips_from_roots(&self, roots: &[Root]) -> Result<Flips> {
        let mut d = self.empty();
        for r in roots {
            let i = self.space.inventory().index_of(&r.positive()).ok_or(Error::OutOfInventory)?;
            d.insert(i);
        }
        Ok(d)
    }

    pub fn roots_of(&self, d: &Flips) -> Vec<Root> {
        d.ones().map(|i| self.space.inventory().root(i).clone()).collect()
    }

    pub fn cube(&self, c: &CubeCell) -> Cube {
        Cube {
            corner: self.roots_of(&c.corner),
            walls: c.walls.iter().map(|&i| self.space.inventory().root(i).clone()).collect(),
        }
    }

    /// The Cayley vertex `w`: the walls separating `C` from `wC`.
    pub fn cayley_vertex(&self, w: &GroupElement) -> Result<Flips> {
        if let Some(i) = self.space.ball().index_of(w) {
            return Ok(self.space.ball().separators(i).clone());
        }
        let inv = self.space.inventory();
        let mut d = self.empty();
        for i in 0..inv.len() {
            if !w.act_inverse(inv.root(i)).is_positive() {
                d.insert(i);
            }
        }
        if d.count_ones(..) != w.length() {
            return Err(Error::OutOfInventory);
        }
        Ok(d)
    }

    /// `D(w·v) = N(w⁻¹) Δ {|wβ| : β ∈ D(v)}`.
    pub fn translate(&self, w: &GroupElement, d: &Flips) -> Result<Flips> {
        let inv = self.space.inventory();
        let mut out = self.cayley_vertex(w)?;
        for b in d.ones() {
            let image = w.act(inv.root(b)).positive();
            out.toggle(inv.index_of(&image).ok_or(Error::OutOfInventory)?);
        }
        Ok(out)
    }

    /// All consistent vertices with at most `radius` flips, ordered by size
    /// and then by flip set.
    pub fn vertices(&self) -> Result<Vec<Flips>> {
        let mut out = vec![self.empty()];
        let mut layer = vec![self.empty()];
        for _ in 0..self.radius {
            let mut next: HashSet<Flips> = HashSet::new();
            for d in &layer {
                for &b in &self.relevant {
                    if self.addable(d, b) {
                        let mut e = d.clone();
                        e.insert(b);
                        next.insert(e);
                    }
                }
            }
            if out.len() + next.len() > DEFAULT_VERTEX_CAP {
                return Err(Error::ResourceLimit(format!("more than {DEFAULT_VERTEX_CAP} vertices")));
            }
            let mut next: Vec<Flips> = next.into_iter().collect();
            next.sort_by_key(|d| d.ones().collect::<Vec<_>>());
            out.extend(next.iter().cloned());
            layer = next;
        }
        Ok(out)
    }

    /// All cubes whose vertices lie within the radius, by corner.
    pub fn cubes(&self, vertices: &[Flips]) -> Result<Vec<CubeCell>> {
        let t = self.space.table();
        let mut out = Vec::new();
        for d in vertices {
            let room = self.radius - d.count_ones(..);
            let cand: Vec<usize> = self.relevant.iter().copied().filter(|&b| self.addable(d, b)).collect();
            // every clique of the crossing graph on the addable walls
            let mut stack: Vec<(Vec<usize>, usize)> = vec![(Vec::new(), 0)];
            while let Some((clique, from)) = stack.pop() {
                if !clique.is_empty() {
                    out.push(CubeCell { corner: d.clone(), walls: clique.clone() });
                    if out.len() > DEFAULT_VERTEX_CAP {
                        return Err(Error::ResourceLimit(format!("more than {DEFAULT_VERTEX_CAP} cubes")));
                    }
                }
                if clique.len() == room {
                    continue;
                }
                for k in from..cand.len() {
                    let b = cand[k];
                    if clique.iter().all(|&a| t.crosses(a, b)) {
                        let mut c = clique.clone();
                        c.push(b);
                        stack.push((c, k + 1));
                    }
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// The vertices of a cube.
    pub fn cube_vertices(&self, c: &CubeCell) -> Vec<Flips> {
        let k = c.walls.len();
        (0..1usize << k)
            .map(|mask| {
                let mut d = c.corner.clone();
                for (bit, &w) in c.walls.iter().enumerate() {
                    if mask >> bit & 1 == 1 {
                        d.insert(w);
                    }
                }
                d
            })
            .collect()
    }

    /// Distance from a set of vertices to the Cayley graph, minimised over
    /// the chamber ball. Exact when every vertex has at most half the ball
    /// radius flips.
    pub fn cayley_distance(&self, vertices: &[Flips]) -> CayleyDistance {
        let ball = self.space.ball();
        let mut best = (usize::MAX, 0);
        for i in 0..ball.len() {
            let n = ball.separators(i);
            for d in vertices {
                let dist = d.symmetric_difference(n).count();
                if dist < best.0 {
                    best = (dist, i);
                }
            }
        }
        CayleyDistance { distance: best.0, nearest: ball.element(best.1).clone() }
    }

    /// The vertex of the carrier of `⋂ walls` nearest to `near`: walls
    /// parallel to a member of `walls` are oriented towards it, the others
    /// as in `near`.
    pub fn gate(&self, near: &Flips, walls: &[usize]) -> Flips {
        let t = self.space.table();
        let mut out = near.clone();
        for n in 0..self.len_roots() {
            if walls.contains(&n) {
                continue;
            }
            for &m in walls {
                let m_in = |s: bool| t.inside((m, true), (n, s)) || t.inside((m, false), (n, s));
                if m_in(true) {
                    out.set(n, false);
                    break;
                }
                if m_in(false) {
                    out.set(n, true);
                    break;
                }
            }
        }
        out
    }

    fn check_crossing(&self, walls: &[usize]) -> Result<()> {
        let t = self.space.table();
        for (k, &a) in walls.iter().enumerate() {
            for &b in &walls[k + 1..] {
                if !t.crosses(a, b) {
                    return Err(Error::NotPairwiseCrossing);
                }
            }
        }
        Ok(())
    }

    fn cell_at(&self, gate: &Flips, walls: &[usize]) -> Result<CubeCell> {
        let mut corner = gate.clone();
        for &m in walls {
            corner.set(m, false);
        }
        let cell = CubeCell { corner, walls: walls.to_vec() };
        if !self.cube_vertices(&cell).iter().all(|d| self.is_valid(d)) {
            return Err(Error::InvariantViolation("gate of pairwise crossing walls is not a cube".into()));
        }
        Ok(cell)
    }

    /// A cube with the given pairwise crossing walls, nearest to `near`.
    pub fn cube_from_pairwise(&self, walls: &[usize], near: &Flips, radius: usize) -> Result<(CubeCell, usize)> {
        let mut walls = walls.to_vec();
        walls.sort_unstable();
        walls.dedup();
        self.check_crossing(&walls)?;
        let g = self.gate(near, &walls);
        let dist = g.symmetric_difference(near).count();
        if dist > radius {
            return Err(Error::SearchExhausted(format!("nearest cube is {dist} steps away")));
        }
        Ok((self.cell_at(&g, &walls)?, dist))
    }

    /// Distance from `⋂ walls` to the Cayley graph over the chamber ball, and
    /// a cube realising it (first nearest chamber in ShortLex order).
    pub fn wall_set_distance(&self, walls: &[usize]) -> Result<(CayleyDistance, CubeCell)> {
        let mut walls = walls.to_vec();
        walls.sort_unstable();
        walls.dedup();
        self.check_crossing(&walls)?;
        let ball = self.space.ball();
        let mut best: Option<(usize, usize, Flips)> = None;
        for i in 0..ball.len() {
            let n = ball.separators(i);
            let g = self.gate(n, &walls);
            let dist = g.symmetric_difference(n).count();
            if best.as_ref().is_none_or(|b| dist < b.0) {
                best = Some((dist, i, g));
            }
        }
        let (distance, i, g) = best.expect("the ball contains the identity");
        Ok((CayleyDistance { distance, nearest: ball.element(i).clone() }, self.cell_at(&g, &walls)?))
    }

    /// Vertices in the cubical chamber of the identity: no simple root is
    /// flipped.
    pub fn chamber_vertices<'a>(&self, vertices: &'a [Flips]) -> Vec<&'a Flips> {
        let inv = self.space.inventory();
        let simple: Vec<usize> =
            inv.system().simple_roots().iter().map(|r| inv.index_of(r).expect("simple roots have depth 1")).collect();
        vertices.iter().filter(|d| simple.iter().all(|&s| !d.contains(s))).collect()
    }

    /// Number of `W`-orbits among the given vertices. Each vertex is moved
    /// into the cubical chamber of the identity by every nearest Cayley
    /// vertex, and the least image is its orbit key.
    pub fn vertex_orbits(&self, vertices: &[Flips]) -> Result<usize> {
        let mut keys = BTreeSet::new();
        for d in vertices {
            keys.insert(self.orbit_key(std::slice::from_ref(d), &[])?);
        }
        Ok(keys.len())
    }

    pub fn cube_orbits(&self, cubes: &[CubeCell]) -> Result<usize> {
        let mut keys = BTreeSet::new();
        for c in cubes {
            keys.insert(self.orbit_key(&self.cube_vertices(c), &c.walls)?);
        }
        Ok(keys.len())
    }

    fn orbit_key(&self, vertices: &[Flips], walls: &[usize]) -> Result<(Vec<usize>, Vec<usize>)> {
        let ball = self.space.ball();
        let inv = self.space.inventory();
        let sys = inv.system();
        let mut dists: Vec<(usize, usize)> = Vec::new();
        for i in 0..ball.len() {
            let n = ball.separators(i);
            let d = vertices.iter().map(|v| v.symmetric_difference(n).count()).min().unwrap_or(0);
            dists.push((d, i));
        }
        let min = dists.iter().map(|x| x.0).min().unwrap_or(0);
        let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
        for &(d, i) in &dists {
            if d != min {
                continue;
            }
            let winv = sys.invert(ball.element(i));
            let mut images = Vec::new();
            for v in vertices {
                images.push(self.translate(&winv, v)?);
            }
            let mut new_walls = Vec::new();
            for &m in walls {
                let r = winv.act(inv.root(m)).positive();
                new_walls.push(inv.index_of(&r).ok_or(Error::OutOfInventory)?);
            }
            new_walls.sort_unstable();
            let corner = images.iter().min_by_key(|v| v.count_ones(..)).expect("nonempty");
            let key = (corner.ones().collect::<Vec<_>>(), new_walls);
            if best.as_ref().is_none_or(|b| &key < b) {
                best = Some(key);
            }
        }
        Ok(best.expect("the ball contains the identity"))
    }
}

/// Consistency of the vertex that differs from the Cayley vertex `base` on
/// the given walls.
pub fn vertex_valid(space: &VertexSpace, base: &GroupElement, flips: &[Root]) -> Result<bool> {
    let mut d = space.cayley_vertex(base)?;
    let f = space.flips_from_roots(flips)?;
    d.symmetric_difference_with(&f);
    Ok(space.is_valid(&d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog;

    #[test]
    fn vertex_examples() {
        let vs = VertexSpace::new(&catalog::affine_a(1), 3).unwrap();
        let sys = vs.space().system().clone();
        let id = sys.identity();
        assert!(vertex_valid(&vs, &id, &[]).unwrap());
        assert!(!vertex_valid(&vs, &id, &[sys.vector_from_ints(&[1, 2])]).unwrap());
        assert!(vertex_valid(&vs, &id, &[sys.vector_from_ints(&[0, 1])]).unwrap());
        let vs = VertexSpace::new(&catalog::dihedral(2), 2).unwrap();
        assert!(vertex_valid(&vs, &id_of(&vs), &[vs.space().system().vector_from_ints(&[1, 0])]).unwrap());
    }

    fn id_of(vs: &VertexSpace) -> GroupElement {
        vs.space().system().identity()
    }

    #[test]
    fn a2_three_cube() {
        let vs = VertexSpace::new(&catalog::a(2), 3).unwrap();
        let v = vs.vertices().unwrap();
        assert_eq!(v.len(), 8);
        let cubes = vs.cubes(&v).unwrap();
        assert_eq!(cubes.iter().filter(|c| c.walls.len() == 3).count(), 1);
        assert_eq!(vs.chamber_vertices(&v).len(), 2);
        let top = cubes.iter().find(|c| c.walls.len() == 3).unwrap();
        assert_eq!(vs.cayley_distance(&vs.cube_vertices(top)).distance, 0);
    }

    #[test]
    fn translation_of_cayley_vertices() {
        let vs = VertexSpace::new(&catalog::affine_a(2), 3).unwrap();
        let sys = vs.space().system().clone();
        let w = sys.element_from_word(&[0, 1]).unwrap();
        let v = sys.element_from_word(&[2, 0]).unwrap();
        let wv = sys.multiply(&w, &v);
        let moved = vs.translate(&w, &vs.cayley_vertex(&v).unwrap()).unwrap();
        assert_eq!(moved, vs.cayley_vertex(&wv).unwrap());
    }
}
