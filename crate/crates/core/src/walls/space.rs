use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use super::ball::ChamberBall;
use super::halfspace::{chamber_side, strictly_inside, PairTable, Rel};
use crate::algebra::{ComponentType, CoxeterMatrix, CoxeterSystem, GroupElement, Root};
use crate::error::{Error, Result};
use crate::roots::{canonical_simple_system, RootInventory, DEFAULT_ROOT_CAP};

const PATH_CAP: usize = 100_000;

/// Chambers to `C` outside `ζ(h)`: 0 when `x·C ∈ ζ(h)`.
pub fn distance_to_halfspace(sys: &CoxeterSystem, x: &GroupElement, h: &Root) -> usize {
    let g = x.act_inverse(h);
    if g.is_positive() {
        0
    } else {
        sys.depth(&-g)
    }
}

/// The nearest chamber of `ζ(h)` to `x·C` (ShortLex-least among ties).
///
/// Every minimal gallery into `ζ(h)` follows descents of `-x⁻¹h`, so all of
/// them are enumerated and no search radius is needed.
pub fn project_to_halfspace(sys: &CoxeterSystem, h: &Root, x: &GroupElement) -> Result<GroupElement> {
    let g = x.act_inverse(h);
    if g.is_positive() {
        return Err(Error::PreconditionFailed("chamber already lies in the half-space".into()));
    }
    let mut tails: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut stack = vec![(-g, Vec::new())];
    let mut visited = 0usize;
    while let Some((cur, path)) = stack.pop() {
        visited += 1;
        if visited > PATH_CAP {
            return Err(Error::SearchExhausted("too many minimal galleries".into()));
        }
        if let Some(t) = sys.simple_index(&cur) {
            let mut u = path;
            u.push(t);
            tails.insert(u);
            continue;
        }
        for s in 0..sys.rank() {
            if sys.form_simple(&cur, s).is_positive() {
                let mut p = path.clone();
                p.push(s);
                stack.push((sys.reflect_simple(s, &cur), p));
            }
        }
    }
    let mut best: Option<GroupElement> = None;
    for u in tails {
        let mut word = x.word().to_vec();
        word.extend(u);
        let y = sys.element_from_word(&word)?;
        if best.as_ref().is_none_or(|b| y.shortlex_cmp(b).is_lt()) {
            best = Some(y);
        }
    }
    Ok(best.expect("a negative root has a descent path"))
}

/// A signed wall: inventory index and sign.
pub type Signed = (usize, bool);

/// Inventory, pairwise wall relations and a chamber ball, all to one depth.
#[derive(Clone, Debug)]
pub struct WallSpace {
    inv: RootInventory,
    table: PairTable,
    ball: ChamberBall,
    depth: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct HalfspaceDistance {
    pub distance: usize,
    pub x: GroupElement,
    pub y: GroupElement,
}

#[derive(Clone, Debug, Serialize)]
pub struct Separation {
    /// Side of the first wall facing away from the second.
    pub a: Root,
    /// Side of the second wall facing away from the first.
    pub b: Root,
    pub distance: HalfspaceDistance,
    /// Half-space `h` with `a ⊊ h ⊊ -b`.
    pub separator: Option<Root>,
}

#[derive(Clone, Debug, Serialize)]
pub struct QEstimate {
    pub value: usize,
    pub witness: Option<(Root, Root)>,
    pub pairs_scanned: usize,
    pub pairs_without_separator: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DihedralVerdict {
    Centralizes,
    EuclideanTriangle,
    Partial(usize),
}

impl WallSpace {
    pub fn new(matrix: &CoxeterMatrix, depth: usize) -> Result<WallSpace> {
        let sys = Arc::new(CoxeterSystem::new(matrix.clone()));
        let inv = RootInventory::build(sys, depth, DEFAULT_ROOT_CAP)?;
        WallSpace::from_inventory(inv, depth)
    }

    /// As [`WallSpace::new`] with explicit caps on roots and chambers.
    pub fn with_limits(matrix: &CoxeterMatrix, depth: usize, root_cap: usize, chamber_cap: usize) -> Result<WallSpace> {
        let sys = Arc::new(CoxeterSystem::new(matrix.clone()));
        let inv = RootInventory::build(sys, depth, root_cap)?;
        let table = PairTable::new(&inv, inv.len());
        let ball = ChamberBall::with_cap(&inv, depth, chamber_cap)?;
        Ok(WallSpace { inv, table, ball, depth })
    }

    pub fn from_inventory(inv: RootInventory, radius: usize) -> Result<WallSpace> {
        let table = PairTable::new(&inv, inv.len());
        let ball = ChamberBall::new(&inv, radius)?;
        let depth = inv.depth_limit();
        Ok(WallSpace { inv, table, ball, depth })
    }

    pub fn inventory(&self) -> &RootInventory {
        &self.inv
    }

    pub fn system(&self) -> &Arc<CoxeterSystem> {
        self.inv.system()
    }

    pub fn table(&self) -> &PairTable {
        &self.table
    }

    pub fn ball(&self) -> &ChamberBall {
        &self.ball
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn signed(&self, a: &Root) -> Result<Signed> {
        self.inv.signed_index(a).ok_or(Error::OutOfInventory)
    }

    pub fn root(&self, (i, s): Signed) -> Root {
        if s {
            self.inv.root(i).clone()
        } else {
            -self.inv.root(i)
        }
    }

    /// For parallel walls `i ≠ j`, the facing-away half-spaces.
    pub fn facing_away(&self, i: usize, j: usize) -> Option<(Signed, Signed)> {
        match self.table.rel(i, j) {
            Rel::Cross => None,
            Rel::Inside => Some(((i, true), (j, false))),
            Rel::Outside => Some(((i, false), (j, true))),
            Rel::Opposite => Some(((i, false), (j, false))),
        }
    }

    /// Least combinatorial distance between chambers of the disjoint
    /// half-spaces `a` and `b`, over chambers of `a` in the ball.
    pub fn halfspace_distance(&self, a: &Root, b: &Root) -> Result<HalfspaceDistance> {
        if *a != -b && !strictly_inside(&self.inv, a, &-b) {
            return Err(Error::PreconditionFailed("half-spaces intersect".into()));
        }
        let sys = self.system();
        let mut best: Option<(usize, usize)> = None;
        for i in 0..self.ball.len() {
            if !self.ball.side(i, a) {
                continue;
            }
            let d = distance_to_halfspace(sys, self.ball.element(i), b);
            if best.is_none_or(|(bd, _)| d < bd) {
                best = Some((d, i));
            }
        }
        let (distance, i) =
            best.ok_or_else(|| Error::SearchExhausted("no chamber of the half-space in the ball".into()))?;
        let x = self.ball.element(i).clone();
        let y = project_to_halfspace(sys, b, &x)?;
        Ok(HalfspaceDistance { distance, x, y })
    }

    /// Separating half-spaces `h` with `a ⊊ h ⊊ c`, in inventory order.
    fn between(&self, a: Signed, c: Signed) -> impl Iterator<Item = Signed> + '_ {
        (0..self.inv.len())
            .flat_map(|k| [(k, true), (k, false)])
            .filter(move |&h| self.table.inside(a, h) && self.table.inside(h, c))
    }

    /// Whether some wall strictly separates walls `i` and `j` (parallel).
    pub fn has_separator(&self, i: usize, j: usize) -> bool {
        match self.facing_away(i, j) {
            Some((a, (jb, sb))) => self.between(a, (jb, !sb)).next().is_some(),
            None => false,
        }
    }

    /// A wall strictly between the parallel walls `m1` and `m2`.
    ///
    /// Any such wall has smaller depth than one of the two, so scanning the
    /// inventory is exhaustive.
    pub fn find_separating_wall(&self, m1: &Root, m2: &Root) -> Result<Separation> {
        let (i, _) = self.signed(m1)?;
        let (j, _) = self.signed(m2)?;
        if i == j {
            return Err(Error::SameWall);
        }
        let (a, b) = self.facing_away(i, j).ok_or_else(|| Error::PreconditionFailed("walls cross".into()))?;
        let separator = self.between(a, (b.0, !b.1)).next().map(|h| self.root(h));
        let (ra, rb) = (self.root(a), self.root(b));
        let distance = self.halfspace_distance(&ra, &rb)?;
        if let Some(h) = &separator {
            if !chamber_side(&distance.x, h) || chamber_side(&distance.y, h) {
                return Err(Error::InvariantViolation("separator fails the chamber certificate".into()));
            }
        }
        Ok(Separation { a: ra, b: rb, distance, separator })
    }

    /// Largest distance between parallel walls of depth `≤ wall_depth` that
    /// no other wall separates.
    pub fn estimate_q(&self, wall_depth: usize) -> Result<QEstimate> {
        let n = self.inv.up_to_depth(wall_depth).end;
        let mut est = QEstimate { value: 0, witness: None, pairs_scanned: 0, pairs_without_separator: 0 };
        for i in 0..n {
            for j in i + 1..n {
                let Some((a, b)) = self.facing_away(i, j) else { continue };
                est.pairs_scanned += 1;
                if self.between(a, (b.0, !b.1)).next().is_some() {
                    continue;
                }
                est.pairs_without_separator += 1;
                let d = self.halfspace_distance(&self.root(a), &self.root(b))?.distance;
                if d > est.value || est.witness.is_none() {
                    est.value = est.value.max(d);
                    est.witness = Some((self.inv.root(i).clone(), self.inv.root(j).clone()));
                }
            }
        }
        Ok(est)
    }

    /// Largest set of pairwise crossing walls of depth `≤ wall_depth`.
    pub fn max_crossing_clique(&self, wall_depth: usize) -> Vec<usize> {
        let n = self.inv.up_to_depth(wall_depth).end;
        let mut best = Vec::new();
        let all: Vec<usize> = (0..n).collect();
        bron_kerbosch(&self.table, &mut Vec::new(), all, Vec::new(), &mut best);
        best.sort_unstable();
        best
    }

    /// Behaviour of the wall `m` against a pairwise parallel family whose
    /// reflections generate an infinite dihedral group.
    pub fn classify_wall_vs_dihedral(&self, m: &Root, family: &[Root]) -> Result<DihedralVerdict> {
        let sys = self.system();
        let one = sys.field().one();
        let family: Vec<Root> = family.iter().map(|r| r.positive()).collect();
        for (x, f) in family.iter().enumerate() {
            for g in &family[x + 1..] {
                if sys.form(f, g).abs() < one {
                    return Err(Error::PreconditionFailed("family is not pairwise parallel".into()));
                }
            }
        }
        let cs = canonical_simple_system(&self.inv, &family)?;
        if cs.rank() != 2 || cs.matrix.m(0, 1).is_some() {
            return Err(Error::PreconditionFailed("family does not generate an infinite dihedral group".into()));
        }
        let k = family.iter().filter(|f| sys.form(m, f).abs() < one).count();
        if k < 8 {
            return Ok(DihedralVerdict::Partial(k));
        }
        if cs.roots.iter().all(|g| sys.form(m, g).is_zero()) {
            return Ok(DihedralVerdict::Centralizes);
        }
        let mut gens = family.clone();
        gens.push(m.positive());
        let all = canonical_simple_system(&self.inv, &gens)?;
        let comps = all.components();
        if comps.len() == 1 && comps[0].1.kind == ComponentType::Affine && comps[0].1.rank == 3 {
            return Ok(DihedralVerdict::EuclideanTriangle);
        }
        Err(Error::InvariantViolation("wall meets 8 parallel walls without either conclusion".into()))
    }
}

fn bron_kerbosch(t: &PairTable, r: &mut Vec<usize>, p: Vec<usize>, x: Vec<usize>, best: &mut Vec<usize>) {
    if p.is_empty() {
        if x.is_empty() && r.len() > best.len() {
            *best = r.clone();
        }
        return;
    }
    if r.len() + p.len() <= best.len() {
        return;
    }
    let pivot = *p.iter().chain(x.iter()).max_by_key(|&&u| p.iter().filter(|&&v| t.crosses(u, v)).count()).unwrap();
    let mut p = p;
    let mut x = x;
    let candidates: Vec<usize> = p.iter().copied().filter(|&v| !t.crosses(pivot, v)).collect();
    for v in candidates {
        let np = p.iter().copied().filter(|&u| t.crosses(u, v)).collect();
        let nx = x.iter().copied().filter(|&u| t.crosses(u, v)).collect();
        r.push(v);
        bron_kerbosch(t, r, np, nx, best);
        r.pop();
        p.retain(|&u| u != v);
        x.push(v);
    }
}
