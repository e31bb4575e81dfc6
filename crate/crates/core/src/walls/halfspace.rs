use serde::Serialize;

use crate::algebra::{CoxeterSystem, GroupElement, Root};
use crate::error::{Error, Result};
use crate::roots::RootInventory;

/// Relation between two distinct walls, as seen from their positive roots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rel {
    /// The walls meet: `|(a, b)| < 1`.
    Cross,
    /// `ζ(a) ⊊ ζ(b)`.
    Inside,
    /// `ζ(b) ⊊ ζ(a)`.
    Outside,
    /// `(a, b) ≤ -1`: `ζ(-a) ⊊ ζ(b)`, the two half-spaces cover everything.
    Opposite,
}

/// Classification of two half-spaces with distinct walls.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WallPairClass {
    Cross,
    Nested {
        inner: Root,
        outer: Root,
    },
    /// Parallel walls but neither half-space contains the other.
    /// `empty` tells whether the half-spaces themselves are disjoint
    /// (otherwise their union is everything).
    Disjoint {
        empty: bool,
    },
}

/// True iff the chamber `w·C` lies in the half-space `ζ(h)`.
pub fn chamber_side(w: &GroupElement, h: &Root) -> bool {
    w.act_inverse(h).is_positive()
}

/// Depth of a positive root, read from the inventory when present.
pub fn depth_of(inv: &RootInventory, a: &Root) -> usize {
    inv.index_of(a).map(|i| inv.depth_of(i)).unwrap_or_else(|| inv.system().depth(a))
}

/// Relation between the positive roots `a` and `b` (`a ≠ b`).
pub fn positive_relation(sys: &CoxeterSystem, a: &Root, da: usize, b: &Root, db: usize) -> Rel {
    let v = sys.form(a, b);
    let one = sys.field().one();
    if v >= one {
        if da < db {
            Rel::Inside
        } else {
            Rel::Outside
        }
    } else if v <= -one {
        Rel::Opposite
    } else {
        Rel::Cross
    }
}

/// Strict containment `ζ(a) ⊊ ζ(b)` of signed half-spaces.
///
/// For positive roots with `(a, b) ≥ 1` the inner one has smaller depth.
/// This orientation rule is checked against chamber enumeration in the tests.
pub fn strictly_inside(inv: &RootInventory, a: &Root, b: &Root) -> bool {
    let sys = inv.system();
    let (pa, pb) = (a.positive(), b.positive());
    if pa == pb {
        return false;
    }
    let rel = positive_relation(sys, &pa, depth_of(inv, &pa), &pb, depth_of(inv, &pb));
    match (a.is_positive(), b.is_positive()) {
        (true, true) => rel == Rel::Inside,
        (false, false) => rel == Rel::Outside,
        (false, true) => rel == Rel::Opposite,
        (true, false) => false,
    }
}

pub fn classify_wall_pair(inv: &RootInventory, a: &Root, b: &Root) -> Result<WallPairClass> {
    let sys = inv.system();
    if a.positive() == b.positive() {
        return Err(Error::SameWall);
    }
    let v = sys.form(a, b);
    let one = sys.field().one();
    if v.abs() < one {
        return Ok(WallPairClass::Cross);
    }
    if strictly_inside(inv, a, b) {
        return Ok(WallPairClass::Nested { inner: a.clone(), outer: b.clone() });
    }
    if strictly_inside(inv, b, a) {
        return Ok(WallPairClass::Nested { inner: b.clone(), outer: a.clone() });
    }
    Ok(WallPairClass::Disjoint { empty: strictly_inside(inv, a, &-b) })
}

/// For two parallel walls (positive roots), the half-spaces `(a, b)` facing
/// away from each other: `a ∩ b = ∅`, `a` bounded by the first wall.
pub fn facing_away(inv: &RootInventory, m1: &Root, m2: &Root) -> Result<(Root, Root)> {
    let (p1, p2) = (m1.positive(), m2.positive());
    for a in [p1.clone(), -&p1] {
        for b in [p2.clone(), -&p2] {
            if strictly_inside(inv, &a, &-&b) {
                return Ok((a, b));
            }
        }
    }
    if p1 == p2 {
        Err(Error::SameWall)
    } else {
        Err(Error::PreconditionFailed("walls cross".into()))
    }
}

/// Pairwise relations among the first `n` inventory roots.
#[derive(Clone, Debug)]
pub struct PairTable {
    n: usize,
    rel: Vec<Rel>,
}

impl PairTable {
    pub fn new(inv: &RootInventory, n: usize) -> PairTable {
        let sys = inv.system();
        let mut rel = vec![Rel::Cross; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let r = positive_relation(sys, inv.root(i), inv.depth_of(i), inv.root(j), inv.depth_of(j));
                rel[i * n + j] = r;
                rel[j * n + i] = match r {
                    Rel::Inside => Rel::Outside,
                    Rel::Outside => Rel::Inside,
                    x => x,
                };
            }
        }
        PairTable { n, rel }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Relation of walls `i ≠ j`.
    pub fn rel(&self, i: usize, j: usize) -> Rel {
        self.rel[i * self.n + j]
    }

    pub fn crosses(&self, i: usize, j: usize) -> bool {
        i != j && self.rel(i, j) == Rel::Cross
    }

    /// `ζ(σ_i r_i) ⊊ ζ(σ_j r_j)` for signed indices (`true` = positive).
    pub fn inside(&self, (i, si): (usize, bool), (j, sj): (usize, bool)) -> bool {
        if i == j {
            return false;
        }
        let r = self.rel(i, j);
        match (si, sj) {
            (true, true) => r == Rel::Inside,
            (false, false) => r == Rel::Outside,
            (false, true) => r == Rel::Opposite,
            (true, false) => false,
        }
    }
}
