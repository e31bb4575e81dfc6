use std::cmp::Ordering;

use serde::Serialize;

use super::closure::{parabolic_closure_of_roots, Parabolic};
use super::surd::{r_term, Surd};
use crate::algebra::{diagram_type, ComponentType, Root, Scalar};
use crate::error::{Error, Result};
use crate::roots::canonical_simple_system;
use crate::walls::{Rel, Signed, WallSpace};

/// A strictly increasing chain of half-spaces, inner to outer.
#[derive(Clone, Debug, Serialize)]
pub struct RootChain {
    pub roots: Vec<Root>,
    pub convex: bool,
    pub maximally_convex: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainVerdict {
    pub alternative: u8,
    pub value: Scalar,
    /// `r_n` evaluated with the space's `ε̂` and `κ`; absent when `ε̂` is
    /// undefined.
    pub bound: Option<Surd>,
    pub dihedral_witness: Option<Vec<Root>>,
    pub affine_parabolic: Option<Parabolic>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairKind {
    Finite,
    AffineClosure,
    NonaffineClosure,
}

/// `ε̂`: the least `|(a, b)| - 1 > 0` over parallel walls in the space.
#[derive(Clone, Debug, Serialize)]
pub struct EpsilonEstimate {
    pub value: Option<Scalar>,
    pub depth: usize,
    pub witness: Option<(Root, Root)>,
}

fn signed_key(space: &WallSpace, (i, s): Signed) -> (usize, usize, bool) {
    (space.inventory().depth_of(i), i, !s)
}

/// All half-spaces `g` with `a ⊆ g ⊆ b`, sorted by (depth, index, sign).
pub fn root_interval(space: &WallSpace, a: &Root, b: &Root) -> Result<Vec<Root>> {
    Ok(interval_signed(space, a, b)?.into_iter().map(|h| space.root(h)).collect())
}

fn interval_signed(space: &WallSpace, a: &Root, b: &Root) -> Result<Vec<Signed>> {
    let sa = space
        .inventory()
        .signed_index(a)
        .ok_or_else(|| Error::DepthInsufficient("endpoint beyond inventory".into()))?;
    let sb = space
        .inventory()
        .signed_index(b)
        .ok_or_else(|| Error::DepthInsufficient("endpoint beyond inventory".into()))?;
    if sa == sb {
        return Ok(vec![sa]);
    }
    let t = space.table();
    if !t.inside(sa, sb) {
        return Err(Error::NotNested);
    }
    // every member has smaller depth than one endpoint, so the scan is complete
    let mut out = vec![sa, sb];
    for k in 0..space.inventory().len() {
        for h in [(k, true), (k, false)] {
            if t.inside(sa, h) && t.inside(h, sb) {
                out.push(h);
            }
        }
    }
    out.sort_by_key(|&h| signed_key(space, h));
    Ok(out)
}

/// A longest chain from `a` to `b`; ties go to the least (depth, index) at
/// each step.
pub fn maximally_convex_chain(space: &WallSpace, a: &Root, b: &Root) -> Result<RootChain> {
    let members = interval_signed(space, a, b)?;
    let sa = space.inventory().signed_index(a).unwrap();
    let sb = space.inventory().signed_index(b).unwrap();
    if sa == sb {
        return Err(Error::NotNested);
    }
    let t = space.table();
    // longest[i]: edges on a longest chain from members[i] up to b
    let m = members.len();
    let mut longest: Vec<Option<usize>> = vec![None; m];
    let mut order: Vec<usize> = (0..m).collect();
    // outer half-spaces first: fewer members above them
    order.sort_by_key(|&i| members.iter().filter(|&&h| t.inside(members[i], h)).count());
    for &i in &order {
        let h = members[i];
        longest[i] = if h == sb {
            Some(0)
        } else {
            (0..m).filter(|&j| t.inside(h, members[j])).filter_map(|j| longest[j].map(|l| l + 1)).max()
        };
    }
    let start = members.iter().position(|&h| h == sa).unwrap();
    let mut chain = vec![sa];
    let mut cur = start;
    while members[cur] != sb {
        let need = longest[cur].unwrap() - 1;
        cur = (0..m)
            .filter(|&j| t.inside(members[cur], members[j]) && longest[j] == Some(need))
            .min_by_key(|&j| signed_key(space, members[j]))
            .unwrap();
        chain.push(members[cur]);
    }
    Ok(RootChain { roots: chain.into_iter().map(|h| space.root(h)).collect(), convex: true, maximally_convex: true })
}

/// Build a chain from explicit half-spaces, checking strict nesting and
/// recording convexity.
pub fn make_chain(space: &WallSpace, roots: &[Root]) -> Result<RootChain> {
    if roots.len() < 2 {
        return Err(Error::InvalidChain("a chain needs at least two roots".into()));
    }
    let mut signed = Vec::new();
    for r in roots {
        signed.push(space.inventory().signed_index(r).ok_or(Error::OutOfInventory)?);
    }
    for (k, w) in signed.windows(2).enumerate() {
        if !space.table().inside(w[0], w[1]) {
            return Err(Error::InvalidChain(format!("roots {k} and {} are not strictly nested", k + 1)));
        }
    }
    let convex = roots
        .windows(2)
        .map(|w| interval_signed(space, &w[0], &w[1]).map(|v| v.len() == 2))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .all(|x| x);
    let longest = maximally_convex_chain(space, &roots[0], &roots[roots.len() - 1])?;
    let maximally_convex = longest.roots.len() == roots.len();
    Ok(RootChain { roots: roots.to_vec(), convex, maximally_convex })
}

pub fn estimate_epsilon(space: &WallSpace) -> EpsilonEstimate {
    let inv = space.inventory();
    let one = inv.system().field().one();
    let mut best: Option<(Scalar, usize, usize)> = None;
    for i in 0..inv.len() {
        for j in i + 1..inv.len() {
            if space.table().rel(i, j) == Rel::Cross {
                continue;
            }
            let v = inv.form(i, j).abs();
            if v > one && best.as_ref().is_none_or(|(b, _, _)| &v < b) {
                best = Some((v, i, j));
            }
        }
    }
    match best {
        Some((v, i, j)) => EpsilonEstimate {
            value: Some(v - one),
            depth: space.depth(),
            witness: Some((inv.root(i).clone(), inv.root(j).clone())),
        },
        None => EpsilonEstimate { value: None, depth: space.depth(), witness: None },
    }
}

/// Values needed to bound chains: `κ` and `ε̂`.
#[derive(Clone, Debug)]
pub struct ChainContext {
    pub kappa: Scalar,
    pub epsilon: Option<Scalar>,
}

fn affine_closure(space: &WallSpace, roots: &[Root]) -> Option<Parabolic> {
    let p = parabolic_closure_of_roots(space.ball(), roots);
    match diagram_type(space.system().matrix(), &p.subset) {
        Ok(t) if t.kind == ComponentType::Affine => Some(p),
        _ => None,
    }
}

pub fn classify_chain(space: &WallSpace, ctx: &ChainContext, chain: &RootChain) -> Result<ChainVerdict> {
    let checked = make_chain(space, &chain.roots)?;
    let sys = space.system();
    let n = checked.roots.len() - 1;
    let value = sys.form(&checked.roots[0], &checked.roots[n]);
    let one = sys.field().one();
    match value.cmp(&one) {
        Ordering::Less => Err(Error::InvariantViolation("nested roots with form value below 1".into())),
        Ordering::Equal => {
            let positives: Vec<Root> = checked.roots.iter().map(|r| r.positive()).collect();
            let cs = canonical_simple_system(space.inventory(), &positives)?;
            if cs.rank() != 2 || cs.matrix.m(0, 1).is_some() {
                return Err(Error::InvariantViolation("value 1 without an infinite dihedral group".into()));
            }
            Ok(ChainVerdict {
                alternative: 2,
                value,
                bound: None,
                affine_parabolic: affine_closure(space, &cs.roots),
                dihedral_witness: Some(cs.roots),
            })
        }
        Ordering::Greater => {
            let bound = match &ctx.epsilon {
                Some(e) => Some(r_term(n, e, &ctx.kappa)?),
                None => None,
            };
            Ok(ChainVerdict { alternative: 1, value, bound, dihedral_witness: None, affine_parabolic: None })
        }
    }
}

/// `|(a, b)| < 1` gives a finite group, `= 1` an affine closure, `> 1` a
/// non-affine one; the last is checked against `1 + ε̂`.
pub fn classify_dihedral_pair(space: &WallSpace, eps: &EpsilonEstimate, a: &Root, b: &Root) -> Result<PairKind> {
    if a.positive() == b.positive() {
        return Err(Error::SameWall);
    }
    let sys = space.system();
    let one = sys.field().one();
    let v = sys.form(a, b).abs();
    if v < one {
        return Ok(PairKind::Finite);
    }
    if v == one {
        return match affine_closure(space, &[a.clone(), b.clone()]) {
            Some(_) => Ok(PairKind::AffineClosure),
            None => Err(Error::InvariantViolation("value 1 without an affine closure in the ball".into())),
        };
    }
    if let Some(e) = &eps.value {
        if v < &one + e {
            return Err(Error::InvariantViolation("pair value inside (1, 1 + ε̂)".into()));
        }
    }
    Ok(PairKind::NonaffineClosure)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog;
    use crate::roots::constant_kappa;

    #[test]
    fn affine_a1_intervals() {
        let space = WallSpace::new(&catalog::affine_a(1), 8).unwrap();
        let v = |c: &[i64]| space.system().vector_from_ints(c);
        assert_eq!(root_interval(&space, &v(&[0, 1]), &v(&[1, 2])).unwrap(), vec![v(&[0, 1]), v(&[1, 2])]);
        assert_eq!(root_interval(&space, &v(&[0, 1]), &v(&[2, 3])).unwrap(), vec![v(&[0, 1]), v(&[1, 2]), v(&[2, 3])]);
        assert_eq!(root_interval(&space, &v(&[0, 1]), &v(&[0, 1])).unwrap(), vec![v(&[0, 1])]);
        assert_eq!(root_interval(&space, &v(&[1, 2]), &v(&[0, 1])), Err(Error::NotNested));
        let chain = maximally_convex_chain(&space, &v(&[0, 1]), &v(&[2, 3])).unwrap();
        assert_eq!(chain.roots.len(), 3);
        let ctx = ChainContext { kappa: space.system().field().zero(), epsilon: None };
        let verdict = classify_chain(&space, &ctx, &chain).unwrap();
        assert_eq!(verdict.alternative, 2);
        assert!(verdict.value.is_one());
        assert!(verdict.affine_parabolic.is_some());
        let eps = estimate_epsilon(&space);
        assert!(eps.value.is_none());
        assert_eq!(classify_dihedral_pair(&space, &eps, &v(&[0, 1]), &v(&[1, 2])), Ok(PairKind::AffineClosure));
    }

    #[test]
    fn hyperbolic_chain() {
        let m = catalog::triangle(2, 3, 7);
        let space = WallSpace::new(&m, 6).unwrap();
        let eps = estimate_epsilon(&space);
        assert!(eps.value.as_ref().unwrap().is_positive());
        let ctx = ChainContext { kappa: constant_kappa(&m).value, epsilon: eps.value.clone() };
        let inv = space.inventory();
        let mut seen = 0;
        for i in 0..inv.len() {
            for j in 0..inv.len() {
                if space.table().rel(i, j) == Rel::Inside {
                    let chain = maximally_convex_chain(&space, inv.root(i), inv.root(j)).unwrap();
                    let verdict = classify_chain(&space, &ctx, &chain).unwrap();
                    assert_eq!(verdict.alternative, 1);
                    seen += 1;
                }
            }
        }
        assert!(seen > 0);
    }
}
